//! The weighted-remainder function `W_n(a, b) = sum_{k=1}^{n-1} (a k mod n)(b k mod n)`
//! and its one-argument form `W_n(a) = W_n(a, 1)`.
//!
//! Argument convention: the subscript is the modulus, so `W_n(m)` sums
//! `k * (m k mod n)`. For coprime arguments the value follows from the
//! remainder chain of Euclid's algorithm in `O(log n)` rational steps, using
//! `W_{u0}(u1) = f(u0, u1) - (u0/u1)^2 W_{u1}(u0 mod u1)`.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_arith::{
    as_small, emod, expect_integral, require_coprime, require_positive, Int, Rat,
};
use crate::floor_sums::s_bruteforce;

/// The per-step kernel of the Euclid-chain evaluation. Swappable so the
/// verification sweeps can be run against a deliberately broken kernel.
pub type FTerm = fn(&Int, &Int) -> Rat;

/// Definitional `W_n(a, b)`. Arguments may be any integers; they only enter
/// through their residues mod `n`.
pub fn w_direct(n: &Int, a: &Int, b: &Int) -> Result<Int> {
    require_positive("n", n)?;
    let a = emod(a, n)?;
    let b = emod(b, n)?;
    if let (Some(n), Some(a), Some(b)) = (as_small(n), as_small(&a), as_small(&b)) {
        return Ok(Int::from(w_direct_small(n, a, b)));
    }
    Ok(w_direct_big(n, &a, &b))
}

fn w_direct_big(n: &Int, a: &Int, b: &Int) -> Int {
    let mut acc = Int::zero();
    let (mut x, mut y) = (Int::zero(), Int::zero());
    let mut k = Int::one();
    while &k < n {
        x += a;
        if &x >= n {
            x -= n;
        }
        y += b;
        if &y >= n {
            y -= n;
        }
        acc += &x * &y;
        k += 1;
    }
    acc
}

/// `a` and `b` already reduced below `n < 2^32`; the total stays below `2^96`.
pub(crate) fn w_direct_small(n: u64, a: u64, b: u64) -> u128 {
    let (mut x, mut y) = (0u64, 0u64);
    let mut acc = 0u128;
    for _ in 1..n {
        x += a;
        if x >= n {
            x -= n;
        }
        y += b;
        if y >= n {
            y -= n;
        }
        acc += (x * y) as u128;
    }
    acc
}

/// Remainders `u_0, u_1, u_{i+2} = u_i mod u_{i+1}` down to and including the
/// first zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EuclidChain {
    remainders: Vec<Int>,
}

impl EuclidChain {
    pub fn remainders(&self) -> &[Int] {
        &self.remainders
    }

    /// Index `N` of the last nonzero remainder, which equals `gcd(u_0, u_1)`.
    pub fn terminal_index(&self) -> usize {
        self.remainders.len() - 2
    }

    pub fn gcd(&self) -> &Int {
        &self.remainders[self.terminal_index()]
    }
}

pub fn euclid_chain(u0: &Int, u1: &Int) -> Result<EuclidChain> {
    require_positive("u0", u0)?;
    require_positive("u1", u1)?;
    let mut remainders = vec![u0.clone(), u1.clone()];
    loop {
        let len = remainders.len();
        let next = remainders[len - 2].mod_floor(&remainders[len - 1]);
        let done = next.is_zero();
        remainders.push(next);
        if done {
            break;
        }
    }
    Ok(EuclidChain { remainders })
}

/// `f(x, y) = x/(12 y) * ((1 + x^2)(1 + y^2) - x y (x - 3)(y - 3))`.
pub fn f_term(x: &Int, y: &Int) -> Rat {
    let body = (x * x + 1) * (y * y + 1) - x * y * (x - 3) * (y - 3);
    Rat::new(x * body, y * 12)
}

/// `W_n(m)` for coprime `n, m` via the Euclid chain.
///
/// Panics if the chain sum is not an integer, which would mean the kernel is
/// wrong rather than the input.
pub fn w_euclid(n: &Int, m: &Int) -> Result<Int> {
    let (num, den) = w_euclid_parts(n, m, f_term)?;
    let (q, rem) = num.div_rem(&den);
    if !rem.is_zero() {
        panic!(
            "internal consistency: Euclid-chain W_{n}({m}) evaluated to non-integral {}",
            Rat::new(num, den)
        );
    }
    Ok(q)
}

/// Exact rational value of the Euclid-chain evaluation with kernel `f`.
/// With the true kernel this is always an integer.
pub fn w_euclid_with(n: &Int, m: &Int, f: FTerm) -> Result<Rat> {
    let (num, den) = w_euclid_parts(n, m, f)?;
    Ok(Rat::new(num, den))
}

/// Number of chain steps `N` used for `W_n(m)`.
pub fn w_euclid_chain_length(n: &Int, m: &Int) -> Result<usize> {
    require_positive("n", n)?;
    if n.is_one() {
        return Ok(0);
    }
    Ok(euclid_chain(n, &emod(m, n)?)?.terminal_index())
}

/// Unnormalized `(numerator, denominator)` of `W_n(m)`.
///
/// The alternating sum of `(u_0/u_k)^2 f(u_k, u_{k+1})` is carried as one
/// fraction scaled by `12/u_0^2`, so each step only adds a small-denominator
/// term and the big fraction is never reduced along the way.
fn w_euclid_parts(n: &Int, m: &Int, f: FTerm) -> Result<(Int, Int)> {
    require_positive("n", n)?;
    require_positive("m", m)?;
    require_coprime(n, m)?;
    if n.is_one() {
        return Ok((Int::zero(), Int::one()));
    }
    let m = emod(m, n)?;
    let chain = euclid_chain(n, &m)?;
    let u = chain.remainders();

    let (mut num, mut den) = (Int::zero(), Int::one());
    for k in 0..chain.terminal_index() {
        // 12 f(u_k, u_{k+1}) / u_k^2
        let term = f(&u[k], &u[k + 1]) * Rat::new(Int::from(12), &u[k] * &u[k]);
        let (p, q) = term.into();
        let scaled = p * &den;
        num *= &q;
        if k % 2 == 0 {
            num += scaled;
        } else {
            num -= scaled;
        }
        den *= q;
    }
    let u0_sq = &u[0] * &u[0];
    let (num, den): (Int, Int) = (num * u0_sq, den * 12);
    if den.is_negative() {
        return Ok((-num, -den));
    }
    Ok((num, den))
}

/// `W_n(m) = d^2 W_b(a) + n^2 (d-1)(b-1)/4` with `n = d b`, `m = d a`.
pub fn w_reduce(n: &Int, m: &Int) -> Result<Int> {
    Ok(expect_integral(w_reduce_with(n, m, f_term)?, "reduced W"))
}

pub fn w_reduce_with(n: &Int, m: &Int, f: FTerm) -> Result<Rat> {
    require_positive("n", n)?;
    require_positive("m", m)?;
    let d = n.gcd(m);
    let (b, a) = (n / &d, m / &d);
    let core = w_euclid_with(&b, &a, f)?;
    let shift = Rat::new(n * n * (&d - 1) * (&b - 1), Int::from(4));
    Ok(Rat::from_integer(&d * &d) * core + shift)
}

/// `W_b(a) = (b/2) S_2(a, b) + (b/12)(b-1)(2b-1)(3-a)` with `S_2(a, b)` by
/// brute force. Requires coprime `1 <= a < b`.
pub fn w_from_s2(b: &Int, a: &Int) -> Result<Int> {
    require_positive("a", a)?;
    if a >= b {
        return Err(Error::out_of_range("a", a, "a < b"));
    }
    require_coprime(a, b)?;
    let s2 = s_bruteforce(2, a, b)?;
    let value = Rat::new(b * s2, Int::from(2))
        + Rat::new(b * (b - 1) * (b * 2 - 1) * (3 - a), Int::from(12));
    Ok(expect_integral(value, "W from S_2"))
}
