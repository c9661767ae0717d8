//! Classical Dedekind sums, Zagier's generalized sums `delta`, and the
//! expansion of `S_r(b, a)` in generalized sums.
//!
//! Notation: `s(b, a) = sum_{k=1}^{a} ((k b / a)) ((k / a))` has modulus `a`,
//! the second argument. Much of the literature writes `s(h, k)` with modulus
//! `k`; the two agree with `h = b, k = a`.

use std::collections::HashMap;

use num_traits::{One, Pow, ToPrimitive, Zero};

use crate::error::Result;
use crate::exact_arith::{
    as_small, expect_integral, multinomial, require_coprime, require_positive, Int, Rat,
    SignedAccumulator,
};
use crate::w_function::{w_euclid, w_euclid_with, FTerm};

/// `s(b, a)` by its defining sum, `O(a)`.
pub fn dedekind_direct(b: &Int, a: &Int) -> Result<Rat> {
    require_positive("b", b)?;
    require_positive("a", a)?;
    require_coprime(a, b)?;
    // ((k b / a)) ((k / a)) = (2 (k b mod a) - a)(2 k - a) / (4 a^2) for 0 < k < a;
    // the k = a summand is zero
    let sum = match (as_small(a), as_small(b)) {
        (Some(a), Some(b)) => dedekind_sum_small(a, b % a),
        _ => dedekind_sum_big(a, b),
    };
    Ok(Rat::new(sum, a * a * 4))
}

fn dedekind_sum_small(a: u64, b: u64) -> Int {
    let a_i = a as i128;
    let mut rem = 0u64;
    let mut acc = SignedAccumulator::default();
    for k in 1..a {
        rem += b;
        if rem >= a {
            rem -= a;
        }
        if rem == 0 {
            continue;
        }
        let x = 2 * rem as i128 - a_i;
        let y = 2 * k as i128 - a_i;
        acc.add_i128(x * y);
    }
    acc.finish()
}

fn dedekind_sum_big(a: &Int, b: &Int) -> Int {
    let mut acc = Int::zero();
    let mut k = Int::one();
    while &k < a {
        let rem = (&k * b) % a;
        if !rem.is_zero() {
            acc += (rem * 2 - a) * (&k * 2 - a);
        }
        k += 1;
    }
    acc
}

/// `s(b, a) = W_a(b) / a^2 - (a - 1)/4` with `W` from the Euclid chain.
pub fn dedekind_fast(b: &Int, a: &Int) -> Result<Rat> {
    require_positive("b", b)?;
    require_positive("a", a)?;
    require_coprime(a, b)?;
    let w = w_euclid(a, b)?;
    Ok(Rat::new(w, a * a) - Rat::new(a - 1, Int::from(4)))
}

pub fn dedekind_fast_with(b: &Int, a: &Int, f: FTerm) -> Result<Rat> {
    require_positive("b", b)?;
    require_positive("a", a)?;
    require_coprime(a, b)?;
    let w = w_euclid_with(a, b, f)?;
    Ok(w / Rat::from_integer(a * a) - Rat::new(a - 1, Int::from(4)))
}

/// Right-hand side of the reciprocity law
/// `s(b, a) + s(a, b) = -1/4 + (a/b + 1/(a b) + b/a) / 12`.
pub fn dedekind_reciprocity_rhs(a: &Int, b: &Int) -> Result<Rat> {
    require_positive("a", a)?;
    require_positive("b", b)?;
    Ok(Rat::new(a * a + b * b + 1, a * b * 12) - Rat::new(Int::one(), Int::from(4)))
}

/// `delta(b; a_1..a_n) = 2^n b^{n-1} sum_{k=1}^{b-1} prod_i ((k a_i / b))`.
///
/// Every `a_i` must be coprime with `b`. With no arguments the empty product
/// gives `(b - 1)/b`.
pub fn delta_direct(b: &Int, args: &[Int]) -> Result<Rat> {
    require_positive("b", b)?;
    for a in args {
        require_positive("a_i", a)?;
        require_coprime(a, b)?;
    }
    Ok(delta_unchecked(b, args))
}

/// With `t(k, a) = 2 (k a mod b) - b` (or 0 when `b | k a`), each sawtooth is
/// `t / 2b`, so `delta = (1/b) sum_k prod_i t(k, a_i)`.
fn delta_unchecked(b: &Int, args: &[Int]) -> Rat {
    let fits = as_small(b).filter(|&b| {
        let bits = 64 - b.leading_zeros() as usize;
        (args.len() + 1) * bits <= 120
    });
    let small_args: Option<Vec<u64>> =
        fits.and_then(|b| args.iter().map(|a| a.to_u64().map(|a| a % b)).collect());
    let sum = match (fits, small_args) {
        (Some(b), Some(args)) => delta_sum_small(b, &args),
        _ => delta_sum_big(b, args),
    };
    Rat::new(sum, b.clone())
}

fn delta_sum_small(b: u64, args: &[u64]) -> Int {
    let b_i = b as i128;
    let mut rems = vec![0u64; args.len()];
    let mut acc = SignedAccumulator::default();
    for _ in 1..b {
        let mut prod: i128 = 1;
        for (rem, &a) in rems.iter_mut().zip(args) {
            *rem += a;
            if *rem >= b {
                *rem -= b;
            }
            prod *= if *rem == 0 { 0 } else { 2 * *rem as i128 - b_i };
        }
        acc.add_i128(prod);
    }
    acc.finish()
}

fn delta_sum_big(b: &Int, args: &[Int]) -> Int {
    let mut acc = Int::zero();
    let mut k = Int::one();
    while &k < b {
        let mut prod = Int::one();
        for a in args {
            let rem = (&k * a) % b;
            if rem.is_zero() {
                prod = Int::zero();
                break;
            }
            prod *= rem * 2 - b;
        }
        acc += prod;
        k += 1;
    }
    acc
}

/// Evaluates `S_r(b, a)` for coprime `a, b` through
/// `S_r(b,a) = b/2^r sum_{u+v+w=r} C(r; u,v,w) (a/b)^u (-1/b)^v (a-1)^w delta(b; 1 x u, a x v)`.
///
/// The `delta` values depend only on `(u, v)` and are cached for the life of
/// the value, so evaluating several orders on one instance shares them.
#[derive(Debug, Clone)]
pub struct DeltaExpansion {
    b: Int,
    a: Int,
    memo: HashMap<(u32, u32), Rat>,
}

impl DeltaExpansion {
    pub fn new(b: &Int, a: &Int) -> Result<Self> {
        require_positive("b", b)?;
        require_positive("a", a)?;
        require_coprime(a, b)?;
        Ok(DeltaExpansion {
            b: b.clone(),
            a: a.clone(),
            memo: HashMap::new(),
        })
    }

    /// `delta(b; 1 x u, a x v)`.
    pub fn delta(&mut self, u: u32, v: u32) -> Rat {
        if let Some(d) = self.memo.get(&(u, v)) {
            return d.clone();
        }
        let mut args = vec![Int::one(); u as usize];
        args.extend(std::iter::repeat_n(self.a.clone(), v as usize));
        let d = delta_unchecked(&self.b, &args);
        self.memo.insert((u, v), d.clone());
        d
    }

    pub fn floor_power_sum(&mut self, r: u32) -> Int {
        let (a, b) = (self.a.clone(), self.b.clone());
        let a1: Int = &a - 1;
        let r_big = Int::from(r);
        let mut total = Rat::zero();
        for u in 0..=r {
            for v in 0..=r - u {
                // delta with an odd number of arguments vanishes
                if (u + v) % 2 == 1 {
                    continue;
                }
                let w = r - u - v;
                let delta = self.delta(u, v);
                if delta.is_zero() {
                    continue;
                }
                let coeff = multinomial(&r_big, &Int::from(u), &Int::from(v), &Int::from(w))
                    .expect("u + v + w = r by construction");
                let mut num = coeff * Pow::pow(&a, u) * Pow::pow(&a1, w);
                if v % 2 == 1 {
                    num = -num;
                }
                total += Rat::new(num, Pow::pow(&b, u + v)) * delta;
            }
        }
        total *= Rat::new(b, Pow::pow(Int::from(2), r));
        expect_integral(total, "generalized Dedekind expansion")
    }
}

/// `S_r(b, a)` for coprime `a, b` from the generalized-Dedekind expansion.
pub fn s_r_via_delta(r: u32, b: &Int, a: &Int) -> Result<Int> {
    Ok(DeltaExpansion::new(b, a)?.floor_power_sum(r))
}
