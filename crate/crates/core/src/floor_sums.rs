//! The floor-power sums `S_r(n, m) = sum_{k=1}^{n-1} floor(k m / n)^r` and the
//! Faulhaber sums `F_r(n) = sum_{i=0}^{n} i^r`.
//!
//! Every route here (brute force, closed forms for `r <= 3`, the odd-order
//! recurrence and the generalized-Dedekind expansion) returns the same exact
//! integer. The closed forms are evaluated in [`Rat`] and must land on an
//! integer; a fractional result panics as an internal consistency failure.

use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::dedekind::DeltaExpansion;
use crate::error::{Error, Result};
use crate::exact_arith::{
    as_small, binomial, expect_integral, require_coprime, require_positive, Accumulator, Int, Rat,
};
use crate::w_function::{f_term, w_euclid_with, FTerm};

/// Below this `n`, [`faulhaber`] sums term by term.
pub const FAULHABER_DIRECT_LIMIT: u64 = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Method {
    #[serde(rename = "bruteforce")]
    BruteForce,
    #[serde(rename = "closed_form")]
    ClosedForm,
    #[serde(rename = "recurrence")]
    Recurrence,
    #[serde(rename = "delta_expansion")]
    DeltaExpansion,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::BruteForce => "bruteforce",
            Method::ClosedForm => "closed_form",
            Method::Recurrence => "recurrence",
            Method::DeltaExpansion => "delta_expansion",
        }
    }
}

/// `n = d b`, `m = d a` with `d = gcd(n, m)` and `gcd(a, b) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoprimeDecomposition {
    pub n: Int,
    pub m: Int,
    pub d: Int,
    pub b: Int,
    pub a: Int,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumResult {
    pub value: Int,
    pub method: Method,
    pub r: u32,
    pub n: Int,
    pub m: Int,
}

pub fn decompose(n: &Int, m: &Int) -> Result<CoprimeDecomposition> {
    require_positive("n", n)?;
    require_positive("m", m)?;
    let d = n.gcd(m);
    Ok(CoprimeDecomposition {
        n: n.clone(),
        m: m.clone(),
        b: n / &d,
        a: m / &d,
        d,
    })
}

/// `F_r(n)`, by direct summation for small `n` and by the Bernoulli-number
/// polynomial above [`FAULHABER_DIRECT_LIMIT`].
pub fn faulhaber(r: u32, n: &Int) -> Result<Int> {
    match n.to_u64() {
        Some(small) if small < FAULHABER_DIRECT_LIMIT => faulhaber_direct(r, n),
        _ => faulhaber_bernoulli(r, n),
    }
}

pub fn faulhaber_direct(r: u32, n: &Int) -> Result<Int> {
    if n.is_negative() {
        return Err(Error::out_of_range("n", n, "n >= 0"));
    }
    let mut acc = Int::zero();
    let mut i = Int::zero();
    while &i <= n {
        acc += Pow::pow(&i, r);
        i += 1;
    }
    Ok(acc)
}

/// `F_r(n)` from `sum_{i=1}^{n} i^r = 1/(r+1) sum_j C(r+1, j) B_j^+ n^{r+1-j}`,
/// plus the `0^0 = 1` term when `r = 0`.
pub fn faulhaber_bernoulli(r: u32, n: &Int) -> Result<Int> {
    if n.is_negative() {
        return Err(Error::out_of_range("n", n, "n >= 0"));
    }
    let bernoulli = bernoulli_plus(r);
    let mut total = Rat::zero();
    for (j, b) in bernoulli.iter().enumerate() {
        let j = j as u32;
        if b.is_zero() {
            continue;
        }
        let coeff = Rat::from_integer(binomial(r + 1, j) * Pow::pow(n, r + 1 - j));
        total += coeff * b;
    }
    total /= Rat::from_integer(Int::from(r + 1));
    let mut value = expect_integral(total, "Faulhaber polynomial");
    if r == 0 {
        value += 1;
    }
    Ok(value)
}

/// Bernoulli numbers `B_0 ..= B_upto` with the `B_1 = +1/2` convention.
fn bernoulli_plus(upto: u32) -> Vec<Rat> {
    let mut b: Vec<Rat> = Vec::with_capacity(upto as usize + 1);
    b.push(Rat::one());
    for m in 1..=upto {
        // sum_{j=0}^{m} C(m+1, j) B_j = 0 in the B_1 = -1/2 convention
        let mut s = Rat::zero();
        for (j, bj) in b.iter().enumerate() {
            s += Rat::from_integer(binomial(m + 1, j as u32)) * bj;
        }
        b.push(-s / Rat::from_integer(Int::from(m + 1)));
    }
    if upto >= 1 {
        b[1] = -b[1].clone();
    }
    b
}

/// Definitional `S_r(n, m)`, one floor per term.
pub fn s_bruteforce(r: u32, n: &Int, m: &Int) -> Result<Int> {
    require_positive("n", n)?;
    require_positive("m", m)?;
    if let (Some(n), Some(m)) = (as_small(n), as_small(m)) {
        return Ok(s_bruteforce_small(r, n, m));
    }
    let mut acc = Int::zero();
    let mut k = Int::one();
    while &k < n {
        let q: Int = (&k * m) / n;
        acc += Pow::pow(&q, r);
        k += 1;
    }
    Ok(acc)
}

fn s_bruteforce_small(r: u32, n: u64, m: u64) -> Int {
    let (step_q, step_rem) = (m / n, m % n);
    let (mut q, mut rem) = (0u64, 0u64);
    let mut acc = Accumulator::default();
    for _ in 1..n {
        q += step_q;
        rem += step_rem;
        if rem >= n {
            rem -= n;
            q += 1;
        }
        match (q as u128).checked_pow(r) {
            Some(t) => acc.add_u128(t),
            None => acc.add_big(Pow::pow(Int::from(q), r)),
        }
    }
    acc.finish()
}

/// `S_0(b, a) = b - 1` for coprime `a, b`.
pub fn s0_closed(b: &Int, a: &Int) -> Result<Int> {
    require_positive("b", b)?;
    require_positive("a", a)?;
    require_coprime(a, b)?;
    Ok(b - 1)
}

/// `S_1(n, m) = (m-1)(n-1)/2 + (d-1)/2`.
pub fn s1_closed(n: &Int, m: &Int) -> Result<Int> {
    let dec = decompose(n, m)?;
    let value = (Rat::from_integer((m - 1) * (n - 1)) + Rat::from_integer(&dec.d - 1))
        / Rat::from_integer(Int::from(2));
    Ok(expect_integral(value, "S_1 closed form"))
}

pub fn s2_closed(n: &Int, m: &Int) -> Result<Int> {
    Ok(expect_integral(
        s2_closed_with(n, m, f_term)?,
        "S_2 closed form",
    ))
}

pub fn s3_closed(n: &Int, m: &Int) -> Result<Int> {
    Ok(expect_integral(
        s3_closed_with(n, m, f_term)?,
        "S_3 closed form",
    ))
}

/// `S_2(n, m)` from its closed form in the coprime core, with `W_b(a)` taken
/// from the Euclid chain built on `f`. Returned unrounded so callers can
/// detect a non-integral value.
pub fn s2_closed_with(n: &Int, m: &Int, f: FTerm) -> Result<Rat> {
    let CoprimeDecomposition { d, b, a, .. } = decompose(n, m)?;
    let w = w_euclid_with(&b, &a, f)?;
    let q = |v: Int| Rat::from_integer(v);

    let first = q(&d * ((&b - 1) * (&b * 2 - 1) + &a * &a * (n - 1) * (n * 2 - 1))) / q(&b * 6);
    let second = q(m * (&d - 1) * (&b - 1)) / q(Int::from(2));
    let third = q(m * 2) / q(&b * &b) * w;
    Ok(first - second - third)
}

/// `S_3(n, m)` in the same style as [`s2_closed_with`].
pub fn s3_closed_with(n: &Int, m: &Int, f: FTerm) -> Result<Rat> {
    let CoprimeDecomposition { d, b, a, .. } = decompose(n, m)?;
    let w = w_euclid_with(&b, &a, f)?;
    let q = |v: Int| Rat::from_integer(v);
    let (a1, b1, d1) = (&a - 1, &b - 1, &d - 1);

    let line1 = q(&d1 * &a * m * (&d1 * &b * m + (&d * 2 - 1) * &a1 * &b1)) / q(Int::from(4));
    let line2 = q(&d * (&a * &a + 1) * &b1 * (&d1 * &a * (&b * 2 - 1) + &b1 * &a1)) / q(&b * 4);
    let line3 = q(m * &b1 * &a1) / q(Int::from(2));
    let line4 = q(m * (m - 1) * 3) / q(&b * &b) * w;
    Ok(line1 + line2 + line3 - line4)
}

/// `S_2(b, a)` for coprime `a, b` in terms of `W_b(a)`.
pub fn s2_core_with(b: &Int, a: &Int, f: FTerm) -> Result<Rat> {
    require_positive("b", b)?;
    require_positive("a", a)?;
    require_coprime(a, b)?;
    let w = w_euclid_with(b, a, f)?;
    let q = |v: Int| Rat::from_integer(v);
    Ok(q((a * a + 1) * (b - 1) * (b * 2 - 1)) / q(b * 6) - q(a * 2) / q(b * b) * w)
}

/// `S_3(b, a)` for coprime `a, b` in terms of `W_b(a)`.
pub fn s3_core_with(b: &Int, a: &Int, f: FTerm) -> Result<Rat> {
    require_positive("b", b)?;
    require_positive("a", a)?;
    require_coprime(a, b)?;
    let w = w_euclid_with(b, a, f)?;
    let q = |v: Int| Rat::from_integer(v);
    let (a1, b1) = (a - 1, b - 1);
    Ok(q(&b1 * &a1 * (&b1 * (a * a + 1) + a * b * 2)) / q(b * 4) - q(a * &a1 * 3) / q(b * b) * w)
}

/// `S_r(b,a) + sum_{i=0}^{r} (-1)^{i+1} C(r,i) (a-1)^{r-i} S_i(b,a)`, which
/// vanishes for coprime `a, b` when `s[i] = S_i(b, a)`.
pub fn recurrence_residual(r: u32, b: &Int, a: &Int, s: &[Int]) -> Result<Int> {
    if r == 0 {
        return Err(Error::out_of_range("r", &Int::zero(), "r >= 1"));
    }
    require_positive("b", b)?;
    require_positive("a", a)?;
    require_coprime(a, b)?;
    check_arity(r, s)?;
    let a1: Int = a - 1;
    let mut acc = s[r as usize].clone();
    for (i, si) in s.iter().enumerate() {
        let i = i as u32;
        let term = binomial(r, i) * Pow::pow(&a1, r - i) * si;
        if i.is_multiple_of(2) {
            acc -= term;
        } else {
            acc += term;
        }
    }
    Ok(acc)
}

/// `S_r(n, m) = a^r F_r(d-1) + sum_{k=0}^{r} C(r,k) a^k F_k(d-1) S_{r-k}(b,a)`,
/// given the core sums `s_core[i] = S_i(b, a)`.
pub fn lift_decomposition(r: u32, n: &Int, m: &Int, s_core: &[Int]) -> Result<Int> {
    if r == 0 {
        return Err(Error::out_of_range("r", &Int::zero(), "r >= 1"));
    }
    check_arity(r, s_core)?;
    let CoprimeDecomposition { d, a, .. } = decompose(n, m)?;
    let d1 = &d - 1;
    let faul: Vec<Int> = (0..=r).map(|k| faulhaber(k, &d1)).collect::<Result<_>>()?;

    let mut acc = Pow::pow(&a, r) * &faul[r as usize];
    for k in 0..=r {
        acc += binomial(r, k) * Pow::pow(&a, k) * &faul[k as usize] * &s_core[(r - k) as usize];
    }
    Ok(acc)
}

fn check_arity(r: u32, s: &[Int]) -> Result<()> {
    let expected = r as usize + 1;
    if s.len() != expected {
        return Err(Error::Arity {
            expected,
            got: s.len(),
        });
    }
    Ok(())
}

/// Core sums `S_0(b,a) ..= S_r(b,a)` for coprime `a, b` where every odd
/// order from 3 up is solved from the recurrence. `S_0`, `S_1` and `S_2` come
/// from their closed forms and even orders from 4 up from the
/// generalized-Dedekind expansion.
pub fn core_sums_by_recurrence(r: u32, b: &Int, a: &Int) -> Result<Vec<Int>> {
    let mut s = vec![s0_closed(b, a)?];
    let a1: Int = a - 1;
    let mut expansion = None;
    for i in 1..=r {
        let next = match i {
            1 => expect_integral(
                Rat::new(&a1 * (b - 1), Int::from(2)),
                "S_1 coprime closed form",
            ),
            2 => expect_integral(s2_core_with(b, a, f_term)?, "S_2 coprime closed form"),
            _ if i % 2 == 1 => {
                // (-1)^{i+1} = 1 for odd i, so S_i appears twice in the residual
                let mut rest = Int::zero();
                for (j, sj) in s.iter().enumerate() {
                    let j = j as u32;
                    let term = binomial(i, j) * Pow::pow(&a1, i - j) * sj;
                    if j.is_multiple_of(2) {
                        rest -= term;
                    } else {
                        rest += term;
                    }
                }
                expect_integral(Rat::new(-rest, Int::from(2)), "odd-order recurrence")
            }
            _ => {
                let exp = match &mut expansion {
                    Some(e) => e,
                    None => expansion.insert(DeltaExpansion::new(b, a)?),
                };
                exp.floor_power_sum(i)
            }
        };
        s.push(next);
    }
    Ok(s)
}

/// Evaluates `S_r(n, m)` by the requested route.
pub fn s_general(r: u32, n: &Int, m: &Int, method: Method) -> Result<SumResult> {
    require_positive("n", n)?;
    require_positive("m", m)?;
    let value = match method {
        Method::BruteForce => s_bruteforce(r, n, m)?,
        Method::ClosedForm => match r {
            0 => n - 1,
            1 => s1_closed(n, m)?,
            2 => s2_closed(n, m)?,
            3 => s3_closed(n, m)?,
            _ => {
                return Err(Error::UnsupportedMethod {
                    method: method.as_str(),
                    detail: format!("r = {r} (closed forms exist for r <= 3)"),
                })
            }
        },
        Method::DeltaExpansion => {
            if r == 0 {
                n - 1
            } else {
                let dec = decompose(n, m)?;
                let mut exp = DeltaExpansion::new(&dec.b, &dec.a)?;
                let mut core = vec![&dec.b - 1];
                core.extend((1..=r).map(|i| exp.floor_power_sum(i)));
                lift_decomposition(r, n, m, &core)?
            }
        }
        Method::Recurrence => {
            if r < 3 || r.is_multiple_of(2) {
                return Err(Error::UnsupportedMethod {
                    method: method.as_str(),
                    detail: format!("r = {r} (the recurrence determines odd r >= 3)"),
                });
            }
            let dec = decompose(n, m)?;
            let core = core_sums_by_recurrence(r, &dec.b, &dec.a)?;
            lift_decomposition(r, n, m, &core)?
        }
    };
    Ok(SumResult {
        value,
        method,
        r,
        n: n.clone(),
        m: m.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::int;
    use crate::oracle;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn faulhaber_examples() {
        assert_eq!(faulhaber(2, &int(4)).unwrap(), int(30));
        assert_eq!(faulhaber(0, &int(5)).unwrap(), int(6));
        assert_eq!(faulhaber(3, &int(3)).unwrap(), int(36));
        assert_eq!(faulhaber(0, &int(0)).unwrap(), int(1));
        assert_eq!(faulhaber(4, &int(0)).unwrap(), int(0));
        assert!(faulhaber(1, &int(-1)).is_err());
    }

    #[test]
    fn faulhaber_routes_agree() {
        for r in 0..=10 {
            for n in 0..=1000 {
                let n = int(n);
                assert_eq!(
                    faulhaber_direct(r, &n).unwrap(),
                    faulhaber_bernoulli(r, &n).unwrap(),
                    "r={r} n={n}"
                );
            }
        }
    }

    #[test]
    fn faulhaber_large_argument() {
        // sum of cubes is the square of the triangular number
        let n = Int::from(10u64).pow(30u32);
        let tri = &n * (&n + 1) / 2;
        assert_eq!(faulhaber(3, &n).unwrap(), &tri * &tri);
        assert_eq!(faulhaber(0, &n).unwrap(), &n + 1);
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(s_bruteforce(1, &int(6), &int(4)).unwrap(), int(8));
        assert_eq!(s_bruteforce(2, &int(5), &int(2)).unwrap(), int(2));
        assert_eq!(s_bruteforce(7, &int(1), &int(9)).unwrap(), int(0));
        assert!(s_bruteforce(1, &int(0), &int(3)).is_err());
        assert!(s_bruteforce(1, &int(3), &int(0)).is_err());
    }

    #[test]
    fn bruteforce_matches_naive_oracle_with_overflowing_powers() {
        for &(r, n, m) in &[
            (0, 7, 3),
            (5, 40, 1000),
            (13, 30, 4_000_000),
            (20, 12, 1 << 31),
        ] {
            assert_eq!(
                s_bruteforce(r, &int(n), &int(m)).unwrap(),
                oracle::floor_power_sum(r, n, m),
                "r={r} n={n} m={m}"
            );
        }
        // big-integer path
        let big = Int::from(1u64 << 40);
        let n = int(9);
        let expected: Int = (1..9)
            .map(|k| Pow::pow(Int::from(k) * &big / 9, 3u32))
            .sum();
        assert_eq!(s_bruteforce(3, &n, &big).unwrap(), expected);
    }

    #[test]
    fn decompose_examples() {
        let d = decompose(&int(6), &int(4)).unwrap();
        assert_eq!((d.d, d.b, d.a), (int(2), int(3), int(2)));
        let d = decompose(&int(5), &int(2)).unwrap();
        assert_eq!((d.d, d.b, d.a), (int(1), int(5), int(2)));
        let d = decompose(&int(7), &int(7)).unwrap();
        assert_eq!((d.d, d.b, d.a), (int(7), int(1), int(1)));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(s0_closed(&int(5), &int(2)).unwrap(), int(4));
        assert_eq!(s0_closed(&int(1), &int(1)).unwrap(), int(0));
        assert_eq!(s0_closed(&int(3), &int(2)).unwrap(), int(2));
        assert_eq!(
            s0_closed(&int(6), &int(4)),
            Err(Error::NotCoprime(int(4), int(6)))
        );

        assert_eq!(s1_closed(&int(6), &int(4)).unwrap(), int(8));
        assert_eq!(s1_closed(&int(5), &int(2)).unwrap(), int(2));
        assert_eq!(s1_closed(&int(1), &int(5)).unwrap(), int(0));

        assert_eq!(s2_closed(&int(6), &int(4)).unwrap(), int(18));
        assert_eq!(s2_closed(&int(5), &int(2)).unwrap(), int(2));
        assert_eq!(s2_closed(&int(2), &int(5)).unwrap(), int(4));

        assert_eq!(s3_closed(&int(6), &int(4)).unwrap(), int(44));
        assert_eq!(s3_closed(&int(5), &int(2)).unwrap(), int(2));
        assert_eq!(s3_closed(&int(2), &int(5)).unwrap(), int(8));
    }

    #[test]
    fn closed_forms_match_oracle_on_small_grid() {
        for n in 1..=40 {
            for m in 1..=40 {
                let (bn, bm) = (int(n), int(m));
                assert_eq!(
                    s1_closed(&bn, &bm).unwrap(),
                    oracle::floor_power_sum(1, n, m)
                );
                assert_eq!(
                    s2_closed(&bn, &bm).unwrap(),
                    oracle::floor_power_sum(2, n, m)
                );
                assert_eq!(
                    s3_closed(&bn, &bm).unwrap(),
                    oracle::floor_power_sum(3, n, m)
                );
            }
        }
    }

    #[test]
    fn recurrence_residual_examples() {
        assert_eq!(
            recurrence_residual(3, &int(5), &int(2), &ints(&[4, 2, 2, 2])).unwrap(),
            int(0)
        );
        assert_eq!(
            recurrence_residual(1, &int(3), &int(2), &ints(&[2, 1])).unwrap(),
            int(0)
        );
        assert_eq!(
            recurrence_residual(2, &int(5), &int(2), &ints(&[4, 2, 2])).unwrap(),
            int(0)
        );
        assert_eq!(
            recurrence_residual(2, &int(5), &int(2), &ints(&[4, 2])),
            Err(Error::Arity {
                expected: 3,
                got: 2
            })
        );
        assert!(recurrence_residual(1, &int(4), &int(2), &ints(&[3, 1])).is_err());
    }

    #[test]
    fn even_order_recurrence_ignores_top_sum() {
        // for even r the S_r coefficient is 1 - 1 = 0
        let s = ints(&[4, 2, 2]);
        let mut perturbed = s.clone();
        perturbed[2] += 1000;
        assert_eq!(
            recurrence_residual(2, &int(5), &int(2), &s).unwrap(),
            recurrence_residual(2, &int(5), &int(2), &perturbed).unwrap()
        );
    }

    #[test]
    fn lift_examples() {
        assert_eq!(
            lift_decomposition(2, &int(6), &int(4), &ints(&[2, 1, 1])).unwrap(),
            int(18)
        );
        assert_eq!(
            lift_decomposition(1, &int(6), &int(4), &ints(&[2, 1])).unwrap(),
            int(8)
        );
        assert_eq!(
            lift_decomposition(1, &int(5), &int(2), &ints(&[4, 2])).unwrap(),
            int(2)
        );
        assert!(matches!(
            lift_decomposition(1, &int(5), &int(2), &ints(&[4])),
            Err(Error::Arity { .. })
        ));
    }

    #[test]
    fn general_dispatch_examples() {
        let r = s_general(2, &int(6), &int(4), Method::ClosedForm).unwrap();
        assert_eq!(r.value, int(18));
        assert_eq!(r.method, Method::ClosedForm);
        assert_eq!(
            s_general(5, &int(5), &int(2), Method::BruteForce)
                .unwrap()
                .value,
            int(2)
        );
        assert_eq!(
            s_general(4, &int(1), &int(3), Method::BruteForce)
                .unwrap()
                .value,
            int(0)
        );
        assert!(matches!(
            s_general(4, &int(6), &int(4), Method::ClosedForm),
            Err(Error::UnsupportedMethod { .. })
        ));
        assert!(matches!(
            s_general(4, &int(6), &int(4), Method::Recurrence),
            Err(Error::UnsupportedMethod { .. })
        ));
    }

    #[test]
    fn r_zero_counts_terms_for_any_m() {
        for method in [
            Method::BruteForce,
            Method::ClosedForm,
            Method::DeltaExpansion,
        ] {
            assert_eq!(
                s_general(0, &int(12), &int(8), method).unwrap().value,
                int(11)
            );
        }
    }

    #[test]
    fn all_routes_agree() {
        for n in 1..=30 {
            for m in 1..=30 {
                let (bn, bm) = (int(n), int(m));
                for r in 0..=7u32 {
                    let expected = oracle::floor_power_sum(r, n, m);
                    let brute = s_general(r, &bn, &bm, Method::BruteForce).unwrap().value;
                    assert_eq!(brute, expected);
                    let delta = s_general(r, &bn, &bm, Method::DeltaExpansion)
                        .unwrap()
                        .value;
                    assert_eq!(delta, expected, "delta r={r} n={n} m={m}");
                    if r >= 3 && r % 2 == 1 {
                        let rec = s_general(r, &bn, &bm, Method::Recurrence).unwrap().value;
                        assert_eq!(rec, expected, "recurrence r={r} n={n} m={m}");
                    }
                }
            }
        }
    }

    #[test]
    fn recurrence_core_sums_match_oracle() {
        let core = core_sums_by_recurrence(9, &int(17), &int(5)).unwrap();
        let expected: Vec<Int> = (0..=9).map(|r| oracle::floor_power_sum(r, 17, 5)).collect();
        assert_eq!(core, expected);
    }
}
