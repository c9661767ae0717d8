//! Exact integer and rational arithmetic shared by every other module.
//!
//! Integers are arbitrary precision ([`Int`]) and rationals ([`Rat`]) are
//! always kept normalized with a positive denominator. Nothing here touches
//! floating point.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

/// Remainder of `a` modulo `n` in `[0, n)`, for any sign of `a`.
pub fn emod(a: &Int, n: &Int) -> Result<Int> {
    if !n.is_positive() {
        return Err(Error::InvalidModulus(n.clone()));
    }
    Ok(a.mod_floor(n))
}

/// Greatest common divisor of two non-negative integers, `gcd(0, x) = x`.
pub fn gcd(a: &Int, b: &Int) -> Result<Int> {
    if a.is_negative() {
        return Err(Error::out_of_range("a", a, "a >= 0"));
    }
    if b.is_negative() {
        return Err(Error::out_of_range("b", b, "b >= 0"));
    }
    if a.is_zero() && b.is_zero() {
        return Err(Error::UndefinedGcd);
    }
    Ok(a.gcd(b))
}

/// The sawtooth `((p/q))`: `{p/q} - 1/2` off the integers and `0` on them.
pub fn sawtooth(p: &Int, q: &Int) -> Result<Rat> {
    let rem = emod(p, q)?;
    if rem.is_zero() {
        return Ok(Rat::zero());
    }
    // (2 rem - q) / 2q == rem/q - 1/2
    Ok(Rat::new(rem * 2 - q, q * 2))
}

/// `x^e` with `0^0 = 1`.
pub fn power(x: &Int, e: &Int) -> Result<Int> {
    if e.is_negative() {
        return Err(Error::InvalidExponent(e.clone()));
    }
    let e = e
        .to_u32()
        .ok_or_else(|| Error::out_of_range("e", e, "e <= 2^32 - 1"))?;
    Ok(num_traits::pow::Pow::pow(x, e))
}

/// `r! / (u! v! w!)` for a partition `u + v + w = r` into non-negative parts.
pub fn multinomial(r: &Int, u: &Int, v: &Int, w: &Int) -> Result<Int> {
    let parts_ok = !u.is_negative() && !v.is_negative() && !w.is_negative();
    if !parts_ok || &(u + v + w) != r {
        return Err(Error::InvalidPartition(Box::new([
            r.clone(),
            u.clone(),
            v.clone(),
            w.clone(),
        ])));
    }
    let small = |x: &Int| {
        x.to_u32()
            .ok_or_else(|| Error::out_of_range("r", r, "r <= 2^32 - 1"))
    };
    let (r, u, v) = (small(r)?, small(u)?, small(v)?);
    Ok(binomial(r, u) * binomial(r - u, v))
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u32, k: u32) -> Int {
    if k > n {
        return Int::zero();
    }
    let k = k.min(n - k);
    let mut acc = Int::one();
    for i in 0..k {
        // exact at every step: acc is C(n, i) times i! / i!
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

pub fn rat_from_int(v: Int) -> Rat {
    Rat::from_integer(v)
}

/// Converts a value that must be an integer, panicking otherwise.
///
/// A non-integral value here means a closed form was transcribed wrongly;
/// it is an internal consistency failure, not an input error.
pub fn expect_integral(value: Rat, what: &str) -> Int {
    if !value.is_integer() {
        panic!("internal consistency: {what} evaluated to non-integral {value}");
    }
    value.to_integer()
}

/// Positive denominator and coprime numerator/denominator.
pub fn is_normalized(x: &Rat) -> bool {
    x.denom().is_positive() && x.numer().gcd(x.denom()).is_one()
}

pub(crate) fn require_positive(name: &'static str, v: &Int) -> Result<()> {
    if v.is_positive() {
        Ok(())
    } else {
        Err(Error::out_of_range(name, v, "must be >= 1"))
    }
}

pub(crate) fn require_coprime(a: &Int, b: &Int) -> Result<()> {
    if a.gcd(b).is_one() {
        Ok(())
    } else {
        Err(Error::NotCoprime(a.clone(), b.clone()))
    }
}

/// Small-operand fast path: `Some` when `v` fits in 32 bits, so products of
/// two such values fit a `u64`.
pub(crate) fn as_small(v: &Int) -> Option<u64> {
    v.to_u64().filter(|&x| x < 1 << 32)
}

/// Adds machine-word terms to a `u128` and spills into a big integer only
/// when the running sum would overflow.
#[derive(Default)]
pub(crate) struct Accumulator {
    small: u128,
    big: Int,
}

impl Accumulator {
    pub fn add_u128(&mut self, term: u128) {
        match self.small.checked_add(term) {
            Some(s) => self.small = s,
            None => {
                self.big += Int::from(self.small);
                self.small = term;
            }
        }
    }

    pub fn add_big(&mut self, term: Int) {
        self.big += term;
    }

    pub fn finish(self) -> Int {
        self.big + Int::from(self.small)
    }
}

/// Signed counterpart of [`Accumulator`].
#[derive(Default)]
pub(crate) struct SignedAccumulator {
    small: i128,
    big: Int,
}

impl SignedAccumulator {
    pub fn add_i128(&mut self, term: i128) {
        match self.small.checked_add(term) {
            Some(s) => self.small = s,
            None => {
                self.big += Int::from(self.small);
                self.small = term;
            }
        }
    }

    pub fn finish(self) -> Int {
        self.big + Int::from(self.small)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn emod_examples() {
        assert_eq!(emod(&int(7), &int(5)).unwrap(), int(2));
        assert_eq!(emod(&int(-3), &int(5)).unwrap(), int(2));
        assert_eq!(emod(&int(10), &int(5)).unwrap(), int(0));
        assert_eq!(emod(&int(3), &int(0)), Err(Error::InvalidModulus(int(0))));
        assert!(emod(&int(3), &int(-4)).is_err());
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&int(6), &int(4)).unwrap(), int(2));
        assert_eq!(gcd(&int(5), &int(2)).unwrap(), int(1));
        assert_eq!(gcd(&int(0), &int(7)).unwrap(), int(7));
        assert_eq!(gcd(&int(0), &int(0)), Err(Error::UndefinedGcd));
        assert!(gcd(&int(-2), &int(4)).is_err());
    }

    #[test]
    fn sawtooth_examples() {
        assert_eq!(sawtooth(&int(3), &int(3)).unwrap(), Rat::zero());
        assert_eq!(sawtooth(&int(1), &int(3)).unwrap(), rat(-1, 6));
        assert_eq!(sawtooth(&int(2), &int(5)).unwrap(), rat(-1, 10));
        assert!(matches!(
            sawtooth(&int(1), &int(0)),
            Err(Error::InvalidModulus(_))
        ));
    }

    #[test]
    fn power_examples() {
        assert_eq!(power(&int(0), &int(0)).unwrap(), int(1));
        assert_eq!(power(&int(2), &int(10)).unwrap(), int(1024));
        assert_eq!(power(&int(-3), &int(3)).unwrap(), int(-27));
        assert_eq!(
            power(&int(2), &int(-1)),
            Err(Error::InvalidExponent(int(-1)))
        );
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(
            multinomial(&int(2), &int(1), &int(1), &int(0)).unwrap(),
            int(2)
        );
        assert_eq!(
            multinomial(&int(3), &int(1), &int(1), &int(1)).unwrap(),
            int(6)
        );
        assert_eq!(
            multinomial(&int(5), &int(5), &int(0), &int(0)).unwrap(),
            int(1)
        );
        assert!(matches!(
            multinomial(&int(4), &int(1), &int(1), &int(1)),
            Err(Error::InvalidPartition(_))
        ));
        assert!(multinomial(&int(1), &int(2), &int(-1), &int(0)).is_err());
    }

    #[test]
    fn binomial_rows() {
        let row: Vec<Int> = (0..=6).map(|k| binomial(6, k)).collect();
        let expected: Vec<Int> = [1, 6, 15, 20, 15, 6, 1].iter().map(|&v| int(v)).collect();
        assert_eq!(row, expected);
        assert_eq!(binomial(3, 4), int(0));
    }

    #[test]
    fn accumulator_spills_without_loss() {
        let mut acc = Accumulator::default();
        for _ in 0..4 {
            acc.add_u128(u128::MAX / 2);
        }
        assert_eq!(acc.finish(), Int::from(u128::MAX / 2) * 4);

        let mut acc = SignedAccumulator::default();
        for _ in 0..3 {
            acc.add_i128(i128::MIN / 2);
        }
        acc.add_i128(5);
        assert_eq!(acc.finish(), Int::from(i128::MIN / 2) * 3 + 5);
    }

    #[test]
    #[should_panic(expected = "internal consistency")]
    fn expect_integral_panics_on_fraction() {
        expect_integral(rat(1, 2), "test value");
    }

    #[derive(Debug, Clone)]
    enum Expr {
        Leaf(i64, i64),
        Add(Box<Expr>, Box<Expr>),
        Sub(Box<Expr>, Box<Expr>),
        Mul(Box<Expr>, Box<Expr>),
    }

    fn eval(e: &Expr) -> Rat {
        let v = match e {
            Expr::Leaf(p, q) => rat(*p, *q),
            Expr::Add(a, b) => eval(a) + eval(b),
            Expr::Sub(a, b) => eval(a) - eval(b),
            Expr::Mul(a, b) => eval(a) * eval(b),
        };
        assert!(is_normalized(&v), "{v} not normalized");
        v
    }

    fn expr() -> impl Strategy<Value = Expr> {
        let leaf =
            (-50i64..50, prop_oneof![-30i64..-1, 1i64..30]).prop_map(|(p, q)| Expr::Leaf(p, q));
        leaf.prop_recursive(4, 32, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(a.into(), b.into())),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(a.into(), b.into())),
                (inner.clone(), inner).prop_map(|(a, b)| Expr::Mul(a.into(), b.into())),
            ]
        })
    }

    proptest! {
        #[test]
        fn emod_lands_in_range(a in -10_000i64..10_000, n in 1i64..500) {
            let r = emod(&int(a), &int(n)).unwrap();
            prop_assert!(r >= int(0) && r < int(n));
            prop_assert!(((int(a) - &r) % n).is_zero());
        }

        #[test]
        fn sawtooth_is_odd_and_periodic(q in 1i64..60, k in -3i64..=3, off in 0i64..60) {
            let p = k * q + off % q;
            let s = sawtooth(&int(p), &int(q)).unwrap();
            prop_assert_eq!(&s + sawtooth(&int(-p), &int(q)).unwrap(), Rat::zero());
            prop_assert_eq!(sawtooth(&int(p + q), &int(q)).unwrap(), s);
        }

        #[test]
        fn rat_expression_trees_stay_normalized(a in expr(), b in expr(), c in expr()) {
            let (x, y, z) = (eval(&a), eval(&b), eval(&c));
            prop_assert_eq!((&x + &y) + &z, &x + (&y + &z));
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!((&x * &y) * &z, &x * (&y * &z));
            prop_assert!(is_normalized(&(&x * &y - &z)));
        }
    }
}
