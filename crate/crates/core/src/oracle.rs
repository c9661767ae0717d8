//! Naive definitional evaluations used only by unit tests. Everything is
//! computed in big integers or rationals straight from the definitions, with
//! no shared code path beyond the number types.

use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use crate::exact_arith::{Int, Rat};

pub fn floor_power_sum(r: u32, n: i64, m: i64) -> Int {
    (1..n)
        .map(|k| {
            let q = Rat::new(Int::from(k) * m, Int::from(n))
                .floor()
                .to_integer();
            Pow::pow(q, r)
        })
        .sum()
}

pub fn weighted_remainder(n: i64, a: i64, b: i64) -> Int {
    let n_big = Int::from(n);
    (1..n)
        .map(|k| {
            let x = (Int::from(a) * k).mod_floor(&n_big);
            let y = (Int::from(b) * k).mod_floor(&n_big);
            x * y
        })
        .sum()
}

fn saw(x: Rat) -> Rat {
    if x.is_integer() {
        return Rat::zero();
    }
    let frac = &x - x.floor();
    frac - Rat::new(Int::one(), Int::from(2))
}

pub fn dedekind(b: i64, a: i64) -> Rat {
    (1..=a)
        .map(|k| {
            saw(Rat::new(Int::from(k * b), Int::from(a)))
                * saw(Rat::new(Int::from(k), Int::from(a)))
        })
        .fold(Rat::zero(), |acc, t| acc + t)
}

pub fn delta(b: i64, args: &[i64]) -> Rat {
    let n = args.len() as u32;
    let mut sum = Rat::zero();
    for k in 1..b {
        let mut prod = Rat::one();
        for &a in args {
            prod *= saw(Rat::new(Int::from(k * a), Int::from(b)));
        }
        sum += prod;
    }
    let scale = Rat::new(
        Pow::pow(Int::from(2), n) * Pow::pow(Int::from(b), n),
        Int::from(b),
    );
    sum * scale
}
