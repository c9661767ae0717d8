//! Exhaustive sweeps of every identity the library relies on.
//!
//! Each [`LawId`] names one identity and owns a parameter grid. A sweep
//! evaluates both sides exactly at every grid point and records the points
//! where they differ. Grid points are processed in parallel by groups, but the
//! report is assembled in the canonical grid order, so two runs with the same
//! parameters produce identical reports.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{Pow, Zero};
use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::dedekind::{
    dedekind_direct, dedekind_fast_with, dedekind_reciprocity_rhs, delta_direct, DeltaExpansion,
};
use crate::error::{Error, Result};
use crate::exact_arith::{Int, Rat};
use crate::floor_sums::{
    faulhaber_bernoulli, faulhaber_direct, lift_decomposition, recurrence_residual, s1_closed,
    s2_closed_with, s3_closed_with, s_bruteforce,
};
use crate::w_function::{f_term, w_direct, w_euclid_with, w_from_s2, w_reduce_with, FTerm};

/// At most this many counterexamples are kept per law; the total is still
/// counted exactly.
pub const COUNTEREXAMPLE_CAP: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LawId {
    S1Formula,
    S2Formula,
    S3Formula,
    Prop1Recurrence,
    Prop2Decomposition,
    WPropI,
    WPropII,
    WPropIII,
    WPropIV,
    WReduction,
    WEuclid,
    WFromS2,
    RecipS2,
    RecipW,
    RecipS3,
    DedekindBridge,
    DedekindFast,
    DedekindReciprocity,
    DeltaParity,
    Prop5Expansion,
    FaulhaberXcheck,
}

impl LawId {
    pub const ALL: [LawId; 21] = [
        LawId::S1Formula,
        LawId::S2Formula,
        LawId::S3Formula,
        LawId::Prop1Recurrence,
        LawId::Prop2Decomposition,
        LawId::WPropI,
        LawId::WPropII,
        LawId::WPropIII,
        LawId::WPropIV,
        LawId::WReduction,
        LawId::WEuclid,
        LawId::WFromS2,
        LawId::RecipS2,
        LawId::RecipW,
        LawId::RecipS3,
        LawId::DedekindBridge,
        LawId::DedekindFast,
        LawId::DedekindReciprocity,
        LawId::DeltaParity,
        LawId::Prop5Expansion,
        LawId::FaulhaberXcheck,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LawId::S1Formula => "S1_FORMULA",
            LawId::S2Formula => "S2_FORMULA",
            LawId::S3Formula => "S3_FORMULA",
            LawId::Prop1Recurrence => "PROP1_RECURRENCE",
            LawId::Prop2Decomposition => "PROP2_DECOMPOSITION",
            LawId::WPropI => "W_PROP_I",
            LawId::WPropII => "W_PROP_II",
            LawId::WPropIII => "W_PROP_III",
            LawId::WPropIV => "W_PROP_IV",
            LawId::WReduction => "W_REDUCTION",
            LawId::WEuclid => "W_EUCLID",
            LawId::WFromS2 => "W_FROM_S2",
            LawId::RecipS2 => "RECIP_S2",
            LawId::RecipW => "RECIP_W",
            LawId::RecipS3 => "RECIP_S3",
            LawId::DedekindBridge => "DEDEKIND_BRIDGE",
            LawId::DedekindFast => "DEDEKIND_FAST",
            LawId::DedekindReciprocity => "DEDEKIND_RECIPROCITY",
            LawId::DeltaParity => "DELTA_PARITY",
            LawId::Prop5Expansion => "PROP5_EXPANSION",
            LawId::FaulhaberXcheck => "FAULHABER_XCHECK",
        }
    }

    /// The identity a sweep of this law checks, written out.
    pub fn identity(self) -> &'static str {
        match self {
            LawId::S1Formula => "S_1(n,m) = (m-1)(n-1)/2 + (gcd(n,m)-1)/2",
            LawId::S2Formula => {
                "S_2(n,m) = d/(6b) [(b-1)(2b-1) + a^2 (n-1)(2n-1)] - m(d-1)(b-1)/2 - (2m/b^2) W_b(a)"
            }
            LawId::S3Formula => {
                "S_3(n,m) = (d-1)am[(d-1)bm + (2d-1)(a-1)(b-1)]/4 + d(1+a^2)(b-1)[(d-1)a(2b-1) + (b-1)(a-1)]/(4b) + m(b-1)(a-1)/2 - (3/b^2) m(m-1) W_b(a)"
            }
            LawId::Prop1Recurrence => {
                "S_r(b,a) + sum_{i=0}^{r} (-1)^{i+1} C(r,i) (a-1)^{r-i} S_i(b,a) = 0 for coprime a, b"
            }
            LawId::Prop2Decomposition => {
                "S_r(n,m) = a^r F_r(d-1) + sum_{k=0}^{r} C(r,k) a^k F_k(d-1) S_{r-k}(b,a)"
            }
            LawId::WPropI => "W_n(a,b) = W_n(a mod n, b mod n)",
            LawId::WPropII => "W_n(ac,bc) = W_n(a,b) when gcd(c,n) = 1",
            LawId::WPropIII => "W_n(a) = W_n(b) when ab = 1 mod n",
            LawId::WPropIV => "W_n(a) + W_n(n-a) = n^2 (n-1)/2 for gcd(a,n) = 1",
            LawId::WReduction => "W_n(m) = d^2 W_b(a) + n^2 (d-1)(b-1)/4",
            LawId::WEuclid => {
                "W_{u0}(u1) = (u0^2/12) sum_{k<N} (-1)^k [(1+u_k^2)(1+u_{k+1}^2)/(u_k u_{k+1}) - (u_k-3)(u_{k+1}-3)]"
            }
            LawId::WFromS2 => "W_b(a) = (b/2) S_2(a,b) + (b/12)(b-1)(2b-1)(3-a)",
            LawId::RecipS2 => "a S_2(a,b) + b S_2(b,a) = (a-1)(2a-1)(b-1)(2b-1)/6",
            LawId::RecipW => "a^2 W_b(a) + b^2 W_a(b) = (ab/12)[(1+a^2)(1+b^2) - ab(a-3)(b-3)]",
            LawId::RecipS3 => {
                "a(a-1) S_3(a,b) + b(b-1) S_3(b,a) = (a-1)^2 (b-1)^2 [(a-1)(b-1) + ab]/4"
            }
            LawId::DedekindBridge => "W_a(b) = a^2 (s(b,a) + (a-1)/4)",
            LawId::DedekindFast => "s(b,a) = W_a(b)/a^2 - (a-1)/4 with W from the Euclid chain",
            LawId::DedekindReciprocity => "s(b,a) + s(a,b) = -1/4 + (a/b + 1/(ab) + b/a)/12",
            LawId::DeltaParity => {
                "delta(b; a_1..a_n) = 0 for odd n, and delta(b; empty) = (b-1)/b"
            }
            LawId::Prop5Expansion => {
                "S_r(b,a) = b/2^r sum_{u+v+w=r} C(r;u,v,w) (a/b)^u (-1/b)^v (a-1)^w delta(b; 1 x u, a x v)"
            }
            LawId::FaulhaberXcheck => {
                "F_r(n) by summation = F_r(n) by the Bernoulli polynomial"
            }
        }
    }

    /// Default maximum order for laws that sweep over `r`.
    pub fn default_r_max(self) -> Option<u32> {
        match self {
            LawId::Prop1Recurrence => Some(8),
            LawId::Prop2Decomposition => Some(5),
            LawId::Prop5Expansion => Some(6),
            LawId::FaulhaberXcheck => Some(10),
            _ => None,
        }
    }
}

impl fmt::Display for LawId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LawId {
    type Err = Error;

    /// Accepts `RECIP_W` as well as `recip-w`.
    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.trim().to_ascii_uppercase().replace('-', "_");
        LawId::ALL
            .iter()
            .copied()
            .find(|law| law.name() == wanted)
            .ok_or_else(|| Error::Usage(format!("unknown law id '{s}'")))
    }
}

impl Serialize for LawId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub input: Vec<(&'static str, i64)>,
    pub lhs: String,
    pub rhs: String,
}

impl Serialize for Counterexample {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Input<'a>(&'a [(&'static str, i64)]);
        impl Serialize for Input<'_> {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                let mut map = serializer.serialize_map(Some(self.0.len()))?;
                for (k, v) in self.0 {
                    map.serialize_entry(k, v)?;
                }
                map.end()
            }
        }
        let mut map = serializer.serialize_map(Some(3))?;
        map.serialize_entry("input", &Input(&self.input))?;
        map.serialize_entry("lhs", &self.lhs)?;
        map.serialize_entry("rhs", &self.rhs)?;
        map.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub law: LawId,
    pub identity: &'static str,
    pub range: String,
    pub cases_checked: u64,
    pub counterexample_total: u64,
    pub counterexamples: Vec<Counterexample>,
    pub status: Status,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Collects comparisons for one group of grid points.
#[derive(Default)]
struct Collector {
    checked: u64,
    failed: u64,
    kept: Vec<Counterexample>,
}

impl Collector {
    fn compare<T: PartialEq + fmt::Display>(
        &mut self,
        input: &[(&'static str, i64)],
        lhs: Result<T>,
        rhs: Result<T>,
    ) {
        self.checked += 1;
        let mismatch = match (&lhs, &rhs) {
            (Ok(l), Ok(r)) => l != r,
            _ => true,
        };
        if !mismatch {
            return;
        }
        self.failed += 1;
        if self.kept.len() < COUNTEREXAMPLE_CAP {
            let show = |v: &Result<T>| match v {
                Ok(v) => v.to_string(),
                Err(e) => format!("error: {e}"),
            };
            self.kept.push(Counterexample {
                input: input.to_vec(),
                lhs: show(&lhs),
                rhs: show(&rhs),
            });
        }
    }
}

fn sweep<G, F>(groups: &[G], eval: F) -> (u64, u64, Vec<Counterexample>)
where
    G: Sync,
    F: Fn(&G, &mut Collector) + Sync,
{
    let parts: Vec<Collector> = groups
        .par_iter()
        .map(|g| {
            let mut c = Collector::default();
            eval(g, &mut c);
            c
        })
        .collect();
    let mut checked = 0;
    let mut failed = 0;
    let mut kept = Vec::new();
    for part in parts {
        checked += part.checked;
        failed += part.failed;
        for ce in part.kept {
            if kept.len() < COUNTEREXAMPLE_CAP {
                kept.push(ce);
            }
        }
    }
    (checked, failed, kept)
}

fn big(v: i64) -> Int {
    Int::from(v)
}

fn coprime(a: i64, b: i64) -> bool {
    a.gcd(&b) == 1
}

fn as_rat(v: Result<Int>) -> Result<Rat> {
    v.map(Rat::from_integer)
}

fn frac(num: Int, den: i64) -> Rat {
    Rat::new(num, big(den))
}

/// Units of `Z/b` in `[1, b]`, i.e. the integers there coprime with `b`.
fn units(b: i64) -> Vec<i64> {
    (1..=b).filter(|&u| coprime(u, b)).collect()
}

/// Non-decreasing `len`-tuples over `pool`.
fn multisets(pool: &[i64], len: usize) -> Vec<Vec<i64>> {
    fn go(pool: &[i64], start: usize, len: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in start..pool.len() {
            cur.push(pool[i]);
            go(pool, i, len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(pool, 0, len, &mut Vec::new(), &mut out);
    out
}

const ARG_NAMES: [&str; 5] = ["a1", "a2", "a3", "a4", "a5"];

/// Runs sweeps. The Euclid-chain kernel is injectable so that a broken kernel
/// can be shown to be caught.
#[derive(Debug, Clone, Copy)]
pub struct Verifier {
    f: FTerm,
}

impl Default for Verifier {
    fn default() -> Self {
        Verifier { f: f_term }
    }
}

impl Verifier {
    pub fn with_f_term(f: FTerm) -> Self {
        Verifier { f }
    }

    pub fn run_all(&self, max_param: i64) -> Result<Vec<LawReport>> {
        self.run_all_with_r_max(max_param, None)
    }

    /// Like [`Verifier::run_all`], overriding the order bound of every law
    /// that sweeps over `r`.
    pub fn run_all_with_r_max(&self, max_param: i64, r_max: Option<u32>) -> Result<Vec<LawReport>> {
        LawId::ALL
            .iter()
            .map(|&law| self.run_law(law, max_param, r_max))
            .collect()
    }

    pub fn run_law(&self, law: LawId, max_param: i64, r_max: Option<u32>) -> Result<LawReport> {
        if max_param < 2 {
            return Err(Error::Usage(format!(
                "grid bound {max_param} is below the minimum of 2"
            )));
        }
        if r_max == Some(0) {
            return Err(Error::Usage("r bound must be at least 1".into()));
        }
        let m = max_param;
        let r = r_max.or(law.default_r_max()).unwrap_or(0);
        let f = self.f;
        let all: Vec<i64> = (1..=m).collect();

        let (range, (checked, failed, kept)) = match law {
            LawId::S1Formula => (
                format!("1 <= n, m <= {m}"),
                sweep(&all, |&n, c| {
                    for mm in 1..=m {
                        c.compare(
                            &[("n", n), ("m", mm)],
                            s1_closed(&big(n), &big(mm)),
                            s_bruteforce(1, &big(n), &big(mm)),
                        );
                    }
                }),
            ),
            LawId::S2Formula => (
                format!("1 <= n, m <= {m}"),
                sweep(&all, |&n, c| {
                    for mm in 1..=m {
                        c.compare(
                            &[("n", n), ("m", mm)],
                            s2_closed_with(&big(n), &big(mm), f),
                            as_rat(s_bruteforce(2, &big(n), &big(mm))),
                        );
                    }
                }),
            ),
            LawId::S3Formula => (
                format!("1 <= n, m <= {m}"),
                sweep(&all, |&n, c| {
                    for mm in 1..=m {
                        c.compare(
                            &[("n", n), ("m", mm)],
                            s3_closed_with(&big(n), &big(mm), f),
                            as_rat(s_bruteforce(3, &big(n), &big(mm))),
                        );
                    }
                }),
            ),
            LawId::Prop1Recurrence => (
                format!("coprime 1 <= b, a <= {m}, 1 <= r <= {r}"),
                sweep(&all, |&b, c| {
                    for a in (1..=m).filter(|&a| coprime(a, b)) {
                        let s: Vec<Int> = (0..=r)
                            .map(|i| s_bruteforce(i, &big(b), &big(a)).expect("valid grid point"))
                            .collect();
                        for rr in 1..=r {
                            c.compare(
                                &[("b", b), ("a", a), ("r", rr as i64)],
                                recurrence_residual(rr, &big(b), &big(a), &s[..=rr as usize]),
                                Ok(Int::zero()),
                            );
                        }
                    }
                }),
            ),
            LawId::Prop2Decomposition => (
                format!("1 <= n, m <= {m}, 1 <= r <= {r}"),
                sweep(&all, |&n, c| {
                    for mm in 1..=m {
                        let d = n.gcd(&mm);
                        let (b, a) = (n / d, mm / d);
                        let core: Vec<Int> = (0..=r)
                            .map(|i| s_bruteforce(i, &big(b), &big(a)).expect("valid grid point"))
                            .collect();
                        for rr in 1..=r {
                            c.compare(
                                &[("n", n), ("m", mm), ("r", rr as i64)],
                                lift_decomposition(rr, &big(n), &big(mm), &core[..=rr as usize]),
                                s_bruteforce(rr, &big(n), &big(mm)),
                            );
                        }
                    }
                }),
            ),
            LawId::WPropI => (
                format!("1 <= n <= {m}, 1 <= a, b <= 2n"),
                sweep(&all, |&n, c| {
                    for a in 1..=2 * n {
                        for b in 1..=2 * n {
                            c.compare(
                                &[("n", n), ("a", a), ("b", b)],
                                w_direct(&big(n), &big(a), &big(b)),
                                w_direct(&big(n), &big(a % n), &big(b % n)),
                            );
                        }
                    }
                }),
            ),
            LawId::WPropII => (
                format!("1 <= n <= {m}, 1 <= a <= n, b in {{1, 2, n-1}}, 2 <= c <= n with gcd(c, n) = 1"),
                sweep(&all, |&n, c| {
                    let mut bs: Vec<i64> = [1, 2, n - 1].into_iter().filter(|&b| b >= 1).collect();
                    bs.sort_unstable();
                    bs.dedup();
                    for a in 1..=n {
                        for &b in &bs {
                            for k in (2..=n).filter(|&k| coprime(k, n)) {
                                c.compare(
                                    &[("n", n), ("a", a), ("b", b), ("c", k)],
                                    w_direct(&big(n), &big(a * k), &big(b * k)),
                                    w_direct(&big(n), &big(a), &big(b)),
                                );
                            }
                        }
                    }
                }),
            ),
            LawId::WPropIII => (
                format!("1 <= n <= {m}, 1 <= a, b <= 2n with ab = 1 mod n"),
                sweep(&all, |&n, c| {
                    for a in 1..=2 * n {
                        for b in (1..=2 * n).filter(|&b| (a * b) % n == 1) {
                            c.compare(
                                &[("n", n), ("a", a), ("b", b)],
                                w_direct(&big(n), &big(a), &Int::from(1)),
                                w_direct(&big(n), &big(b), &Int::from(1)),
                            );
                        }
                    }
                }),
            ),
            LawId::WPropIV => (
                format!("2 <= n <= {m}, 1 <= a < n with gcd(a, n) = 1"),
                sweep(&all, |&n, c| {
                    for a in (1..n).filter(|&a| coprime(a, n)) {
                        let one = Int::from(1);
                        let lhs = w_direct(&big(n), &big(a), &one)
                            .and_then(|x| Ok(x + w_direct(&big(n), &big(n - a), &one)?));
                        c.compare(
                            &[("n", n), ("a", a)],
                            lhs,
                            Ok(big(n) * big(n) * big(n - 1) / 2),
                        );
                    }
                }),
            ),
            LawId::WReduction => (
                format!("1 <= n, m <= {m}"),
                sweep(&all, |&n, c| {
                    for mm in 1..=m {
                        c.compare(
                            &[("n", n), ("m", mm)],
                            w_reduce_with(&big(n), &big(mm), f),
                            as_rat(w_direct(&big(n), &big(mm), &Int::from(1))),
                        );
                    }
                }),
            ),
            LawId::WEuclid => (
                format!("2 <= n <= {m}, 1 <= m < n, gcd(n, m) = 1"),
                sweep(&all, |&n, c| {
                    for mm in (1..n).filter(|&x| coprime(x, n)) {
                        c.compare(
                            &[("n", n), ("m", mm)],
                            w_euclid_with(&big(n), &big(mm), f),
                            as_rat(w_direct(&big(n), &big(mm), &Int::from(1))),
                        );
                    }
                }),
            ),
            LawId::WFromS2 => (
                format!("2 <= b <= {m}, 1 <= a < b, gcd(a, b) = 1"),
                sweep(&all, |&b, c| {
                    for a in (1..b).filter(|&a| coprime(a, b)) {
                        c.compare(
                            &[("b", b), ("a", a)],
                            w_from_s2(&big(b), &big(a)),
                            w_direct(&big(b), &big(a), &Int::from(1)),
                        );
                    }
                }),
            ),
            LawId::RecipS2 => (
                format!("coprime 1 <= a, b <= {m}"),
                sweep(&all, |&a, c| {
                    for b in (1..=m).filter(|&b| coprime(a, b)) {
                        let lhs = s_bruteforce(2, &big(a), &big(b)).and_then(|x| {
                            Ok(x * a + s_bruteforce(2, &big(b), &big(a))? * b)
                        });
                        let rhs = frac(big((a - 1) * (2 * a - 1)) * ((b - 1) * (2 * b - 1)), 6);
                        c.compare(&[("a", a), ("b", b)], as_rat(lhs), Ok(rhs));
                    }
                }),
            ),
            LawId::RecipW => (
                format!("coprime 1 <= a, b <= {m}"),
                sweep(&all, |&a, c| {
                    let one = Int::from(1);
                    for b in (1..=m).filter(|&b| coprime(a, b)) {
                        let lhs = w_direct(&big(b), &big(a), &one).and_then(|x| {
                            Ok(x * (a * a) + w_direct(&big(a), &big(b), &one)? * (b * b))
                        });
                        let (ab, ba) = (big(a), big(b));
                        let body = (&ab * &ab + 1) * (&ba * &ba + 1)
                            - &ab * &ba * (&ab - 3) * (&ba - 3);
                        let rhs = frac(&ab * &ba * body, 12);
                        c.compare(&[("a", a), ("b", b)], as_rat(lhs), Ok(rhs));
                    }
                }),
            ),
            LawId::RecipS3 => (
                format!("coprime 1 <= a, b <= {m}"),
                sweep(&all, |&a, c| {
                    for b in (1..=m).filter(|&b| coprime(a, b)) {
                        let lhs = s_bruteforce(3, &big(a), &big(b)).and_then(|x| {
                            Ok(x * (a * (a - 1)) + s_bruteforce(3, &big(b), &big(a))? * (b * (b - 1)))
                        });
                        let (a1, b1) = (big(a - 1), big(b - 1));
                        let rhs = frac(
                            &a1 * &a1 * &b1 * &b1 * (&a1 * &b1 + a * b),
                            4,
                        );
                        c.compare(&[("a", a), ("b", b)], as_rat(lhs), Ok(rhs));
                    }
                }),
            ),
            LawId::DedekindBridge => (
                format!("coprime 1 <= a, b <= {m}"),
                sweep(&all, |&a, c| {
                    for b in (1..=m).filter(|&b| coprime(a, b)) {
                        let rhs = dedekind_direct(&big(b), &big(a)).map(|s| {
                            (s + frac(big(a - 1), 4)) * Rat::from_integer(big(a * a))
                        });
                        c.compare(
                            &[("a", a), ("b", b)],
                            as_rat(w_direct(&big(a), &big(b), &Int::from(1))),
                            rhs,
                        );
                    }
                }),
            ),
            LawId::DedekindFast => (
                format!("coprime 1 <= a, b <= {m}"),
                sweep(&all, |&a, c| {
                    for b in (1..=m).filter(|&b| coprime(a, b)) {
                        c.compare(
                            &[("a", a), ("b", b)],
                            dedekind_fast_with(&big(b), &big(a), f),
                            dedekind_direct(&big(b), &big(a)),
                        );
                    }
                }),
            ),
            LawId::DedekindReciprocity => (
                format!("coprime 1 <= a, b <= {m}"),
                sweep(&all, |&a, c| {
                    for b in (1..=m).filter(|&b| coprime(a, b)) {
                        let lhs = dedekind_direct(&big(b), &big(a))
                            .and_then(|x| Ok(x + dedekind_direct(&big(a), &big(b))?));
                        c.compare(
                            &[("a", a), ("b", b)],
                            lhs,
                            dedekind_reciprocity_rhs(&big(a), &big(b)),
                        );
                    }
                }),
            ),
            LawId::DeltaParity => (
                format!(
                    "1 <= b <= {m}; no arguments; odd argument counts 1 (all units), \
                     3 (multisets of the first 16 units), 5 (multisets of the first 8 units)"
                ),
                sweep(&all, |&b, c| {
                    c.compare(
                        &[("b", b), ("count", 0)],
                        delta_direct(&big(b), &[]),
                        Ok(frac(big(b - 1), b)),
                    );
                    let pool = units(b);
                    for (count, width) in [(1usize, pool.len()), (3, 16), (5, 8)] {
                        let width = width.min(pool.len());
                        for args in multisets(&pool[..width], count) {
                            let mut input = vec![("b", b), ("count", count as i64)];
                            input.extend(ARG_NAMES.iter().copied().zip(args.iter().copied()));
                            let args: Vec<Int> = args.into_iter().map(big).collect();
                            c.compare(&input, delta_direct(&big(b), &args), Ok(Rat::zero()));
                        }
                    }
                }),
            ),
            LawId::Prop5Expansion => (
                format!("coprime 1 <= b, a <= {m}, 1 <= r <= {r}"),
                sweep(&all, |&b, c| {
                    for a in (1..=m).filter(|&a| coprime(a, b)) {
                        let mut exp =
                            DeltaExpansion::new(&big(b), &big(a)).expect("valid grid point");
                        for rr in 1..=r {
                            c.compare(
                                &[("b", b), ("a", a), ("r", rr as i64)],
                                Ok(exp.floor_power_sum(rr)),
                                s_bruteforce(rr, &big(b), &big(a)),
                            );
                        }
                    }
                }),
            ),
            LawId::FaulhaberXcheck => {
                let top = 10 * m;
                let orders: Vec<u32> = (0..=r).collect();
                (
                    format!("0 <= r <= {r}, 0 <= n <= {top}"),
                    sweep(&orders, |&rr, c| {
                        // running definitional sum, checked against the
                        // polynomial at every n and against the standalone
                        // summation at the end
                        let mut running = Int::zero();
                        for n in 0..=top {
                            running += Pow::pow(big(n), rr);
                            c.compare(
                                &[("r", rr as i64), ("n", n)],
                                faulhaber_bernoulli(rr, &big(n)),
                                Ok(running.clone()),
                            );
                        }
                        c.compare(
                            &[("r", rr as i64), ("n", top)],
                            faulhaber_direct(rr, &big(top)),
                            Ok(running),
                        );
                    }),
                )
            }
        };

        Ok(LawReport {
            law,
            identity: law.identity(),
            range,
            cases_checked: checked,
            counterexample_total: failed,
            counterexamples: kept,
            status: if failed == 0 {
                Status::Pass
            } else {
                Status::Fail
            },
        })
    }
}

/// Sweeps one law with the true kernel.
pub fn run_law(law: LawId, max_param: i64, r_max: Option<u32>) -> Result<LawReport> {
    Verifier::default().run_law(law, max_param, r_max)
}

/// Sweeps every law with the same grid bound.
pub fn run_all(max_param: i64) -> Result<Vec<LawReport>> {
    Verifier::default().run_all(max_param)
}
