//! The `floorsum-lab` command line.
//!
//! Argument conventions, fixed for every subcommand:
//!
//! | command     | quantity                          |
//! |-------------|-----------------------------------|
//! | `s`         | `S_r(n, m)`                       |
//! | `w`         | `W_n(a, b)`, `--b` defaults to 1  |
//! | `dedekind`  | `s(b, a)`, modulus `a`            |
//! | `delta`     | `delta(b; args...)`               |
//! | `faulhaber` | `F_r(n)`                          |
//!
//! Every command writes JSON lines to standard output. Exit code 0 means
//! success, 1 means an identity violation was found, 2 means a usage or
//! precondition error; on exit 2 nothing is written to standard output.

use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::One;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::dedekind::{dedekind_direct, dedekind_fast, delta_direct};
use crate::error::{Error, Result};
use crate::exact_arith::{Int, Rat};
use crate::floor_sums::{faulhaber_bernoulli, faulhaber_direct, s_general, Method};
use crate::verify::{LawId, Verifier};
use crate::w_function::{w_direct, w_euclid, w_euclid_chain_length, w_from_s2, w_reduce};

/// Moduli above this are never evaluated by a direct sum in `bench`.
pub const DIRECT_FEASIBILITY_LIMIT: u64 = 10_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "floorsum-lab",
    version,
    about = "Exact floor-power sums, W and Dedekind sums"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one quantity.
    Compute {
        #[command(subcommand)]
        what: Quantity,
    },
    /// Sweep one identity, or all of them, over a parameter grid.
    Verify {
        /// Law id such as `recip-w`, or `all`.
        #[arg(long)]
        law: String,
        #[arg(long)]
        max: i64,
        #[arg(long)]
        rmax: Option<u32>,
    },
    /// Time the Euclid-chain route against the direct sum on worst-case pairs.
    Bench {
        #[arg(long, value_enum)]
        target: BenchTarget,
        /// Decimal digits of the modulus.
        #[arg(long)]
        scale: u32,
        #[arg(long, default_value_t = 1)]
        trials: u32,
    },
}

#[derive(Debug, Subcommand)]
enum Quantity {
    S(SArgs),
    W(WArgs),
    Dedekind(DedekindArgs),
    Delta(DeltaArgs),
    Faulhaber(FaulhaberArgs),
}

#[derive(Debug, Args)]
struct SArgs {
    #[arg(long)]
    r: u32,
    #[arg(long)]
    n: Int,
    #[arg(long)]
    m: Int,
    #[arg(long)]
    method: Option<String>,
}

#[derive(Debug, Args)]
struct WArgs {
    #[arg(long)]
    n: Int,
    #[arg(long)]
    a: Int,
    #[arg(long)]
    b: Option<Int>,
    #[arg(long)]
    method: Option<String>,
}

#[derive(Debug, Args)]
struct DedekindArgs {
    #[arg(long)]
    b: Int,
    #[arg(long)]
    a: Int,
    #[arg(long)]
    method: Option<String>,
}

#[derive(Debug, Args)]
struct DeltaArgs {
    #[arg(long)]
    b: Int,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    args: Vec<Int>,
    #[arg(long)]
    method: Option<String>,
}

#[derive(Debug, Args)]
struct FaulhaberArgs {
    #[arg(long)]
    r: u32,
    #[arg(long)]
    n: Int,
    #[arg(long)]
    method: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BenchTarget {
    Dedekind,
    W,
}

#[derive(Debug, Serialize)]
struct OutputRecord {
    query: Map<String, Value>,
    value: String,
    method: &'static str,
    elapsed_ns: u64,
}

#[derive(Debug, Serialize)]
struct BenchRecord {
    query: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<String>,
    method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ns: Option<u64>,
    chain_length: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    status: Option<&'static str>,
}

fn query(command: &str, params: &[(&str, String)]) -> Map<String, Value> {
    let mut map = Map::new();
    map.insert("command".into(), Value::String(command.into()));
    for (k, v) in params {
        map.insert((*k).into(), Value::String(v.clone()));
    }
    map
}

fn elapsed(start: Instant) -> u64 {
    start.elapsed().as_nanos().try_into().unwrap_or(u64::MAX)
}

/// Runs the command line, writing records to `out` and diagnostics to `err`.
/// Returns the process exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                2
            } else {
                let _ = write!(out, "{}", e.render());
                0
            };
            return code;
        }
    };
    // everything is buffered so that a failing command leaves stdout empty
    let mut lines = Vec::new();
    let result = match cli.command {
        Command::Compute { what } => compute(what).map(|rec| {
            lines.push(serde_json::to_string(&rec).expect("record serializes"));
            0
        }),
        Command::Verify { law, max, rmax } => verify(&law, max, rmax, &mut lines),
        Command::Bench {
            target,
            scale,
            trials,
        } => bench(target, scale, trials, &mut lines),
    };
    match result {
        Ok(code) => {
            for line in lines {
                if writeln!(out, "{line}").is_err() {
                    return 2;
                }
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// Entry point for the binary.
pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn unknown_method(command: &str, method: &str) -> Error {
    Error::Usage(format!("unknown method '{method}' for {command}"))
}

fn compute(what: Quantity) -> Result<OutputRecord> {
    let start = Instant::now();
    let (query, value, method): (_, Rat, &'static str) = match what {
        Quantity::S(a) => {
            let method = match a.method.as_deref() {
                None if a.r <= 3 => Method::ClosedForm,
                None => Method::DeltaExpansion,
                Some("closed" | "closed_form" | "closed-form") => Method::ClosedForm,
                Some("bruteforce" | "direct") => Method::BruteForce,
                Some("recurrence") => Method::Recurrence,
                Some("delta" | "delta_expansion" | "delta-expansion") => Method::DeltaExpansion,
                Some(other) => return Err(unknown_method("s", other)),
            };
            let res = s_general(a.r, &a.n, &a.m, method)?;
            (
                query(
                    "s",
                    &[
                        ("r", a.r.to_string()),
                        ("n", a.n.to_string()),
                        ("m", a.m.to_string()),
                    ],
                ),
                Rat::from_integer(res.value),
                res.method.as_str(),
            )
        }
        Quantity::W(a) => {
            let b = a.b.unwrap_or_else(Int::one);
            let q = query(
                "w",
                &[
                    ("n", a.n.to_string()),
                    ("a", a.a.to_string()),
                    ("b", b.to_string()),
                ],
            );
            let method = a.method.as_deref().unwrap_or("reduce");
            let unit_b = || {
                if b.is_one() {
                    Ok(())
                } else {
                    Err(Error::UnsupportedMethod {
                        method: "w",
                        detail: format!("method '{method}' needs b = 1"),
                    })
                }
            };
            let (v, name) = match method {
                "bruteforce" | "direct" => (w_direct(&a.n, &a.a, &b)?, "bruteforce"),
                "euclid" | "fast" => {
                    unit_b()?;
                    (w_euclid(&a.n, &a.a)?, "euclid")
                }
                "reduce" => {
                    unit_b()?;
                    (w_reduce(&a.n, &a.a)?, "reduce")
                }
                "from-s2" | "from_s2" => {
                    unit_b()?;
                    (w_from_s2(&a.n, &a.a)?, "from_s2")
                }
                other => return Err(unknown_method("w", other)),
            };
            (q, Rat::from_integer(v), name)
        }
        Quantity::Dedekind(a) => {
            let q = query(
                "dedekind",
                &[("b", a.b.to_string()), ("a", a.a.to_string())],
            );
            match a.method.as_deref().unwrap_or("fast") {
                "bruteforce" | "direct" => (q, dedekind_direct(&a.b, &a.a)?, "bruteforce"),
                "fast" | "euclid" => (q, dedekind_fast(&a.b, &a.a)?, "fast"),
                other => return Err(unknown_method("dedekind", other)),
            }
        }
        Quantity::Delta(a) => {
            let list: Vec<String> = a.args.iter().map(|x| x.to_string()).collect();
            let q = query("delta", &[("b", a.b.to_string()), ("args", list.join(","))]);
            match a.method.as_deref().unwrap_or("bruteforce") {
                "bruteforce" | "direct" => (q, delta_direct(&a.b, &a.args)?, "bruteforce"),
                other => return Err(unknown_method("delta", other)),
            }
        }
        Quantity::Faulhaber(a) => {
            let q = query(
                "faulhaber",
                &[("r", a.r.to_string()), ("n", a.n.to_string())],
            );
            let (v, name) = match a.method.as_deref().unwrap_or("closed") {
                "bruteforce" | "direct" => (faulhaber_direct(a.r, &a.n)?, "bruteforce"),
                "closed" | "closed_form" | "bernoulli" => {
                    (faulhaber_bernoulli(a.r, &a.n)?, "closed_form")
                }
                other => return Err(unknown_method("faulhaber", other)),
            };
            (q, Rat::from_integer(v), name)
        }
    };
    Ok(OutputRecord {
        query,
        value: value.to_string(),
        method,
        elapsed_ns: elapsed(start),
    })
}

fn verify(law: &str, max: i64, rmax: Option<u32>, lines: &mut Vec<String>) -> Result<i32> {
    let laws: Vec<LawId> = if law.eq_ignore_ascii_case("all") {
        LawId::ALL.to_vec()
    } else {
        vec![law.parse()?]
    };
    let verifier = Verifier::default();
    let mut code = 0;
    for law in laws {
        let report = verifier.run_law(law, max, rmax)?;
        if !report.passed() {
            code = 1;
        }
        lines.push(serde_json::to_string(&report).expect("report serializes"));
    }
    Ok(code)
}

/// The worst-case pair for `bench`: `(F_{k+t}, F_{k+t-2})` where `F_k` is the
/// smallest Fibonacci number with at least `scale` digits, at least
/// `5 * 10^(scale-1)`. Consecutive-but-one Fibonacci numbers maximise the
/// length of the remainder chain for their size.
pub fn bench_pair(scale: u32, trial: u32) -> Result<(Int, Int)> {
    if scale == 0 {
        return Err(Error::Usage("scale must be at least 1".into()));
    }
    let floor = Int::from(5) * num_traits::pow(Int::from(10), (scale - 1) as usize);
    // fib[i] = F_i with F_1 = F_2 = 1
    let mut fib = vec![Int::from(0), Int::from(1), Int::from(1)];
    while fib.last().expect("nonempty") < &floor {
        let next = &fib[fib.len() - 1] + &fib[fib.len() - 2];
        fib.push(next);
    }
    let k = fib.len() - 1 + trial as usize;
    while fib.len() <= k {
        let next = &fib[fib.len() - 1] + &fib[fib.len() - 2];
        fib.push(next);
    }
    Ok((fib[k].clone(), fib[k - 2].clone()))
}

fn bench(target: BenchTarget, scale: u32, trials: u32, lines: &mut Vec<String>) -> Result<i32> {
    if trials == 0 {
        return Err(Error::Usage("trials must be at least 1".into()));
    }
    let limit = Int::from(DIRECT_FEASIBILITY_LIMIT);
    let mut code = 0;
    for trial in 0..trials {
        let (modulus, arg) = bench_pair(scale, trial)?;
        let chain_length = w_euclid_chain_length(&modulus, &arg)?;
        let (command, params) = match target {
            BenchTarget::Dedekind => (
                "dedekind",
                vec![("b", arg.to_string()), ("a", modulus.to_string())],
            ),
            BenchTarget::W => (
                "w",
                vec![
                    ("n", modulus.to_string()),
                    ("a", arg.to_string()),
                    ("b", "1".into()),
                ],
            ),
        };
        let mut params = params;
        params.insert(0, ("trial", trial.to_string()));
        params.insert(0, ("scale", scale.to_string()));
        let q = query(&format!("bench-{command}"), &params);

        let eval = |fast: bool| -> Result<Rat> {
            match (target, fast) {
                (BenchTarget::Dedekind, true) => dedekind_fast(&arg, &modulus),
                (BenchTarget::Dedekind, false) => dedekind_direct(&arg, &modulus),
                (BenchTarget::W, true) => w_euclid(&modulus, &arg).map(Rat::from_integer),
                (BenchTarget::W, false) => {
                    w_direct(&modulus, &arg, &Int::one()).map(Rat::from_integer)
                }
            }
        };

        let start = Instant::now();
        let fast = eval(true)?;
        let fast_ns = elapsed(start);
        lines.push(record(BenchRecord {
            query: q.clone(),
            value: Some(fast.to_string()),
            method: "fast",
            elapsed_ns: Some(fast_ns),
            chain_length,
            status: None,
        }));

        if modulus > limit {
            lines.push(record(BenchRecord {
                query: q,
                value: None,
                method: "direct",
                elapsed_ns: None,
                chain_length,
                status: Some("skipped: infeasible"),
            }));
            continue;
        }
        let start = Instant::now();
        let direct = eval(false)?;
        let direct_ns = elapsed(start);
        let agree = direct == fast;
        if !agree {
            code = 1;
        }
        lines.push(record(BenchRecord {
            query: q,
            value: Some(direct.to_string()),
            method: "direct",
            elapsed_ns: Some(direct_ns),
            chain_length,
            status: Some(if agree { "agree" } else { "mismatch" }),
        }));
    }
    Ok(code)
}

fn record(rec: BenchRecord) -> String {
    serde_json::to_string(&rec).expect("record serializes")
}
