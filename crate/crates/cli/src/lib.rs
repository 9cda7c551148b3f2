//! Command-line front end for the `superjack` library.
//!
//! [`run`] parses arguments, executes one subcommand and returns the process
//! exit code: 0 on success, 1 when a verification fails, 2 on usage errors.

pub mod cache;
pub mod suites;

use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};
use superjack::cmsop::{apply_m_with, extract_eigenvalue, MixedTerm};
use superjack::coeffs::KValue;
use superjack::gauge::{conjugation_check, Verdict};
use superjack::jack::{chi_table, compute_chi_table, jack_in_monomial};
use superjack::partitions::partitions_up_to;
use superjack::superjack::{eigenvalue, super_jack};
use superjack::sympoly::Basis;
use superjack::{Partition, SparsePoly};

use cache::{canonical_json, CacheFile, ChiCache};
use suites::SuiteReport;

#[derive(Parser, Debug)]
#[command(
    name = "superjack",
    version,
    about = "Super-Jack polynomials and the deformed CMS operator"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Directory of the χ-table cache (overrides $SUPERJACK_CACHE).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Neither read nor write the χ-table cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Worker threads for verification suites.
    #[arg(long, default_value_t = 1, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: u16,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BasisArg {
    /// Monomial expansion.
    M,
    /// Power-sum coefficients (χ table).
    P,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Formula,
    Extract,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Theorem1,
    Schur,
    Gauge,
    Classical,
    Hooks,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CacheAction {
    Info,
    Clear,
    Rebuild,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Jack symmetric function P_λ.
    Jack {
        #[arg(long, value_parser = parse_partition)]
        lambda: Partition,
        #[arg(long, value_enum, default_value_t = BasisArg::P)]
        basis: BasisArg,
    },
    /// Super-Jack polynomial P_λ(x, y; k).
    Superjack {
        #[arg(long, value_parser = parse_partition)]
        lambda: Partition,
        #[arg(short)]
        n: usize,
        #[arg(short)]
        m: usize,
        #[arg(long, default_value = "generic", value_parser = parse_k)]
        k: KValue,
    },
    /// Apply the deformed CMS operator to a polynomial read from JSON.
    ApplyM {
        /// Path to a polynomial JSON file, or "-" for stdin.
        #[arg(long)]
        input: PathBuf,
        /// Use the undeformed mixed term (x∂x − y∂y) instead.
        #[arg(long)]
        literal_eq10: bool,
    },
    /// Eigenvalue of ℳ on P_λ.
    Eigen {
        #[arg(long, value_parser = parse_partition)]
        lambda: Partition,
        #[arg(short)]
        n: usize,
        #[arg(short)]
        m: usize,
        #[arg(long, value_enum, default_value_t = Method::Formula)]
        method: Method,
    },
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Inspect or manage the χ-table cache.
    Cache {
        #[arg(value_enum)]
        action: CacheAction,
        /// Largest weight to compute for `rebuild`.
        #[arg(long, default_value_t = 6)]
        max_weight: u32,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    #[arg(long)]
    max_weight: Option<u32>,
    #[arg(short)]
    n: Option<usize>,
    #[arg(short)]
    m: Option<usize>,
    #[arg(long, default_value = "generic", value_parser = parse_k)]
    k: KValue,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    tol: Option<f64>,
    /// Gauge suite: a single partition.
    #[arg(long, value_parser = parse_partition)]
    lambda: Option<Partition>,
    /// Gauge suite: sample points per case.
    #[arg(long)]
    points: Option<usize>,
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_k(s: &str) -> Result<KValue, String> {
    s.parse().map_err(|e| format!("{e}"))
}

struct Usage(String);

enum Outcome {
    Ok,
    Failed,
}

/// Parses `std::env::args` and runs against stdout/stderr.
pub fn run() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
            return code;
        }
    };

    let cache = (!cli.no_cache).then(|| ChiCache::locate(cli.cache_dir.as_deref()));
    let uses_store = !matches!(cli.command, Command::Cache { .. } | Command::ApplyM { .. });
    let loaded = match (&cache, uses_store) {
        (Some(c), true) => match c.seed_store() {
            Ok(l) => Some(l),
            Err(e) => {
                let _ = writeln!(
                    err,
                    "warning: cache unreadable at {}: {e}",
                    c.path().display()
                );
                None
            }
        },
        _ => None,
    };

    let result = execute(&cli, cache.as_ref(), out, err);

    if let (Some(c), Some(l)) = (&cache, &loaded) {
        if let Err(e) = c.write_back(l) {
            let _ = writeln!(
                err,
                "warning: cache not written to {}: {e}",
                c.path().display()
            );
        }
    }

    match result {
        Ok(Outcome::Ok) => 0,
        Ok(Outcome::Failed) => 1,
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn emit(out: &mut dyn Write, format: Format, json: &Value, text: impl FnOnce() -> String) {
    let s = match format {
        Format::Json => canonical_json(json),
        Format::Text => text().trim_end().to_string(),
    };
    let _ = writeln!(out, "{s}");
}

fn check_shape(lambda: &Partition, n: usize, m: usize) -> Result<(), Usage> {
    if n + m == 0 && lambda.weight() > 0 {
        return Err(Usage("need n + m > 0 for a nonempty partition".into()));
    }
    Ok(())
}

fn execute(
    cli: &Cli,
    cache: Option<&ChiCache>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<Outcome, Usage> {
    let fmt = cli.format;
    match &cli.command {
        Command::Jack { lambda, basis } => {
            match basis {
                BasisArg::P => {
                    let t = chi_table(lambda);
                    let v = serde_json::to_value(&*t).expect("serializable");
                    emit(out, fmt, &v, || {
                        t.entries
                            .iter()
                            .map(|(mu, c)| format!("p[{mu}]: {c}\n"))
                            .collect()
                    });
                }
                BasisArg::M => {
                    let v = jack_in_monomial(lambda);
                    debug_assert_eq!(v.basis(), Basis::Monomial);
                    let coeffs: serde_json::Map<String, Value> = v
                        .coeffs()
                        .iter()
                        .map(|(mu, c)| {
                            (
                                mu.to_string(),
                                serde_json::to_value(c).expect("serializable"),
                            )
                        })
                        .collect();
                    let j = json!({"lambda": lambda, "basis": "monomial", "coeffs": coeffs});
                    emit(out, fmt, &j, || {
                        v.coeffs()
                            .iter()
                            .map(|(mu, c)| format!("m[{mu}]: {c}\n"))
                            .collect()
                    });
                }
            }
            Ok(Outcome::Ok)
        }
        Command::Superjack { lambda, n, m, k } => {
            check_shape(lambda, *n, *m)?;
            let sj = super_jack(lambda, *n, *m);
            let e = eigenvalue(lambda, *n, *m);
            let (poly, e) = match k {
                KValue::Generic => (sj.poly, e),
                KValue::Rational(k0) => {
                    let p = sj.poly.specialize_k(k0).map_err(|e| Usage(e.to_string()))?;
                    let ev = e.specialize(k0).map_err(|e| Usage(e.to_string()))?;
                    (p, superjack::RatK::from_rational(&ev))
                }
            };
            let j = json!({
                "lambda": lambda,
                "n": n,
                "m": m,
                "poly": poly,
                "eigenvalue": e,
            });
            emit(out, fmt, &j, || {
                format!("P[{lambda}] = {poly}\neigenvalue = {e}")
            });
            Ok(Outcome::Ok)
        }
        Command::ApplyM {
            input,
            literal_eq10,
        } => {
            let text = if input.as_os_str() == "-" {
                let mut s = String::new();
                io::stdin()
                    .read_to_string(&mut s)
                    .map_err(|e| Usage(format!("reading stdin: {e}")))?;
                s
            } else {
                std::fs::read_to_string(input)
                    .map_err(|e| Usage(format!("reading {}: {e}", input.display())))?
            };
            let f: SparsePoly = serde_json::from_str(&text)
                .map_err(|e| Usage(format!("invalid polynomial: {e}")))?;
            let mixed = if *literal_eq10 {
                MixedTerm::Undeformed
            } else {
                MixedTerm::Deformed
            };
            match apply_m_with(&f, f.n(), f.m(), mixed) {
                Ok(g) => {
                    let mut j = serde_json::to_value(&g).expect("serializable");
                    j["remainder_checks"] = json!("ok");
                    emit(out, fmt, &j, || g.to_string());
                    Ok(Outcome::Ok)
                }
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    Ok(Outcome::Failed)
                }
            }
        }
        Command::Eigen {
            lambda,
            n,
            m,
            method,
        } => {
            check_shape(lambda, *n, *m)?;
            let e = match method {
                Method::Formula => eigenvalue(lambda, *n, *m),
                Method::Extract => match extract_eigenvalue(lambda, *n, *m) {
                    Ok(e) => e,
                    Err(e) => {
                        let _ = writeln!(err, "error: {e}");
                        return Ok(Outcome::Failed);
                    }
                },
            };
            emit(out, fmt, &json!({"eigenvalue": e}), || e.to_string());
            Ok(Outcome::Ok)
        }
        Command::Verify(args) => verify(args, cli.jobs as usize, fmt, out),
        Command::Cache { action, max_weight } => {
            let Some(cache) = cache else {
                return Err(Usage(
                    "cache commands cannot be combined with --no-cache".into(),
                ));
            };
            let path = cache.path().display().to_string();
            match action {
                CacheAction::Info => {
                    let loaded = cache.load().map_err(|e| Usage(format!("{path}: {e}")))?;
                    let exists = cache.path().exists();
                    let recs = &loaded.file.records;
                    let max_w = recs.iter().map(|r| r.lambda.weight()).max();
                    let j = json!({
                        "path": path,
                        "exists": exists,
                        "records": recs.len().to_string(),
                        "max_weight": max_w.map(|w| w.to_string()),
                        "discarded": loaded.discarded,
                    });
                    emit(out, fmt, &j, || {
                        format!(
                            "path: {path}\nexists: {exists}\nrecords: {}\nmax weight: {}\ndiscarded: {}",
                            recs.len(),
                            max_w.map_or("-".into(), |w| w.to_string()),
                            loaded.discarded.join(" ")
                        )
                    });
                }
                CacheAction::Clear => {
                    let removed = cache.clear().map_err(|e| Usage(format!("{path}: {e}")))?;
                    emit(out, fmt, &json!({"path": path, "removed": removed}), || {
                        format!("{} {path}", if removed { "removed" } else { "nothing at" })
                    });
                }
                CacheAction::Rebuild => {
                    let file = CacheFile {
                        records: partitions_up_to(*max_weight)
                            .iter()
                            .map(compute_chi_table)
                            .collect(),
                        ..Default::default()
                    };
                    cache
                        .save(&file)
                        .map_err(|e| Usage(format!("{path}: {e}")))?;
                    let n = file.records.len();
                    emit(
                        out,
                        fmt,
                        &json!({"path": path, "records": n.to_string()}),
                        || format!("wrote {n} records to {path}"),
                    );
                }
            }
            Ok(Outcome::Ok)
        }
    }
}

fn pairs_from(
    n: Option<usize>,
    m: Option<usize>,
    default: Vec<(usize, usize)>,
) -> Vec<(usize, usize)> {
    match (n, m) {
        (None, None) => default,
        (Some(n), Some(m)) => vec![(n, m)],
        (Some(n), None) => {
            let ms: Vec<usize> = default.iter().filter(|p| p.0 == n).map(|p| p.1).collect();
            if ms.is_empty() {
                vec![(n, 0)]
            } else {
                ms.into_iter().map(|m| (n, m)).collect()
            }
        }
        (None, Some(m)) => {
            let ns: Vec<usize> = default.iter().filter(|p| p.1 == m).map(|p| p.0).collect();
            if ns.is_empty() {
                vec![(0, m)]
            } else {
                ns.into_iter().map(|n| (n, m)).collect()
            }
        }
    }
}

fn verify(
    args: &VerifyArgs,
    jobs: usize,
    fmt: Format,
    out: &mut dyn Write,
) -> Result<Outcome, Usage> {
    let unused = |name: &str, present: bool| {
        if present {
            Err(Usage(format!("--{name} does not apply to this suite")))
        } else {
            Ok(())
        }
    };
    if !matches!(args.suite, Suite::Gauge) {
        unused("seed", args.seed.is_some())?;
        unused("tol", args.tol.is_some())?;
        unused("lambda", args.lambda.is_some())?;
        unused("points", args.points.is_some())?;
    }
    if let Some(t) = args.tol {
        if !(t.is_finite() && t > 0.0) {
            return Err(Usage("--tol must be positive".into()));
        }
    }
    let report: SuiteReport = match args.suite {
        Suite::Theorem1 => {
            let d = suites::Theorem1Params::default();
            suites::theorem1(
                &suites::Theorem1Params {
                    pairs: pairs_from(args.n, args.m, d.pairs),
                    max_weight: args.max_weight.unwrap_or(d.max_weight),
                    k: args.k.clone(),
                },
                jobs,
            )
        }
        Suite::Schur => {
            let one = BigRational::from_integer(1.into());
            if !matches!(&args.k, KValue::Generic) && args.k != KValue::Rational(one) {
                return Err(Usage("the schur suite runs at k = 1 only".into()));
            }
            let d = suites::SchurParams::default();
            suites::schur(
                &suites::SchurParams {
                    pairs: pairs_from(args.n, args.m, d.pairs),
                    max_weight: args.max_weight.unwrap_or(d.max_weight),
                },
                jobs,
            )
        }
        Suite::Classical => {
            if args.m.is_some_and(|m| m != 0) {
                return Err(Usage("the classical suite requires m = 0".into()));
            }
            unused("k", !matches!(args.k, KValue::Generic))?;
            let d = suites::ClassicalParams::default();
            suites::classical(
                &suites::ClassicalParams {
                    ns: args.n.map_or(d.ns, |n| vec![n]),
                    max_weight: args.max_weight.unwrap_or(d.max_weight),
                },
                jobs,
            )
        }
        Suite::Hooks => {
            unused("k", !matches!(args.k, KValue::Generic))?;
            let d = suites::HooksParams::default();
            suites::hooks(
                &suites::HooksParams {
                    pairs: pairs_from(args.n, args.m, d.pairs),
                    max_weight: args.max_weight.unwrap_or(d.max_weight),
                },
                jobs,
            )
        }
        Suite::Gauge => {
            unused("max-weight", args.max_weight.is_some())?;
            let d = suites::GaugeParams::default();
            let seed = args.seed.unwrap_or(d.seed);
            let points = args.points.unwrap_or(d.points);
            let tol = args.tol.unwrap_or(d.tol);
            if points == 0 {
                return Err(Usage("--points must be at least 1".into()));
            }
            // fully specified: one GaugeReport
            if let (Some(lambda), Some(n), Some(m), KValue::Rational(k0)) =
                (&args.lambda, args.n, args.m, &args.k)
            {
                if !lambda.in_hook(n, m) {
                    return Err(Usage(format!("({lambda}) is not in the ({n},{m}) hook")));
                }
                let r = conjugation_check(lambda, n, m, k0, points, seed, tol)
                    .map_err(|e| Usage(e.to_string()))?;
                let j = serde_json::to_value(&r).expect("serializable");
                emit(out, fmt, &j, || {
                    format!(
                        "{} gauge lambda={lambda} n={n} m={m} k={k0} max_residual={:e}",
                        if r.verdict == Verdict::Pass {
                            "PASS"
                        } else {
                            "FAIL"
                        },
                        r.max_residual
                    )
                });
                return Ok(if r.verdict == Verdict::Pass {
                    Outcome::Ok
                } else {
                    Outcome::Failed
                });
            }
            suites::gauge(
                &suites::GaugeParams {
                    lambdas: args.lambda.clone().map_or(d.lambdas, |l| vec![l]),
                    pairs: pairs_from(args.n, args.m, d.pairs),
                    ks: match &args.k {
                        KValue::Generic => d.ks,
                        KValue::Rational(k0) => vec![k0.clone()],
                    },
                    points,
                    seed,
                    tol,
                    ..d
                },
                jobs,
            )
        }
    };
    let j = serde_json::to_value(&report).expect("serializable");
    emit(out, fmt, &j, || report.to_text());
    Ok(if report.passed_all() {
        Outcome::Ok
    } else {
        Outcome::Failed
    })
}
