use std::io::{self, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use cmlt::classify::{classify_anomalous, classify_positivity, classify_symmetry};
use cmlt::constants::{hl_constant, hl_constant_ap, varpi, Method};
use cmlt::counts::{count_fixed_trace, count_hl, count_hl_ap, count_trace, count_traces, QuadPoly};
use cmlt::frobenius::CurveSpec;
use cmlt::verify::{run_suite, Scale, Suite};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "cmlt", version, about = "Lang-Trotter experiments for CM elliptic curves")]
struct Cli {
    /// Worker threads (default: hardware parallelism). CMLT_THREADS overrides.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Output format; not every command supports every format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Positivity,
    Anomalous,
    Symmetry,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Symbols,
    GaussSums,
    Frobenius,
    ResidueCounts,
    Classifiers,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Histogram of a_p over good primes p ≤ x.
    Traces {
        #[arg(long = "D")]
        d: i64,
        #[arg(long, allow_negative_numbers = true)]
        g: i64,
        #[arg(long)]
        x: u64,
        #[arg(long, allow_negative_numbers = true, default_value_t = -20)]
        r_min: i64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 20)]
        r_max: i64,
    },
    /// The constant ϖ_{E,r} with its exact finite factor.
    Constant {
        #[arg(long = "D")]
        d: i64,
        #[arg(long, allow_negative_numbers = true)]
        g: i64,
        #[arg(long, allow_negative_numbers = true)]
        r: i64,
        #[arg(long)]
        cutoff: Option<u64>,
        #[arg(long, default_value = "accelerated")]
        method: Method,
    },
    /// Positivity, anomalous-prime or symmetry verdict.
    Classify {
        #[arg(long = "D")]
        d: i64,
        #[arg(long, allow_negative_numbers = true)]
        g: i64,
        #[arg(long, allow_negative_numbers = true)]
        r: Option<i64>,
        #[arg(long, value_enum, default_value = "positivity")]
        mode: Mode,
    },
    /// Empirical π_{E,r}(x) against ϖ·√x/log x.
    Compare {
        #[arg(long = "D")]
        d: i64,
        #[arg(long, allow_negative_numbers = true)]
        g: i64,
        #[arg(long, allow_negative_numbers = true)]
        r: i64,
        #[arg(long)]
        x: u64,
        #[arg(long)]
        cutoff: Option<u64>,
        #[arg(long, default_value = "accelerated")]
        method: Method,
    },
    /// π_{D,r}(x) by prime elements and by the fixed-trace polynomial.
    FixedTrace {
        #[arg(long = "D")]
        d: i64,
        #[arg(long, allow_negative_numbers = true)]
        r: i64,
        #[arg(long)]
        x: u64,
    },
    /// Primes of the form am² + bm + c against the Hardy-Littlewood constant.
    Hl {
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        #[arg(long, allow_negative_numbers = true)]
        b: i64,
        #[arg(long, allow_negative_numbers = true)]
        c: i64,
        #[arg(long)]
        x: u64,
        #[arg(long, requires = "u")]
        q: Option<u64>,
        #[arg(long, allow_negative_numbers = true, requires = "q")]
        u: Option<i64>,
        #[arg(long, default_value_t = 1_000_000)]
        cutoff: u64,
    },
    /// Run an oracle suite and print pass/fail per property.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        /// Smaller grids for a fast check.
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Serialize)]
struct Metadata {
    cutoff: Option<u64>,
    method: Option<Method>,
    runtime_ms: u128,
    version: &'static str,
}

#[derive(Serialize)]
struct Report {
    command: &'static str,
    parameters: Value,
    results: Value,
    metadata: Metadata,
}

enum Failure {
    Usage(String),
    Suite,
}

impl From<cmlt::Error> for Failure {
    fn from(e: cmlt::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Four significant digits.
fn sig4(v: f64) -> String {
    if !v.is_finite() {
        return "NA".into();
    }
    if v == 0.0 {
        return "0".into();
    }
    let digits = 3 - v.abs().log10().floor() as i32;
    format!("{:.*}", digits.max(0) as usize, v)
}

fn predicted(varpi: f64, x: u64) -> f64 {
    let xf = x as f64;
    varpi * xf.sqrt() / xf.ln()
}

fn format_for(requested: Option<Format>, default: Format, allowed: &[Format]) -> Result<Format, Failure> {
    let f = requested.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(Failure::Usage("this command does not support the requested --format".into()))
    }
}

fn emit_json(report: &Report) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, report).map_err(|e| Failure::Usage(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

fn emit_text(lines: &[(String, String)]) -> Result<(), Failure> {
    let width = lines.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    let mut out = io::stdout().lock();
    for (k, v) in lines {
        writeln!(out, "{k:<width$}  {v}")?;
    }
    Ok(())
}

fn kv(k: &str, v: impl ToString) -> (String, String) {
    (k.to_string(), v.to_string())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let start = Instant::now();
    let meta = |cutoff, method| Metadata {
        cutoff,
        method,
        runtime_ms: start.elapsed().as_millis(),
        version: env!("CARGO_PKG_VERSION"),
    };
    match cli.command {
        Command::Traces { d, g, x, r_min, r_max } => {
            let fmt = format_for(cli.format, Format::Csv, &[Format::Csv, Format::Json])?;
            let curve = CurveSpec::new(d, g)?;
            let hist = count_traces(&curve, x, r_min, r_max)?;
            if fmt == Format::Csv {
                let mut w = csv::Writer::from_writer(io::stdout().lock());
                w.write_record(["r", "count"]).map_err(|e| Failure::Usage(e.to_string()))?;
                for (r, c) in &hist.counts {
                    w.write_record([r.to_string(), c.to_string()]).map_err(|e| Failure::Usage(e.to_string()))?;
                }
                w.flush()?;
                return Ok(());
            }
            emit_json(&Report {
                command: "traces",
                parameters: json!({ "D": d, "g": g, "x": x, "r_min": r_min, "r_max": r_max }),
                results: serde_json::to_value(&hist).unwrap(),
                metadata: meta(None, None),
            })
        }
        Command::Constant { d, g, r, cutoff, method } => {
            let fmt = format_for(cli.format, Format::Text, &[Format::Text, Format::Json])?;
            let cutoff = cutoff.unwrap_or(method.default_cutoff());
            let rep = varpi(d, g, r, cutoff, method)?;
            if fmt == Format::Json {
                return emit_json(&Report {
                    command: "constant",
                    parameters: json!({ "D": d, "g": g, "r": r }),
                    results: serde_json::to_value(&rep).unwrap(),
                    metadata: meta(Some(cutoff), Some(method)),
                });
            }
            let f = &rep.factorization;
            let mut lines = vec![
                kv("curve", CurveSpec::new(d, g)?.model()),
                kv("g", format!("(-1)^{} 2^{} D^{} {}", f.delta, f.lambda, f.mu, f.g1)),
                kv("xi", rep.xi),
                kv("finite factor", rep.finite_factor),
            ];
            lines.extend(rep.breakdown.iter().map(|(k, v)| kv(&format!("  {k}"), v)));
            lines.push(kv("euler product", format!("{:.10}", rep.euler_value)));
            lines.push(kv("h", format!("{:.10}", rep.h)));
            lines.push(kv("varpi", if rep.vanishes { "0".into() } else { format!("{:.10}", rep.varpi) }));
            if let Some(reason) = &rep.reason {
                lines.push(kv("reason", reason));
            }
            lines.push(kv("method", format!("{method}, cutoff {cutoff}")));
            emit_text(&lines)
        }
        Command::Classify { d, g, r, mode } => {
            let fmt = format_for(cli.format, Format::Text, &[Format::Text, Format::Json])?;
            let need_r = || r.ok_or_else(|| Failure::Usage("--r is required for this mode".into()));
            let (name, verdict) = match mode {
                Mode::Positivity => ("positivity", classify_positivity(d, g, need_r()?)?),
                Mode::Symmetry => ("symmetry", classify_symmetry(d, g, need_r()?)?),
                Mode::Anomalous => ("anomalous", classify_anomalous(d, g)?),
            };
            if fmt == Format::Json {
                return emit_json(&Report {
                    command: "classify",
                    parameters: json!({ "D": d, "g": g, "r": r, "mode": name }),
                    results: serde_json::to_value(&verdict).unwrap(),
                    metadata: meta(None, None),
                });
            }
            let result = serde_json::to_value(verdict.result).unwrap();
            let mut lines = vec![kv("result", result.as_str().unwrap())];
            if let Some(c) = &verdict.condition {
                lines.push(kv(if name == "anomalous" { "witness" } else { "condition" }, c));
            }
            emit_text(&lines)
        }
        Command::Compare { d, g, r, x, cutoff, method } => {
            let fmt = format_for(cli.format, Format::Text, &[Format::Text, Format::Json, Format::Csv])?;
            let cutoff = cutoff.unwrap_or(method.default_cutoff());
            let curve = CurveSpec::new(d, g)?;
            let rep = varpi(d, g, r, cutoff, method)?;
            let (count, route) = count_trace(&curve, r, x)?;
            let pred = predicted(rep.varpi, x);
            let ratio = count as f64 / pred;
            match fmt {
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(io::stdout().lock());
                    let rec = [
                        d.to_string(),
                        g.to_string(),
                        r.to_string(),
                        x.to_string(),
                        count.to_string(),
                        sig4(pred),
                        sig4(ratio),
                        rep.finite_factor.to_string(),
                        rep.xi.to_string(),
                        cutoff.to_string(),
                        method.to_string(),
                    ];
                    let header = ["D", "g", "r", "x", "count", "predicted", "ratio", "finite_factor", "xi", "cutoff", "method"];
                    w.write_record(header).map_err(|e| Failure::Usage(e.to_string()))?;
                    w.write_record(rec).map_err(|e| Failure::Usage(e.to_string()))?;
                    w.flush()?;
                    Ok(())
                }
                Format::Json => emit_json(&Report {
                    command: "compare",
                    parameters: json!({ "D": d, "g": g, "r": r, "x": x }),
                    results: json!({
                        "count": count,
                        "route": route,
                        "predicted": sig4(pred),
                        "ratio": sig4(ratio),
                        "varpi": rep.varpi,
                        "finite_factor": rep.finite_factor,
                        "xi": rep.xi,
                    }),
                    metadata: meta(Some(cutoff), Some(method)),
                }),
                Format::Text => emit_text(&[
                    kv("curve", curve.model()),
                    kv("count", count),
                    kv("route", serde_json::to_value(route).unwrap().as_str().unwrap()),
                    kv("predicted", sig4(pred)),
                    kv("ratio", sig4(ratio)),
                    kv("varpi", format!("{:.10}", rep.varpi)),
                    kv("finite factor", rep.finite_factor),
                ]),
            }
        }
        Command::FixedTrace { d, r, x } => {
            let fmt = format_for(cli.format, Format::Text, &[Format::Text, Format::Json])?;
            let (elements, poly) = count_fixed_trace(d, r, x)?;
            let diff = elements as i64 - poly as i64;
            if fmt == Format::Json {
                return emit_json(&Report {
                    command: "fixed-trace",
                    parameters: json!({ "D": d, "r": r, "x": x }),
                    results: json!({ "elements": elements, "polynomial": poly, "difference": diff }),
                    metadata: meta(None, None),
                });
            }
            emit_text(&[kv("elements", elements), kv("polynomial", poly), kv("difference", diff)])
        }
        Command::Hl { a, b, c, x, q, u, cutoff } => {
            let fmt = format_for(cli.format, Format::Text, &[Format::Text, Format::Json])?;
            let poly = QuadPoly::new(a, b, c);
            let (count, constant) = match (q, u) {
                (Some(q), Some(u)) => (count_hl_ap(&poly, x, q, u), hl_constant_ap(&poly, q, u, cutoff)?),
                _ => (count_hl(&poly, x), hl_constant(&poly, cutoff)?),
            };
            let ratio = count as f64 / predicted(constant, x);
            if fmt == Format::Json {
                return emit_json(&Report {
                    command: "hl",
                    parameters: json!({ "a": a, "b": b, "c": c, "x": x, "q": q, "u": u }),
                    results: json!({ "count": count, "constant": constant, "ratio": sig4(ratio) }),
                    metadata: meta(Some(cutoff), Some(Method::Direct)),
                });
            }
            emit_text(&[kv("count", count), kv("constant", format!("{constant:.10}")), kv("ratio", sig4(ratio))])
        }
        Command::Verify { suite, quick } => {
            let fmt = format_for(cli.format, Format::Text, &[Format::Text, Format::Json])?;
            let suites: Vec<Suite> = match suite {
                SuiteArg::Symbols => vec![Suite::Symbols],
                SuiteArg::GaussSums => vec![Suite::GaussSums],
                SuiteArg::Frobenius => vec![Suite::Frobenius],
                SuiteArg::ResidueCounts => vec![Suite::ResidueCounts],
                SuiteArg::Classifiers => vec![Suite::Classifiers],
                SuiteArg::All => Suite::ALL.to_vec(),
            };
            let scale = if quick { Scale::quick() } else { Scale::full() };
            let results: Vec<_> = suites.into_iter().flat_map(|s| run_suite(s, scale)).collect();
            let ok = results.iter().all(|r| r.passed);
            if fmt == Format::Json {
                emit_json(&Report {
                    command: "verify",
                    parameters: json!({ "quick": quick }),
                    results: serde_json::to_value(&results).unwrap(),
                    metadata: meta(None, None),
                })?;
            } else {
                let mut out = io::stdout().lock();
                for r in &results {
                    let tag = if r.passed { "PASS" } else { "FAIL" };
                    writeln!(out, "{tag}  {} / {} ({} cases)", r.suite, r.property, r.cases)?;
                    if let Some(f) = &r.failure {
                        writeln!(out, "      first failure: {f}")?;
                    }
                }
                writeln!(out, "{}", if ok { "PASS" } else { "FAIL" })?;
            }
            if ok {
                Ok(())
            } else {
                Err(Failure::Suite)
            }
        }
    }
}

fn configure_threads(flag: Option<usize>) -> Result<(), Failure> {
    let env = match std::env::var("CMLT_THREADS") {
        Ok(v) => Some(v.parse::<usize>().map_err(|_| Failure::Usage(format!("CMLT_THREADS={v} is not a number")))?),
        Err(_) => None,
    };
    if let Some(n) = env.or(flag) {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads(cli.threads).and_then(|_| run(cli));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Suite) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
