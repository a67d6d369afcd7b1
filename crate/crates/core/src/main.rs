use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use serde_json::Value;

use intbasis::bench::benchmark;
use intbasis::io::{parse_curve, CurveInput, CurveJson};
use intbasis::run::{error_json, run, Algorithm, RunOptions, VerifyLevel};
use intbasis::vanhoeij::VhOptions;
use intbasis::Error;

/// Integral bases of plane curves y^n + a_(n-1)(x) y^(n-1) + ... over F_p.
///
/// Reads {"p": prime, "f": [[i, j, c], ...]} (or an array of such objects)
/// and writes the basis as JSON.
#[derive(Parser, Debug)]
#[command(name = "intbasis", version)]
struct Cli {
    /// vanhoeij, trager, boehm or all
    #[arg(long, default_value = "all")]
    algorithm: Algorithm,
    /// Input file (stdin if absent)
    #[arg(long)]
    input: Option<PathBuf>,
    /// Output file (stdout if absent)
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// none, integrality or full
    #[arg(long, default_value = "full")]
    verify: VerifyLevel,
    /// Use the binary-search van Hoeij variant when M(φ) is at most this
    #[arg(long, default_value_t = 3)]
    vh_binary_threshold: usize,
    /// Add per-factor and per-iteration details to the output
    #[arg(long)]
    diagnostics: bool,
    /// Include wall-clock times (output is then no longer reproducible)
    #[arg(long)]
    wall_time: bool,
    /// Run the scaling benchmark on y3-x3k+1, y2-x2k+1 or yd-xd-1
    #[arg(long)]
    bench_family: Option<String>,
    /// Comma-separated family sizes
    #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,5,6")]
    bench_sizes: Vec<usize>,
}

fn read_input(path: &Option<PathBuf>) -> Result<String, Error> {
    let mut s = String::new();
    match path {
        Some(p) => {
            s = std::fs::read_to_string(p)
                .map_err(|e| Error::ParseError(format!("{}: {e}", p.display())))?
        }
        None => {
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Error::ParseError(e.to_string()))?;
        }
    }
    Ok(s)
}

fn write_output(path: &Option<PathBuf>, v: &Value) -> std::io::Result<()> {
    let text = serde_json::to_string(v).expect("serializable") + "\n";
    match path {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

/// One curve: output JSON and exit code.
fn process(c: Result<CurveInput, Error>, opts: &RunOptions) -> (Value, i32) {
    let res = c.and_then(|c| run(&c, opts).map(|o| (o.to_json(&c, opts), o.exit_code())));
    res.unwrap_or_else(|e| (error_json(&e), e.exit_code()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = RunOptions {
        algorithm: cli.algorithm,
        verify: cli.verify,
        vh: VhOptions {
            binary_threshold: cli.vh_binary_threshold,
        },
        seed: cli.seed,
        diagnostics: cli.diagnostics,
        wall_time: cli.wall_time,
    };
    let (out, code) = if let Some(fam) = &cli.bench_family {
        let algs = match cli.algorithm {
            Algorithm::All => Algorithm::SINGLE.to_vec(),
            a => vec![a],
        };
        match benchmark(fam, &cli.bench_sizes, &algs, &opts) {
            Ok(r) => (serde_json::to_value(r).expect("serializable"), 0),
            Err(e) => (error_json(&e), e.exit_code()),
        }
    } else {
        match read_input(&cli.input) {
            Err(e) => (error_json(&e), e.exit_code()),
            Ok(text) => match serde_json::from_str::<Value>(&text) {
                Err(e) => {
                    let e = Error::ParseError(e.to_string());
                    (error_json(&e), e.exit_code())
                }
                Ok(Value::Array(items)) => {
                    // One worker per curve; counters are thread-local.
                    let results: Vec<(Value, i32)> = std::thread::scope(|s| {
                        let handles: Vec<_> = items
                            .into_iter()
                            .map(|item| {
                                let opts = &opts;
                                s.spawn(move || {
                                    let c = serde_json::from_value::<CurveJson>(item)
                                        .map_err(|e| Error::ParseError(e.to_string()))
                                        .and_then(|c| CurveInput::new(c.p, &c.f));
                                    process(c, opts)
                                })
                            })
                            .collect();
                        handles
                            .into_iter()
                            .map(|h| h.join().expect("worker panicked"))
                            .collect()
                    });
                    let code = results.iter().map(|r| r.1).max().unwrap_or(0);
                    (
                        Value::Array(results.into_iter().map(|r| r.0).collect()),
                        code,
                    )
                }
                Ok(_) => process(parse_curve(&text), &opts),
            },
        }
    };
    if let Err(e) = write_output(&cli.output, &out) {
        eprintln!("intbasis: cannot write output: {e}");
        return ExitCode::from(3);
    }
    ExitCode::from(code as u8)
}
