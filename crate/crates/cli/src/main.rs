use std::io::{ErrorKind, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use reach_core::cache::{self, CacheFile};
use reach_core::checks::{self, Suite};
use reach_core::format::{parse_digraph, to_dot, write_digraph};
use reach_core::{approx, oracle, witness, Error, Tables, WeightSet};

/// Reachable-pair weights of digraphs on n vertices.
#[derive(Parser)]
#[command(name = "reachpairs", version)]
struct Cli {
    /// JSON file memoizing b(n) and W(n) between runs.
    #[arg(long, global = true, env = "REACHPAIRS_CACHE")]
    cache: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print b(n), the end of the initial interval of W(n).
    B { n: u64 },
    /// Print ell(z) = b(z) - z + 3.
    Ell { z: u64 },
    /// Print zeta(n), the z with ell(z) <= n < ell(z+1).
    Zeta { n: u64 },
    /// Print the achievable weights W(n) as intervals.
    Wset {
        n: u64,
        #[arg(long)]
        json: bool,
    },
    /// Print |W(n)|.
    Wsize { n: u64 },
    /// Print the unachievable weights in [n, n^2].
    Gaps {
        n: u64,
        #[arg(long)]
        json: bool,
    },
    /// Print estimators and bound residuals as JSON.
    Approx {
        n: u64,
        #[arg(long)]
        with_wsize: bool,
    },
    /// Emit a transitive digraph on n vertices with weight k.
    Witness {
        n: u64,
        k: u64,
        #[arg(long, conflicts_with = "trace")]
        dot: bool,
        #[arg(long)]
        trace: bool,
    },
    /// Read a digraph file ("-" for stdin) and report its weight.
    Verify {
        file: PathBuf,
        /// Fail unless the graph is transitive with exactly this weight.
        #[arg(long)]
        weight: Option<u64>,
    },
    /// Compute W(n) by exhaustive enumeration (n <= 8).
    Oracle {
        n: u64,
        #[arg(long)]
        json: bool,
    },
    /// Run verification sweeps; exits nonzero on any failure.
    Check {
        #[arg(long)]
        max_n: u64,
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Bounds,
    Table,
    Witness,
    Oracle,
    Graphs,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Bounds => Suite::Bounds,
            SuiteArg::Table => Suite::Table,
            SuiteArg::Witness => Suite::Witness,
            SuiteArg::Oracle => Suite::Oracle,
            SuiteArg::Graphs => Suite::Graphs,
            SuiteArg::All => Suite::All,
        }
    }
}

enum Failure {
    Usage(String),
    Failed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain { .. } | Error::TooLarge(_) => Failure::Usage(e.to_string()),
            _ => Failure::Failed(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn tables(cache_path: Option<&Path>, max_n: u64) -> Result<Tables, Failure> {
    let Some(path) = cache_path else {
        return Ok(Tables::prepared(max_n)?);
    };
    let loaded = cache::load_tables(path, max_n)?;
    for w in &loaded.warnings {
        eprintln!("warning: {w}");
    }
    if loaded.stale {
        if let Err(e) = CacheFile::from_tables(&loaded.tables).write(path) {
            eprintln!("warning: {e}");
        }
    }
    Ok(loaded.tables)
}

fn intervals(w: &WeightSet, json: bool) -> String {
    if json {
        serde_json::to_string(w).expect("interval lists serialize")
    } else {
        w.to_string()
    }
}

fn read_input(file: &Path) -> Result<String, Failure> {
    let mut text = String::new();
    let result = if file == Path::new("-") {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(file).map(|t| text = t)
    };
    result.map_err(|e| Failure::Failed(format!("{}: {e}", file.display())))?;
    Ok(text)
}

fn run(cli: Cli) -> Outcome {
    let cache = cli.cache.as_deref();
    match cli.command {
        Command::B { n } => Ok(tables(cache, n)?.b(n)?.to_string()),
        Command::Ell { z } => Ok(tables(cache, z)?.ell(z)?.to_string()),
        Command::Zeta { n } => Ok(tables(cache, n)?.zeta(n)?.to_string()),
        Command::Wset { n, json } => Ok(intervals(&tables(cache, n)?.weight_set(n)?, json)),
        Command::Wsize { n } => Ok(tables(cache, n)?.wsize(n)?.to_string()),
        Command::Gaps { n, json } => Ok(intervals(&tables(cache, n)?.gaps(n)?, json)),
        Command::Approx { n, with_wsize } => {
            let report = approx::bound_report(&tables(cache, n)?, n, with_wsize)?;
            Ok(serde_json::to_string_pretty(&report).expect("report serializes"))
        }
        Command::Witness { n, k, dot, trace } => {
            let w = witness::witness(&tables(cache, n)?, n, k)?;
            Ok(if dot {
                to_dot(&w.graph)
            } else if trace {
                serde_json::to_string_pretty(&w.trace).expect("trace serializes")
            } else {
                write_digraph(&w.graph)
            })
        }
        Command::Verify { file, weight } => {
            let g = parse_digraph(&read_input(&file)?)?;
            let (w, transitive) = (g.weight(), g.is_transitive());
            let report = format!(
                "vertices {}\nweight {w}\ntransitive {transitive}",
                g.vertex_count()
            );
            match weight {
                Some(k) if !witness::verify_witness(g.vertex_count() as u64, k, &g) => {
                    Err(Failure::Failed(format!(
                        "{report}\nexpected a transitive digraph of weight {k}"
                    )))
                }
                _ => Ok(report),
            }
        }
        Command::Oracle { n, json } => Ok(intervals(&oracle::oracle_weight_set(n)?, json)),
        Command::Check { max_n, suite, json } => {
            let mut t = tables(cache, max_n.max(1))?;
            let outcomes = checks::run_suite(&mut t, suite.into(), max_n)?;
            let text = if json {
                serde_json::to_string_pretty(&outcomes).expect("outcomes serialize")
            } else {
                outcomes
                    .iter()
                    .map(|o| {
                        format!(
                            "{} {}: {}",
                            if o.passed { "PASS" } else { "FAIL" },
                            o.name,
                            o.detail
                        )
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            if outcomes.iter().all(|o| o.passed) {
                Ok(text)
            } else {
                emit(&text);
                let failed = outcomes.iter().filter(|o| !o.passed).count();
                Err(Failure::Failed(format!(
                    "{failed} of {} checks failed",
                    outcomes.len()
                )))
            }
        }
    }
}

/// Writes to stdout, treating a closed pipe (`reachpairs ... | head`) as
/// success.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{}", text.trim_end_matches('\n')).and_then(|_| out.flush()) {
        Err(e) if e.kind() != ErrorKind::BrokenPipe => eprintln!("error: {e}"),
        _ => {}
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(text) => {
            emit(&text);
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
