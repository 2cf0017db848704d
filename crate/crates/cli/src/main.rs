mod store;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use qvir::suites::{run_suite, Suite, SuiteConfig};
use qvir::symfunc::SymFuncJson;
use qvir::{duality, macdonald, whittaker, Partition, SymFunc};
use serde::Serialize;
use serde_json::Value;

use crate::store::{DiskStore, KINDS};

#[derive(Parser)]
#[command(name = "qvir", version, about = "Exact Macdonald and q-Virasoro Whittaker vector computations")]
struct Cli {
    /// Directory for cached Macdonald data.
    #[arg(long, global = true, env = "QVIR_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    #[value(name = "P")]
    P,
    #[value(name = "Q")]
    Q,
    #[value(name = "J")]
    J,
    #[value(name = "H")]
    H,
    #[value(name = "gamma")]
    Gamma,
    #[value(name = "vG")]
    VG,
    #[value(name = "v0")]
    V0,
    #[value(name = "vinf")]
    Vinf,
    #[value(name = "theta")]
    Theta,
    #[value(name = "tau")]
    Tau,
}

#[derive(Subcommand)]
enum Command {
    /// Print one exact object as JSON.
    Compute {
        #[arg(value_enum)]
        what: What,
        /// Partition as comma-separated parts, e.g. `2,1`.
        #[arg(long)]
        partition: Option<Partition>,
        /// Degree.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Run verification suites and print a report.
    Verify {
        #[arg(default_value = "all")]
        suite_pos: Option<Suite>,
        #[arg(long)]
        suite: Option<Suite>,
        #[arg(long, default_value_t = 4)]
        nmax: usize,
        #[arg(long, default_value_t = 3)]
        rmax: usize,
        /// Mode range for the commutation checks.
        #[arg(long, default_value_t = 4)]
        trunc: usize,
    },
    /// Inspect or modify the on-disk cache.
    Cache {
        #[command(subcommand)]
        op: CacheOp,
    },
}

#[derive(Subcommand)]
enum CacheOp {
    /// Print a cached record.
    Get {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        partition: Partition,
    },
    /// Store a record, read from `--file` (`-` for stdin) or computed.
    Put {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        partition: Partition,
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Remove all records.
    Clear,
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    version: &'static str,
    config: Value,
    passed: bool,
    entries: &'a [qvir::report::Entry],
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn need_partition(p: Option<Partition>) -> Result<Partition> {
    p.context("--partition is required")
}

fn need_n(n: Option<usize>) -> Result<usize> {
    n.context("--n is required")
}

/// Serialized straight from the typed value so field order is stable.
fn compute(what: What, partition: Option<Partition>, n: Option<usize>) -> Result<String> {
    let sf = |f: &SymFunc| serde_json::to_string(&f.to_json());
    Ok(match what {
        What::P => sf(&macdonald::macdonald_p(&need_partition(partition)?))?,
        What::Q => sf(&macdonald::macdonald_q(&need_partition(partition)?))?,
        What::J => sf(&macdonald::macdonald_j(&need_partition(partition)?))?,
        What::H => sf(&macdonald::modified_h(&need_partition(partition)?))?,
        What::Gamma => serde_json::to_string(&whittaker::gamma(&need_partition(partition)?).to_json())?,
        What::VG => sf(&whittaker::v_g(need_n(n)?))?,
        What::V0 => sf(&whittaker::v0(need_n(n)?))?,
        What::Vinf => sf(&whittaker::vinf(need_n(n)?))?,
        What::Theta => serde_json::to_string(&macdonald::theta(need_n(n)?).to_json())?,
        What::Tau => {
            let lam = need_partition(partition)?;
            if lam.is_empty() {
                bail!("tau needs a nonempty partition");
            }
            serde_json::to_string(&duality::tau_closed(&lam).to_json())?
        }
    })
}

fn check_kind(kind: &str) -> Result<()> {
    if !KINDS.contains(&kind) {
        bail!("unknown kind `{kind}` (expected one of {})", KINDS.join(", "));
    }
    Ok(())
}

fn kind_value(kind: &str, lam: &Partition) -> SymFunc {
    match kind {
        "P" => (*macdonald::macdonald_p(lam)).clone(),
        "Q" => macdonald::macdonald_q(lam),
        "J" => (*macdonald::macdonald_j(lam)).clone(),
        _ => (*macdonald::modified_h(lam)).clone(),
    }
}

fn print_json(v: &impl Serialize) -> Result<()> {
    print_line(&serde_json::to_string(v)?)
}

/// A closed pipe on stdout is not an error.
fn print_line(text: &str) -> Result<()> {
    match writeln!(std::io::stdout().lock(), "{text}") {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let store = match &cli.cache_dir {
        Some(dir) => {
            let s = Arc::new(DiskStore::open(dir)?);
            macdonald::attach_store(s.clone());
            Some(s)
        }
        None => None,
    };
    match cli.cmd {
        Command::Compute { what, partition, n } => match compute(what, partition, n) {
            Ok(text) => print_line(&text)?,
            Err(e) => return Ok(usage(format!("{e:#}"))),
        },
        Command::Verify { suite_pos, suite, nmax, rmax, trunc } => {
            let suite = suite.or(suite_pos).unwrap_or(Suite::All);
            let cfg = SuiteConfig { nmax, rmax, trunc, ..SuiteConfig::default() };
            let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build()?;
            let report = pool.install(|| run_suite(suite, cfg));
            match cli.format {
                Format::Json => {
                    let config = serde_json::json!({
                        "suite": suite, "nmax": nmax, "rmax": rmax, "trunc": trunc,
                    });
                    print_json(&VerifyOutput {
                        version: env!("CARGO_PKG_VERSION"),
                        config,
                        passed: report.passed(),
                        entries: &report.entries,
                    })?;
                }
                Format::Markdown => {
                    println!("# qvir verify {suite} (nmax {nmax}, rmax {rmax}, trunc {trunc})\n");
                    print!("{}", report.to_markdown());
                    println!("\n{}", if report.passed() { "all passed" } else { "FAILURES" });
                }
            }
            return Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        Command::Cache { op } => {
            let Some(store) = store else {
                return Ok(usage("cache commands need --cache-dir or QVIR_CACHE_DIR"));
            };
            match op {
                CacheOp::Get { kind, partition } => {
                    if let Err(e) = check_kind(&kind) {
                        return Ok(usage(e));
                    }
                    match store.get(&kind, &partition) {
                        Some(v) => print_json(&v.to_json())?,
                        None => {
                            eprintln!("no record for {kind} {partition}");
                            return Ok(ExitCode::from(1));
                        }
                    }
                }
                CacheOp::Put { kind, partition, file } => {
                    if let Err(e) = check_kind(&kind) {
                        return Ok(usage(e));
                    }
                    let value = match file {
                        None => kind_value(&kind, &partition),
                        Some(path) => {
                            let mut text = String::new();
                            if path.as_os_str() == "-" {
                                std::io::stdin().read_to_string(&mut text)?;
                            } else {
                                text = std::fs::read_to_string(&path)?;
                            }
                            let j: SymFuncJson = serde_json::from_str(&text).context("parsing symmetric function JSON")?;
                            SymFunc::from_json(&j)?
                        }
                    };
                    store.put(&kind, &partition, &value)?;
                }
                CacheOp::Clear => {
                    let n = store.clear()?;
                    eprintln!("removed {n} records");
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
