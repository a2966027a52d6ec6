//! ringrank: exact rank invariants for orders in number fields and finite
//! commutative rings.
//!
//! Exit codes: 0 success, 1 failed demo checks, 2 schema/input error,
//! 3 computation error (the error is embedded in the emitted report).

mod construct;
mod demo;
mod jobspec;
mod report;

use clap::{Parser, Subcommand};
use jobspec::{build_job, Built, JobSpec, SchemaError};
use report::{finring_report, order_report, ErrorBody, ErrorReport, SCHEMA_VERSION};
use std::io::Read;
use std::path::PathBuf;
use std::process::exit;

#[derive(Parser)]
#[command(name = "ringrank", version, about = "exact rank invariants for finite-rank rings")]
struct Cli {
    /// Cap on |R| for exhaustive operations (ideal enumeration, generator
    /// search, elementwise nilpotency). Falls back to the
    /// RINGRANK_MAX_RING_SIZE environment variable, then 4096.
    #[arg(long, global = true)]
    max_ring_size: Option<u64>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Analyze a job described by a JSON document (path or - for stdin)
    Analyze {
        file: String,
        /// Suppress the timestamp so identical inputs give byte-identical
        /// reports
        #[arg(long)]
        deterministic: bool,
    },
    /// Run the built-in verification catalog
    Demo {
        /// Only run checks whose name contains this substring
        #[arg(long)]
        filter: Option<String>,
        /// Accepted for interface parity; demo output carries no timestamp
        #[arg(long)]
        deterministic: bool,
    },
    /// Build a named family and emit its job document
    Construct {
        /// matson | axs | pullback | matson-artinian | trunc-poly |
        /// trunc-witness | semigroup-trunc | square-zero
        name: String,
        /// Integer arguments of the construction
        args: Vec<String>,
        /// Ambient minimal polynomial c0,c1,...,1 (axs and pullback)
        #[arg(long)]
        minpoly: Option<String>,
        /// Write the job document here instead of stdout
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

fn resolve_cap(flag: Option<u64>) -> u64 {
    flag.or_else(|| {
        std::env::var("RINGRANK_MAX_RING_SIZE")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(ringrank_core::DEFAULT_SIZE_CAP)
}

fn print_error(kind: &'static str, message: String) {
    let doc = ErrorReport {
        schema_version: SCHEMA_VERSION,
        error: ErrorBody { kind, message },
    };
    println!("{}", serde_json::to_string_pretty(&doc).expect("error reports serialize"));
}

fn run_analyze(file: &str, deterministic: bool, cap: u64) -> i32 {
    let text = match read_input(file) {
        Ok(t) => t,
        Err(e) => {
            print_error("schema", format!("cannot read {file}: {e}"));
            return 2;
        }
    };
    let spec: JobSpec = match serde_json::from_str(&text) {
        Ok(s) => s,
        Err(e) => {
            print_error("schema", format!("invalid job document: {e}"));
            return 2;
        }
    };
    let built = match build_job(&spec) {
        Ok(b) => b,
        Err(SchemaError(msg)) => {
            print_error("schema", msg);
            return 2;
        }
    };
    match built {
        Built::Order { emb, id } => match order_report(&emb, &id, deterministic) {
            Ok(rep) => {
                println!("{}", serde_json::to_string_pretty(&rep).expect("reports serialize"));
                0
            }
            Err(e) => {
                print_error("computation", e.to_string());
                3
            }
        },
        Built::Finring { ring, id, extra } => {
            let rep = finring_report(&ring, &id, cap, &extra, deterministic);
            println!("{}", serde_json::to_string_pretty(&rep).expect("reports serialize"));
            0
        }
    }
}

fn read_input(file: &str) -> std::io::Result<String> {
    if file == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        std::fs::read_to_string(file)
    }
}

fn run_construct(
    name: &str,
    args: &[String],
    minpoly: Option<&str>,
    emit: Option<&PathBuf>,
) -> i32 {
    match construct::materialize(name, args, minpoly) {
        Ok(doc) => {
            let text = serde_json::to_string_pretty(&doc).expect("job documents serialize");
            if let Some(path) = emit {
                if let Err(e) = std::fs::write(path, format!("{text}\n")) {
                    print_error("schema", format!("cannot write {}: {e}", path.display()));
                    return 2;
                }
                eprintln!("wrote {}", path.display());
            } else {
                println!("{text}");
            }
            0
        }
        Err(SchemaError(msg)) => {
            print_error("schema", msg);
            2
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let cap = resolve_cap(cli.max_ring_size);
    let code = match &cli.cmd {
        Cmd::Analyze { file, deterministic } => run_analyze(file, *deterministic, cap),
        Cmd::Demo { filter, .. } => demo::run_demo(filter.as_deref(), cap),
        Cmd::Construct { name, args, minpoly, emit } => {
            run_construct(name, args, minpoly.as_deref(), emit.as_ref())
        }
    };
    exit(code);
}
