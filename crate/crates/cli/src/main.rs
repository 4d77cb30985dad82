//! `eulerform`: a command line for exact graded commutative algebra.
//!
//! Two subcommands:
//! - `run <file>` executes a session script of ring/module definitions,
//!   compute requests and verify requests;
//! - `verify --suite <name>` runs one randomized verification suite.
//!
//! Exit codes: 0 = everything computed/passed; 2 = the only non-ok results
//! were hypothesis skips; 1 = computation error or verification failure.

mod ast;
mod exec;
mod lexer;
mod output;
mod parser;
mod verify;

use clap::{Parser, Subcommand, ValueEnum};
use exec::{Config, Format, Status};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "eulerform",
    version,
    about = "Ext/Tor Euler forms over graded rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Table,
    Json,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Format {
        match f {
            OutputFormat::Table => Format::Table,
            OutputFormat::Json => Format::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Execute a session script.
    Run {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "table")]
        format: OutputFormat,
        /// Truncation bound for quotient-ring resolutions
        /// (default: EULERFORM_BOUND or 2·nvars + 4).
        #[arg(long)]
        bound: Option<usize>,
        /// Root seed for verify statements inside the script.
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Run one randomized verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Number of variables for random instances (1–4).
        #[arg(long, default_value_t = 3)]
        vars: usize,
        /// Maximal generator degree for random instances.
        #[arg(long, default_value_t = 4)]
        maxdeg: u32,
        #[arg(long, value_enum, default_value = "table")]
        format: OutputFormat,
    },
}

fn env_bound() -> Option<usize> {
    std::env::var("EULERFORM_BOUND")
        .ok()
        .and_then(|v| v.parse().ok())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run {
            file,
            format,
            bound,
            seed,
        } => {
            let text = match std::fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("cannot read {}: {e}", file.display());
                    return ExitCode::from(1);
                }
            };
            let script = match parser::parse_session(&text) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::from(1);
                }
            };
            let config = Config {
                format: format.into(),
                seed,
                bound: bound.or_else(env_bound),
            };
            match exec::execute(&script, &config) {
                Ok((records, exit)) => {
                    print!("{}", output::emit(&records, config.format, exit));
                    ExitCode::from(exit as u8)
                }
                Err(e) => {
                    eprintln!("{e}");
                    ExitCode::from(1)
                }
            }
        }
        Command::Verify {
            suite,
            trials,
            seed,
            vars,
            maxdeg,
            format,
        } => match verify::run_suite(&suite, trials, seed, vars, maxdeg) {
            Ok(summary) => {
                let status = if summary.failed > 0 {
                    Status::Failed
                } else if summary.in_regime == 0 {
                    Status::Skipped
                } else {
                    Status::Ok
                };
                let record = exec::ResultRecord {
                    request: format!("verify {suite} trials={trials} seed={seed}"),
                    status: status.clone(),
                    value: summary.headline(),
                    detail: summary.to_json(),
                    wall_ms: 0.0,
                    seed,
                };
                let exit = match status {
                    Status::Ok => 0,
                    Status::Skipped => 2,
                    _ => 1,
                };
                print!("{}", output::emit(&[record], format.into(), exit));
                if !summary.counterexamples.is_empty() {
                    eprintln!("counterexample scripts:");
                    for c in &summary.counterexamples {
                        eprintln!("---\n{c}");
                    }
                }
                ExitCode::from(exit as u8)
            }
            Err(e) => {
                eprintln!("{e}");
                ExitCode::from(1)
            }
        },
    }
}
