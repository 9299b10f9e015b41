//! `merozeta`: resolve germs, compute zeta functions, audit graphs and check
//! the monodromy conjecture from the command line.
//!
//! Exit status: 0 success, 1 a violation or failed audit, 2 bad input,
//! 3 input the engine does not support (non-rational centres, huge coefficients).

mod doc;
mod text;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use merozeta::resgraph::{parse_graph, serialize_graph, ResolutionGraph};
use merozeta::resolve::{parse_germ, resolve_meromorphic, GermError, ResolveError};
use serde_json::Value;

#[derive(Parser)]
#[command(
    name = "merozeta",
    version,
    about = "Zeta functions and monodromy of plane meromorphic germs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Resolution graph file.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Germ file, resolved first.
    #[arg(long)]
    germ: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Germ file to resolution graph file.
    Resolve {
        #[arg(long)]
        germ: PathBuf,
    },
    /// Topological zeta function (local, and global with --global) and monodromy zeta.
    Zeta {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        global: bool,
    },
    /// Poles, orders, leading coefficients, candidates and witnesses.
    Poles {
        #[command(flatten)]
        input: Input,
    },
    /// Certify every pole as a monodromy eigenvalue.
    Check {
        #[command(flatten)]
        input: Input,
    },
    /// Numerical relations at every exceptional component.
    Validate {
        #[command(flatten)]
        input: Input,
    },
    /// Graph shape, ratios, alpha bounds, zero components and C_d sums.
    Audit {
        #[command(flatten)]
        input: Input,
        /// Only this d for the C_d audit (default: every relevant d).
        #[arg(long)]
        d: Option<u64>,
    },
    /// Everything above in one document.
    Report {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        global: bool,
        #[arg(long)]
        d: Option<u64>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<ResolveError> for Failure {
    fn from(e: ResolveError) -> Self {
        let code = match e {
            ResolveError::NonRationalCenter(_) | ResolveError::CoefficientTooLarge(_) => 3,
            ResolveError::UnknownPoint(_) | ResolveError::NotABadPoint(_) => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<doc::Unsupported> for Failure {
    fn from(e: doc::Unsupported) -> Self {
        Failure {
            code: 3,
            message: e.0,
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_germ_graph(path: &Path) -> Result<ResolutionGraph, Failure> {
    let germ = parse_germ(&read(path)?).map_err(|e: GermError| Failure::input(e.to_string()))?;
    Ok(resolve_meromorphic(&germ)?)
}

fn load(input: &Input) -> Result<ResolutionGraph, Failure> {
    match (&input.graph, &input.germ) {
        (Some(p), _) => parse_graph(&read(p)?).map_err(|e| Failure::input(e.to_string())),
        (None, Some(p)) => load_germ_graph(p),
        (None, None) => Err(Failure::input("one of --graph or --germ is required")),
    }
}

/// The document plus whether everything it checks passed.
fn run(cli: &Cli) -> Result<(String, bool), Failure> {
    let (value, ok): (Value, bool) = match &cli.command {
        Command::Resolve { germ } => {
            return Ok((serialize_graph(&load_germ_graph(germ)?), true));
        }
        Command::Zeta { input, global } => (doc::zeta(&load(input)?, *global), true),
        Command::Poles { input } => (doc::poles(&load(input)?)?, true),
        Command::Check { input } => doc::check(&load(input)?)?,
        Command::Validate { input } => doc::validate(&load(input)?),
        Command::Audit { input, d } => doc::audit(&load(input)?, *d)?,
        Command::Report { input, global, d } => doc::report(&load(input)?, *global, *d)?,
    };
    let rendered = match cli.format {
        Format::Structured => {
            let mut s = serde_json::to_string_pretty(&value).expect("document serializes");
            s.push('\n');
            s
        }
        Format::Text => text::render(&value),
    };
    Ok((rendered, ok))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((output, ok)) => {
            let written = match &cli.out {
                Some(path) => {
                    fs::write(path, output).map_err(|e| format!("{}: {e}", path.display()))
                }
                None => {
                    print!("{output}");
                    Ok(())
                }
            };
            match written {
                Err(message) => {
                    eprintln!("merozeta: {message}");
                    ExitCode::from(2)
                }
                Ok(()) if ok => ExitCode::SUCCESS,
                Ok(()) => ExitCode::from(1),
            }
        }
        Err(f) => {
            eprintln!("merozeta: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
