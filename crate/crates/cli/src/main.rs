//! `qta`: batch checks on quasi-twilled associative algebras given as JSON files.
//!
//! Exit status: 0 when every check passes, 1 when a mathematical check fails,
//! 2 on input errors. The JSON report goes to stdout and a one-line summary to
//! stderr.

mod commands;
mod file;
mod linf_check;
mod report;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(
    name = "qta",
    version,
    about = "Quasi-twilled associative algebras: validation, deformation maps, cohomology, L∞ checks"
)]
struct Cli {
    /// Seed for every sampled check; recorded in the report.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Add wall-clock time to the report (makes it non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the quasi-twilled axioms and compare with the Maurer-Cartan test.
    Validate { file: String },
    /// Check a strong (D: A→B) or weak (r: B→A) deformation map from the file.
    CheckMap {
        file: String,
        #[arg(long, value_enum)]
        kind: Kind,
        /// Name of the map in the file (default D for strong, r for weak).
        #[arg(long)]
        map: Option<String>,
    },
    /// Cohomology dimensions in degrees 0..=max-degree.
    Cohomology {
        file: String,
        #[arg(long, value_enum)]
        theory: Theory,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
        #[arg(long)]
        map: Option<String>,
    },
    /// List every solution over F_p by exhaustion.
    Search {
        file: String,
        #[arg(long, value_enum)]
        kind: SearchKind,
        /// The prime p.
        #[arg(long)]
        field: u64,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u128,
        /// Dimension for ttd searches (default dim B).
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Sampled generalized Jacobi and symmetry checks plus Maurer-Cartan spot checks.
    LinfCheck {
        file: String,
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Largest arity any intermediate map may reach.
        #[arg(long, default_value_t = 6)]
        window: usize,
        /// Negate l_k (testing aid).
        #[arg(long, hide = true)]
        flip_sign: Option<usize>,
    },
    /// Emit the structure induced by a map as a new algebra file.
    Induce {
        file: String,
        #[arg(long, value_enum)]
        kind: InduceKind,
        #[arg(long)]
        map: Option<String>,
        /// Also write the induced file here.
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Kind {
    Strong,
    Weak,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Theory {
    Qta,
    Matched,
    Strong,
    Weak,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SearchKind {
    Strong,
    Weak,
    Cocycle,
    Ttd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Which {
    ControllingStrong,
    ControllingWeak,
    Governing,
    Simultaneous,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum InduceKind {
    Strong,
    Weak,
    Ttd,
}

#[derive(Debug)]
pub struct InputError(pub String);

pub enum Failure {
    /// Exit status 2.
    Input(String),
    /// Exit status 1.
    Math(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Failure {
        Failure::Input(e.0)
    }
}

impl From<qta_core::Error> for Failure {
    fn from(e: qta_core::Error) -> Failure {
        use qta_core::Error::*;
        match e {
            Law { .. }
            | NotStrong
            | NotWeak
            | NotTwistedRotaBaxter
            | NotMaurerCartan
            | ThetaNonzero => Failure::Math(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn value_name<T: ValueEnum>(v: T) -> Value {
    json!(v.to_possible_value().map(|p| p.get_name().to_string()))
}

fn echo(cli: &Cli) -> Value {
    match &cli.command {
        Command::Validate { file } => json!({ "name": "validate", "file": file }),
        Command::CheckMap { file, kind, map } => {
            json!({ "name": "check-map", "file": file, "kind": value_name(*kind), "map": map })
        }
        Command::Cohomology {
            file,
            theory,
            max_degree,
            map,
        } => json!({
            "name": "cohomology", "file": file, "theory": value_name(*theory), "max_degree": max_degree, "map": map,
        }),
        Command::Search {
            file,
            kind,
            field,
            budget,
            dim,
        } => json!({
            "name": "search", "file": file, "kind": value_name(*kind), "field": field, "budget": budget.to_string(), "dim": dim,
        }),
        Command::LinfCheck {
            file,
            which,
            samples,
            window,
            flip_sign,
        } => json!({
            "name": "linf-check", "file": file, "which": value_name(*which), "samples": samples, "window": window, "flip_sign": flip_sign,
        }),
        Command::Induce {
            file,
            kind,
            map,
            out,
        } => {
            json!({ "name": "induce", "file": file, "kind": value_name(*kind), "map": map, "out": out })
        }
    }
}

fn run(cli: &Cli) -> Result<report::Outcome, Failure> {
    match &cli.command {
        Command::Validate { file } => Ok(commands::validate(&file::read(file)?)),
        Command::CheckMap { file, kind, map } => {
            commands::check_map(&file::read(file)?, *kind, map.as_deref())
        }
        Command::Cohomology {
            file,
            theory,
            max_degree,
            map,
        } => commands::cohomology(&file::read(file)?, *theory, *max_degree, map.as_deref()),
        Command::Search {
            file,
            kind,
            field,
            budget,
            dim,
        } => commands::search(&file::read(file)?, *kind, *field, *budget, *dim),
        Command::LinfCheck {
            file,
            which,
            samples,
            window,
            flip_sign,
        } => {
            let opts = linf_check::Options {
                which: *which,
                samples: *samples,
                seed: cli.seed,
                window: *window,
                flip: *flip_sign,
            };
            linf_check::run(&file::read(file)?, &opts)
        }
        Command::Induce {
            file,
            kind,
            map,
            out,
        } => {
            let (outcome, induced) = commands::induce(&file::read(file)?, *kind, map.as_deref())?;
            if let Some(path) = out {
                let text = serde_json::to_string_pretty(&induced).expect("serializable") + "\n";
                std::fs::write(path, text).map_err(|e| Failure::Input(format!("{path}: {e}")))?;
            }
            Ok(outcome)
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("QTA_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .map_err(|_| format!("QTA_THREADS must be a positive integer, got {v:?}"))?;
    if n == 0 {
        return Err("QTA_THREADS must be at least 1".into());
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut body = Map::new();
    body.insert("command".into(), echo(&cli));
    body.insert("seed".into(), json!(cli.seed));
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        body.insert("error".into(), json!(msg));
        emit(&body);
        return ExitCode::from(2);
    }
    let start = Instant::now();
    let result = run(&cli);
    let code = match result {
        Ok(outcome) => {
            body.extend(outcome.body);
            body.insert("passed".into(), json!(outcome.passed));
            eprintln!(
                "{} [{}]",
                outcome.summary,
                if outcome.passed { "PASS" } else { "FAIL" }
            );
            if outcome.passed {
                0
            } else {
                1
            }
        }
        Err(Failure::Math(msg)) => {
            eprintln!("check failed: {msg}");
            body.insert("passed".into(), json!(false));
            body.insert("error".into(), json!(msg));
            1
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            body.insert("error".into(), json!(msg));
            2
        }
    };
    if cli.timing {
        body.insert(
            "elapsed_ms".into(),
            json!(start.elapsed().as_millis() as u64),
        );
    }
    emit(&body);
    ExitCode::from(code)
}

/// A closed stdout (say, piped into `head`) is not an error worth reporting.
fn emit(body: &Map<String, Value>) {
    let text = serde_json::to_string_pretty(body).expect("serializable");
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}
