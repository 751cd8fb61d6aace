//! `prym`: command-line front end for the prym-core library.

mod commands;
mod selftest;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use prym_core::PrymError;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "prym", version, about = "Prym groups, Prym varieties and the Abel-Prym map of free double covers")]
pub struct Cli {
    /// Graph document (JSON).
    #[arg(long, global = true)]
    graph: Option<PathBuf>,
    /// Cover document (JSON) over the graph.
    #[arg(long, global = true)]
    cover: Option<PathBuf>,
    /// Seed for randomized targets and suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of random cases.
    #[arg(long, global = true, default_value_t = 50)]
    cases: usize,
    /// Write an SVG picture (abel-prym cells with g - 1 = 2 only).
    #[arg(long, global = true)]
    svg: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Vertex and edge counts and the genus of a graph.
    Genus,
    /// Jacobian group and squared Jacobian volume of a graph.
    Jacobian,
    /// Prym group order and Prym variety volume.
    #[command(subcommand)]
    Prym(PrymCommand),
    /// Odd genus-one decompositions of a cover.
    Ogods,
    /// Ihara zeta function of a graph.
    Zeta,
    /// Artin-Ihara L-function of a cover.
    Lfunction,
    /// Cells, harmonicity, fibers and degree of the Abel-Prym map.
    #[command(name = "abel-prym", subcommand)]
    AbelPrym(AbelPrymCommand),
    /// Run the bundled fixtures and a seeded random suite.
    Selftest,
}

#[derive(Subcommand, Debug)]
enum PrymCommand {
    /// Order of the Prym group.
    Order {
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
    },
    /// Squared volume of the Prym variety.
    Volume,
}

#[derive(Subcommand, Debug)]
enum AbelPrymCommand {
    /// Non-contracted cells with their matrices and degrees.
    Cells,
    /// Balancing at every codimension-one cell.
    Harmonicity,
    /// Fiber over a seeded random generic target.
    Fiber,
    /// Fiber degree sums over `--cases` random targets.
    GlobalDegree,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    All,
    Ratio,
    SignedDet,
    Ogod,
}

/// Command output before it is wrapped in a report.
pub struct Outcome {
    pub inputs: Value,
    pub results: Value,
    pub agreement: Option<bool>,
}

/// Input error with a stable code.
#[derive(Debug)]
pub struct InputError {
    pub code: &'static str,
    pub message: String,
}

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for InputError {}

fn error_code(err: &anyhow::Error) -> &'static str {
    if let Some(e) = err.downcast_ref::<InputError>() {
        return e.code;
    }
    match err.downcast_ref::<PrymError>() {
        Some(PrymError::Json(_)) => "malformed_json",
        Some(PrymError::Parse(_)) => "parse_error",
        Some(PrymError::Disconnected { .. }) => "disconnected_graph",
        Some(PrymError::EmptyFlipSet) => "empty_flip_set",
        Some(PrymError::NotSpanningTree(_)) => "not_spanning_tree",
        Some(PrymError::EdgeInTree(_)) => "flip_in_tree",
        Some(PrymError::GenusZero) => "genus_zero",
        Some(PrymError::NonGenericTarget) => "non_generic_target",
        Some(PrymError::Inconsistent(_)) => "internal_inconsistency",
        Some(_) => "invalid_input",
        None => "error",
    }
}

fn print_json(value: &Value) {
    use std::io::Write;
    let text = serde_json::to_string_pretty(value).expect("serializable");
    // A closed pipe downstream is not our error.
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            print_json(&json!({ "error": { "code": "usage", "message": e.kind().to_string() } }));
            return ExitCode::from(1);
        }
    };
    let name = command_name(&cli.command);
    let start = Instant::now();
    match commands::run(&cli) {
        Ok(outcome) => {
            let mut report = json!({
                "command": name,
                "inputs": outcome.inputs,
                "results": outcome.results,
            });
            if let Some(a) = outcome.agreement {
                report["agreement"] = json!(a);
            }
            report["timing"] = json!(start.elapsed().as_millis() as u64);
            print_json(&report);
            if outcome.agreement == Some(false) {
                eprintln!("agreement check failed");
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(err) => {
            let code = error_code(&err);
            eprintln!("error: {err:#}");
            print_json(&json!({ "command": name, "error": { "code": code, "message": format!("{err:#}") } }));
            if code == "internal_inconsistency" {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Genus => "genus",
        Command::Jacobian => "jacobian",
        Command::Prym(PrymCommand::Order { .. }) => "prym order",
        Command::Prym(PrymCommand::Volume) => "prym volume",
        Command::Ogods => "ogods",
        Command::Zeta => "zeta",
        Command::Lfunction => "lfunction",
        Command::AbelPrym(AbelPrymCommand::Cells) => "abel-prym cells",
        Command::AbelPrym(AbelPrymCommand::Harmonicity) => "abel-prym harmonicity",
        Command::AbelPrym(AbelPrymCommand::Fiber) => "abel-prym fiber",
        Command::AbelPrym(AbelPrymCommand::GlobalDegree) => "abel-prym global-degree",
        Command::Selftest => "selftest",
    }
}
