//! `doxatest`: load frames, models and change tables; run checks and sweeps.

mod commands;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use doxatest::Error;

/// Exit status contract.
pub const EXIT_PASS: u8 = 0;
pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "doxatest", version, about = "Belief update and revision over finite Kripke-Lewis frames")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Report format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Largest state count accepted by exhaustive checks.
    #[arg(long, env = "DOXATEST_MAX_STATES", global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_states: Option<u32>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the frame conditions of a frame or model file.
    Validate { path: PathBuf },
    /// Check frame properties, frame classes or postulates.
    Check(CheckArgs),
    /// Test properties against their paired postulates, in both directions.
    Correspond(CorrespondArgs),
    /// Generate change tables, build canonical models and verify recovery.
    Roundtrip(RoundtripArgs),
    /// Show the belief set at a state and its change by a formula.
    Ri(RiArgs),
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub path: PathBuf,
    /// Frame class: update, strong-update, revision-def12, revision-strict.
    #[arg(long = "class")]
    pub classes: Vec<String>,
    /// Frame property, e.g. PD57 or PD57-strong.
    #[arg(long = "property")]
    pub properties: Vec<String>,
    /// Postulate, e.g. D5 or R8. Needs a valuation in the file.
    #[arg(long = "axiom")]
    pub axioms: Vec<String>,
    /// Restrict postulate checks to this state.
    #[arg(long)]
    pub state: Option<String>,
    /// Fill missing selections: default or whole.
    #[arg(long)]
    pub complete: Option<String>,
}

#[derive(Debug, Args)]
pub struct CorrespondArgs {
    /// A frame or model file. Omit when enumerating.
    pub path: Option<PathBuf>,
    /// Enumerate frames over this many states.
    #[arg(long, conflicts_with = "path")]
    pub enumerate: Option<usize>,
    /// Draw this many seeded random frames instead of enumerating.
    #[arg(long, requires = "enumerate")]
    pub random: Option<usize>,
    /// Keep one frame per relabeling class.
    #[arg(long)]
    pub canonical: bool,
    /// Pairs such as `all`, `PR4:R4`, `PD57`.
    #[arg(long, default_value = "all")]
    pub pairs: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Atom budget for the valuation search.
    #[arg(long, default_value_t = 2)]
    pub atoms: usize,
    /// Valuations drawn per atom count when enumeration is too large.
    #[arg(long, default_value_t = doxatest::correspondence::DEFAULT_SAMPLES)]
    pub samples: usize,
    /// Fill missing selections in the input file: default or whole.
    #[arg(long)]
    pub complete: Option<String>,
    /// Also search frames up to this many states for a revision-def12 frame violating PD57.
    #[arg(long)]
    pub gap: Option<usize>,
}

#[derive(Debug, Args)]
pub struct RoundtripArgs {
    #[arg(long, default_value_t = 2)]
    pub atoms: usize,
    /// update, strong-update or revision.
    #[arg(long, default_value = "revision")]
    pub kind: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 10)]
    pub trials: usize,
    /// Probe formulas per extension check.
    #[arg(long, default_value_t = doxatest::changegen::DEFAULT_PROBES)]
    pub probes: usize,
}

#[derive(Debug, Args)]
pub struct RiArgs {
    pub path: PathBuf,
    #[arg(long)]
    pub state: String,
    #[arg(long)]
    pub formula: String,
    /// Formula whose membership in the changed belief set is reported.
    #[arg(long = "probe")]
    pub probes: Vec<String>,
    #[arg(long)]
    pub complete: Option<String>,
}

/// A failure that ends the run with status 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok((report, status)) => {
            let body = match cli.global.format {
                Format::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
                Format::Text => render::text(&report),
            };
            // A closed pipe downstream is not our failure.
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            ExitCode::from(status)
        }
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
