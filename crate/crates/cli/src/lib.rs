//! Command-line front end: workspace files in, check reports out.

pub mod commands;
pub mod report;
pub mod workspace;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use report::{Check, Report, Status};
pub use workspace::{parse_workspace, Diagnostic, Workspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Parse the workspace and build every complex and group.
    Validate,
    /// Check the proximity axioms on --space.
    Axioms,
    /// Check continuity of --map.
    Continuity,
    /// Classify fixed subsets of the self-map --map.
    Fixed,
    /// Search for a conjugacy from --map to --map2 in --mode.
    Conjugacy,
    /// Verify the uniform mean on the groups of --complex.
    Amenable,
    /// Render --complex as SVG.
    Render,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Axioms => "axioms",
            Command::Continuity => "continuity",
            Command::Fixed => "fixed",
            Command::Conjugacy => "conjugacy",
            Command::Amenable => "amenable",
            Command::Render => "render",
        }
    }
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "vortex",
    version,
    about = "Checks on finite proximity spaces, vortex complexes and their maps"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Workspace JSON file.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Space or complex name.
    #[arg(long, global = true)]
    pub space: Option<String>,
    /// Map name.
    #[arg(long, global = true)]
    pub map: Option<String>,
    /// Second map name, for conjugacy.
    #[arg(long, global = true)]
    pub map2: Option<String>,
    /// Complex name.
    #[arg(long, global = true)]
    pub complex: Option<String>,
    /// proximal or descriptive (continuity); exact, descriptive, weak or weak_descriptive (conjugacy).
    #[arg(long, global = true)]
    pub mode: Option<String>,
    /// Largest ground set enumerated exhaustively (at most 20).
    #[arg(long = "n-max", global = true)]
    pub n_max: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Output file; render writes SVG here.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest iterate checked by conjugacy transfer.
    #[arg(long, global = true, default_value_t = 6)]
    pub depth: usize,
}

/// Errors that stop a command before any check runs.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid workspace: {0}")]
    Workspace(#[from] Diagnostic),
    #[error(transparent)]
    Lookup(#[from] workspace::LookupError),
    #[error(transparent)]
    Core(#[from] vortex_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

/// What a command prints and the process exit status.
#[derive(Debug, Clone)]
pub struct Output {
    pub stdout: String,
    pub exit_code: i32,
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let path = cli
        .input
        .as_ref()
        .ok_or_else(|| CliError::Usage("--input FILE is required".into()))?;
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.clone(),
        source,
    })?;
    let ws = parse_workspace(&text)?;
    run_on(cli, &ws)
}

/// Runs the command of `cli` against an already parsed workspace.
pub fn run_on(cli: &Cli, ws: &Workspace) -> Result<Output, CliError> {
    let outcome = commands::dispatch(cli, ws)?;
    let stdout = match (&outcome.raw, cli.format) {
        (Some(raw), _) => raw.clone(),
        (None, Format::Text) => outcome.report.to_text(),
        (None, Format::Json) => outcome.report.to_json(),
    };
    Ok(Output {
        stdout,
        exit_code: outcome.report.status.exit_code(),
    })
}
