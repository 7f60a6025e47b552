//! Command-line front end: argument parsing, lattice ingestion and report output.

pub mod commands;
pub mod error;
pub mod report;
pub mod source;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use omltopo::lattice::DEFAULT_MAX_ELEMENTS;
use omltopo::Family;

pub use commands::{run, Command, Format, Outcome, RunConfig};
pub use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "omltopo", version, about = "Topologies on finite orthomodular lattices and R³ geometry checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Cmd,

    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Seed for randomized runs.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Highest relation or ball index to report.
    #[arg(long, global = true)]
    pub max_n: Option<usize>,

    /// Tolerance override for numerical certificates.
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Largest lattice accepted.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ELEMENTS)]
    pub max_elements: usize,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Validate a lattice and report atomicity and atom projection.
    Check { input: String },
    /// Relations R_n up to stabilization.
    Rn {
        input: String,
        #[arg(long, default_value = "general")]
        family: Family,
    },
    /// Ball traces B_n(a).
    Balls {
        input: String,
        #[arg(long, default_value = "general")]
        family: Family,
        #[arg(long)]
        element: Option<String>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Full topology report.
    Topology {
        input: String,
        #[arg(long, default_value = "general")]
        family: Family,
    },
    /// Numerical checks in R³.
    Geom {
        #[command(subcommand)]
        command: GeomCmd,
    },
}

#[derive(Debug, Subcommand)]
pub enum GeomCmd {
    /// Sweep of the two-angle dot product minimum.
    Lemma {
        #[arg(long, default_value_t = 50)]
        thetas: usize,
    },
    /// Exact check of the c_n recursion.
    Ladder {
        #[arg(long, default_value_t = 1000)]
        n: u64,
    },
    /// Random witness chains down to an orthogonal pair.
    Chain {
        #[arg(long, default_value_t = 3)]
        n: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

impl Cli {
    pub fn config(&self) -> RunConfig {
        let command = match &self.command {
            Cmd::Check { input } => Command::Check { input: input.clone() },
            Cmd::Rn { input, family } => Command::Rn { input: input.clone(), family: *family },
            Cmd::Balls { input, family, element, n } => {
                Command::Balls { input: input.clone(), family: *family, element: element.clone(), n: *n }
            }
            Cmd::Topology { input, family } => Command::Topology { input: input.clone(), family: *family },
            Cmd::Geom { command: GeomCmd::Lemma { thetas } } => Command::Lemma { thetas: *thetas },
            Cmd::Geom { command: GeomCmd::Ladder { n } } => Command::Ladder { n: *n },
            Cmd::Geom { command: GeomCmd::Chain { n, trials } } => Command::Chain { n: *n, trials: *trials },
        };
        RunConfig {
            command,
            format: self.format,
            seed: self.seed,
            max_n: self.max_n,
            tol: self.tol,
            max_elements: self.max_elements,
        }
    }
}

/// Writes `text` to `path` through a sibling temporary file, or to stdout.
pub fn emit(text: &str, path: Option<&Path>) -> Result<(), CliError> {
    let io_err = |p: &Path| {
        let p = p.display().to_string();
        move |source| CliError::Io { path: p, source }
    };
    match path {
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(io_err(Path::new("<stdout>")))
        }
        Some(p) => {
            let dir = p.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
            let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err(p))?;
            tmp.write_all(text.as_bytes()).map_err(io_err(p))?;
            tmp.persist(p).map_err(|e| e.error).map_err(io_err(p))?;
            Ok(())
        }
    }
}

/// Runs a parsed command line and writes its output.
pub fn execute(cli: &Cli) -> Result<(), CliError> {
    let outcome = run(&cli.config())?;
    emit(&outcome.text, cli.out.as_deref())?;
    outcome.failure.map_or(Ok(()), Err)
}
