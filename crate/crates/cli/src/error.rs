use std::fmt;

use omltopo::geom::GeomError;
use omltopo::{LatticeError, TopologyError};
use serde::Serialize;

/// Exit status for a negative `check` verdict.
pub const EXIT_VERDICT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_PARSE: i32 = 4;
pub const EXIT_INVALID_LATTICE: i32 = 5;
pub const EXIT_TOPOLOGY: i32 = 6;
pub const EXIT_GEOM: i32 = 7;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io {
        path: String,
        source: std::io::Error,
    },
    Parse(String),
    Lattice(LatticeError),
    Topology(TopologyError),
    Geom(GeomError),
    /// `check` found a property that fails; the verdict has already been written.
    Verdict(String),
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    error: &'a str,
    kind: &'a str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<[&'a str; 2]>,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verdict(_) => EXIT_VERDICT,
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io { .. } => EXIT_IO,
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Lattice(_) => EXIT_INVALID_LATTICE,
            CliError::Topology(_) => EXIT_TOPOLOGY,
            CliError::Geom(_) => EXIT_GEOM,
        }
    }

    pub fn category(&self) -> &'static str {
        match self {
            CliError::Verdict(_) => "verdict",
            CliError::Usage(_) => "usage",
            CliError::Io { .. } => "io",
            CliError::Parse(_) => "parse",
            CliError::Lattice(_) => "lattice",
            CliError::Topology(_) => "topology",
            CliError::Geom(_) => "geom",
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Verdict(_) => "check_failed",
            CliError::Usage(_) => "usage",
            CliError::Io { .. } => "io",
            CliError::Parse(_) => "parse",
            CliError::Lattice(e) => e.kind(),
            CliError::Topology(e) => e.kind(),
            CliError::Geom(e) => e.kind(),
        }
    }

    /// One-line JSON description for stderr.
    pub fn to_json(&self) -> String {
        let witness = match self {
            CliError::Lattice(e) => e.witness().map(|(a, b)| [a, b]),
            _ => None,
        };
        let report = ErrorReport { error: self.category(), kind: self.kind(), message: self.to_string(), witness };
        serde_json::to_string(&report).expect("error report serializes")
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Parse(m) | CliError::Verdict(m) => f.write_str(m),
            CliError::Io { path, source } => write!(f, "{path}: {source}"),
            CliError::Lattice(e) => e.fmt(f),
            CliError::Topology(e) => e.fmt(f),
            CliError::Geom(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for CliError {}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        CliError::Lattice(e)
    }
}

impl From<TopologyError> for CliError {
    fn from(e: TopologyError) -> Self {
        CliError::Topology(e)
    }
}

impl From<GeomError> for CliError {
    fn from(e: GeomError) -> Self {
        CliError::Geom(e)
    }
}
