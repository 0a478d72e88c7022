//! Command failures and their exit codes.

use std::fmt;

/// A failed command.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, configuration or input files (exit code 2).
    Usage(String),
    /// A numerical routine failed (exit code 3).
    Numerical(arakelov_zeta::Error),
    /// Writing output failed (exit code 3).
    Io(String),
}

impl CliError {
    /// Process exit code.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) | CliError::Io(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Numerical(e) => write!(f, "numerical failure: {e}"),
            CliError::Io(m) => write!(f, "output error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<arakelov_zeta::Error> for CliError {
    fn from(e: arakelov_zeta::Error) -> Self {
        match e {
            arakelov_zeta::Error::Configuration(m) => CliError::Usage(m),
            other => CliError::Numerical(other),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
