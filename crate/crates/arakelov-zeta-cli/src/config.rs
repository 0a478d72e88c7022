//! Run configuration: defaults, an optional TOML file and command-line flags.

use crate::error::CliError;
use arakelov_zeta::context::F64_PRECISION_BITS;
use arakelov_zeta::EvalContext;
use serde::Deserialize;
use std::path::{Path, PathBuf};

/// Environment variable naming the configuration file.
pub const CONFIG_ENV: &str = "ARAKELOV_ZETA_CONFIG";

/// Record format of command output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Jsonl,
}

/// Settings read from the configuration file; every field is optional.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub precision_bits: Option<u32>,
    pub tol: Option<f64>,
    pub thread_count: Option<usize>,
    pub output_format: Option<OutputFormat>,
    pub output_path: Option<PathBuf>,
}

impl FileConfig {
    /// Parses a TOML file.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Usage(format!("invalid config {}: {e}", path.display())))
    }

    /// The file named by [`CONFIG_ENV`], or an empty configuration.
    pub fn from_env() -> Result<Self, CliError> {
        match std::env::var_os(CONFIG_ENV) {
            Some(p) if !p.is_empty() => Self::load(Path::new(&p)),
            _ => Ok(Self::default()),
        }
    }
}

/// Fully resolved settings of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub precision_bits: u32,
    pub tol: f64,
    pub thread_count: Option<usize>,
    pub output_format: Option<OutputFormat>,
    pub output_path: Option<PathBuf>,
}

/// Values given on the command line, which override the file.
#[derive(Debug, Clone, Default)]
pub struct FlagConfig {
    pub precision_bits: Option<u32>,
    pub tol: Option<f64>,
    pub thread_count: Option<usize>,
    pub output_format: Option<OutputFormat>,
    pub output_path: Option<PathBuf>,
}

impl RunConfig {
    /// Layers flags over the file over the defaults.
    pub fn resolve(file: FileConfig, flags: FlagConfig) -> Self {
        let defaults = EvalContext::default();
        Self {
            precision_bits: flags.precision_bits.or(file.precision_bits).unwrap_or(F64_PRECISION_BITS),
            tol: flags.tol.or(file.tol).unwrap_or(defaults.tol),
            thread_count: flags.thread_count.or(file.thread_count),
            output_format: flags.output_format.or(file.output_format),
            output_path: flags.output_path.or(file.output_path),
        }
    }

    /// Evaluation context for the library calls.
    pub fn context(&self) -> Result<EvalContext, CliError> {
        EvalContext::new(self.precision_bits, self.tol, EvalContext::default().max_terms)
            .map_err(|e| CliError::Usage(e.to_string()))
    }
}
