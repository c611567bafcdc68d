//! Sweep runner for relay-aided reconfigurable surface link models.
//!
//! Loads a JSON scenario, evaluates rates or required element counts with
//! [`rir_core`] across an element-count or distance axis, and writes the
//! result as CSV. The `rir` binary wraps this crate.

use std::path::PathBuf;

pub mod config;
pub mod output;
pub mod presets;
pub mod sweep;
pub mod verify;

pub use config::{Architecture, BetaSetting, ChannelMode, FieldError, SweepAxis, SweepConfig};
pub use sweep::{run_rate_sweep, run_sizing_sweep, with_workers, SweepRow};

/// Environment variable naming the directory for outputs written without an
/// explicit path.
pub const OUTPUT_DIR_ENV: &str = "RIR_OUTPUT_DIR";

#[derive(Debug, thiserror::Error)]
pub enum SimError {
    #[error("invalid config: {0}")]
    Json(serde_json::Error),
    #[error("invalid config: {0}")]
    Field(FieldError),
    #[error(transparent)]
    Model(#[from] rir_core::Error),
    #[error("{path}: {error}")]
    Io {
        path: PathBuf,
        error: std::io::Error,
    },
    #[error("csv: {0}")]
    Csv(csv::Error),
    #[error("csv line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error("thread pool: {0}")]
    Pool(String),
}

impl From<FieldError> for SimError {
    fn from(e: FieldError) -> Self {
        SimError::Field(e)
    }
}

impl From<csv::Error> for SimError {
    fn from(e: csv::Error) -> Self {
        SimError::Csv(e)
    }
}

/// Output location: an explicit path wins, then the config's
/// `output_path`, then `$RIR_OUTPUT_DIR/<default_name>`. `None` means stdout.
pub fn resolve_output(
    explicit: Option<PathBuf>,
    configured: Option<PathBuf>,
    default_name: &str,
) -> Option<PathBuf> {
    explicit.or(configured).or_else(|| {
        std::env::var_os(OUTPUT_DIR_ENV)
            .filter(|d| !d.is_empty())
            .map(|d| PathBuf::from(d).join(default_name))
    })
}
