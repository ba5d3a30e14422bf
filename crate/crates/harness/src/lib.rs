//! Convergence experiments, reports and command-line plumbing for `split-spline`.

pub mod data_file;
pub mod experiment;
pub mod functions;
pub mod reference;
pub mod report;

pub use experiment::{
    data_count, estimate_error, nco, run_experiment, run_experiment_with, ExperimentConfig, OutputFormat, PhiPattern,
    ResultRow, SplitRule, DEFAULT_SAMPLES,
};
pub use functions::TestFunction;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error(transparent)]
    Spline(#[from] split_spline::Error),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
