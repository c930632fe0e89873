//! Orchestration layer for the reconstruction toolkit: deterministic
//! end-to-end verification runs, parameter sweeps, inequality-campaign
//! certification, and the small building-block commands behind them.

pub mod certify;
pub mod config;
pub mod run;
pub mod sweep;

pub use certify::{run_certify, CertifyReport, CheckStatus};
pub use config::{BetaPolicy, CertifyConfig, ExperimentConfig, PipelineKind, SweepConfig};
pub use run::{run_verify, run_window, RunReport, WindowReport, EMPIRICAL_FLAG, SIMPLEX_BUDGET};
pub use sweep::{run_sweep, write_sweep_csv, SweepOutcome, SweepRow};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("unsupported schema version {0}; this build reads schema 1")]
    Schema(u32),
    #[error("config invalid: {0}")]
    Invalid(String),
    #[error("no admissible beta; increase density or zeta")]
    EmptyWindow,
    #[error("{0} pipeline unavailable for this model")]
    PipelineUnavailable(&'static str),
    #[error("model does not expose the constant `{0}` this window needs")]
    MissingConstant(&'static str),
    #[error(transparent)]
    Model(#[from] recon_core::models::ModelError),
    #[error(transparent)]
    Metric(#[from] recon_core::metric::MetricError),
    #[error(transparent)]
    Complex(#[from] recon_core::complex::ComplexError),
    #[error(transparent)]
    Conditions(#[from] recon_core::conditions::ConditionsError),
    #[error(transparent)]
    Jung(#[from] recon_core::jung::JungError),
    #[error(transparent)]
    Files(#[from] recon_core::io::IoError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// Process exit code contract: 2 for invalid configurations or violated
    /// hypotheses (nothing was checked), 1 for checks that ran and failed.
    pub fn exit_code(&self) -> i32 {
        2
    }
}
