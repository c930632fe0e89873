//! Experiment configuration schema (versioned, JSON).

use crate::CliError;
use recon_core::models::{ManifoldModel, SampleSpec};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// Default seed for the noise displacement stream, so runs without an
/// explicit value stay reproducible.
pub const DEFAULT_NOISE_SEED: u64 = 0x0debc1e5;

fn default_noise_seed() -> u64 {
    DEFAULT_NOISE_SEED
}

fn default_max_dim() -> usize {
    2
}

/// Which metric the pipeline equips the sample with, and therefore which
/// scale window applies: intrinsic geodesic distances with the
/// convexity-based window, or ambient Euclidean distances with the
/// reach-based window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PipelineKind {
    Intrinsic,
    Ambient,
}

/// How the Rips scale is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "policy", rename_all = "snake_case")]
pub enum BetaPolicy {
    /// Use this scale even when it falls outside the guaranteed window
    /// (the run is then flagged as empirical).
    Explicit { value: f64 },
    /// Geometric midpoint of the admissible window; fails when the window
    /// is empty.
    WindowMidpoint,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub schema: u32,
    pub model: ManifoldModel,
    pub sampler: SampleSpec,
    /// Perturbation magnitude: geodesic displacement radius for the
    /// intrinsic pipeline, Euclidean for the ambient one.
    #[serde(default)]
    pub noise: f64,
    #[serde(default = "default_noise_seed")]
    pub noise_seed: u64,
    pub zeta: f64,
    pub beta: BetaPolicy,
    /// Highest homology dimension to report. The complex is expanded one
    /// dimension further so every reported rank is exact.
    #[serde(default = "default_max_dim")]
    pub max_dim: usize,
    /// Defaults per model: intrinsic where the model has geodesics (circle,
    /// flat torus), ambient where reconstruction runs on an embedded cloud
    /// (sphere, embedded torus).
    #[serde(default)]
    pub pipeline: Option<PipelineKind>,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.schema != SCHEMA_VERSION {
            return Err(CliError::Schema(self.schema));
        }
        self.model.validate()?;
        if !(self.noise >= 0.0) {
            return Err(CliError::Invalid(format!("noise must be nonnegative, got {}", self.noise)));
        }
        if self.max_dim > 8 {
            return Err(CliError::Invalid(format!(
                "max_dim {} is beyond anything this tool can expand",
                self.max_dim
            )));
        }
        match self.sampler {
            SampleSpec::Grid { n } | SampleSpec::Random { n, .. } if n == 0 => {
                return Err(CliError::Invalid("sampler size must be positive".into()));
            }
            _ => {}
        }
        self.effective_pipeline()?;
        Ok(())
    }

    /// Resolves the pipeline, checking the model actually supports it.
    pub fn effective_pipeline(&self) -> Result<PipelineKind, CliError> {
        let m = &self.model;
        match self.pipeline {
            Some(PipelineKind::Intrinsic) => {
                if m.has_geodesic() {
                    Ok(PipelineKind::Intrinsic)
                } else {
                    Err(CliError::PipelineUnavailable("intrinsic"))
                }
            }
            Some(PipelineKind::Ambient) => {
                if m.has_embedding() {
                    Ok(PipelineKind::Ambient)
                } else {
                    Err(CliError::PipelineUnavailable("ambient"))
                }
            }
            None => Ok(match (m.has_geodesic(), m.has_embedding()) {
                (true, false) => PipelineKind::Intrinsic,
                (false, true) => PipelineKind::Ambient,
                _ => match m {
                    ManifoldModel::Sphere2 { .. } => PipelineKind::Ambient,
                    _ => PipelineKind::Intrinsic,
                },
            }),
        }
    }
}

/// Grid sweep over sample sizes, scales, and interleaving parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub schema: u32,
    pub model: ManifoldModel,
    /// Sample sizes; each cell uses the grid sampler unless `sampler_seed`
    /// switches it to seeded random draws.
    pub ns: Vec<usize>,
    #[serde(default)]
    pub sampler_seed: Option<u64>,
    pub betas: Vec<f64>,
    #[serde(default = "default_zetas")]
    pub zetas: Vec<f64>,
    #[serde(default)]
    pub noise: f64,
    #[serde(default = "default_noise_seed")]
    pub noise_seed: u64,
    #[serde(default = "default_max_dim")]
    pub max_dim: usize,
    #[serde(default)]
    pub pipeline: Option<PipelineKind>,
}

fn default_zetas() -> Vec<f64> {
    vec![1.0 / 14.0]
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.schema != SCHEMA_VERSION {
            return Err(CliError::Schema(self.schema));
        }
        self.model.validate()?;
        if self.ns.is_empty() || self.betas.is_empty() || self.zetas.is_empty() {
            return Err(CliError::Invalid("sweep grids must be non-empty".into()));
        }
        Ok(())
    }

    /// The verify configuration of one sweep cell.
    pub fn cell(&self, n: usize, beta: f64, zeta: f64) -> ExperimentConfig {
        ExperimentConfig {
            schema: self.schema,
            model: self.model,
            sampler: match self.sampler_seed {
                None => SampleSpec::Grid { n },
                Some(seed) => SampleSpec::Random { n, seed },
            },
            noise: self.noise,
            noise_seed: self.noise_seed,
            zeta,
            beta: BetaPolicy::Explicit { value: beta },
            max_dim: self.max_dim,
            pipeline: self.pipeline,
        }
    }
}

/// Inequality-campaign configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertifyConfig {
    pub schema: u32,
    pub model: ManifoldModel,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

fn default_trials() -> usize {
    500
}

fn default_seed() -> u64 {
    1
}

impl CertifyConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.schema != SCHEMA_VERSION {
            return Err(CliError::Schema(self.schema));
        }
        self.model.validate()?;
        if self.trials == 0 {
            return Err(CliError::Invalid("trials must be positive".into()));
        }
        Ok(())
    }
}
