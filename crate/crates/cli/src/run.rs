//! The verify pipeline: sample, perturb, certify the distance bound, derive
//! the scale window, build the Rips complex, compute Betti numbers, and
//! compare against the model's ground truth.

use crate::config::{BetaPolicy, ExperimentConfig, PipelineKind};
use crate::CliError;
use recon_core::complex::rips_complex_bounded;
use recon_core::conditions::{gh_window, h_window, ScaleWindow};
use recon_core::homology::betti_numbers;
use recon_core::metric::{FiniteMetricSpace, PointCloud};
use recon_core::models::{perturb_cloud, ConstantsReport};
use serde::Serialize;
use std::time::Instant;

/// Hard ceiling on stored simplices; expansion aborts with a structured
/// error beyond it rather than exhausting memory.
pub const SIMPLEX_BUDGET: usize = 50_000_000;

pub const EMPIRICAL_FLAG: &str = "beta outside guaranteed window; empirical regime";

/// Everything `run_verify` measures and decides, serialized as the run
/// artifact. Identical configs produce identical reports except for
/// `wall_time_ms`, which is measured, not derived; determinism checks
/// compare reports with that field zeroed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub config: ExperimentConfig,
    pub pipeline: PipelineKind,
    pub constants: ConstantsReport,
    pub sample_size: usize,
    /// Certified fill bound of the unperturbed sample.
    pub fill_bound: f64,
    pub noise: f64,
    /// Distance bound fed to the window: fill plus noise.
    pub dist_bound: f64,
    pub window: ScaleWindow,
    pub beta: f64,
    pub beta_in_window: bool,
    pub flags: Vec<String>,
    pub complex_sizes: Vec<usize>,
    pub betti: Vec<u64>,
    pub betti_exact: Vec<bool>,
    pub betti_truth: Vec<u64>,
    pub pass: bool,
    pub wall_time_ms: u64,
}

/// The sample with the metric the pipeline actually reconstructs from.
pub struct PreparedSample {
    pub metric: FiniteMetricSpace,
    pub fill_bound: f64,
    pub dist_bound: f64,
}

pub fn prepare_sample(config: &ExperimentConfig) -> Result<PreparedSample, CliError> {
    let pipeline = config.effective_pipeline()?;
    let sample = config.model.sample(config.sampler)?;
    let metric = match pipeline {
        PipelineKind::Intrinsic => {
            let points = if config.noise > 0.0 {
                config.model.perturb_on_model(&sample.points, config.noise, config.noise_seed)?
            } else {
                sample.points
            };
            config.model.metric_space_of(&points)?
        }
        PipelineKind::Ambient => {
            let embedded: Result<Vec<Vec<f64>>, _> =
                sample.points.iter().map(|p| config.model.embed(p)).collect();
            let cloud = PointCloud::new(embedded?)?;
            let cloud = if config.noise > 0.0 {
                perturb_cloud(&cloud, config.noise, config.noise_seed)?
            } else {
                cloud
            };
            cloud.to_metric_space()?
        }
    };
    // Perturbation moves each point at most `noise`, so the certified fill
    // bound degrades by at most that much; ambient fills are no larger
    // than intrinsic ones because chords never exceed arcs.
    Ok(PreparedSample {
        metric,
        fill_bound: sample.fill_bound,
        dist_bound: sample.fill_bound + config.noise,
    })
}

/// The scale window the configured pipeline guarantees for a distance
/// bound: convexity-based for intrinsic metrics, reach-based for ambient
/// ones.
pub fn window_for(
    config: &ExperimentConfig,
    dist_bound: f64,
) -> Result<ScaleWindow, CliError> {
    let constants = config.model.constants();
    match config.effective_pipeline()? {
        PipelineKind::Intrinsic => {
            let delta = constants.delta.ok_or(CliError::MissingConstant("delta"))?;
            Ok(gh_window(delta.value, dist_bound, config.zeta)?)
        }
        PipelineKind::Ambient => {
            let tau = constants.tau.ok_or(CliError::MissingConstant("tau"))?;
            Ok(h_window(tau.value, dist_bound, config.zeta)?)
        }
    }
}

/// Resolves the scale policy against the window. The explicit policy
/// always yields a scale, flagging it when it leaves the guaranteed range;
/// the midpoint policy fails on an empty window.
pub fn choose_beta(
    policy: BetaPolicy,
    window: &ScaleWindow,
) -> Result<(f64, Vec<String>), CliError> {
    match policy {
        BetaPolicy::Explicit { value } => {
            if !(value > 0.0) {
                return Err(CliError::Invalid(format!("beta must be positive, got {value}")));
            }
            let flags = if window.contains(value) {
                Vec::new()
            } else {
                vec![EMPIRICAL_FLAG.to_string()]
            };
            Ok((value, flags))
        }
        BetaPolicy::WindowMidpoint => {
            if window.empty {
                return Err(CliError::EmptyWindow);
            }
            // Geometric midpoint maximizes the relative margin against both
            // endpoints; fall back to bisection when the lower endpoint
            // degenerates to zero.
            let beta = if window.lower > 0.0 {
                (window.lower * window.upper).sqrt()
            } else {
                window.upper / 2.0
            };
            Ok((beta, Vec::new()))
        }
    }
}

pub fn run_verify(config: &ExperimentConfig) -> Result<RunReport, CliError> {
    let start = Instant::now();
    config.validate()?;
    let pipeline = config.effective_pipeline()?;
    let constants = config.model.constants();
    let prepared = prepare_sample(config)?;
    let window = window_for(config, prepared.dist_bound)?;
    let (beta, flags) = choose_beta(config.beta, &window)?;

    let complex =
        rips_complex_bounded(&prepared.metric, beta, config.max_dim + 1, SIMPLEX_BUDGET)?;
    let hom = betti_numbers(&complex);
    let truth = constants.betti_truth.clone();
    let pass = (0..=config.max_dim).all(|i| {
        hom.betti.get(i).copied().unwrap_or(0) == truth.get(i).copied().unwrap_or(0)
    });

    // The complex is built one dimension above the request so that the
    // reported ranks are exact; the extra dimension itself is scaffolding
    // and its rank is meaningless, so it is trimmed from the report.
    let reported = config.max_dim + 1;
    let mut betti = hom.betti;
    let mut exact = hom.exact;
    betti.truncate(reported);
    exact.truncate(reported);
    betti.resize(reported, 0);
    exact.resize(reported, true);

    Ok(RunReport {
        schema: config.schema,
        config: config.clone(),
        pipeline,
        constants,
        sample_size: prepared.metric.len(),
        fill_bound: prepared.fill_bound,
        noise: config.noise,
        dist_bound: prepared.dist_bound,
        window,
        beta,
        beta_in_window: window.contains(beta),
        flags,
        complex_sizes: hom.counts.clone(),
        betti,
        betti_exact: exact,
        betti_truth: truth,
        pass,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}

/// Window-only variant of the pipeline: certify the sample's distance
/// bound and report the admissible scales without building a complex.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WindowReport {
    pub schema: u32,
    pub pipeline: PipelineKind,
    pub constants: ConstantsReport,
    pub sample_size: usize,
    pub fill_bound: f64,
    pub noise: f64,
    pub dist_bound: f64,
    pub zeta: f64,
    pub window: ScaleWindow,
}

pub fn run_window(config: &ExperimentConfig) -> Result<WindowReport, CliError> {
    config.validate()?;
    let prepared = prepare_sample(config)?;
    let window = window_for(config, prepared.dist_bound)?;
    Ok(WindowReport {
        schema: config.schema,
        pipeline: config.effective_pipeline()?,
        constants: config.model.constants(),
        sample_size: prepared.metric.len(),
        fill_bound: prepared.fill_bound,
        noise: config.noise,
        dist_bound: prepared.dist_bound,
        zeta: config.zeta,
        window,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use recon_core::models::{ManifoldModel, SampleSpec};

    fn circle_config(n: usize, beta: BetaPolicy) -> ExperimentConfig {
        ExperimentConfig {
            schema: 1,
            model: ManifoldModel::circle(1.0).unwrap(),
            sampler: SampleSpec::Grid { n },
            noise: 0.0,
            noise_seed: crate::config::DEFAULT_NOISE_SEED,
            zeta: 1.0 / 14.0,
            beta,
            max_dim: 2,
            pipeline: None,
        }
    }

    #[test]
    fn circle_grid_run_reconstructs_inside_window() {
        let config = circle_config(50, BetaPolicy::Explicit { value: 1.0 });
        let report = run_verify(&config).unwrap();
        assert!(report.pass, "{report:?}");
        assert!(report.beta_in_window);
        assert!(report.flags.is_empty());
        assert_eq!(&report.betti[..3], &[1, 1, 0]);
        assert!(report.betti_exact.iter().take(3).all(|&e| e));
        // Window endpoints for d_H = pi/50 at zeta = 1/14.
        assert!((report.window.lower - 14.0 * report.dist_bound).abs() < 1e-12);
        assert!(
            (report.window.upper - 7.0 * std::f64::consts::PI / 16.0).abs() < 1e-12
        );
    }

    #[test]
    fn sparse_circle_has_empty_window() {
        let config = circle_config(4, BetaPolicy::WindowMidpoint);
        let err = run_verify(&config).unwrap_err();
        assert!(matches!(err, CliError::EmptyWindow));
        // The same run with an explicit scale is flagged, not failed.
        let config = circle_config(4, BetaPolicy::Explicit { value: 1.2 });
        let report = run_verify(&config).unwrap();
        assert_eq!(report.flags, vec![EMPIRICAL_FLAG.to_string()]);
        assert!(!report.beta_in_window);
    }

    #[test]
    fn midpoint_policy_picks_geometric_mean() {
        let config = circle_config(50, BetaPolicy::WindowMidpoint);
        let report = run_verify(&config).unwrap();
        let expect = (report.window.lower * report.window.upper).sqrt();
        assert_eq!(report.beta, expect);
        assert!(report.pass);
    }

    #[test]
    fn ambient_sphere_run_with_noise() {
        let config = ExperimentConfig {
            schema: 1,
            model: ManifoldModel::sphere2(1.0).unwrap(),
            sampler: SampleSpec::Random { n: 150, seed: 9 },
            noise: 0.01,
            noise_seed: 5,
            zeta: 1.0 / 28.0,
            beta: BetaPolicy::Explicit { value: 0.55 },
            max_dim: 1,
            pipeline: None,
        };
        let report = run_verify(&config).unwrap();
        assert_eq!(report.pipeline, PipelineKind::Ambient);
        assert_eq!(report.flags, vec![EMPIRICAL_FLAG.to_string()]);
        assert_eq!(&report.betti[..2], &[1, 0]);
        assert!(report.pass);
        assert!(report.dist_bound > report.fill_bound);
    }

    #[test]
    fn reports_are_deterministic_modulo_wall_time() {
        let config = circle_config(30, BetaPolicy::Explicit { value: 0.8 });
        let mut a = run_verify(&config).unwrap();
        let mut b = run_verify(&config).unwrap();
        a.wall_time_ms = 0;
        b.wall_time_ms = 0;
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn window_report_skips_the_complex() {
        let config = circle_config(50, BetaPolicy::WindowMidpoint);
        let w = run_window(&config).unwrap();
        assert!(!w.window.empty);
        assert!((w.fill_bound - std::f64::consts::PI / 50.0).abs() < 1e-12);
    }
}
