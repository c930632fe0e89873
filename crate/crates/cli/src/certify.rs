//! The inequality campaign: runs every circumradius, subset-center,
//! distortion, and construction-verifier check the model supports, at the
//! configured trial count, and bundles the results. Checks a model cannot
//! support are reported as explicitly unsupported rather than silently
//! skipped.

use crate::config::CertifyConfig;
use crate::CliError;
use recon_core::complex::SimplicialComplex;
use recon_core::conditions::{
    check_distortion, gh_window, h_window, verify_contiguity_chain,
    verify_surjectivity_construction, ChainVariant,
};
use recon_core::jung::{check_circum_bound, check_subset_center, euclidean_circumcenter, jung_min_diam};
use recon_core::metric::{nn_correspondence_with, PointCloud};
use recon_core::models::{ConstantsReport, ManifoldModel, SampleSpec};
use recon_core::rng::SplitMix64;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Unsupported,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertifyItem {
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

impl CertifyItem {
    fn pass(name: &'static str, detail: String) -> Self {
        CertifyItem { name, status: CheckStatus::Pass, detail }
    }

    fn fail(name: &'static str, detail: String) -> Self {
        CertifyItem { name, status: CheckStatus::Fail, detail }
    }

    fn unsupported(name: &'static str, why: &str) -> Self {
        CertifyItem { name, status: CheckStatus::Unsupported, detail: why.to_string() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertifyReport {
    pub schema: u32,
    pub model: ManifoldModel,
    pub trials: usize,
    pub seed: u64,
    pub constants: ConstantsReport,
    pub items: Vec<CertifyItem>,
    /// True when no supported check failed.
    pub valid: bool,
}

pub fn run_certify(config: &CertifyConfig) -> Result<CertifyReport, CliError> {
    config.validate()?;
    let model = config.model;
    let constants = model.constants();
    let mut items = Vec::new();

    items.push(euclidean_jung_equality(config));
    items.push(circum_bound_campaign(config));
    items.push(subset_center_campaign(config));
    items.push(distortion_campaign(config));
    items.push(window_composition(&constants));
    let (sur, chain) = construction_verifiers(&model);
    items.push(sur);
    items.push(chain);

    let valid = items.iter().all(|i| i.status != CheckStatus::Fail);
    Ok(CertifyReport {
        schema: config.schema,
        model,
        trials: config.trials,
        seed: config.seed,
        constants,
        items,
        valid,
    })
}

/// Equilateral triangles at random scales meet the flat-space
/// diameter-from-circumradius formula with equality.
fn euclidean_jung_equality(config: &CertifyConfig) -> CertifyItem {
    const NAME: &str = "euclidean_jung_equality";
    let mut rng = SplitMix64::new(config.seed ^ 0xe9c1);
    let trials = config.trials.min(200);
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let side = rng.uniform(0.1, 10.0);
        let h = side * 3.0f64.sqrt() / 2.0;
        let cloud = PointCloud::new(vec![
            vec![0.0, 0.0],
            vec![side, 0.0],
            vec![side / 2.0, h],
        ])
        .expect("fixed shape");
        let center = match euclidean_circumcenter(&cloud) {
            Ok(c) => c,
            Err(e) => return CertifyItem::fail(NAME, e.to_string()),
        };
        let diam = match jung_min_diam(center.radius, 2, 0.0) {
            Ok(d) => d,
            Err(e) => return CertifyItem::fail(NAME, e.to_string()),
        };
        worst = worst.max((diam - side).abs() / side);
    }
    let detail = format!("{trials} triangles, worst relative gap {worst:.3e}");
    if worst <= 1e-9 {
        CertifyItem::pass(NAME, detail)
    } else {
        CertifyItem::fail(NAME, detail)
    }
}

/// Seeded point sets within the hypothesis ball satisfy
/// diam >= (4/3) circumradius.
fn circum_bound_campaign(config: &CertifyConfig) -> CertifyItem {
    const NAME: &str = "circumradius_diameter_bound";
    if !config.model.has_geodesic() {
        return CertifyItem::unsupported(NAME, "model has no geodesic evaluator");
    }
    let cap = hypothesis_ball_radius(&config.model);
    let mut rng = SplitMix64::new(config.seed ^ 0xc12c);
    let mut worst = f64::INFINITY;
    for _ in 0..config.trials {
        let points = match hypothesis_ball_set(&config.model, cap, &mut rng) {
            Ok(p) => p,
            Err(e) => return CertifyItem::fail(NAME, e.to_string()),
        };
        match check_circum_bound(&config.model, &points) {
            Ok(rep) => {
                if !rep.pass {
                    return CertifyItem::fail(
                        NAME,
                        format!("diam {} vs radius {} (ratio {})", rep.diam, rep.radius, rep.ratio),
                    );
                }
                if rep.radius > 0.0 {
                    worst = worst.min(rep.ratio);
                }
            }
            Err(e) => return CertifyItem::fail(NAME, e.to_string()),
        }
    }
    CertifyItem::pass(
        NAME,
        format!("{} sets, smallest diameter/radius ratio {worst:.6}", config.trials),
    )
}

/// Circumcenters of nested subsets stay within (3/4) diam of each other.
fn subset_center_campaign(config: &CertifyConfig) -> CertifyItem {
    const NAME: &str = "subset_center_bound";
    if !config.model.has_geodesic() {
        return CertifyItem::unsupported(NAME, "model has no geodesic evaluator");
    }
    let cap = hypothesis_ball_radius(&config.model);
    let mut rng = SplitMix64::new(config.seed ^ 0x5ce7);
    let mut worst = 0.0f64;
    for _ in 0..config.trials {
        let a = match hypothesis_ball_set(&config.model, cap, &mut rng) {
            Ok(p) => p,
            Err(e) => return CertifyItem::fail(NAME, e.to_string()),
        };
        let take = 1 + rng.next_index(a.len());
        let b: Vec<Vec<f64>> = a[..take].to_vec();
        match check_subset_center(&config.model, &a, &b) {
            Ok(rep) => {
                if !rep.pass {
                    return CertifyItem::fail(
                        NAME,
                        format!("center distance {} above bound {}", rep.center_distance, rep.bound),
                    );
                }
                worst = worst.max(rep.center_distance - rep.bound);
            }
            Err(e) => return CertifyItem::fail(NAME, e.to_string()),
        }
    }
    CertifyItem::pass(NAME, format!("{} nested pairs checked", config.trials))
}

fn distortion_campaign(config: &CertifyConfig) -> CertifyItem {
    const NAME: &str = "distortion_inequality";
    let m = &config.model;
    if !(m.has_geodesic() && m.has_embedding()) {
        return CertifyItem::unsupported(NAME, "needs both geodesics and an embedding");
    }
    match check_distortion(m, 4.0 / 3.0, config.trials, config.seed ^ 0xd157) {
        Ok(rep) if rep.pass => CertifyItem::pass(
            NAME,
            format!(
                "{} pairs under threshold {:.6}, max arc/chord ratio {:.6}",
                rep.trials, rep.threshold, rep.max_ratio
            ),
        ),
        Ok(rep) => CertifyItem::fail(NAME, format!("{rep:?}")),
        Err(e) => CertifyItem::fail(NAME, e.to_string()),
    }
}

/// The window calculators accept this model's certified constants.
fn window_composition(constants: &ConstantsReport) -> CertifyItem {
    const NAME: &str = "scale_window_composition";
    let mut parts = Vec::new();
    if let Some(delta) = &constants.delta {
        match gh_window(delta.value, 0.0, 1.0 / 28.0) {
            Ok(w) if !w.empty => parts.push(format!("intrinsic up to {:.6}", w.upper)),
            Ok(_) => return CertifyItem::fail(NAME, "intrinsic window empty at zero noise".into()),
            Err(e) => return CertifyItem::fail(NAME, e.to_string()),
        }
    }
    if let Some(tau) = &constants.tau {
        match h_window(tau.value, 0.0, 1.0 / 28.0) {
            Ok(w) if !w.empty => parts.push(format!("ambient up to {:.6}", w.upper)),
            Ok(_) => return CertifyItem::fail(NAME, "ambient window empty at zero noise".into()),
            Err(e) => return CertifyItem::fail(NAME, e.to_string()),
        }
    }
    if parts.is_empty() {
        CertifyItem::fail(NAME, "model exposes neither a convexity bound nor a reach".into())
    } else {
        CertifyItem::pass(NAME, parts.join("; "))
    }
}

/// Runs both construction verifiers on the standard dense-net instance.
/// Only the circle admits a reference net fine enough for the margin rule
/// within the net point cap, so other models report unsupported.
fn construction_verifiers(model: &ManifoldModel) -> (CertifyItem, CertifyItem) {
    const SUR: &str = "surjectivity_construction";
    const CHAIN: &str = "contiguity_chain";
    let ManifoldModel::Circle { .. } = model else {
        let why = "reference net fine enough for the margin rule exceeds the net point cap";
        return (
            CertifyItem::unsupported(SUR, why),
            CertifyItem::unsupported(CHAIN, why),
        );
    };
    let zeta = 1.0 / 14.0;
    let radius = model.constants().tau.expect("circle reach").value;
    let beta = radius;
    let instance = (|| -> Result<_, CliError> {
        let net = model.reference_net(zeta * beta / 10.0)?;
        let sample = model.sample(SampleSpec::Grid { n: 50 })?;
        let s = model.metric_space_of(&sample.points)?;
        let c = nn_correspondence_with(net.points.len(), s.len(), |i, j| {
            model
                .geodesic_distance(&net.points[i], &sample.points[j])
                .expect("chart points")
        })?;
        Ok((net, sample, s, c))
    })();
    let (net, sample, s, c) = match instance {
        Ok(v) => v,
        Err(e) => {
            return (
                CertifyItem::fail(SUR, e.to_string()),
                CertifyItem::fail(CHAIN, e.to_string()),
            )
        }
    };

    let k = SimplicialComplex::from_maximal_simplices(
        (0..sample.points.len() as u32)
            .map(|i| vec![i, (i + 1) % sample.points.len() as u32])
            .collect(),
    )
    .expect("cycle complex");
    let g: Vec<u32> = (0..sample.points.len() as u32).collect();
    let sur = match verify_surjectivity_construction(&net, &s, &c, beta, zeta, &k, &g) {
        Ok(rep) if rep.holds => {
            let tightest = rep
                .inequalities
                .iter()
                .map(|c| c.margin)
                .fold(f64::INFINITY, f64::min);
            CertifyItem::pass(SUR, format!("all margins >= {tightest:.6}"))
        }
        Ok(rep) => CertifyItem::fail(SUR, format!("{rep:?}")),
        Err(e) => CertifyItem::fail(SUR, e.to_string()),
    };
    let chain = match verify_contiguity_chain(&net, &s, &c, beta, zeta, ChainVariant::GromovHausdorff)
    {
        Ok(rep) if rep.holds => {
            let tightest = rep
                .inequalities
                .iter()
                .map(|c| c.margin)
                .fold(f64::INFINITY, f64::min);
            CertifyItem::pass(CHAIN, format!("all margins >= {tightest:.6}"))
        }
        Ok(rep) => CertifyItem::fail(CHAIN, format!("{rep:?}")),
        Err(e) => CertifyItem::fail(CHAIN, e.to_string()),
    };
    (sur, chain)
}

/// Radius of the sampling ball that keeps every trial inside the
/// circumcenter existence hypothesis (diameter strictly below the scale
/// bound, and within a convex ball).
fn hypothesis_ball_radius(model: &ManifoldModel) -> f64 {
    let constants = model.constants();
    let delta = constants
        .delta
        .map(|t| t.value)
        .unwrap_or_else(|| constants.rho.map(|t| t.value).expect("geodesic models expose rho"));
    delta / 4.0
}

fn hypothesis_ball_set(
    model: &ManifoldModel,
    cap: f64,
    rng: &mut SplitMix64,
) -> Result<Vec<Vec<f64>>, CliError> {
    let center = model.random_points(1, rng.next_u64())?.remove(0);
    let k = 2 + rng.next_index(6);
    Ok(model.random_ball_points(&center, cap, k, rng.next_u64())?)
}
