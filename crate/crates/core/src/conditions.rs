//! Scale-window calculators and numerical verifiers for the reconstruction
//! guarantees: admissible Rips scales from noise bounds, reach-derived
//! curvature and convexity bounds, the metric distortion check for
//! Euclidean submanifolds, and end-to-end verification of the surjectivity
//! construction and the contiguity chain on finite proxies.
//!
//! Every strict inequality a verifier checks is reported with its margin,
//! and the verdict requires the margin to clear twice the proxy net's
//! fineness, so discretizing the manifold to a net can never manufacture a
//! pass.

use crate::complex::{
    barycentric_subdivision, check_homotopy_conditions, check_simplicial, contiguous,
    rips_complex, ComplexError, SimplicialComplex,
};
use crate::jung::{geodesic_circumcenter, JungError};
use crate::metric::{
    correspondence_distortion, Correspondence, FiniteMetricSpace, MetricError,
};
use crate::models::{ManifoldModel, ModelError, ModelNet};
use crate::rng::SplitMix64;
use serde::Serialize;
use std::f64::consts::PI;
use thiserror::Error;

/// Largest admissible interleaving parameter; both window calculators
/// accept the closed right endpoint (where the Hausdorff window degenerates
/// to empty).
pub const ZETA_MAX: f64 = 1.0 / 14.0;

#[derive(Debug, Error, PartialEq)]
pub enum ConditionsError {
    #[error("zeta must lie in (0, 1/14], got {0}")]
    ZetaOutOfRange(f64),
    #[error("convexity radius must be positive, got {0}")]
    NonPositiveRho(f64),
    #[error("reach must be positive, got {0}")]
    NonPositiveTau(f64),
    #[error("scale bound must be positive, got {0}")]
    NonPositiveDelta(f64),
    #[error("noise bound must be nonnegative, got {0}")]
    NegativeNoiseBound(f64),
    #[error("beta must be positive, got {0}")]
    NonPositiveBeta(f64),
    #[error("distortion factor must lie strictly between 1 and 2, got {0}")]
    XiOutOfRange(f64),
    #[error("chord length {value} outside [0, {max}] where the bound applies")]
    ChordOutOfRange { value: f64, max: f64 },
    #[error("model lacks the evaluators this check needs")]
    UnsupportedModel,
    #[error("net fineness {fineness} too coarse; margins need fineness at most {required}")]
    FinenessTooCoarse { fineness: f64, required: f64 },
    #[error("correspondence sides ({cx}, {cy}) do not match net size {net} and sample size {sample}")]
    CorrespondenceShape { cx: usize, cy: usize, net: usize, sample: usize },
    #[error("vertex map must cover the base complex: {0}")]
    BadVertexMap(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Jung(#[from] JungError),
}

/// An admissible range of Rips scales. The lower endpoint is always
/// exclusive; the upper endpoint is exclusive for the intrinsic
/// (Gromov–Hausdorff) window and inclusive for the Euclidean (Hausdorff)
/// window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScaleWindow {
    pub lower: f64,
    pub upper: f64,
    pub upper_inclusive: bool,
    pub zeta: f64,
    pub empty: bool,
}

impl ScaleWindow {
    pub fn contains(&self, beta: f64) -> bool {
        if self.empty {
            return false;
        }
        beta > self.lower && (beta < self.upper || (self.upper_inclusive && beta == self.upper))
    }
}

fn check_zeta(zeta: f64) -> Result<(), ConditionsError> {
    if !(zeta > 0.0 && zeta <= ZETA_MAX) {
        return Err(ConditionsError::ZetaOutOfRange(zeta));
    }
    Ok(())
}

/// The scale bound Δ from the convexity radius and the curvature upper
/// bound: ρ itself in nonpositive curvature, min(ρ, π/(4√κ)) otherwise.
pub fn delta_of(rho: f64, kappa_sup: Option<f64>) -> Result<f64, ConditionsError> {
    if !(rho > 0.0) {
        return Err(ConditionsError::NonPositiveRho(rho));
    }
    Ok(match kappa_sup {
        Some(k) if k > 0.0 => rho.min(PI / (4.0 * k.sqrt())),
        _ => rho,
    })
}

/// Admissible scales for reconstruction from a Gromov–Hausdorff distance
/// bound: the open interval (d/ζ, Δ/(1+2ζ)).
pub fn gh_window(delta: f64, d_gh_bound: f64, zeta: f64) -> Result<ScaleWindow, ConditionsError> {
    check_zeta(zeta)?;
    if !(delta > 0.0) {
        return Err(ConditionsError::NonPositiveDelta(delta));
    }
    if !(d_gh_bound >= 0.0) {
        return Err(ConditionsError::NegativeNoiseBound(d_gh_bound));
    }
    let lower = d_gh_bound / zeta;
    let upper = delta / (1.0 + 2.0 * zeta);
    Ok(ScaleWindow {
        lower,
        upper,
        upper_inclusive: false,
        zeta,
        empty: lower >= upper || upper <= 0.0,
    })
}

/// The coefficient c(ζ) = 3(1+2ζ)(1−14ζ)/(8(1−2ζ)²) scaling the reach in
/// the Hausdorff window's upper endpoint. Positive below ζ = 1/14, zero at
/// the endpoint, and 3/8 in the ζ → 0 limit.
pub fn h_upper_coefficient(zeta: f64) -> Result<f64, ConditionsError> {
    check_zeta(zeta)?;
    let num = 3.0 * (1.0 + 2.0 * zeta) * (1.0 - 14.0 * zeta);
    let den = 8.0 * (1.0 - 2.0 * zeta) * (1.0 - 2.0 * zeta);
    Ok(num / den)
}

/// Admissible scales for reconstruction from a Hausdorff distance bound in
/// ambient space: (d/ζ, c(ζ)·τ], upper endpoint inclusive. At ζ = 1/14 the
/// coefficient vanishes and the window is empty.
pub fn h_window(tau: f64, d_h_bound: f64, zeta: f64) -> Result<ScaleWindow, ConditionsError> {
    check_zeta(zeta)?;
    if !(tau > 0.0) {
        return Err(ConditionsError::NonPositiveTau(tau));
    }
    if !(d_h_bound >= 0.0) {
        return Err(ConditionsError::NegativeNoiseBound(d_h_bound));
    }
    let lower = d_h_bound / zeta;
    let upper = h_upper_coefficient(zeta)? * tau;
    Ok(ScaleWindow {
        lower,
        upper,
        upper_inclusive: true,
        zeta,
        empty: lower >= upper || upper <= 0.0,
    })
}

/// The distortion factor the Hausdorff-distance contiguity chain fixes:
/// ξ = 4(1−2ζ)/(3(1+2ζ)).
pub fn hausdorff_chain_xi(zeta: f64) -> Result<f64, ConditionsError> {
    check_zeta(zeta)?;
    Ok(4.0 * (1.0 - 2.0 * zeta) / (3.0 * (1.0 + 2.0 * zeta)))
}

/// Bounds a reach value imposes on a submanifold's geometry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReachBounds {
    /// Upper bound on the second fundamental form norm: 1/τ.
    pub second_form_bound: f64,
    /// Sectional curvature range [−1/τ², 1/τ²].
    pub kappa_range: (f64, f64),
    /// Lower bound on the convexity radius: πτ/2.
    pub rho_lower: f64,
    /// Lower bound on the scale bound: πτ/4.
    pub delta_lower: f64,
}

pub fn reach_bounds(tau: f64) -> Result<ReachBounds, ConditionsError> {
    if !(tau > 0.0) {
        return Err(ConditionsError::NonPositiveTau(tau));
    }
    let sq = tau * tau;
    Ok(ReachBounds {
        second_form_bound: 1.0 / tau,
        kappa_range: (-1.0 / sq, 1.0 / sq),
        rho_lower: PI * tau / 2.0,
        delta_lower: PI * tau / 4.0,
    })
}

/// Chord-length threshold 2((ξ−1)/ξ²)·τ below which geodesic distance is
/// bounded by ξ times chord length, for 1 < ξ < 2.
pub fn distortion_threshold(xi: f64, tau: f64) -> Result<f64, ConditionsError> {
    if !(xi > 1.0 && xi < 2.0) {
        return Err(ConditionsError::XiOutOfRange(xi));
    }
    if !(tau > 0.0) {
        return Err(ConditionsError::NonPositiveTau(tau));
    }
    Ok(2.0 * (xi - 1.0) / (xi * xi) * tau)
}

/// Largest geodesic distance compatible with a chord of length `r` at reach
/// `tau`: τ − τ·√(1 − 2r/τ), defined for 0 ≤ r ≤ τ/2. The ratio to `r` is
/// increasing and reaches ξ exactly at the distortion threshold for ξ.
pub fn arc_bound_for_chord(r: f64, tau: f64) -> Result<f64, ConditionsError> {
    if !(tau > 0.0) {
        return Err(ConditionsError::NonPositiveTau(tau));
    }
    if !(r >= 0.0 && r <= tau / 2.0) {
        return Err(ConditionsError::ChordOutOfRange { value: r, max: tau / 2.0 });
    }
    Ok(tau - tau * (1.0 - 2.0 * r / tau).sqrt())
}

/// Tolerance for the distortion and chord inequalities, absorbing the last
/// float of the exact trigonometric evaluations.
pub const DISTORTION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistortionReport {
    pub xi: f64,
    pub threshold: f64,
    pub trials: usize,
    /// Largest observed geodesic-to-chord ratio.
    pub max_ratio: f64,
    /// Smallest slack in d_M ≤ ξ‖p−q‖ (nonnegative means pass).
    pub distortion_margin: f64,
    /// Smallest slack in ‖p−q‖ ≥ d_M − d_M²/(2τ).
    pub chord_margin: f64,
    pub pass: bool,
}

/// Samples seeded point pairs with chord length at or below the distortion
/// threshold and checks both the distortion inequality d_M ≤ ξ‖p−q‖ and
/// the chord bound ‖p−q‖ ≥ d_M − d_M²/(2τ). Needs a model with both
/// geodesics and an embedding.
pub fn check_distortion(
    m: &ManifoldModel,
    xi: f64,
    trials: usize,
    seed: u64,
) -> Result<DistortionReport, ConditionsError> {
    if !(m.has_geodesic() && m.has_embedding()) {
        return Err(ConditionsError::UnsupportedModel);
    }
    let tau = m.constants().tau.map(|t| t.value).ok_or(ConditionsError::UnsupportedModel)?;
    let threshold = distortion_threshold(xi, tau)?;
    // Chords relate to arcs through the radius: sampling within the
    // geodesic ball of this radius keeps the chord at or below the
    // threshold on both circular models.
    let arc_cap = 2.0 * tau * (threshold / (2.0 * tau)).asin();
    let mut rng = SplitMix64::new(seed);
    let mut max_ratio = 0.0f64;
    let mut distortion_margin = f64::INFINITY;
    let mut chord_margin = f64::INFINITY;
    let mut done = 0usize;
    while done < trials {
        let p = m.random_points(1, rng.next_u64())?.remove(0);
        let q = m
            .random_ball_points(&p, arc_cap, 1, rng.next_u64())?
            .remove(0);
        let (ep, eq) = (m.embed(&p)?, m.embed(&q)?);
        let chord = crate::metric::euclidean(&ep, &eq);
        if chord > threshold {
            continue;
        }
        done += 1;
        let arc = m.geodesic_distance(&p, &q)?;
        if chord > 0.0 {
            max_ratio = max_ratio.max(arc / chord);
        }
        distortion_margin = distortion_margin.min(xi * chord + DISTORTION_TOL - arc);
        chord_margin = chord_margin.min(chord - (arc - arc * arc / (2.0 * tau)) + DISTORTION_TOL);
    }
    Ok(DistortionReport {
        xi,
        threshold,
        trials,
        max_ratio,
        distortion_margin,
        chord_margin,
        pass: distortion_margin >= 0.0 && chord_margin >= 0.0,
    })
}

/// One verified inequality: the measured value, its bound, the margin
/// between them, and the margin the verdict demands (twice the net
/// fineness for anything quantified over the manifold proxy).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckItem {
    pub name: &'static str,
    pub value: f64,
    pub bound: f64,
    pub margin: f64,
    pub required_margin: f64,
    pub pass: bool,
}

impl CheckItem {
    fn upper(name: &'static str, value: f64, bound: f64, required: f64) -> Self {
        let margin = bound - value;
        CheckItem { name, value, bound, margin, required_margin: required, pass: margin >= required }
    }
}

/// A combinatorial check that either holds or produces a witness.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructureItem {
    pub name: &'static str,
    pub pass: bool,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifierReport {
    pub holds: bool,
    pub net_fineness: f64,
    pub required_margin: f64,
    pub inequalities: Vec<CheckItem>,
    pub structure: Vec<StructureItem>,
}

impl VerifierReport {
    fn conclude(mut self) -> Self {
        self.holds = self.inequalities.iter().all(|c| c.pass)
            && self.structure.iter().all(|s| s.pass);
        self
    }

    pub fn inequality(&self, name: &str) -> Option<&CheckItem> {
        self.inequalities.iter().find(|c| c.name == name)
    }
}

fn verifier_preamble(
    net: &ModelNet,
    s: &FiniteMetricSpace,
    c: &Correspondence,
    beta: f64,
    zeta: f64,
) -> Result<(f64, f64), ConditionsError> {
    check_zeta(zeta)?;
    if !(beta > 0.0) {
        return Err(ConditionsError::NonPositiveBeta(beta));
    }
    let required = zeta * beta / 10.0;
    if net.fineness > required {
        return Err(ConditionsError::FinenessTooCoarse {
            fineness: net.fineness,
            required,
        });
    }
    let (cx, cy) = c.sizes();
    if cx != net.points.len() || cy != s.len() {
        return Err(ConditionsError::CorrespondenceShape {
            cx,
            cy,
            net: net.points.len(),
            sample: s.len(),
        });
    }
    let dist_c = correspondence_distortion(c, &net.metric, s)?;
    Ok((dist_c, 2.0 * net.fineness))
}

/// Verifies the construction that lifts a simplicial map through the
/// barycentric subdivision: pulls every simplex image back to the manifold
/// proxy through the correspondence, takes geodesic circumcenters, and
/// checks each inequality the construction rests on, with margins.
///
/// `g_vertices[v]` is the sample index the base map sends vertex `v` to.
/// Inputs violating the hypotheses (too-large correspondence distortion, a
/// non-simplicial base map, an impure base complex) yield a failing report,
/// not an error; parameter-range violations are errors.
pub fn verify_surjectivity_construction(
    net: &ModelNet,
    s: &FiniteMetricSpace,
    c: &Correspondence,
    beta: f64,
    zeta: f64,
    k: &SimplicialComplex,
    g_vertices: &[u32],
) -> Result<VerifierReport, ConditionsError> {
    let (dist_c, required) = verifier_preamble(net, s, c, beta, zeta)?;
    let mut report = VerifierReport {
        holds: false,
        net_fineness: net.fineness,
        required_margin: required,
        inequalities: vec![CheckItem::upper(
            "correspondence_distortion",
            dist_c,
            2.0 * zeta * beta,
            required,
        )],
        structure: Vec::new(),
    };

    // The target complex: a flag complex over the sample needs only its
    // edges for every membership query below.
    let r_beta_s = rips_complex(s, beta, 1)?;
    let g = match check_simplicial(g_vertices, k, &r_beta_s) {
        Ok(g) => g,
        Err(e) => {
            report.structure.push(StructureItem {
                name: "base_map_simplicial",
                pass: false,
                detail: Some(e.to_string()),
            });
            return Ok(report.conclude());
        }
    };
    report.structure.push(StructureItem { name: "base_map_simplicial", pass: true, detail: None });
    if k.pure_dimension().is_none() {
        report.structure.push(StructureItem {
            name: "base_complex_pure",
            pass: false,
            detail: Some("maximal simplices of unequal dimension".to_string()),
        });
        return Ok(report.conclude());
    }
    report.structure.push(StructureItem { name: "base_complex_pure", pass: true, detail: None });

    let model = &net.model;
    let delta = model
        .constants()
        .delta
        .map(|t| t.value)
        .ok_or(ConditionsError::UnsupportedModel)?;
    let sd = barycentric_subdivision(k);

    // Per base simplex: the pulled-back vertex set on the proxy, its
    // diameter, and its geodesic circumcenter.
    let mut centers: Vec<Vec<f64>> = Vec::new();
    let mut gt_vertices: Vec<u32> = Vec::new();
    let mut max_pullback_diam = 0.0f64;
    for base in sd.vertex_base_table() {
        let pulled: Vec<Vec<f64>> = g
            .image_of_simplex(base)
            .iter()
            .map(|&sv| net.points[c.partner_of_y(sv as usize)].clone())
            .collect();
        let mut diam = 0.0f64;
        for i in 0..pulled.len() {
            for j in (i + 1)..pulled.len() {
                diam = diam.max(model.geodesic_distance(&pulled[i], &pulled[j])?);
            }
        }
        max_pullback_diam = max_pullback_diam.max(diam);
        let center = if pulled.len() == 1 {
            pulled[0].clone()
        } else {
            geodesic_circumcenter(model, &pulled)?.center
        };
        // The lifted map sends a vertex barycenter to the original image
        // and a higher barycenter to the sample partner of the net point
        // nearest the circumcenter.
        let image = if base.len() == 1 {
            g.image_of_vertex(base[0])
        } else {
            let nearest = nearest_net_point(model, net, &center)?;
            c.partner_of_x(nearest) as u32
        };
        centers.push(center);
        gt_vertices.push(image);
    }

    let scale_up = (1.0 + 2.0 * zeta) * beta;
    report.inequalities.push(CheckItem::upper(
        "pullback_diameters",
        max_pullback_diam,
        scale_up,
        required,
    ));
    report
        .inequalities
        .push(CheckItem::upper("scale_below_delta", scale_up, delta, required));

    // Chains of circumcenters must contract below (1−2ζ)β, the step that
    // makes the lifted map land at scale β.
    let scale_down = (1.0 - 2.0 * zeta) * beta;
    let sd_complex = sd.complex();
    let mut max_chain_diam = 0.0f64;
    let mut max_image_diam = 0.0f64;
    for dim in 1..=sd_complex.max_dim() {
        for chain in sd_complex.simplices(dim) {
            for i in 0..chain.len() {
                for j in (i + 1)..chain.len() {
                    let d = model.geodesic_distance(
                        &centers[chain[i] as usize],
                        &centers[chain[j] as usize],
                    )?;
                    max_chain_diam = max_chain_diam.max(d);
                    let ds = s.dist(
                        gt_vertices[chain[i] as usize] as usize,
                        gt_vertices[chain[j] as usize] as usize,
                    );
                    max_image_diam = max_image_diam.max(ds);
                }
            }
        }
    }
    report.inequalities.push(CheckItem::upper(
        "center_chain_diameters",
        max_chain_diam,
        scale_down,
        required,
    ));
    report.inequalities.push(CheckItem::upper(
        "lifted_map_edge_lengths",
        max_image_diam,
        beta,
        required,
    ));

    // Gluing bound: the lifted image of a top barycenter stays within β of
    // every original image over the same simplex.
    let mut max_glue = 0.0f64;
    for dim in 0..=k.max_dim() {
        for simplex in k.simplices(dim) {
            let shat = sd.vertex_of_base(k, simplex).expect("barycenter exists");
            let lifted = gt_vertices[shat as usize] as usize;
            for &v in simplex {
                let d = s.dist(g.image_of_vertex(v) as usize, lifted);
                max_glue = max_glue.max(d);
            }
        }
    }
    report
        .inequalities
        .push(CheckItem::upper("vertex_to_center_distances", max_glue, beta, required));

    // Combinatorial layer: the numeric margins above must agree with the
    // simplicial and homotopy-condition checkers.
    match check_simplicial(&gt_vertices, sd_complex, &r_beta_s) {
        Ok(gt) => {
            report.structure.push(StructureItem {
                name: "lifted_map_simplicial",
                pass: true,
                detail: None,
            });
            match check_homotopy_conditions(&g, &gt, &sd) {
                Ok(h) if h.holds => report.structure.push(StructureItem {
                    name: "homotopy_conditions",
                    pass: true,
                    detail: None,
                }),
                Ok(h) => report.structure.push(StructureItem {
                    name: "homotopy_conditions",
                    pass: false,
                    detail: Some(format!("{h:?}")),
                }),
                Err(e) => report.structure.push(StructureItem {
                    name: "homotopy_conditions",
                    pass: false,
                    detail: Some(e.to_string()),
                }),
            }
        }
        Err(e) => report.structure.push(StructureItem {
            name: "lifted_map_simplicial",
            pass: false,
            detail: Some(e.to_string()),
        }),
    }
    Ok(report.conclude())
}

fn nearest_net_point(
    model: &ManifoldModel,
    net: &ModelNet,
    p: &[f64],
) -> Result<usize, ConditionsError> {
    let mut best = (f64::INFINITY, 0usize);
    for (i, q) in net.points.iter().enumerate() {
        let d = model.geodesic_distance(p, q)?;
        if d < best.0 {
            best = (d, i);
        }
    }
    Ok(best.1)
}

/// Which distance regime's chain is being verified: the intrinsic chain
/// returns to the proxy at scale (1+2ζ)β, the Euclidean chain at
/// (4/3)(1−2ζ)β.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ChainVariant {
    GromovHausdorff,
    Hausdorff,
}

/// Builds the maps φ: R_{(1−2ζ)β}(net) → R_β(S) and ψ back to the proxy at
/// the variant's return scale from the correspondence, then checks both
/// are simplicial and that ψ∘φ is contiguous to the inclusion, with
/// margins on every distance bound involved.
pub fn verify_contiguity_chain(
    net: &ModelNet,
    s: &FiniteMetricSpace,
    c: &Correspondence,
    beta: f64,
    zeta: f64,
    variant: ChainVariant,
) -> Result<VerifierReport, ConditionsError> {
    let (dist_c, required) = verifier_preamble(net, s, c, beta, zeta)?;
    let scale_down = (1.0 - 2.0 * zeta) * beta;
    let return_scale = match variant {
        ChainVariant::GromovHausdorff => (1.0 + 2.0 * zeta) * beta,
        ChainVariant::Hausdorff => 4.0 / 3.0 * (1.0 - 2.0 * zeta) * beta,
    };
    let mut report = VerifierReport {
        holds: false,
        net_fineness: net.fineness,
        required_margin: required,
        inequalities: vec![CheckItem::upper(
            "correspondence_distortion",
            dist_c,
            2.0 * zeta * beta,
            required,
        )],
        structure: Vec::new(),
    };

    let source = rips_complex(&net.metric, scale_down, 1)?;
    let middle = rips_complex(s, beta, 1)?;
    let target = rips_complex(&net.metric, return_scale, 1)?;

    let phi_map: Vec<u32> = (0..net.points.len()).map(|i| c.partner_of_x(i) as u32).collect();
    let psi_map: Vec<u32> = (0..s.len()).map(|j| c.partner_of_y(j) as u32).collect();
    let round_trip: Vec<u32> =
        phi_map.iter().map(|&sj| psi_map[sj as usize]).collect();

    // Numeric margins for the two simpliciality claims.
    let mut phi_worst = 0.0f64;
    for e in source.simplices(1) {
        let d = s.dist(phi_map[e[0] as usize] as usize, phi_map[e[1] as usize] as usize);
        phi_worst = phi_worst.max(d);
    }
    report
        .inequalities
        .push(CheckItem::upper("outbound_edge_lengths", phi_worst, beta, required));
    let mut psi_worst = 0.0f64;
    for e in middle.simplices(1) {
        let d = net
            .metric
            .dist(psi_map[e[0] as usize] as usize, psi_map[e[1] as usize] as usize);
        psi_worst = psi_worst.max(d);
    }
    report.inequalities.push(CheckItem::upper(
        "return_edge_lengths",
        psi_worst,
        return_scale,
        required,
    ));

    // Contiguity margin: over every source vertex and edge, all pairwise
    // distances among {round trip images, original vertices}.
    let mut union_worst = 0.0f64;
    let mut pair_max = |vs: &[u32]| {
        for i in 0..vs.len() {
            for j in (i + 1)..vs.len() {
                union_worst =
                    union_worst.max(net.metric.dist(vs[i] as usize, vs[j] as usize));
            }
        }
    };
    for v in source.simplices(0) {
        pair_max(&[v[0], round_trip[v[0] as usize]]);
    }
    for e in source.simplices(1) {
        pair_max(&[
            e[0],
            e[1],
            round_trip[e[0] as usize],
            round_trip[e[1] as usize],
        ]);
    }
    report.inequalities.push(CheckItem::upper(
        "round_trip_spread",
        union_worst,
        return_scale,
        required,
    ));

    // Combinatorial layer.
    let phi = push_structure(
        &mut report,
        "outbound_map_simplicial",
        check_simplicial(&phi_map, &source, &middle),
    );
    let psi = push_structure(
        &mut report,
        "return_map_simplicial",
        check_simplicial(&psi_map, &middle, &target),
    );
    if phi && psi {
        let comp = check_simplicial(&round_trip, &source, &target);
        let inclusion: Vec<u32> = (0..net.points.len() as u32).collect();
        let iota = check_simplicial(&inclusion, &source, &target);
        match (comp, iota) {
            (Ok(comp), Ok(iota)) => match contiguous(&comp, &iota) {
                Ok(chk) if chk.holds => report.structure.push(StructureItem {
                    name: "round_trip_contiguous_to_inclusion",
                    pass: true,
                    detail: None,
                }),
                Ok(chk) => report.structure.push(StructureItem {
                    name: "round_trip_contiguous_to_inclusion",
                    pass: false,
                    detail: Some(format!("witness {:?}", chk.witness)),
                }),
                Err(e) => report.structure.push(StructureItem {
                    name: "round_trip_contiguous_to_inclusion",
                    pass: false,
                    detail: Some(e.to_string()),
                }),
            },
            (comp, iota) => {
                let detail = comp.err().or(iota.err()).map(|e| e.to_string());
                report.structure.push(StructureItem {
                    name: "round_trip_contiguous_to_inclusion",
                    pass: false,
                    detail,
                });
            }
        }
    }
    Ok(report.conclude())
}

fn push_structure(
    report: &mut VerifierReport,
    name: &'static str,
    result: Result<crate::complex::SimplicialMap<'_>, ComplexError>,
) -> bool {
    match result {
        Ok(_) => {
            report.structure.push(StructureItem { name, pass: true, detail: None });
            true
        }
        Err(e) => {
            report.structure.push(StructureItem { name, pass: false, detail: Some(e.to_string()) });
            false
        }
    }
}
