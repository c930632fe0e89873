//! Model manifolds with exact geodesics, embeddings, samplers, and
//! certified geometric constants.
//!
//! Four models are provided: the circle and the round 2-sphere (both with
//! geodesics and embeddings), the abstract flat torus (geodesics only), and
//! the embedded torus of revolution (embedding only, for the Euclidean
//! pipeline). Points are chart coordinates: an angle for the circle,
//! (colatitude, azimuth) for the sphere, wrapped (x, y) for the flat torus,
//! and (major angle, minor angle) for the embedded torus.

use crate::metric::{FiniteMetricSpace, MetricError, PointCloud};
use crate::rng::SplitMix64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

/// Default cap on reference-net sizes; nets above this are rejected so a
/// careless fineness request cannot allocate a gigabyte metric matrix.
pub const NET_POINT_CAP: usize = 5000;

/// Cap for the internal (matrix-free) nets used to certify fill bounds of
/// random samples.
const BOUND_NET_CAP: usize = 400_000;

#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(f64),
    #[error("side length must be positive, got {0}")]
    NonPositiveSide(f64),
    #[error("embedded torus needs major > minor > 0, got R = {major}, r = {minor}")]
    BadTorusRadii { major: f64, minor: f64 },
    #[error("chart point has {got} coordinates, model expects {expected}")]
    ChartDimension { expected: usize, got: usize },
    #[error("geodesic distance unavailable; use the Euclidean pipeline")]
    NoGeodesic,
    #[error("abstract metric space; no canonical embedding used")]
    NoEmbedding,
    #[error("net needs {required} points, above the {cap}-point cap; coarsen the fineness target")]
    NetTooLarge { required: usize, cap: usize },
    #[error("fineness must be positive, got {0}")]
    NonPositiveFineness(f64),
    #[error("sample size must be at least 1")]
    EmptySample,
    #[error("perturbation radius must be nonnegative, got {0}")]
    NegativeEta(f64),
    #[error(transparent)]
    Metric(#[from] MetricError),
}

/// Provenance of a certified constant: an exact closed form versus a bound
/// derived and spot-checked numerically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Certified,
    DerivedBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TaggedConstant {
    pub value: f64,
    pub provenance: Provenance,
}

fn certified(value: f64) -> Option<TaggedConstant> {
    Some(TaggedConstant { value, provenance: Provenance::Certified })
}

fn derived(value: f64) -> Option<TaggedConstant> {
    Some(TaggedConstant { value, provenance: Provenance::DerivedBound })
}

/// Geometric ground truth for a model: convexity radius ρ, sectional
/// curvature upper bound κ, reach τ, admissible scale bound Δ, and the true
/// Betti numbers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantsReport {
    pub intrinsic_dim: u32,
    pub rho: Option<TaggedConstant>,
    pub kappa_sup: Option<TaggedConstant>,
    pub tau: Option<TaggedConstant>,
    pub delta: Option<TaggedConstant>,
    pub betti_truth: Vec<u64>,
}

/// Sampling strategy: a deterministic grid, or a seeded random draw thinned
/// to well-spread landmarks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "strategy", rename_all = "snake_case")]
pub enum SampleSpec {
    Grid { n: usize },
    Random { n: usize, seed: u64 },
}

/// A sample with a certified upper bound on its fill radius (the Hausdorff
/// distance from the model to the sample).
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    /// Chart coordinates.
    pub points: Vec<Vec<f64>>,
    /// Certified bound on sup over the model of the distance to the sample.
    pub fill_bound: f64,
}

/// A finite stand-in for the whole manifold: chart points, the exact metric
/// between them, and a certified fill bound.
#[derive(Debug, Clone)]
pub struct ModelNet {
    pub model: ManifoldModel,
    pub points: Vec<Vec<f64>>,
    pub metric: FiniteMetricSpace,
    pub fineness: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ManifoldModel {
    #[serde(rename = "circle")]
    Circle {
        #[serde(rename = "R")]
        radius: f64,
    },
    #[serde(rename = "sphere2")]
    Sphere2 {
        #[serde(rename = "R")]
        radius: f64,
    },
    #[serde(rename = "flat_torus")]
    FlatTorus {
        #[serde(rename = "L")]
        side: f64,
    },
    #[serde(rename = "embedded_torus")]
    EmbeddedTorus {
        #[serde(rename = "R")]
        major: f64,
        #[serde(rename = "r")]
        minor: f64,
    },
}

impl ManifoldModel {
    pub fn circle(radius: f64) -> Result<Self, ModelError> {
        let m = Self::Circle { radius };
        m.validate()?;
        Ok(m)
    }

    pub fn sphere2(radius: f64) -> Result<Self, ModelError> {
        let m = Self::Sphere2 { radius };
        m.validate()?;
        Ok(m)
    }

    pub fn flat_torus(side: f64) -> Result<Self, ModelError> {
        let m = Self::FlatTorus { side };
        m.validate()?;
        Ok(m)
    }

    pub fn embedded_torus(major: f64, minor: f64) -> Result<Self, ModelError> {
        let m = Self::EmbeddedTorus { major, minor };
        m.validate()?;
        Ok(m)
    }

    /// Parameter validation, for models built by deserialization.
    pub fn validate(&self) -> Result<(), ModelError> {
        match *self {
            Self::Circle { radius } | Self::Sphere2 { radius } => {
                if !(radius > 0.0) {
                    return Err(ModelError::NonPositiveRadius(radius));
                }
            }
            Self::FlatTorus { side } => {
                if !(side > 0.0) {
                    return Err(ModelError::NonPositiveSide(side));
                }
            }
            Self::EmbeddedTorus { major, minor } => {
                if !(minor > 0.0 && major > minor) {
                    return Err(ModelError::BadTorusRadii { major, minor });
                }
            }
        }
        Ok(())
    }

    pub fn intrinsic_dim(&self) -> u32 {
        match self {
            Self::Circle { .. } => 1,
            _ => 2,
        }
    }

    /// Number of chart coordinates per point.
    pub fn chart_dim(&self) -> usize {
        match self {
            Self::Circle { .. } => 1,
            _ => 2,
        }
    }

    pub fn has_geodesic(&self) -> bool {
        !matches!(self, Self::EmbeddedTorus { .. })
    }

    pub fn has_embedding(&self) -> bool {
        !matches!(self, Self::FlatTorus { .. })
    }

    /// Certified constants and true Betti numbers.
    ///
    /// The scale bound Δ is ρ when the curvature bound is nonpositive or
    /// absent, and min(ρ, π/(4√κ)) otherwise. For the circle the sectional
    /// curvature is undefined; the flat treatment Δ = ρ applies. The
    /// flat-torus convexity radius L/4 is a derived bound (balls of radius
    /// below L/4 are isometric to Euclidean disks), as is the embedded
    /// torus reach min(r, R − r), read off its medial axis.
    pub fn constants(&self) -> ConstantsReport {
        match *self {
            Self::Circle { radius } => ConstantsReport {
                intrinsic_dim: 1,
                rho: certified(PI * radius / 2.0),
                kappa_sup: None,
                tau: certified(radius),
                delta: certified(PI * radius / 2.0),
                betti_truth: vec![1, 1],
            },
            Self::Sphere2 { radius } => ConstantsReport {
                intrinsic_dim: 2,
                rho: certified(PI * radius / 2.0),
                kappa_sup: certified(1.0 / (radius * radius)),
                tau: certified(radius),
                // min(πR/2, π/(4·(1/R))) = πR/4.
                delta: certified(PI * radius / 4.0),
                betti_truth: vec![1, 0, 1],
            },
            Self::FlatTorus { side } => ConstantsReport {
                intrinsic_dim: 2,
                rho: derived(side / 4.0),
                kappa_sup: certified(0.0),
                tau: None,
                delta: derived(side / 4.0),
                betti_truth: vec![1, 2, 1],
            },
            Self::EmbeddedTorus { major, minor } => ConstantsReport {
                intrinsic_dim: 2,
                rho: None,
                // Gaussian curvature cos v / (r (R + r cos v)) is maximal
                // on the outer equator v = 0.
                kappa_sup: certified(1.0 / (minor * (major + minor))),
                tau: derived(minor.min(major - minor)),
                delta: None,
                betti_truth: vec![1, 2, 1],
            },
        }
    }

    fn check_chart(&self, p: &[f64]) -> Result<(), ModelError> {
        if p.len() != self.chart_dim() {
            return Err(ModelError::ChartDimension { expected: self.chart_dim(), got: p.len() });
        }
        Ok(())
    }

    /// Exact geodesic distance between chart points. Unavailable for the
    /// embedded torus, which participates only in the Euclidean pipeline.
    pub fn geodesic_distance(&self, p: &[f64], q: &[f64]) -> Result<f64, ModelError> {
        self.check_chart(p)?;
        self.check_chart(q)?;
        match *self {
            Self::Circle { radius } => Ok(circle_arc(p[0], q[0]) * radius),
            Self::Sphere2 { radius } => {
                Ok(sphere_angle(&unit_from_chart(p), &unit_from_chart(q)) * radius)
            }
            Self::FlatTorus { side } => Ok(torus_wrap_dist(p, q, side)),
            Self::EmbeddedTorus { .. } => Err(ModelError::NoGeodesic),
        }
    }

    /// Standard embedding of a chart point. The flat torus is abstract and
    /// has no embedding.
    pub fn embed(&self, p: &[f64]) -> Result<Vec<f64>, ModelError> {
        self.check_chart(p)?;
        match *self {
            Self::Circle { radius } => Ok(vec![radius * p[0].cos(), radius * p[0].sin()]),
            Self::Sphere2 { radius } => {
                let u = unit_from_chart(p);
                Ok(vec![radius * u[0], radius * u[1], radius * u[2]])
            }
            Self::FlatTorus { .. } => Err(ModelError::NoEmbedding),
            Self::EmbeddedTorus { major, minor } => {
                let (u, v) = (p[0], p[1]);
                let ring = major + minor * v.cos();
                Ok(vec![ring * u.cos(), ring * u.sin(), minor * v.sin()])
            }
        }
    }

    /// The distance the reconstruction pipeline uses on this model:
    /// geodesic where available, Euclidean between embeddings otherwise.
    pub fn natural_distance(&self, p: &[f64], q: &[f64]) -> Result<f64, ModelError> {
        if self.has_geodesic() {
            self.geodesic_distance(p, q)
        } else {
            let (a, b) = (self.embed(p)?, self.embed(q)?);
            Ok(crate::metric::euclidean(&a, &b))
        }
    }

    /// Exact metric space over a list of chart points, in the model's
    /// natural metric.
    pub fn metric_space_of(&self, points: &[Vec<f64>]) -> Result<FiniteMetricSpace, ModelError> {
        for p in points {
            self.check_chart(p)?;
        }
        let n = points.len();
        match *self {
            Self::Circle { radius } => Ok(FiniteMetricSpace::from_fn(n, |i, j| {
                circle_arc(points[i][0], points[j][0]) * radius
            })?),
            Self::Sphere2 { radius } => {
                let units: Vec<[f64; 3]> = points.iter().map(|p| unit_from_chart(p)).collect();
                Ok(FiniteMetricSpace::from_fn(n, |i, j| {
                    sphere_angle(&units[i], &units[j]) * radius
                })?)
            }
            Self::FlatTorus { side } => Ok(FiniteMetricSpace::from_fn(n, |i, j| {
                torus_wrap_dist(&points[i], &points[j], side)
            })?),
            Self::EmbeddedTorus { .. } => {
                let emb: Vec<Vec<f64>> =
                    points.iter().map(|p| self.embed(p)).collect::<Result<_, _>>()?;
                Ok(FiniteMetricSpace::from_fn(n, |i, j| {
                    crate::metric::euclidean(&emb[i], &emb[j])
                })?)
            }
        }
    }

    /// Independent uniform points (by the model's area measure), without a
    /// fill bound. Campaign trials use this; the reconstruction pipeline
    /// uses [`ManifoldModel::sample`].
    pub fn random_points(&self, n: usize, seed: u64) -> Result<Vec<Vec<f64>>, ModelError> {
        if n == 0 {
            return Err(ModelError::EmptySample);
        }
        let mut rng = SplitMix64::new(seed);
        Ok((0..n).map(|_| self.draw_uniform(&mut rng)).collect())
    }

    fn draw_uniform(&self, rng: &mut SplitMix64) -> Vec<f64> {
        match *self {
            Self::Circle { .. } => vec![rng.uniform(0.0, 2.0 * PI)],
            Self::Sphere2 { .. } => {
                let z = rng.uniform(-1.0, 1.0);
                let phi = rng.uniform(0.0, 2.0 * PI);
                vec![z.clamp(-1.0, 1.0).acos(), phi]
            }
            Self::FlatTorus { side } => {
                vec![rng.uniform(0.0, side), rng.uniform(0.0, side)]
            }
            Self::EmbeddedTorus { major, minor } => {
                let u = rng.uniform(0.0, 2.0 * PI);
                // Area density is proportional to R + r cos v; rejection
                // against the flat density gives the uniform surface law.
                let v = loop {
                    let v = rng.uniform(0.0, 2.0 * PI);
                    let accept = (major + minor * v.cos()) / (major + minor);
                    if rng.next_f64() <= accept {
                        break v;
                    }
                };
                vec![u, v]
            }
        }
    }

    /// Uniform points in the geodesic ball of the given radius. Used by the
    /// inequality campaigns, which need clustered inputs with small
    /// diameter. Requires a model with geodesics.
    pub fn random_ball_points(
        &self,
        center: &[f64],
        radius: f64,
        n: usize,
        seed: u64,
    ) -> Result<Vec<Vec<f64>>, ModelError> {
        self.check_chart(center)?;
        if n == 0 {
            return Err(ModelError::EmptySample);
        }
        let mut rng = SplitMix64::new(seed);
        match *self {
            Self::Circle { radius: r_model } => {
                let half = radius / r_model;
                Ok((0..n)
                    .map(|_| vec![(center[0] + rng.uniform(-half, half)).rem_euclid(2.0 * PI)])
                    .collect())
            }
            Self::Sphere2 { radius: r_model } => {
                let c = unit_from_chart(center);
                let (e1, e2) = orthonormal_frame(&c);
                let cos_cap = (radius / r_model).cos();
                Ok((0..n)
                    .map(|_| {
                        // Uniform on the cap: height uniform in [cos a, 1].
                        let z = rng.uniform(cos_cap, 1.0).clamp(-1.0, 1.0);
                        let s = (1.0 - z * z).max(0.0).sqrt();
                        let t = rng.uniform(0.0, 2.0 * PI);
                        let p = [
                            z * c[0] + s * (t.cos() * e1[0] + t.sin() * e2[0]),
                            z * c[1] + s * (t.cos() * e1[1] + t.sin() * e2[1]),
                            z * c[2] + s * (t.cos() * e1[2] + t.sin() * e2[2]),
                        ];
                        chart_from_unit(&p)
                    })
                    .collect())
            }
            Self::FlatTorus { side } => Ok((0..n)
                .map(|_| {
                    let d = rng.in_unit_ball(2);
                    vec![
                        (center[0] + radius * d[0]).rem_euclid(side),
                        (center[1] + radius * d[1]).rem_euclid(side),
                    ]
                })
                .collect()),
            Self::EmbeddedTorus { .. } => Err(ModelError::NoGeodesic),
        }
    }

    /// Displaces each chart point by at most `eta` in the model's geodesic
    /// metric, staying on the model. Deterministic given the seed.
    pub fn perturb_on_model(
        &self,
        points: &[Vec<f64>],
        eta: f64,
        seed: u64,
    ) -> Result<Vec<Vec<f64>>, ModelError> {
        if !(eta >= 0.0) {
            return Err(ModelError::NegativeEta(eta));
        }
        for p in points {
            self.check_chart(p)?;
        }
        let mut rng = SplitMix64::new(seed);
        match *self {
            Self::Circle { radius } => Ok(points
                .iter()
                .map(|p| vec![(p[0] + rng.uniform(-1.0, 1.0) * eta / radius).rem_euclid(2.0 * PI)])
                .collect()),
            Self::Sphere2 { radius } => Ok(points
                .iter()
                .map(|p| {
                    let c = unit_from_chart(p);
                    let (e1, e2) = orthonormal_frame(&c);
                    let d = rng.in_unit_ball(2);
                    let step = (d[0] * d[0] + d[1] * d[1]).sqrt() * eta / radius;
                    if step == 0.0 {
                        return p.clone();
                    }
                    let t = d[1].atan2(d[0]);
                    let q = [
                        step.cos() * c[0] + step.sin() * (t.cos() * e1[0] + t.sin() * e2[0]),
                        step.cos() * c[1] + step.sin() * (t.cos() * e1[1] + t.sin() * e2[1]),
                        step.cos() * c[2] + step.sin() * (t.cos() * e1[2] + t.sin() * e2[2]),
                    ];
                    chart_from_unit(&q)
                })
                .collect()),
            Self::FlatTorus { side } => Ok(points
                .iter()
                .map(|p| {
                    let d = rng.in_unit_ball(2);
                    vec![
                        (p[0] + eta * d[0]).rem_euclid(side),
                        (p[1] + eta * d[1]).rem_euclid(side),
                    ]
                })
                .collect()),
            Self::EmbeddedTorus { .. } => Err(ModelError::NoGeodesic),
        }
    }

    /// Draws a sample together with a certified fill bound.
    ///
    /// Grids carry closed-form covering bounds. Random samples draw a pool
    /// of 16n uniform points and keep n greedy max-min landmarks (starting
    /// from the first pool point), which spreads them far more evenly than
    /// an independent draw; their fill bound is then measured against a
    /// matrix-free reference net at least ten times finer than the reported
    /// bound.
    pub fn sample(&self, spec: SampleSpec) -> Result<Sample, ModelError> {
        match spec {
            SampleSpec::Grid { n } => self.grid_sample(n),
            SampleSpec::Random { n, seed } => {
                if n == 0 {
                    return Err(ModelError::EmptySample);
                }
                let mut rng = SplitMix64::new(seed);
                let pool: Vec<Vec<f64>> =
                    (0..16 * n).map(|_| self.draw_uniform(&mut rng)).collect();
                let points = self.thin_landmarks(pool, n)?;
                let fill_bound = self.fill_bound_against_net(&points)?;
                Ok(Sample { points, fill_bound })
            }
        }
    }

    fn grid_sample(&self, n: usize) -> Result<Sample, ModelError> {
        if n == 0 {
            return Err(ModelError::EmptySample);
        }
        match *self {
            Self::Circle { radius } => {
                let points =
                    (0..n).map(|i| vec![2.0 * PI * i as f64 / n as f64]).collect();
                Ok(Sample { points, fill_bound: PI * radius / n as f64 })
            }
            Self::Sphere2 { radius } => {
                // Colatitude rows with azimuth columns; the bound follows a
                // meridian arc then a parallel arc to the nearest node.
                let a = (((n as f64) / 2.0).sqrt().round() as usize).max(1);
                let b = (n / a).max(1);
                let mut points = Vec::with_capacity(a * b);
                for i in 0..a {
                    let theta = PI * (i as f64 + 0.5) / a as f64;
                    for j in 0..b {
                        points.push(vec![theta, 2.0 * PI * j as f64 / b as f64]);
                    }
                }
                let bound = radius * (PI / (2.0 * a as f64) + PI / b as f64);
                Ok(Sample { points, fill_bound: bound })
            }
            Self::FlatTorus { side } => {
                let k = ((n as f64).sqrt().floor() as usize).max(1);
                let mut points = Vec::with_capacity(k * k);
                for i in 0..k {
                    for j in 0..k {
                        points.push(vec![
                            side * i as f64 / k as f64,
                            side * j as f64 / k as f64,
                        ]);
                    }
                }
                let bound = side / k as f64 * std::f64::consts::FRAC_1_SQRT_2;
                Ok(Sample { points, fill_bound: bound })
            }
            Self::EmbeddedTorus { major, minor } => {
                // Split the budget so the two per-axis path terms balance.
                let outer = major + minor;
                let a = ((n as f64 * outer / minor).sqrt().round() as usize).clamp(1, n);
                let b = (n / a).max(1);
                let mut points = Vec::with_capacity(a * b);
                for i in 0..a {
                    for j in 0..b {
                        points.push(vec![
                            2.0 * PI * i as f64 / a as f64,
                            2.0 * PI * j as f64 / b as f64,
                        ]);
                    }
                }
                let bound = outer * PI / a as f64 + minor * PI / b as f64;
                Ok(Sample { points, fill_bound: bound })
            }
        }
    }

    fn thin_landmarks(&self, pool: Vec<Vec<f64>>, n: usize) -> Result<Vec<Vec<f64>>, ModelError> {
        let mut chosen: Vec<Vec<f64>> = Vec::with_capacity(n);
        let mut min_dist = vec![f64::INFINITY; pool.len()];
        let mut pick = 0usize;
        for _ in 0..n {
            chosen.push(pool[pick].clone());
            for (i, p) in pool.iter().enumerate() {
                let d = self.natural_distance(p, &pool[pick])?;
                if d < min_dist[i] {
                    min_dist[i] = d;
                }
            }
            pick = min_dist
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.total_cmp(b.1))
                .map(|(i, _)| i)
                .unwrap();
        }
        Ok(chosen)
    }

    /// Certifies a fill bound for arbitrary chart points: the max-min
    /// distance to a fine net plus the net's own fineness. The net is
    /// refined until it is at least ten times finer than the bound it
    /// certifies.
    pub fn fill_bound_against_net(&self, points: &[Vec<f64>]) -> Result<f64, ModelError> {
        let nominal = self.grid_sample(points.len().max(2))?.fill_bound;
        let mut target = nominal / 10.0;
        let mut last = f64::INFINITY;
        for _ in 0..4 {
            let (net, fineness) = self.net_chart_points(target, BOUND_NET_CAP)?;
            let maxmin = self.max_min_distance(&net, points)?;
            let bound = maxmin + fineness;
            if fineness <= bound / 10.0 {
                return Ok(bound);
            }
            last = bound;
            target = bound / 12.0;
        }
        Ok(last)
    }

    /// max over `from` of min distance to `to`, in the natural metric.
    fn max_min_distance(
        &self,
        from: &[Vec<f64>],
        to: &[Vec<f64>],
    ) -> Result<f64, ModelError> {
        // Specialized loops with precomputed representations; these run
        // over hundreds of thousands of net points.
        let mut worst = 0.0f64;
        match *self {
            Self::Circle { radius } => {
                let a: Vec<f64> = from.iter().map(|p| p[0]).collect();
                let b: Vec<f64> = to.iter().map(|p| p[0]).collect();
                for &x in &a {
                    let mut best = f64::INFINITY;
                    for &y in &b {
                        best = best.min(circle_arc(x, y));
                    }
                    worst = worst.max(best * radius);
                }
            }
            Self::Sphere2 { radius } => {
                let a: Vec<[f64; 3]> = from.iter().map(|p| unit_from_chart(p)).collect();
                let b: Vec<[f64; 3]> = to.iter().map(|p| unit_from_chart(p)).collect();
                for u in &a {
                    // The angle is monotone in the chord, so compare chords
                    // in the inner loop and take one acos at the end.
                    let mut best_dot = -1.0f64;
                    for v in &b {
                        let d = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
                        if d > best_dot {
                            best_dot = d;
                        }
                    }
                    worst = worst.max(best_dot.clamp(-1.0, 1.0).acos() * radius);
                }
            }
            Self::FlatTorus { side } => {
                for p in from {
                    let mut best = f64::INFINITY;
                    for q in to {
                        best = best.min(torus_wrap_dist(p, q, side));
                    }
                    worst = worst.max(best);
                }
            }
            Self::EmbeddedTorus { .. } => {
                let a: Vec<Vec<f64>> =
                    from.iter().map(|p| self.embed(p)).collect::<Result<_, _>>()?;
                let b: Vec<Vec<f64>> =
                    to.iter().map(|p| self.embed(p)).collect::<Result<_, _>>()?;
                for u in &a {
                    let mut best = f64::INFINITY;
                    for v in &b {
                        best = best.min(crate::metric::euclidean(u, v));
                    }
                    worst = worst.max(best);
                }
            }
        }
        Ok(worst)
    }

    /// Net chart points with certified fineness, without a metric matrix.
    fn net_chart_points(
        &self,
        fineness: f64,
        cap: usize,
    ) -> Result<(Vec<Vec<f64>>, f64), ModelError> {
        if !(fineness > 0.0) {
            return Err(ModelError::NonPositiveFineness(fineness));
        }
        match *self {
            Self::Circle { radius } => {
                let n = (PI * radius / fineness).ceil() as usize;
                let n = n.max(1);
                if n > cap {
                    return Err(ModelError::NetTooLarge { required: n, cap });
                }
                let pts = (0..n).map(|i| vec![2.0 * PI * i as f64 / n as f64]).collect();
                Ok((pts, PI * radius / n as f64))
            }
            Self::Sphere2 { radius } => {
                let (mut verts, mut faces) = icosahedron();
                loop {
                    let fine = radius * max_face_circumangle(&verts, &faces);
                    if fine <= fineness {
                        let pts = verts.iter().map(|v| chart_from_unit(v)).collect();
                        return Ok((pts, fine));
                    }
                    let next_count = verts.len() + faces.len() * 3 / 2;
                    if next_count > cap {
                        return Err(ModelError::NetTooLarge { required: next_count, cap });
                    }
                    let (v2, f2) = subdivide_sphere(&verts, &faces);
                    verts = v2;
                    faces = f2;
                }
            }
            Self::FlatTorus { side } => {
                let k = (side * std::f64::consts::FRAC_1_SQRT_2 / fineness).ceil() as usize;
                let k = k.max(1);
                if k * k > cap {
                    return Err(ModelError::NetTooLarge { required: k * k, cap });
                }
                let mut pts = Vec::with_capacity(k * k);
                for i in 0..k {
                    for j in 0..k {
                        pts.push(vec![side * i as f64 / k as f64, side * j as f64 / k as f64]);
                    }
                }
                Ok((pts, side / k as f64 * std::f64::consts::FRAC_1_SQRT_2))
            }
            Self::EmbeddedTorus { major, minor } => {
                let outer = major + minor;
                let a = (2.0 * outer * PI / fineness).ceil() as usize;
                let b = (2.0 * minor * PI / fineness).ceil() as usize;
                if a * b > cap {
                    return Err(ModelError::NetTooLarge { required: a * b, cap });
                }
                let mut pts = Vec::with_capacity(a * b);
                for i in 0..a {
                    for j in 0..b {
                        pts.push(vec![
                            2.0 * PI * i as f64 / a as f64,
                            2.0 * PI * j as f64 / b as f64,
                        ]);
                    }
                }
                Ok((pts, outer * PI / a as f64 + minor * PI / b as f64))
            }
        }
    }

    /// A reference net with its exact metric matrix: the finite proxy used
    /// wherever a check quantifies over the whole manifold. Rejects nets
    /// above [`NET_POINT_CAP`] points.
    pub fn reference_net(&self, fineness: f64) -> Result<ModelNet, ModelError> {
        let (points, actual) = self.net_chart_points(fineness, NET_POINT_CAP)?;
        let metric = self.metric_space_of(&points)?;
        Ok(ModelNet { model: *self, points, metric, fineness: actual })
    }
}

/// Displaces every point of an ambient cloud by an independent uniform
/// vector of norm at most `eta`. Deterministic given the seed; the
/// Hausdorff shift is at most `eta` by construction.
pub fn perturb_cloud(cloud: &PointCloud, eta: f64, seed: u64) -> Result<PointCloud, ModelError> {
    if !(eta >= 0.0) {
        return Err(ModelError::NegativeEta(eta));
    }
    let mut rng = SplitMix64::new(seed);
    let points = cloud
        .points()
        .iter()
        .map(|p| {
            let d = rng.in_unit_ball(p.len());
            p.iter().zip(&d).map(|(x, dx)| x + eta * dx).collect()
        })
        .collect();
    PointCloud::new(points).map_err(ModelError::from)
}

fn circle_arc(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

fn torus_wrap_dist(p: &[f64], q: &[f64], side: f64) -> f64 {
    let wrap = |a: f64, b: f64| {
        let d = (a - b).rem_euclid(side);
        d.min(side - d)
    };
    let (dx, dy) = (wrap(p[0], q[0]), wrap(p[1], q[1]));
    (dx * dx + dy * dy).sqrt()
}

/// Unit vector from sphere chart (colatitude, azimuth).
fn unit_from_chart(p: &[f64]) -> [f64; 3] {
    let (theta, phi) = (p[0], p[1]);
    [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()]
}

fn chart_from_unit(u: &[f64; 3]) -> Vec<f64> {
    let norm = (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]).sqrt();
    let theta = (u[2] / norm).clamp(-1.0, 1.0).acos();
    let phi = u[1].atan2(u[0]).rem_euclid(2.0 * PI);
    vec![theta, phi]
}

/// Angle between unit vectors, stable near 0 and π.
fn sphere_angle(u: &[f64; 3], v: &[f64; 3]) -> f64 {
    let dot = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
    let cx = u[1] * v[2] - u[2] * v[1];
    let cy = u[2] * v[0] - u[0] * v[2];
    let cz = u[0] * v[1] - u[1] * v[0];
    let cross = (cx * cx + cy * cy + cz * cz).sqrt();
    cross.atan2(dot)
}

/// Two unit vectors completing `c` to an orthonormal frame.
fn orthonormal_frame(c: &[f64; 3]) -> ([f64; 3], [f64; 3]) {
    let pick = if c[0].abs() <= c[1].abs() && c[0].abs() <= c[2].abs() {
        [1.0, 0.0, 0.0]
    } else if c[1].abs() <= c[2].abs() {
        [0.0, 1.0, 0.0]
    } else {
        [0.0, 0.0, 1.0]
    };
    let dot = pick[0] * c[0] + pick[1] * c[1] + pick[2] * c[2];
    let mut e1 = [pick[0] - dot * c[0], pick[1] - dot * c[1], pick[2] - dot * c[2]];
    let n = (e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]).sqrt();
    e1 = [e1[0] / n, e1[1] / n, e1[2] / n];
    let e2 = [
        c[1] * e1[2] - c[2] * e1[1],
        c[2] * e1[0] - c[0] * e1[2],
        c[0] * e1[1] - c[1] * e1[0],
    ];
    (e1, e2)
}

fn icosahedron() -> (Vec<[f64; 3]>, Vec<[usize; 3]>) {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let raw = [
        [-1.0, phi, 0.0],
        [1.0, phi, 0.0],
        [-1.0, -phi, 0.0],
        [1.0, -phi, 0.0],
        [0.0, -1.0, phi],
        [0.0, 1.0, phi],
        [0.0, -1.0, -phi],
        [0.0, 1.0, -phi],
        [phi, 0.0, -1.0],
        [phi, 0.0, 1.0],
        [-phi, 0.0, -1.0],
        [-phi, 0.0, 1.0],
    ];
    let verts: Vec<[f64; 3]> = raw
        .iter()
        .map(|v| {
            let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            [v[0] / n, v[1] / n, v[2] / n]
        })
        .collect();
    let faces = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    (verts, faces)
}

/// One 4-to-1 face split, with new vertices on the unit sphere.
fn subdivide_sphere(
    verts: &[[f64; 3]],
    faces: &[[usize; 3]],
) -> (Vec<[f64; 3]>, Vec<[usize; 3]>) {
    let mut out_verts = verts.to_vec();
    let mut midpoint: std::collections::HashMap<(usize, usize), usize> =
        std::collections::HashMap::new();
    let mut out_faces = Vec::with_capacity(faces.len() * 4);
    let mut mid = |a: usize, b: usize, out_verts: &mut Vec<[f64; 3]>| {
        let key = (a.min(b), a.max(b));
        *midpoint.entry(key).or_insert_with(|| {
            let (u, v) = (out_verts[a], out_verts[b]);
            let m = [u[0] + v[0], u[1] + v[1], u[2] + v[2]];
            let n = (m[0] * m[0] + m[1] * m[1] + m[2] * m[2]).sqrt();
            out_verts.push([m[0] / n, m[1] / n, m[2] / n]);
            out_verts.len() - 1
        })
    };
    for &[a, b, c] in faces {
        let ab = mid(a, b, &mut out_verts);
        let bc = mid(b, c, &mut out_verts);
        let ca = mid(c, a, &mut out_verts);
        out_faces.push([a, ab, ca]);
        out_faces.push([b, bc, ab]);
        out_faces.push([c, ca, bc]);
        out_faces.push([ab, bc, ca]);
    }
    (out_verts, out_faces)
}

/// Largest spherical circumradius over the faces. Every sphere point lies
/// in the radial projection of some face, and within a face the distance to
/// the nearest vertex is maximized at the face's spherical circumcenter, so
/// this is a certified covering radius for the vertex set.
fn max_face_circumangle(verts: &[[f64; 3]], faces: &[[usize; 3]]) -> f64 {
    let mut worst = 0.0f64;
    for &[a, b, c] in faces {
        let (u, v, w) = (verts[a], verts[b], verts[c]);
        let e1 = [v[0] - u[0], v[1] - u[1], v[2] - u[2]];
        let e2 = [w[0] - u[0], w[1] - u[1], w[2] - u[2]];
        let mut n = [
            e1[1] * e2[2] - e1[2] * e2[1],
            e1[2] * e2[0] - e1[0] * e2[2],
            e1[0] * e2[1] - e1[1] * e2[0],
        ];
        let len = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
        n = [n[0] / len, n[1] / len, n[2] / len];
        if n[0] * u[0] + n[1] * u[1] + n[2] * u[2] < 0.0 {
            n = [-n[0], -n[1], -n[2]];
        }
        for p in [u, v, w] {
            worst = worst.max(sphere_angle(&n, &p));
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{hausdorff_between_clouds, PointCloud};

    #[test]
    fn geodesic_examples() {
        let c = ManifoldModel::circle(1.0).unwrap();
        assert!((c.geodesic_distance(&[0.0], &[PI]).unwrap() - PI).abs() < 1e-15);

        let s = ManifoldModel::sphere2(1.0).unwrap();
        let d = s.geodesic_distance(&[0.0, 0.0], &[PI / 2.0, 0.3]).unwrap();
        assert!((d - PI / 2.0).abs() < 1e-12);

        let t = ManifoldModel::flat_torus(2.0 * PI).unwrap();
        let d = t.geodesic_distance(&[0.0, 0.0], &[PI + 0.1, 0.0]).unwrap();
        assert!((d - (PI - 0.1)).abs() < 1e-12);
    }

    #[test]
    fn flat_torus_matches_nine_translate_minimum() {
        let side = 2.0 * PI;
        let t = ManifoldModel::flat_torus(side).unwrap();
        let mut rng = SplitMix64::new(42);
        for _ in 0..200 {
            let p = [rng.uniform(0.0, side), rng.uniform(0.0, side)];
            let q = [rng.uniform(0.0, side), rng.uniform(0.0, side)];
            let mut brute = f64::INFINITY;
            for i in -1i32..=1 {
                for j in -1i32..=1 {
                    let dx = p[0] - q[0] + side * i as f64;
                    let dy = p[1] - q[1] + side * j as f64;
                    brute = brute.min((dx * dx + dy * dy).sqrt());
                }
            }
            let d = t.geodesic_distance(&p, &q).unwrap();
            assert!((d - brute).abs() < 1e-12);
        }
    }

    #[test]
    fn embedding_examples() {
        let c = ManifoldModel::circle(1.0).unwrap();
        assert_eq!(c.embed(&[0.0]).unwrap(), vec![1.0, 0.0]);

        let s = ManifoldModel::sphere2(1.0).unwrap();
        let e = s.embed(&[0.0, 0.0]).unwrap();
        assert!(e[2] == 1.0 && e[0].abs() < 1e-15 && e[1].abs() < 1e-15);

        let et = ManifoldModel::embedded_torus(2.0, 1.0).unwrap();
        let e = et.embed(&[0.0, 0.0]).unwrap();
        assert_eq!(e, vec![3.0, 0.0, 0.0]);
    }

    #[test]
    fn capability_gating() {
        let et = ManifoldModel::embedded_torus(2.0, 1.0).unwrap();
        assert_eq!(
            et.geodesic_distance(&[0.0, 0.0], &[1.0, 1.0]),
            Err(ModelError::NoGeodesic)
        );
        let t = ManifoldModel::flat_torus(1.0).unwrap();
        assert_eq!(t.embed(&[0.0, 0.0]), Err(ModelError::NoEmbedding));
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(ManifoldModel::circle(0.0).is_err());
        assert!(ManifoldModel::flat_torus(-1.0).is_err());
        assert!(ManifoldModel::embedded_torus(1.0, 1.0).is_err());
        assert!(ManifoldModel::embedded_torus(1.0, 2.0).is_err());
    }

    #[test]
    fn sphere_constants_meet_reach_bounds_exactly() {
        let s = ManifoldModel::sphere2(1.0).unwrap();
        let c = s.constants();
        let tau = c.tau.unwrap().value;
        assert_eq!(c.kappa_sup.unwrap().value, 1.0 / (tau * tau));
        assert_eq!(c.rho.unwrap().value, PI * tau / 2.0);
        assert_eq!(c.delta.unwrap().value, PI * tau / 4.0);
        assert_eq!(c.betti_truth, vec![1, 0, 1]);
    }

    #[test]
    fn constants_per_model() {
        let c = ManifoldModel::circle(2.0).unwrap().constants();
        assert_eq!(c.rho.unwrap().value, PI);
        assert_eq!(c.delta.unwrap().value, PI);
        assert!(c.kappa_sup.is_none());
        assert_eq!(c.betti_truth, vec![1, 1]);

        let t = ManifoldModel::flat_torus(4.0).unwrap().constants();
        assert_eq!(t.rho.unwrap().value, 1.0);
        assert_eq!(t.rho.unwrap().provenance, Provenance::DerivedBound);
        assert_eq!(t.kappa_sup.unwrap().value, 0.0);
        assert!(t.tau.is_none());

        let et = ManifoldModel::embedded_torus(2.0, 0.5).unwrap().constants();
        assert_eq!(et.tau.unwrap().value, 0.5);
        assert!((et.kappa_sup.unwrap().value - 1.0 / (0.5 * 2.5)).abs() < 1e-15);
        assert!(et.delta.is_none());
    }

    #[test]
    fn metric_axioms_on_random_triples() {
        let models = [
            ManifoldModel::circle(1.3).unwrap(),
            ManifoldModel::sphere2(0.7).unwrap(),
            ManifoldModel::flat_torus(2.0).unwrap(),
        ];
        for (mi, m) in models.iter().enumerate() {
            let pts = m.random_points(60, 1000 + mi as u64).unwrap();
            for i in 0..20 {
                let (a, b, c) = (&pts[3 * i], &pts[3 * i + 1], &pts[3 * i + 2]);
                let dab = m.geodesic_distance(a, b).unwrap();
                let dba = m.geodesic_distance(b, a).unwrap();
                let dac = m.geodesic_distance(a, c).unwrap();
                let dcb = m.geodesic_distance(c, b).unwrap();
                assert!((dab - dba).abs() <= 1e-12);
                assert!(dab <= dac + dcb + 1e-12);
                assert!(m.geodesic_distance(a, a).unwrap() <= 1e-12);
            }
        }
    }

    #[test]
    fn chord_never_exceeds_arc() {
        for m in [ManifoldModel::circle(1.0).unwrap(), ManifoldModel::sphere2(2.0).unwrap()] {
            let pts = m.random_points(100, 7).unwrap();
            for pair in pts.chunks(2) {
                let arc = m.geodesic_distance(&pair[0], &pair[1]).unwrap();
                let (a, b) = (m.embed(&pair[0]).unwrap(), m.embed(&pair[1]).unwrap());
                let chord = crate::metric::euclidean(&a, &b);
                assert!(chord <= arc + 1e-12, "chord {chord} > arc {arc}");
            }
        }
    }

    #[test]
    fn circle_grid_bounds() {
        let c = ManifoldModel::circle(1.0).unwrap();
        let s = c.sample(SampleSpec::Grid { n: 50 }).unwrap();
        assert_eq!(s.points.len(), 50);
        assert!((s.fill_bound - PI / 50.0).abs() < 1e-15);
        let s = c.sample(SampleSpec::Grid { n: 1 }).unwrap();
        assert!((s.fill_bound - PI).abs() < 1e-15);
    }

    #[test]
    fn flat_torus_grid_is_square() {
        let t = ManifoldModel::flat_torus(2.0 * PI).unwrap();
        let s = t.sample(SampleSpec::Grid { n: 400 }).unwrap();
        assert_eq!(s.points.len(), 400);
        let expect = (2.0 * PI / 20.0) * std::f64::consts::FRAC_1_SQRT_2;
        assert!((s.fill_bound - expect).abs() < 1e-15);
    }

    #[test]
    fn grid_fill_bound_is_honest() {
        // Measure the true covering radius of grids against a fine net and
        // compare with the certified bound.
        for m in [
            ManifoldModel::sphere2(1.0).unwrap(),
            ManifoldModel::flat_torus(1.0).unwrap(),
            ManifoldModel::embedded_torus(2.0, 1.0).unwrap(),
        ] {
            let s = m.sample(SampleSpec::Grid { n: 80 }).unwrap();
            let (net, fine) = m.net_chart_points(s.fill_bound / 8.0, BOUND_NET_CAP).unwrap();
            let true_fill = m.max_min_distance(&net, &s.points).unwrap() - fine;
            assert!(
                true_fill <= s.fill_bound,
                "measured {true_fill} vs bound {} on {m:?}",
                s.fill_bound
            );
        }
    }

    #[test]
    fn random_sample_deterministic_and_bounded() {
        let c = ManifoldModel::circle(1.0).unwrap();
        let s1 = c.sample(SampleSpec::Random { n: 40, seed: 5 }).unwrap();
        let s2 = c.sample(SampleSpec::Random { n: 40, seed: 5 }).unwrap();
        assert_eq!(s1.points, s2.points);
        assert_eq!(s1.fill_bound, s2.fill_bound);
        // 40 landmarks on the unit circle spread nearly evenly.
        assert!(s1.fill_bound < 2.5 * PI / 40.0, "bound {}", s1.fill_bound);
    }

    #[test]
    fn landmark_thinning_spreads_sphere_points() {
        let s = ManifoldModel::sphere2(1.0).unwrap();
        let sample = s.sample(SampleSpec::Random { n: 400, seed: 7 }).unwrap();
        assert_eq!(sample.points.len(), 400);
        assert!(
            sample.fill_bound > 0.1 && sample.fill_bound < 0.2,
            "bound {}",
            sample.fill_bound
        );
    }

    #[test]
    fn perturb_cloud_examples() {
        let cloud = PointCloud::new(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 2.0]]).unwrap();
        let same = perturb_cloud(&cloud, 0.0, 3).unwrap();
        assert_eq!(same.points(), cloud.points());
        let moved = perturb_cloud(&cloud, 0.01, 3).unwrap();
        let d = hausdorff_between_clouds(&cloud, &moved).unwrap();
        assert!(d <= 0.01);
        let again = perturb_cloud(&cloud, 0.01, 3).unwrap();
        assert_eq!(moved.points(), again.points());
    }

    #[test]
    fn on_model_perturbation_stays_close() {
        for m in [
            ManifoldModel::circle(1.0).unwrap(),
            ManifoldModel::sphere2(1.0).unwrap(),
            ManifoldModel::flat_torus(2.0).unwrap(),
        ] {
            let pts = m.random_points(50, 11).unwrap();
            let moved = m.perturb_on_model(&pts, 0.02, 12).unwrap();
            for (p, q) in pts.iter().zip(&moved) {
                let d = m.geodesic_distance(p, q).unwrap();
                assert!(d <= 0.02 + 1e-12, "moved {d}");
            }
        }
    }

    #[test]
    fn reference_net_sizes() {
        let c = ManifoldModel::circle(1.0).unwrap();
        let net = c.reference_net(PI / 100.0).unwrap();
        assert_eq!(net.points.len(), 100);
        assert!((net.fineness - PI / 100.0).abs() < 1e-15);

        let s = ManifoldModel::sphere2(1.0).unwrap();
        let net = s.reference_net(0.2).unwrap();
        assert_eq!(net.points.len(), 162);
        assert!(net.fineness <= 0.2 && net.fineness > 0.15);

        let err = s.reference_net(1e-4).unwrap_err();
        assert!(matches!(err, ModelError::NetTooLarge { .. }));
    }

    #[test]
    fn icosphere_fineness_shrinks_by_half_per_level() {
        let (mut v, mut f) = icosahedron();
        let mut prev = max_face_circumangle(&v, &f);
        assert!((prev - 0.6524).abs() < 1e-3, "level 0 gives {prev}");
        for _ in 0..3 {
            let (v2, f2) = subdivide_sphere(&v, &f);
            v = v2;
            f = f2;
            let fine = max_face_circumangle(&v, &f);
            assert!(fine < 0.62 * prev, "{fine} vs {prev}");
            prev = fine;
        }
        assert_eq!(v.len(), 642);
    }

    #[test]
    fn convexity_scale_balls_have_unique_wrapping() {
        // Pairs inside a ball of radius below L/4 are joined by a unique
        // minimizing translate, backing the L/4 convexity constant.
        let side = 1.0;
        let t = ManifoldModel::flat_torus(side).unwrap();
        let center = [0.3, 0.8];
        let pts = t.random_ball_points(&center, 0.24 * side, 60, 21).unwrap();
        for i in 0..pts.len() {
            for j in (i + 1)..pts.len() {
                let mut best = f64::INFINITY;
                let mut hits = 0;
                for a in -1i32..=1 {
                    for b in -1i32..=1 {
                        let dx = pts[i][0] - pts[j][0] + side * a as f64;
                        let dy = pts[i][1] - pts[j][1] + side * b as f64;
                        let d = (dx * dx + dy * dy).sqrt();
                        if (d - best).abs() < 1e-9 {
                            hits += 1;
                        } else if d < best {
                            best = d;
                            hits = 1;
                        }
                    }
                }
                assert_eq!(hits, 1);
            }
        }
    }

    #[test]
    fn ball_points_stay_in_ball() {
        let s = ManifoldModel::sphere2(1.0).unwrap();
        let center = [1.1, 2.0];
        let pts = s.random_ball_points(&center, 0.3, 100, 9).unwrap();
        for p in &pts {
            assert!(s.geodesic_distance(&center, p).unwrap() <= 0.3 + 1e-12);
        }
    }

    #[test]
    fn model_json_round_trip() {
        let m = ManifoldModel::sphere2(1.0).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"kind":"sphere2","R":1.0}"#);
        let back: ManifoldModel = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        let et: ManifoldModel =
            serde_json::from_str(r#"{"kind":"embedded_torus","R":2.0,"r":1.0}"#).unwrap();
        assert_eq!(et, ManifoldModel::embedded_torus(2.0, 1.0).unwrap());
    }
}
