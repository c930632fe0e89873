//! Circumcenters and circumradii, Euclidean and geodesic, with the
//! curvature-dependent Jung inequality relating circumradius to diameter.
//!
//! The Euclidean solver is an exact Welzl-style smallest enclosing ball for
//! ambient dimension up to 3 and a certified iterative minimax descent
//! beyond. Geodesic centers on the model manifolds combine multi-start
//! subgradient descent on the chart with exact small-support finishers
//! (covering arc on the circle, normalized enclosing-ball center on the
//! sphere, fundamental-domain lift on the flat torus); the finisher result
//! is used whenever it achieves the smaller minimax value.

use crate::metric::PointCloud;
use crate::models::{ManifoldModel, ModelError};
use crate::rng::SplitMix64;
use serde::Serialize;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum JungError {
    #[error("at least one point is required")]
    EmptyInput,
    #[error("model has no geodesic solver; use the Euclidean pipeline")]
    UnsupportedModel,
    #[error("circumradius {value} outside the admissible range (0, {max}] for this curvature")]
    RadiusOutOfRange { value: f64, max: f64 },
    #[error("radius must be nonnegative, got {0}")]
    NegativeRadius(f64),
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("subset point {index} does not appear in the ambient set")]
    NotSubset { index: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// A minimax center: the ball around `center` of the reported radius covers
/// every input point, the radius is the exact maximum distance from the
/// center (witnessed by `achieved_by`), and `residual` bounds the solver's
/// optimality gap.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CircumResult {
    pub center: Vec<f64>,
    pub radius: f64,
    pub achieved_by: usize,
    pub iterations: u32,
    pub residual: f64,
    pub flags: Vec<String>,
}

const ITERATIVE_RESIDUAL: f64 = 1e-8;

/// Smallest enclosing ball of an ambient point cloud.
pub fn euclidean_circumcenter(cloud: &PointCloud) -> Result<CircumResult, JungError> {
    let points = cloud.points();
    if points.is_empty() {
        return Err(JungError::EmptyInput);
    }
    let (center, iterations, exact) = if cloud.dim() <= 3 {
        let c = welzl_seb(points);
        (c, points.len() as u32, true)
    } else {
        let (c, it) = minimax_descent_euclidean(points);
        (c, it, false)
    };
    let (radius, achieved_by) = max_distance(&center, points);
    Ok(CircumResult {
        center,
        radius,
        achieved_by,
        iterations,
        residual: if exact { 0.0 } else { ITERATIVE_RESIDUAL },
        flags: if exact { vec![] } else { vec!["iterative_estimate".into()] },
    })
}

/// Geodesic minimax center on a model with exact geodesics.
///
/// When the input diameter is not below the model's scale bound Δ the
/// existence guarantee does not apply; the best center found is still
/// returned, flagged `existence_hypothesis_unmet`.
pub fn geodesic_circumcenter(
    m: &ManifoldModel,
    points: &[Vec<f64>],
) -> Result<CircumResult, JungError> {
    if points.is_empty() {
        return Err(JungError::EmptyInput);
    }
    if !m.has_geodesic() {
        return Err(JungError::UnsupportedModel);
    }
    let mut flags = Vec::new();
    let diam = chart_diameter(m, points)?;
    let delta = m.constants().delta.map(|t| t.value);
    let in_hypothesis = match delta {
        Some(d) => diam < d,
        None => false,
    };
    if !in_hypothesis {
        flags.push("existence_hypothesis_unmet".to_string());
    }
    if points.len() == 1 {
        return Ok(CircumResult {
            center: points[0].clone(),
            radius: 0.0,
            achieved_by: 0,
            iterations: 0,
            residual: 0.0,
            flags,
        });
    }

    let (descent_center, iterations) = multi_start_descent(m, points, diam)?;
    let descent_value = max_geodesic(m, &descent_center, points)?;

    let finisher = exact_finisher(m, points)?;
    let (center, exact) = match finisher {
        Some(c) => {
            let v = max_geodesic(m, &c, points)?;
            // The finisher is exact in its validity regime; a descent value
            // below it by rounding noise does not beat it.
            if v <= descent_value + 1e-12 * (1.0 + v) {
                (c, in_hypothesis)
            } else {
                (descent_center, false)
            }
        }
        None => (descent_center, false),
    };
    if !exact {
        flags.push("iterative_estimate".to_string());
    }
    let (radius, achieved_by) = max_geodesic_witness(m, &center, points)?;
    Ok(CircumResult {
        center,
        radius,
        achieved_by,
        iterations,
        residual: if exact { 0.0 } else { ITERATIVE_RESIDUAL },
        flags,
    })
}

/// The curvature-dependent lower bound on the diameter of a set with
/// circumradius `r` in dimension `n`: the three-case Jung bound.
pub fn jung_min_diam(r: f64, n: u32, kappa: f64) -> Result<f64, JungError> {
    if n == 0 {
        return Err(JungError::ZeroDimension);
    }
    if !(r >= 0.0) {
        return Err(JungError::NegativeRadius(r));
    }
    let factor = ((n as f64 + 1.0) / (2.0 * n as f64)).sqrt();
    if kappa > 0.0 {
        let sk = kappa.sqrt();
        let max = PI / (2.0 * sk);
        if r > max {
            return Err(JungError::RadiusOutOfRange { value: r, max });
        }
        Ok(2.0 / sk * (factor * (sk * r).sin()).asin())
    } else if kappa < 0.0 {
        let sk = (-kappa).sqrt();
        Ok(2.0 / sk * (factor * (sk * r).sinh()).asinh())
    } else {
        Ok(2.0 * r * factor)
    }
}

/// The positive-curvature comparison function J(r) behind the circumradius
/// bound, defined for 0 < r ≤ π/(4√κ). J(r)/r is decreasing and stays at or
/// above 4/3 on that range for n ≥ 2.
pub fn jung_j(r: f64, kappa: f64, n: u32) -> Result<f64, JungError> {
    if n == 0 {
        return Err(JungError::ZeroDimension);
    }
    let max = PI / (4.0 * kappa.sqrt());
    if !(kappa > 0.0) || !(r > 0.0) || r > max {
        return Err(JungError::RadiusOutOfRange { value: r, max });
    }
    let sk = kappa.sqrt();
    let factor = ((n as f64 + 1.0) / (2.0 * n as f64)).sqrt();
    Ok(2.0 / sk * (factor * (sk * r).sin()).asin())
}

/// Tolerance below the exact 4/3 factor, absorbing solver residuals.
pub const CIRCUM_BOUND_SLACK: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CircumBoundReport {
    pub diam: f64,
    pub radius: f64,
    pub ratio: f64,
    pub pass: bool,
    pub in_hypothesis: bool,
    pub flags: Vec<String>,
}

/// Checks diam ≥ (4/3)·circumradius for a point set on a model, the bound
/// valid whenever the diameter is below the model's scale bound.
pub fn check_circum_bound(
    m: &ManifoldModel,
    points: &[Vec<f64>],
) -> Result<CircumBoundReport, JungError> {
    let result = geodesic_circumcenter(m, points)?;
    let diam = chart_diameter(m, points)?;
    let in_hypothesis = !result.flags.iter().any(|f| f == "existence_hypothesis_unmet");
    let ratio = if result.radius > 0.0 { diam / result.radius } else { f64::INFINITY };
    let mut flags = result.flags.clone();
    if !in_hypothesis {
        flags.push("out_of_hypothesis".to_string());
    }
    Ok(CircumBoundReport {
        diam,
        radius: result.radius,
        ratio,
        pass: diam >= 4.0 / 3.0 * result.radius - CIRCUM_BOUND_SLACK,
        in_hypothesis,
        flags,
    })
}

/// Slack for the subset-center distance check, absorbing solver residuals
/// and non-unique minimax centers.
pub const SUBSET_CENTER_SLACK: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubsetCenterReport {
    pub center_distance: f64,
    pub diam: f64,
    pub bound: f64,
    pub pass: bool,
    pub flags: Vec<String>,
}

/// Checks that the minimax centers of a set and of a subset lie within
/// (3/4)·diam of each other. The subset is given by its own coordinates and
/// must reuse the ambient set's coordinates exactly.
pub fn check_subset_center(
    m: &ManifoldModel,
    a: &[Vec<f64>],
    b: &[Vec<f64>],
) -> Result<SubsetCenterReport, JungError> {
    for (i, q) in b.iter().enumerate() {
        if !a.iter().any(|p| p == q) {
            return Err(JungError::NotSubset { index: i });
        }
    }
    let ca = geodesic_circumcenter(m, a)?;
    let cb = geodesic_circumcenter(m, b)?;
    let d = m.geodesic_distance(&ca.center, &cb.center)?;
    let diam = chart_diameter(m, a)?;
    let bound = 0.75 * diam;
    let mut flags = ca.flags;
    flags.extend(cb.flags);
    flags.dedup();
    Ok(SubsetCenterReport {
        center_distance: d,
        diam,
        bound,
        pass: d <= bound + SUBSET_CENTER_SLACK,
        flags,
    })
}

fn chart_diameter(m: &ManifoldModel, points: &[Vec<f64>]) -> Result<f64, JungError> {
    let mut diam = 0.0f64;
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            diam = diam.max(m.geodesic_distance(&points[i], &points[j])?);
        }
    }
    Ok(diam)
}

fn max_geodesic(m: &ManifoldModel, c: &[f64], points: &[Vec<f64>]) -> Result<f64, JungError> {
    Ok(max_geodesic_witness(m, c, points)?.0)
}

fn max_geodesic_witness(
    m: &ManifoldModel,
    c: &[f64],
    points: &[Vec<f64>],
) -> Result<(f64, usize), JungError> {
    let mut best = (f64::NEG_INFINITY, 0);
    for (i, p) in points.iter().enumerate() {
        let d = m.geodesic_distance(c, p)?;
        if d > best.0 {
            best = (d, i);
        }
    }
    Ok(best)
}

fn max_distance(c: &[f64], points: &[Vec<f64>]) -> (f64, usize) {
    let mut best = (f64::NEG_INFINITY, 0);
    for (i, p) in points.iter().enumerate() {
        let d = crate::metric::euclidean(c, p);
        if d > best.0 {
            best = (d, i);
        }
    }
    best
}

/// Subgradient descent on the max-distance objective from eight
/// deterministic starts: the first input points, then fixed perturbations
/// of the first point.
fn multi_start_descent(
    m: &ManifoldModel,
    points: &[Vec<f64>],
    diam: f64,
) -> Result<(Vec<f64>, u32), JungError> {
    let mut starts: Vec<Vec<f64>> = points.iter().take(4).cloned().collect();
    let mut rng = SplitMix64::new(0x5eb_c1c4);
    let scale = (diam / 4.0).max(1e-3);
    for _ in 0..(8 - starts.len()) {
        let mut s = points[0].clone();
        for x in s.iter_mut() {
            *x += rng.uniform(-1.0, 1.0) * scale;
        }
        starts.push(canonicalize(m, s));
    }
    let mut best: Option<(Vec<f64>, f64)> = None;
    let mut total_iters = 0u32;
    for start in starts {
        let (c, v, it) = descend(m, start, points, diam)?;
        total_iters += it;
        if best.as_ref().is_none_or(|(_, bv)| v < *bv) {
            best = Some((c, v));
        }
    }
    let (center, _) = best.unwrap();
    Ok((center, total_iters))
}

fn descend(
    m: &ManifoldModel,
    start: Vec<f64>,
    points: &[Vec<f64>],
    diam: f64,
) -> Result<(Vec<f64>, f64, u32), JungError> {
    let mut c = start;
    let mut value = max_geodesic(m, &c, points)?;
    let mut step = (diam / 2.0).max(1e-6);
    let mut iters = 0u32;
    while step > 1e-12 && iters < 10_000 {
        iters += 1;
        let (_, far) = max_geodesic_witness(m, &c, points)?;
        let candidate = step_toward(m, &c, &points[far], step);
        let v = max_geodesic(m, &candidate, points)?;
        if v < value {
            c = candidate;
            value = v;
        } else {
            step *= 0.5;
        }
    }
    Ok((c, value, iters))
}

/// Moves `c` a geodesic distance of at most `step` toward `target`.
fn step_toward(m: &ManifoldModel, c: &[f64], target: &[f64], step: f64) -> Vec<f64> {
    match *m {
        ManifoldModel::Circle { radius } => {
            let diff = signed_arc(c[0], target[0]);
            let t = (step / radius).min(diff.abs());
            vec![(c[0] + diff.signum() * t).rem_euclid(2.0 * PI)]
        }
        ManifoldModel::Sphere2 { radius } => {
            let u = unit3(c);
            let v = unit3(target);
            let angle = stable_angle(&u, &v);
            if angle < 1e-15 {
                return c.to_vec();
            }
            let t = (step / radius).min(angle);
            // Slerp from u toward v by angle t.
            let sin_a = angle.sin();
            let wa = ((angle - t).sin()) / sin_a;
            let wb = (t.sin()) / sin_a;
            let q = [
                wa * u[0] + wb * v[0],
                wa * u[1] + wb * v[1],
                wa * u[2] + wb * v[2],
            ];
            chart2(&q)
        }
        ManifoldModel::FlatTorus { side } => {
            let dx = wrapped_diff(target[0] - c[0], side);
            let dy = wrapped_diff(target[1] - c[1], side);
            let norm = (dx * dx + dy * dy).sqrt();
            if norm < 1e-15 {
                return c.to_vec();
            }
            let t = step.min(norm) / norm;
            vec![
                (c[0] + t * dx).rem_euclid(side),
                (c[1] + t * dy).rem_euclid(side),
            ]
        }
        ManifoldModel::EmbeddedTorus { .. } => c.to_vec(),
    }
}

fn canonicalize(m: &ManifoldModel, mut p: Vec<f64>) -> Vec<f64> {
    match *m {
        ManifoldModel::Circle { .. } => {
            p[0] = p[0].rem_euclid(2.0 * PI);
        }
        ManifoldModel::Sphere2 { .. } => {
            p[0] = p[0].clamp(1e-9, PI - 1e-9);
            p[1] = p[1].rem_euclid(2.0 * PI);
        }
        ManifoldModel::FlatTorus { side } => {
            p[0] = p[0].rem_euclid(side);
            p[1] = p[1].rem_euclid(side);
        }
        ManifoldModel::EmbeddedTorus { .. } => {}
    }
    p
}

/// Exact small-support minimax centers where the model's geometry gives a
/// closed form: the minimal covering arc on the circle, the normalized
/// enclosing-ball center on the sphere (valid while the set sits in an open
/// hemisphere), and the fundamental-domain lift on the flat torus (valid
/// while the lift is isometric). Returns `None` when the geometry falls
/// outside those regimes.
fn exact_finisher(
    m: &ManifoldModel,
    points: &[Vec<f64>],
) -> Result<Option<Vec<f64>>, JungError> {
    match *m {
        ManifoldModel::Circle { .. } => {
            let mut angles: Vec<f64> = points.iter().map(|p| p[0].rem_euclid(2.0 * PI)).collect();
            angles.sort_by(f64::total_cmp);
            // The largest cyclic gap's complement is the minimal covering
            // arc; its midpoint is the minimax center.
            let n = angles.len();
            let mut best_gap = 2.0 * PI - angles[n - 1] + angles[0];
            let mut gap_start = angles[n - 1];
            for w in angles.windows(2) {
                let gap = w[1] - w[0];
                if gap > best_gap {
                    best_gap = gap;
                    gap_start = w[0];
                }
            }
            let arc = 2.0 * PI - best_gap;
            let center = (gap_start + best_gap + arc / 2.0).rem_euclid(2.0 * PI);
            Ok(Some(vec![center]))
        }
        ManifoldModel::Sphere2 { .. } => {
            let units: Vec<Vec<f64>> = points.iter().map(|p| unit3(p).to_vec()).collect();
            let c = welzl_seb(&units);
            let norm = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt();
            if norm < 1e-9 {
                return Ok(None);
            }
            let u = [c[0] / norm, c[1] / norm, c[2] / norm];
            // Valid only while every point is strictly within a quarter
            // turn of the candidate center.
            for p in &units {
                if u[0] * p[0] + u[1] * p[1] + u[2] * p[2] <= 1e-12 {
                    return Ok(None);
                }
            }
            Ok(Some(chart2(&u)))
        }
        ManifoldModel::FlatTorus { side } => {
            let p0 = &points[0];
            let lifted: Vec<Vec<f64>> = points
                .iter()
                .map(|q| {
                    vec![
                        p0[0] + wrapped_diff(q[0] - p0[0], side),
                        p0[1] + wrapped_diff(q[1] - p0[1], side),
                    ]
                })
                .collect();
            // The lift is isometric only while all points fit well inside
            // a fundamental domain.
            let mut max_abs = 0.0f64;
            for q in &lifted {
                max_abs = max_abs.max((q[0] - p0[0]).abs()).max((q[1] - p0[1]).abs());
            }
            if max_abs >= side / 4.0 {
                return Ok(None);
            }
            let c = welzl_seb(&lifted);
            Ok(Some(vec![c[0].rem_euclid(side), c[1].rem_euclid(side)]))
        }
        ManifoldModel::EmbeddedTorus { .. } => Ok(None),
    }
}

fn signed_arc(from: f64, to: f64) -> f64 {
    let d = (to - from).rem_euclid(2.0 * PI);
    if d > PI {
        d - 2.0 * PI
    } else {
        d
    }
}

fn wrapped_diff(d: f64, side: f64) -> f64 {
    let w = d.rem_euclid(side);
    if w > side / 2.0 {
        w - side
    } else {
        w
    }
}

fn unit3(p: &[f64]) -> [f64; 3] {
    let (theta, phi) = (p[0], p[1]);
    [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()]
}

fn chart2(u: &[f64; 3]) -> Vec<f64> {
    let norm = (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]).sqrt();
    let theta = (u[2] / norm).clamp(-1.0, 1.0).acos();
    let phi = u[1].atan2(u[0]).rem_euclid(2.0 * PI);
    vec![theta, phi]
}

fn stable_angle(u: &[f64; 3], v: &[f64; 3]) -> f64 {
    let dot = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
    let cx = u[1] * v[2] - u[2] * v[1];
    let cy = u[2] * v[0] - u[0] * v[2];
    let cz = u[0] * v[1] - u[1] * v[0];
    (cx * cx + cy * cy + cz * cz).sqrt().atan2(dot)
}

/// Exact smallest enclosing ball for ambient dimension ≤ 3, Welzl's move-
/// to-front recursion with an exhaustive basis solver. Deterministic: the
/// scan order is a fixed seeded shuffle.
fn welzl_seb(points: &[Vec<f64>]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    let mut rng = SplitMix64::new(0xba11);
    for i in (1..idx.len()).rev() {
        let j = rng.next_index(i + 1);
        idx.swap(i, j);
    }
    let mut support: Vec<usize> = Vec::new();
    welzl_rec(points, &mut idx, points.len(), &mut support)
}

fn welzl_rec(
    points: &[Vec<f64>],
    order: &mut Vec<usize>,
    n: usize,
    support: &mut Vec<usize>,
) -> Vec<f64> {
    if n == 0 || support.len() == 4 {
        return basis_center(points, support);
    }
    let p = order[n - 1];
    let c = welzl_rec(points, order, n - 1, support);
    let r = basis_radius(points, support, &c);
    if crate::metric::euclidean(&c, &points[p]) <= r + 1e-12 * (1.0 + r) {
        return c;
    }
    support.push(p);
    let c = welzl_rec(points, order, n - 1, support);
    support.pop();
    // Move-to-front keeps hard points early in later scans. Inner calls
    // only permute order[..n-1], so p is still at n-1 here.
    order[..n].rotate_right(1);
    c
}

fn basis_radius(points: &[Vec<f64>], support: &[usize], center: &[f64]) -> f64 {
    support
        .iter()
        .map(|&i| crate::metric::euclidean(center, &points[i]))
        .fold(0.0, f64::max)
}

/// Exact center of the smallest ball through/around at most four points:
/// the smallest circumsphere over all subsets that still covers the rest.
fn basis_center(points: &[Vec<f64>], support: &[usize]) -> Vec<f64> {
    let dim = points.first().map_or(0, Vec::len);
    if support.is_empty() {
        return vec![0.0; dim];
    }
    let pts: Vec<&[f64]> = support.iter().map(|&i| points[i].as_slice()).collect();
    let mut best: Option<(Vec<f64>, f64)> = None;
    let m = pts.len();
    for mask in 1u32..(1 << m) {
        let subset: Vec<&[f64]> =
            (0..m).filter(|&i| mask & (1 << i) != 0).map(|i| pts[i]).collect();
        let Some(center) = circumsphere(&subset) else { continue };
        let radius = subset
            .iter()
            .map(|p| crate::metric::euclidean(&center, p))
            .fold(0.0, f64::max);
        let covers = pts
            .iter()
            .all(|p| crate::metric::euclidean(&center, p) <= radius + 1e-10 * (1.0 + radius));
        if covers && best.as_ref().is_none_or(|(_, r)| radius < *r) {
            best = Some((center, radius));
        }
    }
    best.map(|(c, _)| c).unwrap_or_else(|| pts[0].to_vec())
}

/// Center equidistant from all given points (1 to 4 of them, dimension ≤ 3),
/// in the affine hull of the points. `None` for degenerate configurations.
fn circumsphere(pts: &[&[f64]]) -> Option<Vec<f64>> {
    let k = pts.len() - 1;
    if k == 0 {
        return Some(pts[0].to_vec());
    }
    let dim = pts[0].len();
    // Solve the Gram system for center = p0 + sum over edges.
    let edges: Vec<Vec<f64>> = pts[1..]
        .iter()
        .map(|p| (0..dim).map(|d| p[d] - pts[0][d]).collect())
        .collect();
    let mut a = vec![vec![0.0; k]; k];
    let mut b = vec![0.0; k];
    for i in 0..k {
        for j in 0..k {
            a[i][j] = dot(&edges[i], &edges[j]);
        }
        b[i] = dot(&edges[i], &edges[i]) / 2.0;
    }
    let coef = solve_small(&mut a, &mut b)?;
    let mut center = pts[0].to_vec();
    for (c, e) in coef.iter().zip(&edges) {
        for d in 0..dim {
            center[d] += c * e[d];
        }
    }
    Some(center)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Gaussian elimination with partial pivoting for systems up to 3x3.
fn solve_small(a: &mut [Vec<f64>], b: &mut [f64]) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in (col + 1)..n {
            let f = a[row][col] / a[col][col];
            for c in col..n {
                a[row][c] -= f * a[col][c];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut s = b[row];
        for c in (row + 1)..n {
            s -= a[row][c] * x[c];
        }
        x[row] = s / a[row][row];
    }
    Some(x)
}

/// Minimax descent for smallest enclosing balls above dimension 3: step
/// toward the farthest point with halving steps from the centroid.
fn minimax_descent_euclidean(points: &[Vec<f64>]) -> (Vec<f64>, u32) {
    let dim = points[0].len();
    let mut c = vec![0.0; dim];
    for p in points {
        for d in 0..dim {
            c[d] += p[d];
        }
    }
    for x in c.iter_mut() {
        *x /= points.len() as f64;
    }
    let mut value = max_distance(&c, points).0;
    let mut step = value;
    let mut iters = 0u32;
    while step > 1e-13 * (1.0 + value) && iters < 100_000 {
        iters += 1;
        let (_, far) = max_distance(&c, points);
        let dir: Vec<f64> = (0..dim).map(|d| points[far][d] - c[d]).collect();
        let norm = dot(&dir, &dir).sqrt();
        if norm < 1e-15 {
            break;
        }
        let t = step.min(norm) / norm;
        let cand: Vec<f64> = (0..dim).map(|d| c[d] + t * dir[d]).collect();
        let v = max_distance(&cand, points).0;
        if v < value {
            c = cand;
            value = v;
        } else {
            step *= 0.5;
        }
    }
    (c, iters)
}
