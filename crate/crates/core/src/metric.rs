//! Finite metric spaces, point clouds, and correspondences.
//!
//! A [`FiniteMetricSpace`] stores a full distance matrix and is validated on
//! construction: downstream complex construction is only meaningful over a
//! genuine metric. Gromov–Hausdorff distance is never computed exactly (it
//! is NP-hard); everything works with correspondence-distortion upper
//! bounds, which is all the scale-window hypotheses require.

use crate::rng::SplitMix64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Tolerance for metric-axiom validation on construction.
pub const TRIANGLE_TOL: f64 = 1e-9;

/// Above this size, triangle-inequality validation switches from exhaustive
/// O(n³) to a seeded sample of triples (still every pair for symmetry).
const EXHAUSTIVE_TRIANGLE_LIMIT: usize = 256;
const SAMPLED_TRIPLES: usize = 2_000_000;

#[derive(Debug, Error, PartialEq)]
pub enum MetricError {
    #[error("matrix is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("non-finite distance at ({i}, {j})")]
    NonFinite { i: usize, j: usize },
    #[error("negative distance {value} at ({i}, {j})")]
    Negative { i: usize, j: usize, value: f64 },
    #[error("nonzero diagonal entry {value} at index {i}")]
    NonzeroDiagonal { i: usize, value: f64 },
    #[error("asymmetric entries at ({i}, {j}): {dij} vs {dji}")]
    Asymmetric { i: usize, j: usize, dij: f64, dji: f64 },
    #[error("triangle inequality violated at ({i}, {j}, {k}): d({i},{k}) = {dik} > {bound}")]
    Triangle {
        i: usize,
        j: usize,
        k: usize,
        dik: f64,
        bound: f64,
    },
    #[error("empty set has no diameter")]
    EmptyDiameter,
    #[error("empty input")]
    EmptyInput,
    #[error("index {index} out of bounds for space of size {n}")]
    IndexOutOfBounds { index: usize, n: usize },
    #[error("dimension mismatch: {a} vs {b}")]
    DimensionMismatch { a: usize, b: usize },
    #[error("correspondence does not cover {side} index {index}")]
    CorrespondenceGap { side: &'static str, index: usize },
    #[error("correspondence sized for ({nx}, {ny}) used with spaces of size ({mx}, {my})")]
    CorrespondenceSize {
        nx: usize,
        ny: usize,
        mx: usize,
        my: usize,
    },
}

/// A finite metric space given by its full distance matrix.
///
/// Construction validates non-negativity, zero diagonal, symmetry, and the
/// triangle inequality within [`TRIANGLE_TOL`]. For spaces larger than 256
/// points the triangle check runs on a seeded sample of two million triples
/// instead of all O(n³); symmetry and sign checks stay exhaustive.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetricSpace {
    n: usize,
    d: Vec<f64>,
}

impl FiniteMetricSpace {
    pub fn from_matrix(rows: Vec<Vec<f64>>) -> Result<Self, MetricError> {
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(MetricError::NotSquare {
                    row: i,
                    len: row.len(),
                    n,
                });
            }
        }
        let d: Vec<f64> = rows.into_iter().flatten().collect();
        let ms = Self { n, d };
        ms.validate()?;
        Ok(ms)
    }

    /// Builds the matrix from a distance function (assumed symmetric; only
    /// the upper triangle is evaluated) and validates it.
    pub fn from_fn(n: usize, dist: impl Fn(usize, usize) -> f64) -> Result<Self, MetricError> {
        let mut d = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let v = dist(i, j);
                d[i * n + j] = v;
                d[j * n + i] = v;
            }
        }
        let ms = Self { n, d };
        ms.validate()?;
        Ok(ms)
    }

    fn validate(&self) -> Result<(), MetricError> {
        let n = self.n;
        for i in 0..n {
            let dii = self.d[i * n + i];
            if dii != 0.0 {
                return Err(MetricError::NonzeroDiagonal { i, value: dii });
            }
            for j in (i + 1)..n {
                let dij = self.d[i * n + j];
                let dji = self.d[j * n + i];
                if !dij.is_finite() {
                    return Err(MetricError::NonFinite { i, j });
                }
                if dij < 0.0 {
                    return Err(MetricError::Negative { i, j, value: dij });
                }
                if dij != dji {
                    return Err(MetricError::Asymmetric { i, j, dij, dji });
                }
            }
        }
        let check = |i: usize, j: usize, k: usize| -> Result<(), MetricError> {
            let bound = self.d[i * n + j] + self.d[j * n + k] + TRIANGLE_TOL;
            let dik = self.d[i * n + k];
            if dik > bound {
                return Err(MetricError::Triangle { i, j, k, dik, bound });
            }
            Ok(())
        };
        if n <= EXHAUSTIVE_TRIANGLE_LIMIT {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        check(i, j, k)?;
                    }
                }
            }
        } else {
            let mut g = SplitMix64::new(n as u64);
            for _ in 0..SAMPLED_TRIPLES {
                check(g.next_index(n), g.next_index(n), g.next_index(n))?;
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn dist(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.n + j]
    }

    pub fn matrix_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|i| self.d[i * self.n..(i + 1) * self.n].to_vec())
            .collect()
    }
}

/// Points in a common ambient R^d, measured with the Euclidean metric.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointCloud {
    points: Vec<Vec<f64>>,
}

impl PointCloud {
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self, MetricError> {
        if let Some(first) = points.first() {
            let dim = first.len();
            for p in &points {
                if p.len() != dim {
                    return Err(MetricError::DimensionMismatch { a: dim, b: p.len() });
                }
            }
        }
        Ok(Self { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points.first().map_or(0, Vec::len)
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i]
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn dist(&self, i: usize, j: usize) -> f64 {
        euclidean(&self.points[i], &self.points[j])
    }

    /// Full Euclidean distance matrix as a validated metric space.
    pub fn to_metric_space(&self) -> Result<FiniteMetricSpace, MetricError> {
        FiniteMetricSpace::from_fn(self.len(), |i, j| self.dist(i, j))
    }
}

pub fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// A correspondence between index sets of two spaces: a set of pairs
/// covering every index on both sides.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Correspondence {
    pairs: Vec<(usize, usize)>,
    nx: usize,
    ny: usize,
}

impl Correspondence {
    pub fn new(mut pairs: Vec<(usize, usize)>, nx: usize, ny: usize) -> Result<Self, MetricError> {
        pairs.sort_unstable();
        pairs.dedup();
        let mut seen_x = vec![false; nx];
        let mut seen_y = vec![false; ny];
        for &(i, j) in &pairs {
            if i >= nx {
                return Err(MetricError::IndexOutOfBounds { index: i, n: nx });
            }
            if j >= ny {
                return Err(MetricError::IndexOutOfBounds { index: j, n: ny });
            }
            seen_x[i] = true;
            seen_y[j] = true;
        }
        if let Some(i) = seen_x.iter().position(|s| !s) {
            return Err(MetricError::CorrespondenceGap { side: "X", index: i });
        }
        if let Some(j) = seen_y.iter().position(|s| !s) {
            return Err(MetricError::CorrespondenceGap { side: "Y", index: j });
        }
        Ok(Self { pairs, nx, ny })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn sizes(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    /// For each X index, the lowest-index Y partner (and vice versa).
    pub fn partner_of_x(&self, i: usize) -> usize {
        self.pairs.iter().find(|&&(a, _)| a == i).map(|&(_, b)| b).unwrap()
    }

    pub fn partner_of_y(&self, j: usize) -> usize {
        self.pairs.iter().find(|&&(_, b)| b == j).map(|&(a, _)| a).unwrap()
    }
}

/// Largest pairwise distance within `subset`; 0 for singletons.
pub fn diameter(ms: &FiniteMetricSpace, subset: &[usize]) -> Result<f64, MetricError> {
    if subset.is_empty() {
        return Err(MetricError::EmptyDiameter);
    }
    let mut best = 0.0f64;
    for (a, &i) in subset.iter().enumerate() {
        if i >= ms.len() {
            return Err(MetricError::IndexOutOfBounds { index: i, n: ms.len() });
        }
        for &j in &subset[a + 1..] {
            if j >= ms.len() {
                return Err(MetricError::IndexOutOfBounds { index: j, n: ms.len() });
            }
            best = best.max(ms.dist(i, j));
        }
    }
    Ok(best)
}

fn directed_hausdorff(dist: &impl Fn(usize, usize) -> f64, na: &[usize], nb: &[usize]) -> f64 {
    let mut worst = 0.0f64;
    for &a in na {
        let mut best = f64::INFINITY;
        for &b in nb {
            best = best.min(dist(a, b));
        }
        worst = worst.max(best);
    }
    worst
}

/// Hausdorff distance max(sup_a inf_b, sup_b inf_a) between two index sets
/// of one metric space.
pub fn hausdorff_distance(
    ms: &FiniteMetricSpace,
    a: &[usize],
    b: &[usize],
) -> Result<f64, MetricError> {
    if a.is_empty() || b.is_empty() {
        return Err(MetricError::EmptyInput);
    }
    for &i in a.iter().chain(b) {
        if i >= ms.len() {
            return Err(MetricError::IndexOutOfBounds { index: i, n: ms.len() });
        }
    }
    let dist = |i: usize, j: usize| ms.dist(i, j);
    Ok(directed_hausdorff(&dist, a, b).max(directed_hausdorff(&dist, b, a)))
}

/// Hausdorff distance between two clouds in the same ambient space.
pub fn hausdorff_between_clouds(x: &PointCloud, y: &PointCloud) -> Result<f64, MetricError> {
    if x.is_empty() || y.is_empty() {
        return Err(MetricError::EmptyInput);
    }
    if x.dim() != y.dim() {
        return Err(MetricError::DimensionMismatch { a: x.dim(), b: y.dim() });
    }
    let dist = |i: usize, j: usize| euclidean(x.point(i), y.point(j));
    let ia: Vec<usize> = (0..x.len()).collect();
    let ib: Vec<usize> = (0..y.len()).collect();
    let fwd = directed_hausdorff(&dist, &ia, &ib);
    let rev = {
        let dist_rev = |j: usize, i: usize| euclidean(y.point(j), x.point(i));
        directed_hausdorff(&dist_rev, &ib, &ia)
    };
    Ok(fwd.max(rev))
}

/// sup over pairs of correspondence pairs of |d_X(x1,x2) − d_Y(y1,y2)|.
pub fn correspondence_distortion(
    c: &Correspondence,
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
) -> Result<f64, MetricError> {
    let (nx, ny) = c.sizes();
    if nx != x.len() || ny != y.len() {
        return Err(MetricError::CorrespondenceSize {
            nx,
            ny,
            mx: x.len(),
            my: y.len(),
        });
    }
    let pairs = c.pairs();
    let mut worst = 0.0f64;
    for (a, &(i1, j1)) in pairs.iter().enumerate() {
        for &(i2, j2) in &pairs[a..] {
            let gap = (x.dist(i1, i2) - y.dist(j1, j2)).abs();
            worst = worst.max(gap);
        }
    }
    Ok(worst)
}

/// Nearest-neighbor correspondence {(x, nn_Y(x))} ∪ {(nn_X(y), y)} under an
/// arbitrary cross-distance; ties broken by lowest index.
pub fn nn_correspondence_with(
    nx: usize,
    ny: usize,
    cross: impl Fn(usize, usize) -> f64,
) -> Result<Correspondence, MetricError> {
    if nx == 0 || ny == 0 {
        return Err(MetricError::EmptyInput);
    }
    let mut pairs = Vec::with_capacity(nx + ny);
    for i in 0..nx {
        let mut best = f64::INFINITY;
        let mut arg = 0;
        for j in 0..ny {
            let d = cross(i, j);
            if d < best {
                best = d;
                arg = j;
            }
        }
        pairs.push((i, arg));
    }
    for j in 0..ny {
        let mut best = f64::INFINITY;
        let mut arg = 0;
        for i in 0..nx {
            let d = cross(i, j);
            if d < best {
                best = d;
                arg = i;
            }
        }
        pairs.push((arg, j));
    }
    Correspondence::new(pairs, nx, ny)
}

/// Nearest-neighbor correspondence between two clouds in the same ambient
/// space.
pub fn nn_correspondence(x: &PointCloud, y: &PointCloud) -> Result<Correspondence, MetricError> {
    if x.dim() != y.dim() {
        return Err(MetricError::DimensionMismatch { a: x.dim(), b: y.dim() });
    }
    nn_correspondence_with(x.len(), y.len(), |i, j| euclidean(x.point(i), y.point(j)))
}

/// dist(C)/2: an upper bound for the Gromov–Hausdorff distance, per the
/// infimum-over-correspondences formula. Not the exact value.
pub fn gh_upper_bound(
    c: &Correspondence,
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
) -> Result<f64, MetricError> {
    Ok(correspondence_distortion(c, x, y)? / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn circle_dist(a: f64, b: f64) -> f64 {
        let d = (a - b).rem_euclid(2.0 * PI);
        d.min(2.0 * PI - d)
    }

    fn circle_net(n: usize) -> FiniteMetricSpace {
        let pts: Vec<f64> = (0..n).map(|i| 2.0 * PI * i as f64 / n as f64).collect();
        FiniteMetricSpace::from_fn(n, |i, j| circle_dist(pts[i], pts[j])).unwrap()
    }

    #[test]
    fn rejects_asymmetric_matrix() {
        let err = FiniteMetricSpace::from_matrix(vec![
            vec![0.0, 1.0],
            vec![2.0, 0.0],
        ])
        .unwrap_err();
        assert!(matches!(err, MetricError::Asymmetric { .. }));
    }

    #[test]
    fn rejects_triangle_violation() {
        let err = FiniteMetricSpace::from_matrix(vec![
            vec![0.0, 1.0, 5.0],
            vec![1.0, 0.0, 1.0],
            vec![5.0, 1.0, 0.0],
        ])
        .unwrap_err();
        assert!(matches!(err, MetricError::Triangle { .. }));
    }

    #[test]
    fn rejects_nonzero_diagonal_and_negative() {
        assert!(matches!(
            FiniteMetricSpace::from_matrix(vec![vec![0.5]]).unwrap_err(),
            MetricError::NonzeroDiagonal { .. }
        ));
        let err = FiniteMetricSpace::from_matrix(vec![
            vec![0.0, -1.0],
            vec![-1.0, 0.0],
        ])
        .unwrap_err();
        assert!(matches!(err, MetricError::Negative { .. }));
    }

    #[test]
    fn diameter_basics() {
        let ms = FiniteMetricSpace::from_matrix(vec![
            vec![0.0, 1.0, 1.0],
            vec![1.0, 0.0, 1.0],
            vec![1.0, 1.0, 0.0],
        ])
        .unwrap();
        assert_eq!(diameter(&ms, &[0]).unwrap(), 0.0);
        assert_eq!(diameter(&ms, &[0, 1, 2]).unwrap(), 1.0);
        assert_eq!(diameter(&ms, &[]).unwrap_err(), MetricError::EmptyDiameter);
    }

    #[test]
    fn diameter_four_equispaced_circle_points() {
        let ms = circle_net(4);
        let d = diameter(&ms, &[0, 1, 2, 3]).unwrap();
        assert!((d - PI).abs() < 1e-15);
    }

    #[test]
    fn diameter_monotone_under_inclusion() {
        let ms = circle_net(10);
        let small = diameter(&ms, &[0, 2, 4]).unwrap();
        let large = diameter(&ms, &[0, 2, 4, 7]).unwrap();
        assert!(small <= large);
    }

    #[test]
    fn hausdorff_every_other_circle_point() {
        let ms = circle_net(100);
        let all: Vec<usize> = (0..100).collect();
        let half: Vec<usize> = (0..100).step_by(2).collect();
        let d = hausdorff_distance(&ms, &all, &half).unwrap();
        assert!((d - PI / 50.0).abs() < 1e-12);
    }

    #[test]
    fn hausdorff_one_sided_gap() {
        let x = PointCloud::new(vec![vec![0.0]]).unwrap();
        let y = PointCloud::new(vec![vec![0.0], vec![1.0]]).unwrap();
        assert_eq!(hausdorff_between_clouds(&x, &y).unwrap(), 1.0);
        assert_eq!(hausdorff_between_clouds(&x, &x).unwrap(), 0.0);
    }

    #[test]
    fn distortion_two_point_line() {
        let x = FiniteMetricSpace::from_matrix(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let y = FiniteMetricSpace::from_matrix(vec![vec![0.0, 1.2], vec![1.2, 0.0]]).unwrap();
        let c = Correspondence::new(vec![(0, 0), (1, 1)], 2, 2).unwrap();
        let d = correspondence_distortion(&c, &x, &y).unwrap();
        assert!((d - 0.2).abs() < 1e-15);
        assert!((gh_upper_bound(&c, &x, &y).unwrap() - 0.1).abs() < 1e-15);
    }

    #[test]
    fn identity_correspondence_zero_distortion() {
        let ms = circle_net(12);
        let pairs: Vec<(usize, usize)> = (0..12).map(|i| (i, i)).collect();
        let c = Correspondence::new(pairs, 12, 12).unwrap();
        assert_eq!(correspondence_distortion(&c, &ms, &ms).unwrap(), 0.0);
    }

    #[test]
    fn nn_pairs_tie_and_coverage() {
        let x = PointCloud::new(vec![vec![0.0]]).unwrap();
        let y = PointCloud::new(vec![vec![-1.0], vec![2.0]]).unwrap();
        let c = nn_correspondence(&x, &y).unwrap();
        assert_eq!(c.pairs(), &[(0, 0), (0, 1)]);
    }

    #[test]
    fn correspondence_requires_coverage() {
        let err = Correspondence::new(vec![(0, 0)], 2, 1).unwrap_err();
        assert_eq!(err, MetricError::CorrespondenceGap { side: "X", index: 1 });
    }

    #[test]
    fn nn_distortion_at_most_twice_hausdorff() {
        let mut g = SplitMix64::new(5);
        for _ in 0..20 {
            let n = 5 + g.next_index(15);
            let m = 5 + g.next_index(15);
            let x = PointCloud::new(
                (0..n).map(|_| vec![g.uniform(-1.0, 1.0), g.uniform(-1.0, 1.0)]).collect(),
            )
            .unwrap();
            let y = PointCloud::new(
                (0..m).map(|_| vec![g.uniform(-1.0, 1.0), g.uniform(-1.0, 1.0)]).collect(),
            )
            .unwrap();
            let c = nn_correspondence(&x, &y).unwrap();
            let dist = correspondence_distortion(
                &c,
                &x.to_metric_space().unwrap(),
                &y.to_metric_space().unwrap(),
            )
            .unwrap();
            let dh = hausdorff_between_clouds(&x, &y).unwrap();
            assert!(
                dist <= 2.0 * dh + 1e-12,
                "distortion {dist} exceeds 2*hausdorff {dh}"
            );
        }
    }

    #[test]
    fn circle_net_vs_fine_net_gh_bound() {
        // n-point net against a 10x finer net: nn distortion <= 2 d_H <= 2 pi / n.
        let n = 20;
        let coarse: Vec<f64> = (0..n).map(|i| 2.0 * PI * i as f64 / n as f64).collect();
        let fine: Vec<f64> = (0..10 * n).map(|i| 2.0 * PI * i as f64 / (10 * n) as f64).collect();
        let x = FiniteMetricSpace::from_fn(n, |i, j| circle_dist(coarse[i], coarse[j])).unwrap();
        let y =
            FiniteMetricSpace::from_fn(10 * n, |i, j| circle_dist(fine[i], fine[j])).unwrap();
        let c = nn_correspondence_with(n, 10 * n, |i, j| circle_dist(coarse[i], fine[j])).unwrap();
        let bound = gh_upper_bound(&c, &x, &y).unwrap();
        assert!(bound <= PI / n as f64 + 1e-12);
    }
}
