//! Slow reference implementations used only to cross-check the production
//! code in tests: dense row-echelon Betti numbers, brute-force clique
//! enumeration for Rips complexes, grid-search circumradii, and a numeric
//! reach estimate for the embedded torus. Nothing here is exported without
//! the `oracles` feature.

use crate::complex::SimplicialComplex;
use crate::metric::FiniteMetricSpace;
use crate::models::ManifoldModel;
use crate::rng::SplitMix64;

/// Betti numbers over GF(2) by dense row-reduction of each boundary
/// matrix. Independent of the production column-reduction path: rows are
/// bitsets over columns and the rank comes from plain forward elimination.
pub fn betti_reference(k: &SimplicialComplex) -> Vec<u64> {
    let max_dim = k.max_dim();
    let counts = k.counts();
    let mut ranks = vec![0usize; max_dim + 2];
    for dim in 1..=max_dim {
        ranks[dim] = dense_rank(boundary_rows(k, dim), counts[dim]);
    }
    (0..=max_dim)
        .map(|i| (counts[i] - ranks[i] - ranks[i + 1]) as u64)
        .collect()
}

/// Boundary matrix of dimension `dim` as row bitsets: one row per
/// (dim−1)-simplex, one column per dim-simplex.
fn boundary_rows(k: &SimplicialComplex, dim: usize) -> Vec<Vec<u64>> {
    let faces = k.simplices(dim - 1);
    let cells = k.simplices(dim);
    let words = cells.len().div_ceil(64);
    let mut rows = vec![vec![0u64; words]; faces.len()];
    let mut face = Vec::with_capacity(dim);
    for (col, cell) in cells.iter().enumerate() {
        for drop in 0..cell.len() {
            face.clear();
            face.extend(cell.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &v)| v));
            let row = faces.binary_search(&face).expect("closure invariant");
            rows[row][col / 64] ^= 1 << (col % 64);
        }
    }
    rows
}

fn dense_rank(mut rows: Vec<Vec<u64>>, ncols: usize) -> usize {
    let mut rank = 0;
    for col in 0..ncols {
        let (w, b) = (col / 64, 1u64 << (col % 64));
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][w] & b != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[w] & b != 0 {
                for (dst, src) in row.iter_mut().zip(&pivot_row) {
                    *dst ^= src;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// All simplices of the Rips complex at scale `beta` (strict) up to
/// `max_dim`, by direct enumeration of vertex subsets. Exponential in the
/// point count; meant for small inputs.
pub fn rips_reference(ms: &FiniteMetricSpace, beta: f64, max_dim: usize) -> Vec<Vec<Vec<u32>>> {
    let n = ms.len();
    let mut out: Vec<Vec<Vec<u32>>> = vec![Vec::new(); max_dim + 1];
    let mut stack: Vec<u32> = Vec::new();
    fn grow(
        ms: &FiniteMetricSpace,
        beta: f64,
        max_dim: usize,
        n: usize,
        stack: &mut Vec<u32>,
        out: &mut Vec<Vec<Vec<u32>>>,
    ) {
        if !stack.is_empty() {
            out[stack.len() - 1].push(stack.clone());
        }
        if stack.len() == max_dim + 1 {
            return;
        }
        let start = stack.last().map_or(0, |&v| v as usize + 1);
        for next in start..n {
            if stack.iter().all(|&v| ms.dist(v as usize, next) < beta) {
                stack.push(next as u32);
                grow(ms, beta, max_dim, n, stack, out);
                stack.pop();
            }
        }
    }
    grow(ms, beta, max_dim, n, &mut stack, &mut out);
    while out.last().is_some_and(Vec::is_empty) {
        out.pop();
    }
    out
}

/// A random small complex for differential testing: up to `max_vertices`
/// vertices and a handful of random maximal simplices.
pub fn random_complex(seed: u64, max_vertices: u32) -> SimplicialComplex {
    let mut rng = SplitMix64::new(seed);
    let n = 3 + (rng.next_u64() % (max_vertices as u64 - 2)) as u32;
    let m = 1 + (rng.next_u64() % 6) as usize;
    let mut maximal = Vec::with_capacity(m);
    for _ in 0..m {
        let size = 1 + (rng.next_u64() % 4.min(n as u64)) as usize;
        let mut verts: Vec<u32> = Vec::with_capacity(size);
        while verts.len() < size {
            let v = (rng.next_u64() % n as u64) as u32;
            if !verts.contains(&v) {
                verts.push(v);
            }
        }
        maximal.push(verts);
    }
    SimplicialComplex::from_maximal_simplices(maximal).expect("nonempty by construction")
}

/// Smallest enclosing geodesic radius of `points` by chart-domain grid
/// search with three zoom rounds. Resolution is per axis of the coarse
/// pass.
pub fn circumradius_reference(
    model: &ManifoldModel,
    points: &[Vec<f64>],
    resolution: usize,
) -> f64 {
    let spans: Vec<(f64, f64)> = match model {
        ManifoldModel::Circle { .. } => vec![(0.0, 2.0 * std::f64::consts::PI)],
        ManifoldModel::Sphere2 { .. } => vec![
            (0.0, std::f64::consts::PI),
            (0.0, 2.0 * std::f64::consts::PI),
        ],
        ManifoldModel::FlatTorus { side } => vec![(0.0, *side), (0.0, *side)],
        ManifoldModel::EmbeddedTorus { .. } => {
            vec![(0.0, 2.0 * std::f64::consts::PI), (0.0, 2.0 * std::f64::consts::PI)]
        }
    };
    let eval = |candidate: &[f64]| -> f64 {
        points
            .iter()
            .map(|p| model.geodesic_distance(candidate, p).expect("chart point"))
            .fold(0.0, f64::max)
    };
    let mut centers: Vec<(f64, f64)> = spans.clone();
    let mut best = (f64::INFINITY, vec![0.0; spans.len()]);
    for round in 0..4 {
        let steps = if round == 0 { resolution } else { 24 };
        let mut candidate = vec![0.0; spans.len()];
        grid_scan(&centers, steps, &mut candidate, 0, &eval, &mut best);
        let shrink: Vec<(f64, f64)> = centers
            .iter()
            .zip(&best.1)
            .map(|(&(lo, hi), &c)| {
                let w = (hi - lo) / steps as f64 * 2.0;
                (c - w, c + w)
            })
            .collect();
        centers = shrink;
    }
    best.0
}

fn grid_scan(
    spans: &[(f64, f64)],
    steps: usize,
    candidate: &mut Vec<f64>,
    axis: usize,
    eval: &impl Fn(&[f64]) -> f64,
    best: &mut (f64, Vec<f64>),
) {
    if axis == spans.len() {
        let v = eval(candidate);
        if v < best.0 {
            *best = (v, candidate.clone());
        }
        return;
    }
    let (lo, hi) = spans[axis];
    for i in 0..=steps {
        candidate[axis] = lo + (hi - lo) * i as f64 / steps as f64;
        grid_scan(spans, steps, candidate, axis + 1, eval, best);
    }
}

/// Numeric reach estimate for the embedded torus: the infimum over sampled
/// point pairs of ‖q−p‖² / (2·dist(q−p, T_p)), which converges to the
/// reach from above as sampling densifies.
pub fn reach_scan_embedded_torus(major: f64, minor: f64, samples: usize, seed: u64) -> f64 {
    let model = ManifoldModel::embedded_torus(major, minor).expect("valid radii");
    let pts = model.random_points(samples, seed).expect("sampling");
    let embedded: Vec<Vec<f64>> = pts.iter().map(|p| model.embed(p).expect("chart")).collect();
    let normals: Vec<[f64; 3]> = pts
        .iter()
        .map(|p| {
            let (u, v) = (p[0], p[1]);
            [u.cos() * v.cos(), u.sin() * v.cos(), v.sin()]
        })
        .collect();
    let mut inf = f64::INFINITY;
    for i in 0..embedded.len() {
        for j in 0..embedded.len() {
            if i == j {
                continue;
            }
            let d: Vec<f64> = embedded[j].iter().zip(&embedded[i]).map(|(a, b)| a - b).collect();
            let norm2: f64 = d.iter().map(|x| x * x).sum();
            let perp = (d[0] * normals[i][0] + d[1] * normals[i][1] + d[2] * normals[i][2]).abs();
            if perp > 1e-12 {
                inf = inf.min(norm2 / (2.0 * perp));
            }
        }
    }
    inf
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::betti_numbers;
    use crate::metric::PointCloud;

    #[test]
    fn dense_betti_matches_octahedron() {
        let faces = vec![
            vec![0, 2, 4],
            vec![0, 2, 5],
            vec![0, 3, 4],
            vec![0, 3, 5],
            vec![1, 2, 4],
            vec![1, 2, 5],
            vec![1, 3, 4],
            vec![1, 3, 5],
        ];
        let k = SimplicialComplex::from_maximal_simplices(faces).unwrap();
        assert_eq!(betti_reference(&k), vec![1, 0, 1]);
        assert_eq!(betti_reference(&k), betti_numbers(&k).betti);
    }

    #[test]
    fn dense_betti_matches_reduction_on_random_complexes() {
        for seed in 0..40 {
            let k = random_complex(seed, 8);
            let fast = betti_numbers(&k);
            assert_eq!(fast.betti, betti_reference(&k), "seed {seed}: {k:?}");
            assert!(fast.exact.iter().all(|&e| e));
        }
    }

    #[test]
    fn brute_force_rips_matches_expansion() {
        let mut rng = SplitMix64::new(99);
        for trial in 0..10 {
            let pts: Vec<Vec<f64>> =
                (0..9).map(|_| vec![rng.next_f64(), rng.next_f64()]).collect();
            let ms = PointCloud::new(pts).unwrap().to_metric_space().unwrap();
            let beta = 0.3 + 0.1 * trial as f64 / 10.0;
            let k = crate::complex::rips_complex(&ms, beta, 3).unwrap();
            let reference = rips_reference(&ms, beta, 3);
            let built: Vec<Vec<Vec<u32>>> =
                (0..=k.max_dim()).map(|d| k.simplices(d).to_vec()).collect();
            assert_eq!(built, reference, "trial {trial}");
        }
    }

    #[test]
    fn grid_circumradius_matches_exact_centers() {
        let circle = ManifoldModel::circle(1.0).unwrap();
        let pts = vec![vec![0.0], vec![1.0], vec![0.3]];
        let exact = crate::jung::geodesic_circumcenter(&circle, &pts).unwrap();
        let grid = circumradius_reference(&circle, &pts, 720);
        assert!((grid - exact.radius).abs() < 1e-3, "grid {grid} exact {}", exact.radius);

        let sphere = ManifoldModel::sphere2(1.0).unwrap();
        let pts = vec![
            vec![std::f64::consts::FRAC_PI_2, 0.0],
            vec![std::f64::consts::FRAC_PI_2, 1.0],
            vec![1.0, 0.5],
        ];
        let exact = crate::jung::geodesic_circumcenter(&sphere, &pts).unwrap();
        let grid = circumradius_reference(&sphere, &pts, 180);
        assert!((grid - exact.radius).abs() < 1e-3, "grid {grid} exact {}", exact.radius);
    }

    #[test]
    fn reach_scan_sees_both_regimes() {
        // Tube-dominated: reach = minor radius.
        let est = reach_scan_embedded_torus(2.0, 0.5, 400, 11);
        assert!((est - 0.5).abs() < 0.02, "estimate {est}");
        // Hole-dominated: reach = major − minor.
        let est = reach_scan_embedded_torus(2.0, 1.3, 400, 11);
        assert!((est - 0.7).abs() < 0.05, "estimate {est}");
    }
}
