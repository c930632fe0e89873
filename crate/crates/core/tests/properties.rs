//! Randomized invariants across the whole library: metric axioms, Rips
//! structure, subdivision invariants, homology sanity, circumradius
//! inequalities, and scale-window consistency.

use proptest::prelude::*;
use recon_core::complex::{
    barycentric_subdivision, check_simplicial, contiguous, rips_complex, SimplicialComplex,
};
use recon_core::conditions::{arc_bound_for_chord, gh_window, h_window, ZETA_MAX};
use recon_core::homology::{betti_numbers, euler_characteristic};
use recon_core::jung::{euclidean_circumcenter, jung_j};
use recon_core::metric::{
    diameter, euclidean, gh_upper_bound, hausdorff_distance, nn_correspondence, PointCloud,
};
use recon_core::models::ManifoldModel;
use recon_core::rng::SplitMix64;

fn point_cloud(n: std::ops::Range<usize>, dim: usize) -> impl Strategy<Value = PointCloud> {
    prop::collection::vec(prop::collection::vec(-1.0f64..1.0, dim..=dim), n)
        .prop_map(|pts| PointCloud::new(pts).unwrap())
}

/// Maximal-simplex soup over at most 10 vertices.
fn small_complex() -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::collection::btree_set(0u32..10, 1..5), 1..8).prop_map(|sets| {
        let maximal: Vec<Vec<u32>> =
            sets.into_iter().map(|s| s.into_iter().collect()).collect();
        SimplicialComplex::from_maximal_simplices(maximal).unwrap()
    })
}

proptest! {
    #[test]
    fn hausdorff_is_a_pseudometric(cloud in point_cloud(3..12, 2), seed in 0u64..500) {
        let ms = cloud.to_metric_space().unwrap();
        let mut rng = SplitMix64::new(seed);
        let subset = |rng: &mut SplitMix64| -> Vec<usize> {
            let k = 1 + rng.next_index(ms.len());
            (0..k).map(|_| rng.next_index(ms.len())).collect()
        };
        let (a, b, c) = (subset(&mut rng), subset(&mut rng), subset(&mut rng));
        let dab = hausdorff_distance(&ms, &a, &b).unwrap();
        let dba = hausdorff_distance(&ms, &b, &a).unwrap();
        prop_assert!((dab - dba).abs() < 1e-12);
        prop_assert_eq!(hausdorff_distance(&ms, &a, &a).unwrap(), 0.0);
        let dbc = hausdorff_distance(&ms, &b, &c).unwrap();
        let dac = hausdorff_distance(&ms, &a, &c).unwrap();
        prop_assert!(dac <= dab + dbc + 1e-12);
    }

    #[test]
    fn nn_correspondence_distortion_bounded(
        x in point_cloud(2..10, 2),
        y in point_cloud(2..10, 2),
    ) {
        // The nearest-neighbor correspondence certifies GH distance within
        // a factor of two of the Hausdorff distance between the clouds.
        let c = nn_correspondence(&x, &y).unwrap();
        let (mx, my) = (x.to_metric_space().unwrap(), y.to_metric_space().unwrap());
        let bound = gh_upper_bound(&c, &mx, &my).unwrap();
        let dh = recon_core::metric::hausdorff_between_clouds(&x, &y).unwrap();
        prop_assert!(bound <= 2.0 * dh + 1e-12, "bound {bound} vs 2dH {}", 2.0 * dh);
    }

    #[test]
    fn rips_simplices_have_small_diameter(cloud in point_cloud(3..12, 2), beta in 0.05f64..1.5) {
        let ms = cloud.to_metric_space().unwrap();
        let k = rips_complex(&ms, beta, 3).unwrap();
        for dim in 0..=k.max_dim() {
            for s in k.simplices(dim) {
                let idx: Vec<usize> = s.iter().map(|&v| v as usize).collect();
                prop_assert!(diameter(&ms, &idx).unwrap() < beta);
            }
        }
    }

    #[test]
    fn rips_grows_with_scale(cloud in point_cloud(3..10, 2), beta in 0.05f64..1.0) {
        let ms = cloud.to_metric_space().unwrap();
        let small = rips_complex(&ms, beta, 3).unwrap();
        let large = rips_complex(&ms, beta * 1.5, 3).unwrap();
        prop_assert!(small.is_subcomplex_of(&large));
    }

    #[test]
    fn subdivision_preserves_euler_characteristic(k in small_complex()) {
        let sd = barycentric_subdivision(&k);
        prop_assert_eq!(euler_characteristic(&k), euler_characteristic(sd.complex()));
        // One subdivision vertex per base simplex.
        let total: usize = k.counts().iter().sum();
        prop_assert_eq!(sd.complex().counts()[0], total);
    }

    #[test]
    fn betti_zero_counts_components(k in small_complex()) {
        let verts: Vec<u32> = k.vertices().collect();
        let mut parent: Vec<usize> = (0..verts.len()).collect();
        fn find(parent: &mut Vec<usize>, i: usize) -> usize {
            if parent[i] != i {
                let r = find(parent, parent[i]);
                parent[i] = r;
            }
            parent[i]
        }
        for e in k.simplices(1) {
            let a = verts.binary_search(&e[0]).unwrap();
            let b = verts.binary_search(&e[1]).unwrap();
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        let components = (0..verts.len()).filter(|&i| find(&mut parent, i) == i).count();
        prop_assert_eq!(betti_numbers(&k).betti[0], components as u64);
    }

    #[test]
    fn contiguity_of_constants_is_edge_membership(k in small_complex(), u in 0u32..10, v in 0u32..10) {
        let verts: Vec<u32> = k.vertices().collect();
        let u = verts[u as usize % verts.len()];
        let v = verts[v as usize % verts.len()];
        let span = k.vertex_span();
        let cu = check_simplicial(&vec![u; span], &k, &k).unwrap();
        let cv = check_simplicial(&vec![v; span], &k, &k).unwrap();
        let forward = contiguous(&cu, &cv).unwrap().holds;
        let backward = contiguous(&cv, &cu).unwrap().holds;
        prop_assert_eq!(forward, backward);
        let mut edge = vec![u, v];
        edge.sort_unstable();
        edge.dedup();
        prop_assert_eq!(forward, k.has_simplex(&edge));
    }

    #[test]
    fn model_metrics_satisfy_the_axioms(seed in 0u64..2000) {
        let models = [
            ManifoldModel::circle(1.3).unwrap(),
            ManifoldModel::sphere2(0.8).unwrap(),
            ManifoldModel::flat_torus(2.0).unwrap(),
            ManifoldModel::embedded_torus(2.0, 0.5).unwrap(),
        ];
        for m in models {
            let pts = m.random_points(4, seed).unwrap();
            for p in &pts {
                for q in &pts {
                    let d = m.natural_distance(p, q).unwrap();
                    prop_assert!(d >= 0.0);
                    let back = m.natural_distance(q, p).unwrap();
                    prop_assert!((d - back).abs() < 1e-9);
                }
            }
            for a in &pts {
                for b in &pts {
                    for c in &pts {
                        let ab = m.natural_distance(a, b).unwrap();
                        let bc = m.natural_distance(b, c).unwrap();
                        let ac = m.natural_distance(a, c).unwrap();
                        prop_assert!(ac <= ab + bc + 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn chords_never_exceed_arcs(seed in 0u64..2000) {
        for m in [ManifoldModel::circle(1.0).unwrap(), ManifoldModel::sphere2(1.0).unwrap()] {
            let pts = m.random_points(2, seed).unwrap();
            let arc = m.geodesic_distance(&pts[0], &pts[1]).unwrap();
            let chord = euclidean(&m.embed(&pts[0]).unwrap(), &m.embed(&pts[1]).unwrap());
            prop_assert!(chord <= arc + 1e-12);
            // And the reach-based gap bound covers the difference where it
            // applies.
            if chord <= 0.5 {
                let gap = arc_bound_for_chord(chord, 1.0).unwrap();
                prop_assert!(arc <= gap + 1e-9, "arc {arc} gap bound {gap}");
            }
        }
    }

    #[test]
    fn euclidean_center_covers_all_points(seed in 0u64..500) {
        let mut rng = SplitMix64::new(seed);
        let n = 2 + rng.next_index(6);
        let pts: Vec<Vec<f64>> = (0..n).map(|_| rng.in_unit_ball(3)).collect();
        let cloud = PointCloud::new(pts.clone()).unwrap();
        let res = euclidean_circumcenter(&cloud).unwrap();
        let worst = pts
            .iter()
            .map(|p| euclidean(p, &res.center))
            .fold(0.0, f64::max);
        prop_assert!(worst <= res.radius + 1e-7);
    }

    #[test]
    fn jung_ratio_decreases_in_radius(
        kappa in prop::sample::select(vec![0.5f64, 1.0, 4.0]),
        n in prop::sample::select(vec![2u32, 3, 5]),
        t1 in 0.02f64..1.0,
        t2 in 0.02f64..1.0,
    ) {
        let max = std::f64::consts::PI / (4.0 * kappa.sqrt());
        let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        let (r1, r2) = (lo * max, hi * max);
        let ratio1 = jung_j(r1, kappa, n).unwrap() / r1;
        let ratio2 = jung_j(r2, kappa, n).unwrap() / r2;
        prop_assert!(ratio2 <= ratio1 + 1e-12);
    }

    #[test]
    fn window_membership_matches_endpoints(
        delta in 0.1f64..3.0,
        d in 0.0f64..0.2,
        zeta_frac in 0.01f64..1.0,
        beta in 0.0f64..3.0,
    ) {
        let zeta = zeta_frac * ZETA_MAX;
        let w = gh_window(delta, d, zeta).unwrap();
        let expect = !w.empty && beta > w.lower && beta < w.upper;
        prop_assert_eq!(w.contains(beta), expect);
        let w = h_window(delta, d, zeta).unwrap();
        let expect = !w.empty && beta > w.lower && beta <= w.upper;
        prop_assert_eq!(w.contains(beta), expect);
    }

    #[test]
    fn rng_ranges_hold(seed in 0u64..5000) {
        let mut rng = SplitMix64::new(seed);
        let v = rng.uniform(-2.0, 3.0);
        prop_assert!((-2.0..3.0).contains(&v));
        let i = rng.next_index(7);
        prop_assert!(i < 7);
        let b = rng.in_unit_ball(4);
        prop_assert!(b.iter().map(|x| x * x).sum::<f64>() <= 1.0);
    }
}
