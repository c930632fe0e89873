//! Integration checks for the contiguity chain on dense instances: the
//! Hausdorff variant end to end on the circle, and the return-map half of
//! the chain on a sphere net too coarse for the full margin rule.

use recon_core::complex::{check_simplicial, rips_complex_bounded};
use recon_core::conditions::{verify_contiguity_chain, ChainVariant, VerifierReport};
use recon_core::metric::nn_correspondence_with;
use recon_core::models::{ManifoldModel, SampleSpec};

fn margins_clear(rep: &VerifierReport) -> bool {
    rep.holds
        && rep.inequalities.iter().all(|item| item.pass && item.margin >= rep.required_margin)
        && rep.structure.iter().all(|item| item.pass)
}

#[test]
fn hausdorff_chain_verifies_on_a_dense_circle_instance() {
    let m = ManifoldModel::circle(1.0).unwrap();
    let zeta = 1.0 / 15.0;
    let beta = 0.2;
    let net = m.reference_net(zeta * beta / 10.0).unwrap();
    assert!(net.points.len() <= 5000, "net size {}", net.points.len());

    let sample = m.sample(SampleSpec::Grid { n: 500 }).unwrap();
    let s = m.metric_space_of(&sample.points).unwrap();
    let c = nn_correspondence_with(net.points.len(), s.len(), |i, j| {
        m.geodesic_distance(&net.points[i], &sample.points[j]).unwrap()
    })
    .unwrap();

    let rep = verify_contiguity_chain(&net, &s, &c, beta, zeta, ChainVariant::Hausdorff).unwrap();
    assert!(margins_clear(&rep), "{rep:?}");
    assert!(
        rep.inequalities.iter().any(|i| i.name == "return_edge_lengths"),
        "missing the return-scale inequality: {rep:?}"
    );
}

#[test]
fn sphere_return_map_lands_in_the_net_complex() {
    // A sphere net fine enough for the full margin rule would exceed the
    // net point cap, so this checks the return half of the chain alone:
    // nearest-net-point vertex images must define a simplicial map from
    // the sample complex at scale beta into the net complex at the
    // Hausdorff return scale (4/3)(1 - 2 zeta) beta.
    let m = ManifoldModel::sphere2(1.0).unwrap();
    let zeta = 0.06;
    let beta = 1.0;
    let net = m.reference_net(0.05).unwrap();
    assert!(net.points.len() <= 5000, "net size {}", net.points.len());
    assert!(net.fineness <= 0.05);

    let sample = m.sample(SampleSpec::Random { n: 400, seed: 7 }).unwrap();
    let s = m.metric_space_of(&sample.points).unwrap();

    let psi: Vec<u32> = sample
        .points
        .iter()
        .map(|p| {
            let mut best = (f64::INFINITY, 0u32);
            for (i, q) in net.points.iter().enumerate() {
                let d = m.geodesic_distance(p, q).unwrap();
                if d < best.0 {
                    best = (d, i as u32);
                }
            }
            // Every sample point must sit within one net mesh of its image.
            assert!(best.0 <= net.fineness, "gap {} at a sample point", best.0);
            best.1
        })
        .collect();

    let budget = 50_000_000;
    let source = rips_complex_bounded(&s, beta, 1, budget).unwrap();
    let return_scale = 4.0 / 3.0 * (1.0 - 2.0 * zeta) * beta;
    let target = rips_complex_bounded(&net.metric, return_scale, 1, budget).unwrap();
    assert!(source.counts()[1] > 0, "sample complex has no edges");

    let map = check_simplicial(&psi, &source, &target).expect("return map is simplicial");
    assert_eq!(map.source().counts()[0], 400);
}
