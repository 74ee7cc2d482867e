//! Worked examples with known closed-form answers, exercised end to end.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use isofactory::factory::{self, BlockParams, FrameSpec, Partition};
use isofactory::graph::build_graph;
use isofactory::spectra::{self, RealMultiset};
use isofactory::verify;

/// Dirichlet spectrum of the loop-decorated path: {1 - cos(theta)/2}.
#[test]
fn diamond_loop_dirichlet_spectrum() {
    for theta in [0.0, PI / 2.0, PI] {
        let spec = factory::building_block_catalog(
            "diamond-loop",
            &BlockParams {
                thetas: vec![theta],
                m: None,
            },
        )
        .unwrap();
        let s = spectra::spectrum(&spec.block().virtualise(spec.v0()).unwrap()).unwrap();
        let expect = RealMultiset::from_values(vec![1.0 - theta.cos() / 2.0]);
        assert!(s.compare(&expect, 1e-12).equal, "theta={theta}");

        // full block spectrum: 1 - cos/4 ∓ sqrt(cos² + 8)/4 and 1
        let c = theta.cos();
        let full = spectra::spectrum(&spec.block().unmarked()).unwrap();
        let expect_full = RealMultiset::from_values(vec![
            1.0 - c / 4.0 - (c * c + 8.0).sqrt() / 4.0,
            1.0,
            1.0 - c / 4.0 + (c * c + 8.0).sqrt() / 4.0,
        ]);
        assert!(full.compare(&expect_full, 1e-12).equal, "theta={theta}");

        // frame member spectrum appends (a-1) Dirichlet copies
        for a in 2..=4 {
            let member = factory::frame_member(&spec, a).unwrap();
            let numeric = spectra::spectrum(&member.graph().unmarked()).unwrap();
            let theory = expect_full.union(&expect.power(a - 1));
            assert!(numeric.compare(&theory, 1e-9).equal);
        }
    }
}

/// Contracting a frame along all vertices but one: the simplified weighted
/// union carries the partition in its weights, and scaling the weights by a
/// common factor leaves the Laplacian untouched.
#[test]
fn house_block_weighted_reduction() {
    // square (1,2),(1,3),(2,4),(3,4) with an apex 0 joined to 1 and 2
    let house = build_graph(
        5,
        &[
            (0, 1, 1.0, 0.0),
            (0, 2, 1.0, 0.0),
            (1, 2, 1.0, 0.0),
            (1, 3, 1.0, 0.0),
            (2, 4, 1.0, 0.0),
            (3, 4, 1.0, 0.0),
        ],
    )
    .unwrap();
    let all: BTreeSet<usize> = (0..5).collect();
    let v1: BTreeSet<usize> = (1..5).collect(); // everything but the apex
    let spec = FrameSpec::new(house.clone(), all, v1).unwrap();
    let partition = Partition::new(vec![2, 2]).unwrap();
    let union = factory::contracted_frame_union(&spec, &partition);
    // order s(|V0|-|V1|) + |V1| = 2 + 4, independent of r
    assert_eq!(union.order(), 6);
    assert_eq!(union.graph().edge_count(), 4 * 6);

    let simplified = union.graph().simplify_to_weighted().unwrap();
    let mut weights: Vec<f64> = simplified.edges().map(|e| e.weight).collect();
    weights.sort_by(f64::total_cmp);
    // four a_i-fold joining edges (a=2) and four r-fold square edges (r=4)
    assert_eq!(weights, vec![2.0, 2.0, 2.0, 2.0, 4.0, 4.0, 4.0, 4.0]);

    // dividing all weights by the common factor r leaves the graph isolaplacian
    let rescaled_edges: Vec<_> = simplified
        .edges()
        .map(|e| (e.tail, e.head, e.weight / 4.0, 0.0))
        .collect();
    let rescaled = build_graph(simplified.order(), &rescaled_edges).unwrap();
    assert!(verify::check_isolaplacian(&simplified, &rescaled).unwrap());
    assert!(verify::check_isolaplacian(union.graph(), &simplified).unwrap());

    // spectrum keeps spec(G) and gains s-1 extra eigenvalues 1
    let numeric = spectra::spectrum(&union.graph().unmarked()).unwrap();
    let base = spectra::spectrum(&house.unmarked()).unwrap();
    let theory = base.union(&RealMultiset::from_values(vec![1.0]));
    assert!(numeric.compare(&theory, 1e-9).equal);
}

/// The kite pair: the apex degrees carry the partition (9 and 3 for 3+1,
/// 6 twice for 2+2), which is the degree-multiset certificate.
#[test]
fn kite_pair_degree_certificate() {
    let spec = factory::building_block_catalog("kite", &BlockParams::default()).unwrap();
    let a = factory::contracted_frame_union(&spec, &Partition::new(vec![3, 1]).unwrap());
    let b = factory::contracted_frame_union(&spec, &Partition::new(vec![2, 2]).unwrap());
    let deg_a = a.graph().graph().degree_multiset();
    let deg_b = b.graph().graph().degree_multiset();
    assert_eq!(deg_a.multiplicity(9), 1);
    assert_eq!(deg_a.multiplicity(3), 9);
    assert_eq!(deg_b.multiplicity(6), 2);
    assert!(verify::check_degree_distinct(
        a.graph().graph(),
        b.graph().graph()
    ));
    let iso =
        verify::check_isospectral(&a.graph().unmarked(), &b.graph().unmarked(), 1e-9).unwrap();
    assert!(iso.isospectral);

    // the motivating pair is where one member has a pendant and the other none
    let mspec = factory::building_block_catalog(
        "motivating",
        &BlockParams {
            thetas: vec![0.0],
            m: None,
        },
    )
    .unwrap();
    let ma = factory::contracted_frame_union(&mspec, &Partition::new(vec![3, 1]).unwrap());
    let mb = factory::contracted_frame_union(&mspec, &Partition::new(vec![2, 2]).unwrap());
    assert_eq!(ma.graph().graph().degree_multiset().multiplicity(1), 1);
    assert_eq!(mb.graph().graph().degree_multiset().multiplicity(1), 0);
}

/// Magnetic kite: arbitrary potential on the three co-tree edges still gives
/// a certified family (the construction never uses zero potential).
#[test]
fn magnetic_kite_family_certified() {
    let spec = factory::building_block_catalog(
        "kite",
        &BlockParams {
            thetas: vec![0.7, 2.9, 4.1],
            m: None,
        },
    )
    .unwrap();
    let report = verify::family_report(&spec, 4, 2, 1e-8).unwrap();
    assert_eq!(report.verdict, verify::Verdict::Certified);
}

/// Signless case: alpha ≡ π on every edge of the motivating block still
/// produces an isospectral, degree-distinct pair.
#[test]
fn signless_motivating_family() {
    let block = build_graph(3, &[(0, 1, 1.0, PI), (0, 1, 1.0, PI), (1, 2, 1.0, PI)]).unwrap();
    let spec = FrameSpec::new(block, BTreeSet::from([0, 2]), BTreeSet::from([0])).unwrap();
    let report = verify::family_report(&spec, 4, 2, 1e-8).unwrap();
    assert_eq!(report.verdict, verify::Verdict::Certified);
}
