use branched_core::io::{
    polymer2d_from_json, polymer2d_to_json, polymer3d_from_json, polymer3d_to_json,
};
use branched_core::render::{render_polymer_2d, render_polymer_3d, RenderOptions};
use branched_core::rng::seeded;
use branched_core::sampler2d::PolymerGrowth;
use branched_core::verification::{run_suite, Suite, SuiteOptions};
use branched_core::{
    sample_gpolymer, sample_polymer_2d, sample_polymer_3d, BetaWeights, EdgeOrder, WeightedGraph,
};

#[test]
fn sample_save_load_render_2d() {
    let mut rng = seeded(42);
    let p = sample_polymer_2d(&vec![1.0; 60], &mut rng).unwrap();
    p.validate().unwrap();
    assert_eq!(p.tree_edges().len(), 59);
    let (back, seed) = polymer2d_from_json(&polymer2d_to_json(&p, Some(42)).unwrap()).unwrap();
    assert_eq!((back, seed), (p.clone(), Some(42)));
    let svg = render_polymer_2d(&p, &RenderOptions::default());
    assert_eq!(svg.matches("<circle").count(), 60);
}

#[test]
fn same_seed_same_polymer() {
    let a = sample_polymer_3d(30, &BetaWeights::Uniform, &mut seeded(5)).unwrap();
    let b = sample_polymer_3d(30, &BetaWeights::Uniform, &mut seeded(5)).unwrap();
    assert_eq!(a, b);
    let (back, _) = polymer3d_from_json(&polymer3d_to_json(&a, None).unwrap()).unwrap();
    assert_eq!(back, a);
    assert_eq!(
        render_polymer_3d(&a, &RenderOptions::default())
            .matches("<circle")
            .count(),
        60
    );
}

#[test]
fn gpolymer_from_edge_list() {
    let g = WeightedGraph::parse_edge_list("1 2 1\n2 3 1\n3 4 1\n4 5 1\n5 1 1\n1 3 0.5\n").unwrap();
    let mu =
        branched_core::invariants::mu_safe_trees(&g, &EdgeOrder::identity(g.edge_count())).unwrap();
    assert_eq!(
        mu.value,
        branched_core::invariants::tutte_mu(&g).unwrap().value
    );
    let mut rng = seeded(8);
    for _ in 0..50 {
        sample_gpolymer(&g, &[0, 1, 2, 3, 4], &mut rng)
            .unwrap()
            .validate()
            .unwrap();
    }
}

#[test]
fn growth_can_be_stepped() {
    let mut rng = seeded(9);
    let mut growth = PolymerGrowth::disks(&[1.0, 2.0, 0.5, 1.5]).unwrap();
    let mut sizes = vec![growth.snapshot().unwrap().n()];
    while growth.step(&mut rng).unwrap() {
        sizes.push(growth.snapshot().unwrap().n());
    }
    assert_eq!(sizes, vec![1, 2, 3, 4]);
    growth.run(&mut rng).unwrap().validate().unwrap();
}

#[test]
fn quick_suites_pass() {
    for suite in [Suite::Accept3d, Suite::Types] {
        let opts = SuiteOptions {
            n: None,
            trials: Some(60_000),
            seed: 3,
            quick: true,
        };
        let out = run_suite(suite, &opts).unwrap();
        assert!(out.iter().all(|o| o.passed), "{out:#?}");
    }
}
