use std::str::FromStr;

use proptest::prelude::*;
use rand::Rng;

use super::suites::{connected_graphs, ks_limit, run_suite};
use super::*;
use crate::graph::WeightedGraph;
use crate::rng::seeded;

#[test]
fn trial_report_fields() {
    let r = TrialReport::new("x", 100, 25, Some(0.25));
    assert_eq!(r.estimate, 0.25);
    assert!((r.stderr - (0.25f64 * 0.75 / 100.0).sqrt()).abs() < 1e-15);
    assert_eq!(r.z_score, Some(0.0));
    assert!(r.passes(3.0));
    let off = TrialReport::new("x", 10_000, 3000, Some(0.25));
    assert!(!off.passes(3.0));
    // All successes against a target of 1 is exact, not infinitely far.
    assert_eq!(TrialReport::new("x", 50, 50, Some(1.0)).z_score, Some(0.0));
    assert!(!TrialReport::new("x", 50, 50, Some(0.5)).passes(3.0));
    assert!(TrialReport::new("x", 10, 3, None).passes(0.0));
    assert!(r.merge(&TrialReport::new("y", 1, 1, Some(0.5))).is_err());
    let json = serde_json::to_string(&r).unwrap();
    assert_eq!(serde_json::from_str::<TrialReport>(&json).unwrap(), r);
}

#[test]
fn ks_basics() {
    let a: Vec<f64> = (0..100).map(|i| i as f64).collect();
    let r = ks_two_sample(&a, &a).unwrap();
    assert_eq!(r.statistic, 0.0);
    assert_eq!(r.p_value, 1.0);
    assert!(ks_two_sample(&[], &a).is_err());
    let mut rng = seeded(3);
    let u: Vec<f64> = (0..100_000).map(|_| rng.random::<f64>()).collect();
    let v: Vec<f64> = (0..100_000).map(|_| 2.0 * rng.random::<f64>()).collect();
    let r = ks_two_sample(&u, &v).unwrap();
    assert!(r.statistic >= 0.49, "{r:?}");
    assert!(r.p_value < 1e-10);
    // Disjoint samples are at distance 1.
    assert_eq!(
        ks_two_sample(&[0.0, 1.0], &[2.0, 3.0]).unwrap().statistic,
        1.0
    );
}

#[test]
fn ks_calibration_on_uniforms() {
    let passing = (0..100u64)
        .filter(|&s| {
            let mut rng = seeded(1000 + s);
            let a: Vec<f64> = (0..100_000).map(|_| rng.random::<f64>()).collect();
            let b: Vec<f64> = (0..100_000).map(|_| rng.random::<f64>()).collect();
            ks_two_sample(&a, &b).unwrap().p_value > 0.01
        })
        .count();
    assert!(passing >= 98, "{passing}");
}

#[test]
fn chi_square_basics() {
    let a = vec![0, 0, 1, 1, 2, 2];
    let r = chi_square_two_sample(&a, &a).unwrap();
    assert_eq!(r.statistic, 0.0);
    assert_eq!(r.dof, 2);
    assert!((r.p_value - 1.0).abs() < 1e-12);
    let b: Vec<u8> = (0..1000).map(|i| (i % 2) as u8).collect();
    let c: Vec<u8> = (0..1000).map(|i| u8::from(i % 4 == 0)).collect();
    assert!(chi_square_two_sample(&b, &c).unwrap().p_value < 1e-6);
    assert_eq!(chi_square_two_sample(&[1], &[1, 1]).unwrap().p_value, 1.0);
    assert!(chi_square_two_sample::<u8>(&[], &[1]).is_err());
}

#[test]
fn log_log_slopes() {
    let xs = [50.0, 100.0, 200.0, 400.0];
    let ys: Vec<f64> = xs.iter().map(|x: &f64| 3.0 * x.sqrt()).collect();
    assert!((log_log_slope(&xs, &ys).unwrap() - 0.5).abs() < 1e-12);
    assert_eq!(log_log_slope(&xs, &[2.0; 4]).unwrap(), 0.0);
    assert!(log_log_slope(&[1.0, 1.0], &[1.0, 2.0]).is_err());
    assert!(log_log_slope(&[1.0], &[1.0]).is_err());
    assert!(log_log_slope(&[1.0, 2.0], &[0.0, 1.0]).is_err());
    assert!(diameter_scaling(&[10, 5], 10, DiameterSource::BVector, 1).is_err());
}

#[test]
fn walk_probabilities() {
    assert!((walk_return_exact(2).unwrap() - 1.0 / 3.0).abs() < 1e-15);
    assert_eq!(walk_return_exact(3), None);
    for n in [2, 3, 6] {
        let r = walk_return_probability(n, 200_000, 5).unwrap();
        assert!(r.passes(4.0), "{r:?}");
    }
    assert!(walk_return_probability(1, 10, 5).is_err());
}

#[test]
fn trivial_acceptances() {
    assert_eq!(acceptance_2d(&[1.0, 2.0], 1000, 1).unwrap().successes, 1000);
    assert_eq!(acceptance_3d(2, 1000, 1).unwrap().successes, 1000);
    let path = WeightedGraph::path(5, 1.0);
    assert_eq!(
        acceptance_gpolymer(&path, "P5", 1000, 1).unwrap().successes,
        1000
    );
}

#[test]
fn acceptance_rates_match_volumes() {
    let reports = [
        acceptance_2d(&[1.0; 3], 200_000, 11).unwrap(),
        acceptance_2d(&[0.2, 1.0, 3.0, 0.5], 200_000, 12).unwrap(),
        acceptance_gpolymer(&WeightedGraph::cycle(4, 1.0), "C4", 200_000, 13).unwrap(),
        acceptance_gpolymer(&WeightedGraph::complete(3, 1.0), "K3", 200_000, 14).unwrap(),
        acceptance_3d(3, 200_000, 15).unwrap(),
        acceptance_3d(4, 200_000, 16).unwrap(),
    ];
    let targets = [2.0 / 3.0, 0.375, 0.75, 2.0 / 3.0, 0.75, 0.5];
    for (r, t) in reports.iter().zip(targets) {
        assert!((r.target.unwrap() - t).abs() < 1e-15);
        assert!(r.passes(4.0), "{r:?}");
    }
}

#[test]
fn oracle_samples_are_polymers() {
    let mut rng = seeded(4);
    let mut accepted = 0;
    for _ in 0..2000 {
        if let Some(p) = rejection_sample_2d(&[1.0, 0.5, 2.0, 1.0], &mut rng).unwrap() {
            p.validate().unwrap();
            assert_eq!(p.tangency_edges, p.tree_edges());
            accepted += 1;
        }
        if let Some(p) = rejection_sample_3d(4, &mut rng).unwrap() {
            p.validate().unwrap();
        }
    }
    assert!(accepted > 500);
    let g = WeightedGraph::cycle(5, 1.5);
    let oracle = GPolymerOracle::new(&g).unwrap();
    assert_eq!(oracle.spanning_tree_count(), 5);
    for _ in 0..500 {
        if let Some(p) = oracle.sample(&mut rng).unwrap() {
            p.validate().unwrap();
        }
    }
    assert!(rejection_sample_2d(&[], &mut rng).is_err());
    assert!(rejection_sample_2d(&[1.0, -1.0], &mut rng).is_err());
    assert!(rejection_sample_3d(0, &mut rng).is_err());
    let mut split = WeightedGraph::new(3);
    split.add_edge(0, 1, 1.0).unwrap();
    assert!(rejection_sample_gpolymer(&split, &mut rng).is_err());
}

#[test]
fn parallel_batches_ignore_thread_count() {
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| {
                let (v, attempts) = collect_parallel(40_000, 9, |rng| {
                    Ok(Some(rng.random::<u32>()).filter(|x| x % 3 != 0))
                })
                .unwrap();
                (
                    v,
                    attempts,
                    count_parallel(50_000, 9, |rng| Ok(rng.random::<bool>())).unwrap(),
                )
            })
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn exactness_with_unequal_radii() {
    for radii in [vec![1.0, 0.3, 0.09], vec![1.0, 0.5, 2.0, 0.7]] {
        let c = compare_2d_with_oracle(&radii, 20_000, 31).unwrap();
        assert!(c.topology.p_value > 1e-3, "{c:?}");
        assert!(
            c.functional.statistic < ks_limit(KS_THRESHOLD, c.samples),
            "{c:?}"
        );
    }
}

#[test]
fn tiny_radius_sampler_matches_oracle() {
    let radii: Vec<f64> = (0..5).map(|i| 1e-3f64.powi(i)).collect();
    let s = inductive_fraction_sampler(&radii, 10_000, 2).unwrap();
    let o = inductive_fraction_oracle(&radii, 10_000, 2).unwrap();
    let se = (s.stderr.powi(2) + o.stderr.powi(2)).sqrt();
    assert!((s.estimate - o.estimate).abs() < 4.0 * se, "{s:?} {o:?}");
}

#[test]
fn type_volume_examples() {
    let r = type_volume_check(&[0.0, 0.2, 0.5, 0.9], 50_000, 3).unwrap();
    assert_eq!((r.gamma_product, r.mu_safe_trees), (6, 6));
    assert!(r.passes(4.0), "{r:?}");
    let r = type_volume_check(&[0.0, 0.7, 1.4, 2.1], 10_000, 3).unwrap();
    assert_eq!((r.gamma_product, r.mu_safe_trees), (1, 1));
    assert_eq!(r.monte_carlo.unwrap().successes, 10_000);
    let r = type_volume_check(&[0.0, 0.5, 1.2, 1.4], 0, 3).unwrap();
    assert_eq!((r.gamma_product, r.mu_safe_trees), (2, 2));
    assert!(r.monte_carlo.is_none());
    assert!(matches!(
        type_volume_check(&[0.0, 1.5], 0, 3),
        Err(crate::Error::Disconnected)
    ));
}

#[test]
fn functionals() {
    use crate::geometry::Vec2;
    let pts = [Vec2::ZERO, Vec2::new(1.0, 0.0), Vec2::new(0.0, -2.0)];
    assert!((edge_angle_functional(&pts) - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    assert!(is_label_increasing(&[None, Some(0), Some(0), Some(1)]));
    assert!(!is_label_increasing(&[None, Some(2), Some(0)]));
}

#[test]
fn suites_parse_and_run() {
    for name in suites::Suite::NAMES {
        assert_eq!(Suite::from_str(name).unwrap().name(), name);
    }
    assert!(Suite::from_str("nope").is_err());
    let out = run_suite(Suite::Invariants, &SuiteOptions::default()).unwrap();
    assert!(out.iter().all(|o| o.passed), "{out:#?}");
    let opts = SuiteOptions {
        n: Some(3),
        trials: Some(50_000),
        seed: 4,
        quick: true,
    };
    let out = run_suite(Suite::Accept2d, &opts).unwrap();
    assert_eq!(out.len(), 1);
    assert_eq!(connected_graphs(3).len(), 4);
    assert_eq!(connected_graphs(4).len(), 38);
}

proptest! {
    #[test]
    fn report_merge_pools_counts(a in 1u64..1000, b in 1u64..1000, fa in 0.0f64..=1.0, fb in 0.0f64..=1.0) {
        let (sa, sb) = ((a as f64 * fa) as u64, (b as f64 * fb) as u64);
        let ra = TrialReport::new("x", a, sa, Some(0.5));
        let rb = TrialReport::new("x", b, sb, Some(0.5));
        let m = ra.merge(&rb).unwrap();
        prop_assert_eq!(&m, &rb.merge(&ra).unwrap());
        prop_assert_eq!(m.trials, a + b);
        prop_assert_eq!(m.estimate, (sa + sb) as f64 / (a + b) as f64);
        let p = m.estimate;
        prop_assert!((m.stderr - (p * (1.0 - p) / m.trials as f64).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn oracle_gpolymers_respect_bounds(seed in any::<u64>(), len in 0.5f64..2.0) {
        let mut g = WeightedGraph::cycle(4, 1.0);
        g.add_edge(0, 2, len).unwrap();
        let mut rng = seeded(seed);
        if let Some(p) = rejection_sample_gpolymer(&g, &mut rng).unwrap() {
            prop_assert!(p.validate().is_ok());
        }
    }
}
