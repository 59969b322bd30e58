use std::collections::{HashMap, HashSet};

use proptest::prelude::*;

use super::*;
use crate::rng::seeded;

#[test]
fn prufer_small_cases() {
    assert_eq!(
        LabeledTree::prufer_decode(&[], 2).unwrap().edges(),
        &[(0, 1)]
    );
    // Code (3) in 1-indexed labels: star at 3.
    assert_eq!(
        LabeledTree::prufer_decode(&[2], 3).unwrap().edges(),
        &[(0, 2), (1, 2)]
    );
    assert_eq!(LabeledTree::prufer_decode(&[], 1).unwrap().edges(), &[]);
    assert!(LabeledTree::prufer_decode(&[0], 2).is_err());
    assert!(LabeledTree::prufer_decode(&[3], 3).is_err());
    let path = LabeledTree::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
    assert_eq!(path.prufer_encode(), vec![1, 2]);
}

#[test]
fn prufer_is_a_bijection_on_small_n() {
    for n in 2..=5usize {
        let total = n.pow(n as u32 - 2);
        let mut trees = HashSet::new();
        for idx in 0..total {
            let mut code = Vec::new();
            let mut r = idx;
            for _ in 0..n - 2 {
                code.push(r % n);
                r /= n;
            }
            let t = LabeledTree::prufer_decode(&code, n).unwrap();
            assert_eq!(t.prufer_encode(), code);
            trees.insert(t);
        }
        assert_eq!(trees.len(), total, "n = {n}");
    }
}

#[test]
fn tree_validation() {
    assert!(LabeledTree::from_edges(3, &[(0, 1), (1, 0)]).is_err());
    assert!(LabeledTree::from_edges(3, &[(0, 1)]).is_err());
    assert!(LabeledTree::from_edges(3, &[(0, 3), (1, 2)]).is_err());
}

#[test]
fn labeled_trees_uniform_n3() {
    let mut rng = seeded(1);
    let mut counts: HashMap<Vec<(usize, usize)>, u32> = HashMap::new();
    let draws = 30_000;
    for _ in 0..draws {
        *counts
            .entry(sample_labeled_tree(3, &mut rng).unwrap().edges().to_vec())
            .or_default() += 1;
    }
    assert_eq!(counts.len(), 3);
    let sd = (draws as f64 * (1.0 / 3.0) * (2.0 / 3.0)).sqrt();
    for c in counts.values() {
        assert!(
            (*c as f64 - draws as f64 / 3.0).abs() < 4.0 * sd,
            "{counts:?}"
        );
    }
    assert_eq!(sample_labeled_tree(2, &mut rng).unwrap().edges(), &[(0, 1)]);
}

#[test]
fn projection_examples() {
    let path = LabeledTree::from_edges(2, &[(0, 1)]).unwrap();
    let p = ProjectionVector::from_lengths(&path, 0, &[0.4]).unwrap();
    assert_eq!(p.x, vec![0.0, 0.4]);
    assert_eq!(p.sorted(), vec![0.0, 0.4]);
    let star = LabeledTree::from_edges(3, &[(0, 1), (0, 2)]).unwrap();
    let p = ProjectionVector::from_lengths(&star, 0, &[0.3, 0.8]).unwrap();
    assert_eq!(p.sorted(), vec![0.0, 0.3, 0.8]);
    // Re-rooting at 2 stretches the star the other way.
    let p = ProjectionVector::from_lengths(&star, 2, &[0.3, 0.8]).unwrap();
    assert!((p.x[1] - 1.1).abs() < 1e-15);
    assert_eq!(p.order(), vec![2, 0, 1]);
    assert!(ProjectionVector::from_lengths(&star, 0, &[0.3]).is_err());
    assert!(ProjectionVector::from_lengths(&star, 0, &[0.3, 1.5]).is_err());
    assert_eq!(reversed(&[0.0, 0.3, 0.8]), vec![0.0, 0.5, 0.8]);
}

#[test]
fn two_sphere_polymers() {
    let mut rng = seeded(6);
    let mut gaps = Vec::new();
    for _ in 0..4000 {
        let p = sample_polymer_3d(2, &BetaWeights::Uniform, &mut rng).unwrap();
        p.validate().unwrap();
        assert_eq!(p.tangency_edges, vec![(0, 1)]);
        gaps.push(p.x_extent());
    }
    // The x-gap of a tangent pair is uniform on [0, 1].
    let mean = gaps.iter().sum::<f64>() / gaps.len() as f64;
    let below_quarter = gaps.iter().filter(|&&g| g < 0.25).count() as f64 / gaps.len() as f64;
    assert!((mean - 0.5).abs() < 0.015, "{mean}");
    assert!((below_quarter - 0.25).abs() < 0.03, "{below_quarter}");
}

#[test]
fn polymers_are_valid_and_rooted() {
    let mut rng = seeded(7);
    let mut roots = [0u32; 6];
    for _ in 0..600 {
        let p = sample_polymer_3d(6, &BetaWeights::Uniform, &mut rng).unwrap();
        p.validate().unwrap();
        assert_eq!(p.tree_edges(), p.tangency_edges);
        assert!(p.positions.iter().all(|q| q[0] >= 0.0));
        roots[p.root] += 1;
    }
    assert!(roots.iter().all(|&c| c > 60), "{roots:?}");
}

#[test]
fn large_polymers_respect_kissing_bound() {
    let mut rng = seeded(8);
    for _ in 0..5 {
        let p = sample_polymer_3d(60, &BetaWeights::Uniform, &mut rng).unwrap();
        p.validate().unwrap();
        assert!(p.degrees().into_iter().all(|d| d <= 12));
    }
}

#[test]
fn flat_spheroids_keep_tangency_invariants() {
    let mut m = vec![vec![1.0; 3]; 3];
    m[0][1] = 100.0;
    m[1][0] = 100.0;
    let beta = BetaWeights::PerPair(m);
    let mut rng = seeded(9);
    for _ in 0..300 {
        let p = sample_polymer_3d(3, &beta, &mut rng).unwrap();
        p.validate().unwrap();
        assert_eq!(p.tree_edges().len(), 2);
    }
    let axes = BetaWeights::PerLabelAxes(vec![1.0, 10.0, 0.1, 3.0]);
    for _ in 0..100 {
        sample_polymer_3d(4, &axes, &mut rng)
            .unwrap()
            .validate()
            .unwrap();
    }
}

#[test]
fn invalid_beta_rejected() {
    let mut rng = seeded(1);
    assert!(sample_polymer_3d(
        3,
        &BetaWeights::PerLabelAxes(vec![1.0, -1.0, 1.0]),
        &mut rng
    )
    .is_err());
    assert!(sample_polymer_3d(
        2,
        &BetaWeights::PerPair(vec![vec![1.0, 2.0], vec![3.0, 1.0]]),
        &mut rng
    )
    .is_err());
    assert!(sample_polymer_3d(0, &BetaWeights::Uniform, &mut rng).is_err());
    let p = sample_polymer_3d(1, &BetaWeights::Uniform, &mut rng).unwrap();
    assert_eq!(p.positions, vec![[0.0; 3]]);
}

proptest! {
    #[test]
    fn sorted_projection_gaps_at_most_one(n in 1usize..40, seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let b = b_vector_law(n, &mut rng).unwrap();
        prop_assert_eq!(b[0], 0.0);
        for w in b.windows(2) {
            prop_assert!(w[1] >= w[0] && w[1] - w[0] <= 1.0);
        }
    }

    #[test]
    fn prufer_round_trip(code in prop::collection::vec(0usize..9, 7)) {
        let t = LabeledTree::prufer_decode(&code, 9).unwrap();
        prop_assert_eq!(t.prufer_encode(), code);
    }
}

#[test]
fn spread_axes_give_nearly_uniform_trees() {
    use rand::Rng;

    use crate::verification::chi_square_two_sample;
    // Axes log-uniform in [0.1, 10], so beta ratios reach 10^4.
    let mut rng = seeded(11);
    let mut trees = Vec::new();
    let mut uniform = Vec::new();
    for _ in 0..20_000 {
        let axes: Vec<f64> = (0..4)
            .map(|_| 10f64.powf(2.0 * rng.random::<f64>() - 1.0))
            .collect();
        let p = sample_polymer_3d(4, &BetaWeights::PerLabelAxes(axes), &mut rng).unwrap();
        trees.push(p.tree_edges());
        uniform.push(sample_labeled_tree(4, &mut rng).unwrap().edges().to_vec());
    }
    let r = chi_square_two_sample(&trees, &uniform).unwrap();
    assert!(r.p_value > 0.01, "{r:?}");
    // Unit spheres are far from it.
    let unit: Vec<_> = (0..20_000)
        .map(|_| {
            sample_polymer_3d(4, &BetaWeights::Uniform, &mut rng)
                .unwrap()
                .tree_edges()
        })
        .collect();
    assert!(chi_square_two_sample(&unit, &uniform).unwrap().p_value < 1e-6);
}

#[test]
fn extreme_length_ratios_match_oracle() {
    use crate::invariants::interval_graph_with;
    use crate::sampler2d::sample_gpolymer;
    use crate::verification::{chi_square_two_sample, GPolymerOracle};
    let xs = [0.0, 0.3, 0.55, 0.9];
    let axes = [30.0, 0.02, 1.0, 80.0];
    let h = interval_graph_with(&xs, |i, j| 1.0 / (axes[i] * axes[j])).unwrap();
    let oracle = GPolymerOracle::new(&h).unwrap();
    let mut rng = seeded(3);
    let mut exact = Vec::new();
    while exact.len() < 20_000 {
        if let Some(p) = oracle.sample(&mut rng).unwrap() {
            exact.push(p.tree_edges());
        }
    }
    let grown: Vec<_> = (0..20_000)
        .map(|_| {
            let p = sample_gpolymer(&h, &[0, 1, 2, 3], &mut rng).unwrap();
            p.validate().unwrap();
            p.tree_edges()
        })
        .collect();
    assert!(chi_square_two_sample(&grown, &exact).unwrap().p_value > 0.01);
}
