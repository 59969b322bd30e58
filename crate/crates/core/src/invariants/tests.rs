use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::graph::WeightedGraph;
use crate::rng::seeded;
use crate::sampler3d::b_vector_law;
use proptest::prelude::*;

fn all_three(g: &WeightedGraph) -> (u64, u64, u64) {
    let s = mu_safe_trees(g, &EdgeOrder::identity(g.edge_count()))
        .unwrap()
        .value;
    let h = mu_subgraph_sum(g).unwrap().value;
    let t = tutte_mu(g).unwrap().value;
    (s, h, t)
}

fn two_triangles_sharing_vertex() -> WeightedGraph {
    let mut g = WeightedGraph::new(5);
    for (a, b) in [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)] {
        g.add_edge(a, b, 1.0).unwrap();
    }
    g
}

/// Stirling numbers of the second kind, S(n, k).
fn stirling2(n: usize, k: usize) -> u64 {
    let mut s = vec![vec![0u64; k + 1]; n + 1];
    s[0][0] = 1;
    for i in 1..=n {
        for j in 1..=k.min(i) {
            s[i][j] = j as u64 * s[i - 1][j] + s[i - 1][j - 1];
        }
    }
    s[n][k]
}

/// Independent closed form for mu(K_{m,n}): expanding
/// log(1 - (1 - e^{-x})(1 - e^{-y})) gives sum_k k!(k-1)! S(m,k) S(n,k).
fn bipartite_closed_form(m: usize, n: usize) -> u64 {
    let fact = |k: usize| (1..=k as u64).product::<u64>();
    (1..=m.min(n))
        .map(|k| fact(k) * fact(k - 1) * stirling2(m, k) * stirling2(n, k))
        .sum()
}

#[test]
fn tree_graphs_have_mu_one() {
    let g = WeightedGraph::path(5, 1.0);
    assert_eq!(all_three(&g), (1, 1, 1));
    let mut star = WeightedGraph::new(4);
    for v in 1..4 {
        star.add_edge(0, v, 1.0).unwrap();
    }
    assert_eq!(all_three(&star), (1, 1, 1));
    let k2 = WeightedGraph::complete(2, 1.0);
    assert_eq!(mu_subgraph_sum(&k2).unwrap().value, 1);
}

#[test]
fn small_named_graphs() {
    assert_eq!(all_three(&WeightedGraph::cycle(4, 1.0)), (3, 3, 3));
    assert_eq!(all_three(&WeightedGraph::complete(4, 1.0)), (6, 6, 6));
    assert_eq!(all_three(&WeightedGraph::complete(3, 1.0)), (2, 2, 2));
    assert_eq!(tutte_mu(&WeightedGraph::cycle(5, 1.0)).unwrap().value, 4);
    assert_eq!(all_three(&two_triangles_sharing_vertex()), (4, 4, 4));
}

#[test]
fn subgraph_sum_signs() {
    // K_3: three 2-edge trees (+1 each) and the triangle (-1).
    let k3 = mu_subgraph_sum(&WeightedGraph::complete(3, 1.0)).unwrap();
    assert_eq!(k3.signed_sum, 2);
    // C_4: four 3-edge trees (-1 each) and the 4-cycle (+1).
    let c4 = mu_subgraph_sum(&WeightedGraph::cycle(4, 1.0)).unwrap();
    assert_eq!(c4.signed_sum, -3);
    assert_eq!(c4.value, 3);
    for n in 2..=6 {
        let v = mu_subgraph_sum(&WeightedGraph::complete(n, 1.0)).unwrap();
        let fact: i64 = (1..n as i64).product();
        let sign = if (n - 1) % 2 == 0 { 1 } else { -1 };
        assert_eq!(v.signed_sum, sign * fact, "K_{n}");
    }
}

#[test]
fn complete_graphs_and_cycles() {
    let mut fact = 1u64;
    for n in 2..=7 {
        let g = WeightedGraph::complete(n, 1.0);
        assert_eq!(
            mu_safe_trees(&g, &EdgeOrder::identity(g.edge_count()))
                .unwrap()
                .value,
            fact
        );
        assert_eq!(tutte_mu(&g).unwrap().value, fact);
        fact *= n as u64;
    }
    for m in 3..=10 {
        let g = WeightedGraph::cycle(m, 1.0);
        assert_eq!(
            mu_safe_trees(&g, &EdgeOrder::identity(m)).unwrap().value,
            m as u64 - 1
        );
        assert_eq!(tutte_mu(&g).unwrap().value, m as u64 - 1);
    }
}

#[test]
fn safe_tree_count_independent_of_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for g in [
        WeightedGraph::complete(5, 1.0),
        two_triangles_sharing_vertex(),
        WeightedGraph::complete_bipartite(2, 3, 1.0),
    ] {
        let base = mu_safe_trees(&g, &EdgeOrder::identity(g.edge_count()))
            .unwrap()
            .value;
        for _ in 0..10 {
            let order = EdgeOrder::shuffled(g.edge_count(), &mut rng);
            assert_eq!(mu_safe_trees(&g, &order).unwrap().value, base);
        }
    }
}

#[test]
fn disconnected_graph_errors() {
    let mut g = WeightedGraph::new(4);
    g.add_edge(0, 1, 1.0).unwrap();
    g.add_edge(2, 3, 1.0).unwrap();
    assert!(matches!(
        mu_safe_trees(&g, &EdgeOrder::identity(2)),
        Err(crate::Error::Disconnected)
    ));
    assert!(matches!(
        mu_subgraph_sum(&g),
        Err(crate::Error::Disconnected)
    ));
    assert!(matches!(tutte_mu(&g), Err(crate::Error::Disconnected)));
}

#[test]
fn subgraph_sum_capacity() {
    let g = WeightedGraph::complete(8, 1.0); // 28 edges
    assert!(matches!(
        mu_subgraph_sum(&g),
        Err(crate::Error::Capacity(_))
    ));
}

#[test]
fn edge_order_validation() {
    assert!(EdgeOrder::from_ids(vec![2, 0, 1]).is_ok());
    assert!(EdgeOrder::from_ids(vec![0, 0, 1]).is_err());
    assert!(EdgeOrder::from_ids(vec![0, 3]).is_err());
    assert_eq!(
        EdgeOrder::from_ids(vec![2, 0, 1]).unwrap().ranks(),
        vec![1, 2, 0]
    );
}

#[test]
fn bipartite_series_values() {
    assert_eq!(mu_bipartite(1, 1).unwrap(), 1);
    assert_eq!(mu_bipartite(2, 2).unwrap(), 3);
    assert_eq!(mu_bipartite(2, 1).unwrap(), 1);
    for m in 1..=6 {
        for n in 1..=6 {
            assert_eq!(
                mu_bipartite(m, n).unwrap(),
                bipartite_closed_form(m, n),
                "K_{m},{n}"
            );
        }
    }
}

#[test]
fn bipartite_matches_safe_trees() {
    for m in 1..=4 {
        for n in 1..=(8 - m).min(4) {
            let g = WeightedGraph::complete_bipartite(m, n, 1.0);
            let trees = mu_safe_trees(&g, &EdgeOrder::identity(g.edge_count()))
                .unwrap()
                .value;
            assert_eq!(mu_bipartite(m, n).unwrap(), trees, "K_{m},{n}");
        }
    }
}

#[test]
fn kpartite_values() {
    assert_eq!(mu_kpartite(&[1, 1]).unwrap(), 1);
    assert_eq!(mu_kpartite(&[2, 2]).unwrap(), 3);
    assert_eq!(mu_kpartite(&[1, 1, 1]).unwrap(), 2);
    // All-singleton parts give K_n.
    assert_eq!(mu_kpartite(&[1; 6]).unwrap(), 120);
    for (m, n) in [(3, 4), (5, 2), (4, 4)] {
        assert_eq!(mu_kpartite(&[m, n]).unwrap(), mu_bipartite(m, n).unwrap());
    }
    let g = WeightedGraph::complete_multipartite(&[2, 1, 2], 1.0);
    assert_eq!(
        mu_kpartite(&[2, 1, 2]).unwrap(),
        tutte_mu(&g).unwrap().value
    );
    assert!(mu_kpartite(&[3]).is_err());
    assert!(matches!(
        mu_kpartite(&[9, 9]),
        Err(crate::Error::Capacity(_))
    ));
}

#[test]
fn gamma_examples() {
    assert_eq!(gamma_values(&[0.0, 0.2, 0.5]).unwrap(), vec![1, 2]);
    assert_eq!(gamma_product(&[0.0, 0.2, 0.5]).unwrap(), 2);
    assert_eq!(gamma_product(&[0.0, 0.9, 1.8]).unwrap(), 1);
    // 1.2 is more than 1 above 0, so only 0.5 counts for it: H is a
    // pendant edge glued to a triangle.
    let xs = [0.0, 0.5, 1.2, 1.4];
    assert_eq!(gamma_values(&xs).unwrap(), vec![1, 1, 2]);
    assert_eq!(gamma_product(&xs).unwrap(), 2);
    let h = interval_graph(&xs).unwrap();
    assert_eq!(
        mu_safe_trees(&h, &EdgeOrder::identity(h.edge_count()))
            .unwrap()
            .value,
        2
    );
    assert_eq!(gamma_product(&[0.0, 0.5, 0.9, 1.4]).unwrap(), 4);
    assert!(matches!(
        gamma_product(&[0.0, 1.5]),
        Err(crate::Error::Disconnected)
    ));
    assert!(gamma_product(&[0.0, 0.5, 0.4]).is_err());
}

#[test]
fn interval_graph_examples() {
    let g = interval_graph(&[0.0, 0.6]).unwrap();
    assert_eq!(g.edge_count(), 1);
    assert!((g.edge(0).length - 0.8).abs() < 1e-15);
    let g = interval_graph(&[0.0, 1.0]).unwrap();
    assert_eq!(g.edge(0).length, 0.0);
    let g = interval_graph(&[0.0, 0.7, 1.5]).unwrap();
    assert_eq!(g.edge_count(), 2);
    assert!(g.edge_between(0, 1).is_some() && g.edge_between(1, 2).is_some());
    assert!(g.edge_between(0, 2).is_none());
    assert!(interval_graph(&[0.0, 0.3, 0.3]).is_err());
    let weighted = interval_graph_with(&[0.0, 0.6], |_, _| 4.0).unwrap();
    assert!((weighted.edge(0).length - 0.4).abs() < 1e-15);
}

fn graph_from_mask(n: usize, mask: u64) -> WeightedGraph {
    let mut g = WeightedGraph::new(n);
    let mut k = 0;
    for a in 0..n {
        for b in a + 1..n {
            if mask >> k & 1 == 1 {
                g.add_edge(a, b, 1.0).unwrap();
            }
            k += 1;
        }
    }
    g
}

proptest! {
    #[test]
    fn three_routes_agree(n in 1usize..=6, mask in any::<u64>(), seed in any::<u64>()) {
        let g = graph_from_mask(n, mask);
        prop_assume!(g.is_connected());
        let (a, b, c) = all_three(&g);
        prop_assert_eq!(a, b);
        prop_assert_eq!(b, c);
        let mut rng = seeded(seed);
        for _ in 0..10 {
            let order = EdgeOrder::shuffled(g.edge_count(), &mut rng);
            prop_assert_eq!(mu_safe_trees(&g, &order).unwrap().value, a);
        }
    }

    #[test]
    fn gamma_product_is_mu_of_interval_graph(n in 1usize..=7, seed in any::<u64>()) {
        let xs = b_vector_law(n, &mut seeded(seed)).unwrap();
        let gamma = gamma_product(&xs).unwrap();
        let h = interval_graph(&xs).unwrap();
        prop_assert_eq!(gamma, mu_safe_trees(&h, &EdgeOrder::identity(h.edge_count())).unwrap().value);
        let max: u64 = (1..n as u64).product();
        prop_assert!(gamma >= 1 && gamma <= max);
    }
}
