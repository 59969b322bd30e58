//! Benchmark fixtures shared by the criterion targets.

use branched_core::WeightedGraph;

/// Wheel graph: a hub joined to every vertex of an `n`-cycle.
pub fn wheel(n: usize) -> WeightedGraph {
    let mut g = WeightedGraph::new(n + 1);
    for i in 0..n {
        g.add_edge(i, (i + 1) % n, 1.0).expect("cycle edge");
        g.add_edge(i, n, 1.0).expect("spoke");
    }
    g
}
