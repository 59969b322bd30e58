use rayon::prelude::*;

use super::{MuMethod, MuValue};
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// Largest edge count accepted by [`mu_subgraph_sum`] (2^24 subsets).
pub const MAX_SUBGRAPH_EDGES: usize = 24;

fn spans_connected(mask: u64, n: usize, ends: &[(usize, usize)]) -> bool {
    let mut parent: [usize; 64] = std::array::from_fn(|i| i);
    fn find(p: &mut [usize; 64], mut v: usize) -> usize {
        while p[v] != v {
            p[v] = p[p[v]];
            v = p[v];
        }
        v
    }
    let mut components = n;
    let mut bits = mask;
    while bits != 0 {
        let e = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let (a, b) = ends[e];
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            components -= 1;
        }
    }
    components == 1
}

/// `sum over connected spanning subgraphs H of (-1)^|E(H)|`, by enumeration.
pub fn mu_subgraph_sum(graph: &WeightedGraph) -> Result<MuValue> {
    let m = graph.edge_count();
    let n = graph.n();
    if m > MAX_SUBGRAPH_EDGES || n > 64 {
        return Err(Error::Capacity(format!(
            "{m} edges is too many to enumerate subgraphs (max {MAX_SUBGRAPH_EDGES}); use safe trees or tutte"
        )));
    }
    if !graph.is_connected() {
        return Err(Error::Disconnected);
    }
    let ends: Vec<(usize, usize)> = graph.edges().iter().map(|e| (e.a, e.b)).collect();
    let signed: i64 = (0..1u64 << m)
        .into_par_iter()
        .filter(|&mask| spans_connected(mask, n, &ends))
        .map(|mask| if mask.count_ones() % 2 == 0 { 1 } else { -1 })
        .sum();
    Ok(MuValue {
        value: signed.unsigned_abs(),
        method: MuMethod::SubgraphSum,
        signed_sum: signed,
    })
}
