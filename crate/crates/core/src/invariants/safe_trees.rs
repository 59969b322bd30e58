use super::{EdgeOrder, MuMethod, MuValue};
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// A spanning tree is safe when no non-tree edge has the lowest rank on the
/// cycle it closes with the tree.
pub fn is_safe_tree(graph: &WeightedGraph, tree: &[usize], ranks: &[usize]) -> bool {
    let n = graph.n();
    let mut adj = vec![Vec::new(); n];
    let mut in_tree = vec![false; graph.edge_count()];
    for &e in tree {
        let edge = graph.edge(e);
        adj[edge.a].push((edge.b, e));
        adj[edge.b].push((edge.a, e));
        in_tree[e] = true;
    }
    let mut via = vec![usize::MAX; n];
    let mut prev = vec![usize::MAX; n];
    for (id, edge) in graph.edges().iter().enumerate() {
        if in_tree[id] {
            continue;
        }
        // DFS from a to find the tree path to b.
        via.fill(usize::MAX);
        prev.fill(usize::MAX);
        prev[edge.a] = edge.a;
        let mut stack = vec![edge.a];
        while let Some(v) = stack.pop() {
            if v == edge.b {
                break;
            }
            for &(w, e) in &adj[v] {
                if prev[w] == usize::MAX {
                    prev[w] = v;
                    via[w] = e;
                    stack.push(w);
                }
            }
        }
        let mut v = edge.b;
        let mut min_rank = usize::MAX;
        while v != edge.a {
            min_rank = min_rank.min(ranks[via[v]]);
            v = prev[v];
        }
        if ranks[id] < min_rank {
            return false;
        }
    }
    true
}

/// Count safe spanning trees under `order`.
pub fn mu_safe_trees(graph: &WeightedGraph, order: &EdgeOrder) -> Result<MuValue> {
    if !graph.is_connected() {
        return Err(Error::Disconnected);
    }
    if order.len() != graph.edge_count() {
        return Err(Error::InvalidInput(format!(
            "edge order has {} entries for {} edges",
            order.len(),
            graph.edge_count()
        )));
    }
    let ranks = order.ranks();
    let mut count = 0u64;
    graph.for_each_spanning_tree(|t| {
        if is_safe_tree(graph, t, &ranks) {
            count += 1;
        }
    });
    Ok(MuValue::from_count(count, graph.n(), MuMethod::SafeTrees))
}
