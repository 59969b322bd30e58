//! Tutte polynomial at the point that counts safe trees.
//!
//! With internal activity on `x` and external activity on `y`, a safe tree
//! is one with zero external activity, so `mu(G) = T_G(1, 0)`. At that point
//! deletion-contraction reads
//!
//! * loop: factor `y = 0`, so any graph with a loop evaluates to 0;
//! * bridge: factor `x = 1`, so `T(G) = T(G / e)`;
//! * otherwise `T(G) = T(G - e) + T(G / e)`.
//!
//! Contracting one copy of a parallel edge turns the others into loops, so
//! for a parallel edge only the deletion branch survives.

use std::collections::HashMap;

use super::{MuMethod, MuValue};
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// Multigraph as a sorted edge list on `0..n` (endpoints ordered `a <= b`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Multigraph {
    n: usize,
    edges: Vec<(u16, u16)>,
}

impl Multigraph {
    /// Relabel vertices by first appearance and sort, so that relabelled
    /// copies produced by different contraction sequences share a memo slot
    /// more often.
    fn normalized(n: usize, edges: Vec<(u16, u16)>) -> Self {
        let mut label = vec![u16::MAX; n];
        let mut next = 0u16;
        let mut out = Vec::with_capacity(edges.len());
        let mut sorted = edges;
        sorted.sort_unstable();
        for (a, b) in sorted {
            for v in [a, b] {
                if label[v as usize] == u16::MAX {
                    label[v as usize] = next;
                    next += 1;
                }
            }
            let (x, y) = (label[a as usize], label[b as usize]);
            out.push((x.min(y), x.max(y)));
        }
        out.sort_unstable();
        // Isolated vertices only matter through the vertex count.
        Self {
            n: next.max(1) as usize,
            edges: out,
        }
    }

    fn connects_without(&self, skip: usize, from: u16, to: u16) -> bool {
        let mut adj = vec![Vec::new(); self.n];
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if i != skip {
                adj[a as usize].push(b);
                adj[b as usize].push(a);
            }
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![from];
        seen[from as usize] = true;
        while let Some(v) = stack.pop() {
            if v == to {
                return true;
            }
            for &w in &adj[v as usize] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    stack.push(w);
                }
            }
        }
        false
    }

    fn delete(&self, e: usize) -> Self {
        let mut edges = self.edges.clone();
        edges.remove(e);
        Self::normalized(self.n, edges)
    }

    fn contract(&self, e: usize) -> Self {
        let (keep, gone) = self.edges[e];
        let relabel = |v: u16| if v == gone { keep } else { v };
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != e)
            .map(|(_, &(a, b))| (relabel(a), relabel(b)))
            .collect();
        Self::normalized(self.n, edges)
    }
}

fn eval(g: &Multigraph, memo: &mut HashMap<Multigraph, u128>) -> u128 {
    if g.edges.iter().any(|&(a, b)| a == b) {
        return 0;
    }
    if g.edges.is_empty() {
        return 1;
    }
    if let Some(&v) = memo.get(g) {
        return v;
    }
    let e = g.edges.len() - 1;
    let (a, b) = g.edges[e];
    let parallel = g.edges.iter().filter(|&&x| x == (a, b)).count() > 1;
    let value = if parallel {
        eval(&g.delete(e), memo)
    } else if !g.connects_without(e, a, b) {
        eval(&g.contract(e), memo)
    } else {
        eval(&g.delete(e), memo) + eval(&g.contract(e), memo)
    };
    memo.insert(g.clone(), value);
    value
}

/// `T_G(1, 0)` for a connected graph.
pub fn tutte_at_one_zero(graph: &WeightedGraph) -> Result<u128> {
    if !graph.is_connected() {
        return Err(Error::Disconnected);
    }
    if graph.n() > u16::MAX as usize {
        return Err(Error::Capacity(
            "too many vertices for Tutte evaluation".into(),
        ));
    }
    let edges = graph
        .edges()
        .iter()
        .map(|e| (e.a.min(e.b) as u16, e.a.max(e.b) as u16))
        .collect();
    let g = Multigraph::normalized(graph.n(), edges);
    Ok(eval(&g, &mut HashMap::new()))
}

pub fn tutte_mu(graph: &WeightedGraph) -> Result<MuValue> {
    let v = tutte_at_one_zero(graph)?;
    let value = u64::try_from(v).map_err(|_| Error::Capacity(format!("mu = {v} overflows u64")))?;
    Ok(MuValue::from_count(value, graph.n(), MuMethod::Tutte))
}
