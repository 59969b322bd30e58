//! Weighted constraint graphs.
//!
//! An edge `{i, j}` with length `r_ij` requires points `i` and `j` to stay at
//! least `r_ij` apart. The optional `beta` weight is the spheroid-norm
//! coefficient used by the 3D construction (default 1).

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphEdge {
    pub a: usize,
    pub b: usize,
    pub length: f64,
    pub beta: f64,
}

impl GraphEdge {
    pub fn other(&self, v: usize) -> usize {
        if v == self.a {
            self.b
        } else {
            self.a
        }
    }
}

/// Simple undirected graph on `0..n` with per-edge required lengths.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<GraphEdge>,
    adj: Vec<Vec<(usize, usize)>>,
    index: HashMap<(usize, usize), usize>,
}

fn key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

impl WeightedGraph {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
            index: HashMap::new(),
        }
    }

    pub fn add_edge(&mut self, a: usize, b: usize, length: f64) -> Result<usize> {
        self.add_edge_with_beta(a, b, length, 1.0)
    }

    pub fn add_edge_with_beta(
        &mut self,
        a: usize,
        b: usize,
        length: f64,
        beta: f64,
    ) -> Result<usize> {
        if a >= self.n || b >= self.n {
            return Err(Error::InvalidInput(format!(
                "edge ({a}, {b}) outside {} vertices",
                self.n
            )));
        }
        if a == b {
            return Err(Error::InvalidInput(format!("self-loop at vertex {a}")));
        }
        if !(length.is_finite() && length >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "edge ({a}, {b}) has invalid length {length}"
            )));
        }
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::InvalidInput(format!(
                "edge ({a}, {b}) has invalid beta {beta}"
            )));
        }
        let k = key(a, b);
        if self.index.contains_key(&k) {
            return Err(Error::InvalidInput(format!("duplicate edge ({a}, {b})")));
        }
        let id = self.edges.len();
        self.edges.push(GraphEdge { a, b, length, beta });
        self.adj[a].push((b, id));
        self.adj[b].push((a, id));
        self.index.insert(k, id);
        Ok(id)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[GraphEdge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> &GraphEdge {
        &self.edges[id]
    }

    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        self.index.get(&key(a, b)).copied()
    }

    /// `(neighbour, edge id)` pairs of `v`.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_on(&vec![true; self.n])
    }

    /// Whether the subgraph induced by `keep` is connected (vacuously true when empty).
    pub fn is_connected_on(&self, keep: &[bool]) -> bool {
        let Some(start) = keep.iter().position(|&k| k) else {
            return true;
        };
        let mut seen = vec![false; self.n];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            for &(w, _) in &self.adj[v] {
                if keep[w] && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        keep.iter().zip(&seen).all(|(&k, &s)| !k || s)
    }

    pub fn complete(n: usize, length: f64) -> Self {
        let mut g = Self::new(n);
        for a in 0..n {
            for b in a + 1..n {
                g.add_edge(a, b, length).expect("valid complete graph");
            }
        }
        g
    }

    /// Disk polymer constraints: complete graph with `r_ij = r_i + r_j`.
    pub fn disks(radii: &[f64]) -> Result<Self> {
        if let Some(r) = radii.iter().find(|r| !(r.is_finite() && **r > 0.0)) {
            return Err(Error::InvalidInput(format!("radius {r} is not positive")));
        }
        let n = radii.len();
        let mut g = Self::new(n);
        for a in 0..n {
            for b in a + 1..n {
                g.add_edge(a, b, radii[a] + radii[b])?;
            }
        }
        Ok(g)
    }

    pub fn cycle(n: usize, length: f64) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut g = Self::new(n);
        for v in 0..n {
            g.add_edge(v, (v + 1) % n, length).expect("valid cycle");
        }
        g
    }

    pub fn path(n: usize, length: f64) -> Self {
        let mut g = Self::new(n);
        for v in 1..n {
            g.add_edge(v - 1, v, length).expect("valid path");
        }
        g
    }

    /// `K_{sizes[0], sizes[1], ...}`; parts occupy consecutive vertex ranges.
    pub fn complete_multipartite(sizes: &[usize], length: f64) -> Self {
        let n: usize = sizes.iter().sum();
        let mut part = Vec::with_capacity(n);
        for (i, &s) in sizes.iter().enumerate() {
            part.extend(std::iter::repeat_n(i, s));
        }
        let mut g = Self::new(n);
        for a in 0..n {
            for b in a + 1..n {
                if part[a] != part[b] {
                    g.add_edge(a, b, length).expect("valid multipartite graph");
                }
            }
        }
        g
    }

    pub fn complete_bipartite(m: usize, n: usize, length: f64) -> Self {
        Self::complete_multipartite(&[m, n], length)
    }

    /// Parse `i j [r_ij] [beta_ij]` lines with 1-indexed labels. Blank lines
    /// and `#` comments are skipped; the vertex count is the largest label.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        let mut n = 0;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::Parse {
                line: lineno + 1,
                message,
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if !(2..=4).contains(&fields.len()) {
                return Err(err(format!(
                    "expected `i j [r] [beta]`, got {} fields",
                    fields.len()
                )));
            }
            let label = |s: &str| -> Result<usize> {
                match s.parse::<usize>() {
                    Ok(v) if v >= 1 => Ok(v - 1),
                    _ => Err(err(format!("bad vertex label `{s}` (labels start at 1)"))),
                }
            };
            let real = |s: &str| -> Result<f64> {
                s.parse::<f64>()
                    .map_err(|_| err(format!("bad number `{s}`")))
            };
            let a = label(fields[0])?;
            let b = label(fields[1])?;
            let r = fields.get(2).map(|s| real(s)).transpose()?.unwrap_or(1.0);
            let beta = fields.get(3).map(|s| real(s)).transpose()?.unwrap_or(1.0);
            n = n.max(a + 1).max(b + 1);
            rows.push((lineno + 1, a, b, r, beta));
        }
        let mut g = Self::new(n);
        for (line, a, b, r, beta) in rows {
            g.add_edge_with_beta(a, b, r, beta)
                .map_err(|e| Error::Parse {
                    line,
                    message: e.to_string(),
                })?;
        }
        Ok(g)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            if e.beta == 1.0 {
                out.push_str(&format!("{} {} {}\n", e.a + 1, e.b + 1, e.length));
            } else {
                out.push_str(&format!(
                    "{} {} {} {}\n",
                    e.a + 1,
                    e.b + 1,
                    e.length,
                    e.beta
                ));
            }
        }
        out
    }

    /// Visit every spanning tree as a sorted list of edge ids.
    pub fn for_each_spanning_tree(&self, mut visit: impl FnMut(&[usize])) {
        if self.n == 0 {
            return;
        }
        let mut uf = RollbackUnionFind::new(self.n);
        let mut chosen = Vec::with_capacity(self.n.saturating_sub(1));
        self.spanning_rec(0, &mut uf, &mut chosen, &mut visit);
    }

    fn spanning_rec(
        &self,
        next: usize,
        uf: &mut RollbackUnionFind,
        chosen: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]),
    ) {
        let need = self.n - 1 - chosen.len();
        if need == 0 {
            visit(chosen);
            return;
        }
        if self.edges.len() - next < need {
            return;
        }
        let e = self.edges[next];
        if uf.union(e.a, e.b) {
            chosen.push(next);
            self.spanning_rec(next + 1, uf, chosen, visit);
            chosen.pop();
            uf.rollback();
        }
        self.spanning_rec(next + 1, uf, chosen, visit);
    }

    pub fn spanning_trees(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.for_each_spanning_tree(|t| out.push(t.to_vec()));
        out
    }
}

/// Union-find without path compression so unions can be undone in LIFO order.
#[derive(Clone, Debug)]
pub(crate) struct RollbackUnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    history: Vec<usize>,
}

impl RollbackUnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
            history: Vec::new(),
        }
    }

    pub(crate) fn find(&self, mut v: usize) -> usize {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }

    /// Returns false (and records nothing) when already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.history.push(rb);
        true
    }

    pub(crate) fn rollback(&mut self) {
        let rb = self.history.pop().expect("rollback without union");
        let ra = self.parent[rb];
        self.size[ra] -= self.size[rb];
        self.parent[rb] = rb;
    }
}
