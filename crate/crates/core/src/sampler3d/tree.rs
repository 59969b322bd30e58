use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::Rng;

use crate::error::{Error, Result};

/// A spanning tree on `0..n`, edges stored as `(i, j)` with `i < j`, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabeledTree {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl LabeledTree {
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput(
                "a tree needs at least one vertex".into(),
            ));
        }
        if edges.len() != n - 1 {
            return Err(Error::Structure(format!(
                "{} edges for {n} vertices",
                edges.len()
            )));
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut v: usize) -> usize {
            while p[v] != v {
                p[v] = p[p[v]];
                v = p[v];
            }
            v
        }
        let mut sorted = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a >= n || b >= n || a == b {
                return Err(Error::Structure(format!("bad edge ({a}, {b})")));
            }
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return Err(Error::Structure("edges contain a cycle".into()));
            }
            parent[ra] = rb;
            sorted.push((a.min(b), a.max(b)));
        }
        sorted.sort_unstable();
        Ok(Self { n, edges: sorted })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Parent of every vertex when the tree hangs from `root`, plus the
    /// vertices in breadth-first order.
    pub fn rooted_at(&self, root: usize) -> (Vec<Option<usize>>, Vec<usize>) {
        let adj = self.adjacency();
        let mut parent = vec![None; self.n];
        let mut order = vec![root];
        let mut seen = vec![false; self.n];
        seen[root] = true;
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(v);
                    order.push(w);
                }
            }
            i += 1;
        }
        (parent, order)
    }

    /// Prüfer code: repeatedly delete the smallest leaf and record its neighbour.
    pub fn prufer_encode(&self) -> Vec<usize> {
        if self.n <= 2 {
            return Vec::new();
        }
        let adj = self.adjacency();
        let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
        let mut removed = vec![false; self.n];
        let mut leaves: BinaryHeap<Reverse<usize>> = (0..self.n)
            .filter(|&v| degree[v] == 1)
            .map(Reverse)
            .collect();
        let mut code = Vec::with_capacity(self.n - 2);
        while code.len() < self.n - 2 {
            let Reverse(leaf) = leaves.pop().expect("a tree with > 2 vertices has a leaf");
            removed[leaf] = true;
            let nbr = adj[leaf]
                .iter()
                .copied()
                .find(|&w| !removed[w])
                .expect("leaf has a neighbour");
            code.push(nbr);
            degree[nbr] -= 1;
            if degree[nbr] == 1 {
                leaves.push(Reverse(nbr));
            }
        }
        code
    }

    pub fn prufer_decode(code: &[usize], n: usize) -> Result<Self> {
        if n < 2 {
            return if n == 1 && code.is_empty() {
                Ok(Self {
                    n: 1,
                    edges: Vec::new(),
                })
            } else {
                Err(Error::InvalidInput("a Prüfer code needs n >= 2".into()))
            };
        }
        if code.len() != n - 2 {
            return Err(Error::InvalidInput(format!(
                "Prüfer code of length {} for n = {n}",
                code.len()
            )));
        }
        if let Some(&bad) = code.iter().find(|&&v| v >= n) {
            return Err(Error::InvalidInput(format!("label {bad} out of range")));
        }
        let mut degree = vec![1usize; n];
        for &v in code {
            degree[v] += 1;
        }
        let mut leaves: BinaryHeap<Reverse<usize>> =
            (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
        let mut edges = Vec::with_capacity(n - 1);
        for &v in code {
            let Reverse(leaf) = leaves.pop().expect("decoding always has a leaf");
            edges.push((leaf, v));
            degree[v] -= 1;
            if degree[v] == 1 {
                leaves.push(Reverse(v));
            }
        }
        let Reverse(a) = leaves.pop().expect("two vertices remain");
        let Reverse(b) = leaves.pop().expect("two vertices remain");
        edges.push((a, b));
        Self::from_edges(n, &edges)
    }
}

/// Uniform labeled tree on `n` vertices (uniform Prüfer code).
pub fn sample_labeled_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<LabeledTree> {
    if n == 0 {
        return Err(Error::InvalidInput(
            "a tree needs at least one vertex".into(),
        ));
    }
    let code: Vec<usize> = (0..n.saturating_sub(2))
        .map(|_| rng.random_range(0..n))
        .collect();
    LabeledTree::prufer_decode(&code, n)
}
