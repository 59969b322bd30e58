use rand::Rng;

use super::tree::{sample_labeled_tree, LabeledTree};
use crate::error::{Error, Result};

/// x-coordinates obtained by stretching a tree with edge lengths in `[0, 1]`
/// to the right of its root.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectionVector {
    pub root: usize,
    /// `x[v]`: length of the tree path from the root to `v`.
    pub x: Vec<f64>,
    /// Edge length of every tree edge, aligned with [`LabeledTree::edges`].
    pub u: Vec<f64>,
}

impl ProjectionVector {
    /// Root-path sums for given edge lengths.
    pub fn from_lengths(tree: &LabeledTree, root: usize, u: &[f64]) -> Result<Self> {
        let n = tree.n();
        if root >= n {
            return Err(Error::InvalidInput(format!(
                "root {root} outside {n} vertices"
            )));
        }
        if u.len() != tree.edges().len() {
            return Err(Error::InvalidInput(format!(
                "{} edge lengths for {} edges",
                u.len(),
                tree.edges().len()
            )));
        }
        if let Some(bad) = u.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(Error::InvalidInput(format!(
                "edge length {bad} outside [0, 1]"
            )));
        }
        let (parent, order) = tree.rooted_at(root);
        let mut x = vec![0.0; n];
        for &v in &order[1..] {
            let p = parent[v].expect("non-root vertex has a parent");
            let id = tree
                .edges()
                .binary_search(&(p.min(v), p.max(v)))
                .expect("tree edge");
            x[v] = x[p] + u[id];
        }
        Ok(Self {
            root,
            x,
            u: u.to_vec(),
        })
    }

    /// The x-values in increasing order; the first is always 0.
    pub fn sorted(&self) -> Vec<f64> {
        let mut b = self.x.clone();
        b.sort_by(f64::total_cmp);
        b
    }

    /// Vertices by increasing x (ties by label).
    pub fn order(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.x.len()).collect();
        idx.sort_by(|&a, &b| self.x[a].total_cmp(&self.x[b]).then(a.cmp(&b)));
        idx
    }
}

/// Independent uniform edge lengths, path sums from vertex 0.
pub fn project_x<R: Rng + ?Sized>(tree: &LabeledTree, rng: &mut R) -> Result<ProjectionVector> {
    project_x_from(tree, 0, rng)
}

pub fn project_x_from<R: Rng + ?Sized>(
    tree: &LabeledTree,
    root: usize,
    rng: &mut R,
) -> Result<ProjectionVector> {
    let u: Vec<f64> = (0..tree.edges().len())
        .map(|_| rng.random::<f64>())
        .collect();
    ProjectionVector::from_lengths(tree, root, &u)
}

/// One draw of the sorted vector `B`: uniform labeled tree, uniform edge
/// lengths, path sums from vertex 0, sorted.
pub fn b_vector_law<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Vec<f64>> {
    let tree = sample_labeled_tree(n, rng)?;
    Ok(project_x(&tree, rng)?.sorted())
}

/// `<0, b_n - b_{n-1}, ..., b_n - b_1>` for a sorted `b`.
pub fn reversed(b: &[f64]) -> Vec<f64> {
    let Some(&last) = b.last() else {
        return Vec::new();
    };
    b.iter().rev().map(|v| last - v).collect()
}
