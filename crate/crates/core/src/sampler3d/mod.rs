//! Uniform random branched polymers in 3-space.
//!
//! Spheres of diameter 1 (or spheroids: `beta_ij` scales the yz-part of the
//! norm) are built from two projections. A uniform labeled tree with uniform
//! `[0, 1]` edge lengths, stretched to the right of a uniformly chosen
//! leftmost sphere, gives the x-coordinates. Given those, the yz-projection
//! is a uniform planar polymer on the unit interval graph of the
//! x-coordinates, sampled with [`crate::sampler2d::sample_gpolymer`].

mod projection;
mod tree;

#[cfg(test)]
mod tests;

pub use projection::{b_vector_law, project_x, project_x_from, reversed, ProjectionVector};
pub use tree::{sample_labeled_tree, LabeledTree};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Vec2;
use crate::invariants::interval_graph_with;
use crate::sampler2d::sample_gpolymer;

/// Tolerance on the spheroid norm of touching pairs.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// x-gaps this close to 1 give a zero-length contact; such draws are repeated.
const UNIT_GAP_MARGIN: f64 = 1e-12;

/// Per-pair weights of the yz-part of the norm.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BetaWeights {
    /// All `beta_ij = 1`: unit-diameter spheres.
    Uniform,
    /// Full symmetric matrix; the diagonal is ignored.
    PerPair(Vec<Vec<f64>>),
    /// One yz-axis scale `a_i` per label, `beta_ij = 1 / (a_i a_j)`.
    PerLabelAxes(Vec<f64>),
}

impl BetaWeights {
    pub fn beta(&self, i: usize, j: usize) -> f64 {
        match self {
            BetaWeights::Uniform => 1.0,
            BetaWeights::PerPair(m) => m[i][j],
            BetaWeights::PerLabelAxes(a) => 1.0 / (a[i] * a[j]),
        }
    }

    pub fn is_uniform(&self) -> bool {
        matches!(self, BetaWeights::Uniform)
    }

    fn validate(&self, n: usize) -> Result<()> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        match self {
            BetaWeights::Uniform => Ok(()),
            BetaWeights::PerPair(m) => {
                if m.len() != n || m.iter().any(|row| row.len() != n) {
                    return Err(Error::InvalidInput(format!(
                        "beta matrix must be {n} x {n}"
                    )));
                }
                #[allow(clippy::needless_range_loop)]
                for i in 0..n {
                    for j in 0..n {
                        if i != j && (!ok(m[i][j]) || m[i][j] != m[j][i]) {
                            return Err(Error::InvalidInput(format!(
                                "beta[{i}][{j}] must be positive and symmetric"
                            )));
                        }
                    }
                }
                Ok(())
            }
            BetaWeights::PerLabelAxes(a) => {
                if a.len() != n || !a.iter().all(|&v| ok(v)) {
                    return Err(Error::InvalidInput(format!(
                        "need {n} positive axis scales"
                    )));
                }
                Ok(())
            }
        }
    }
}

/// A 3D polymer; `root` sits at the origin (for sampled polymers it is also
/// the leftmost centre).
#[derive(Clone, Debug, PartialEq)]
pub struct Polymer3D {
    pub positions: Vec<[f64; 3]>,
    pub root: usize,
    /// Tangency tree rooted at `root`.
    pub tree_parent: Vec<Option<usize>>,
    /// All pairs at norm 1, as `(i, j)` with `i < j`.
    pub tangency_edges: Vec<(usize, usize)>,
    pub beta: BetaWeights,
}

impl Polymer3D {
    pub fn n(&self) -> usize {
        self.positions.len()
    }

    /// Spheroid norm of `v_i - v_j` under `beta_ij`.
    pub fn norm(&self, i: usize, j: usize) -> f64 {
        spheroid_norm(&self.positions[i], &self.positions[j], self.beta.beta(i, j))
    }

    pub fn tree_edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> = self
            .tree_parent
            .iter()
            .enumerate()
            .filter_map(|(c, p)| p.map(|p| (p.min(c), p.max(c))))
            .collect();
        e.sort_unstable();
        e
    }

    /// x-coordinates relative to the leftmost centre, sorted.
    pub fn sorted_x(&self) -> Vec<f64> {
        let min = self
            .positions
            .iter()
            .map(|p| p[0])
            .fold(f64::INFINITY, f64::min);
        let mut xs: Vec<f64> = self.positions.iter().map(|p| p[0] - min).collect();
        xs.sort_by(f64::total_cmp);
        xs
    }

    pub fn x_extent(&self) -> f64 {
        let xs = self.positions.iter().map(|p| p[0]);
        xs.clone().fold(f64::NEG_INFINITY, f64::max) - xs.fold(f64::INFINITY, f64::min)
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n()];
        for &(a, b) in &self.tangency_edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    /// Every pair at norm at least 1, tree pairs at norm 1.
    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        for i in 0..n {
            for j in i + 1..n {
                let d = self.norm(i, j);
                if d < 1.0 - NORM_TOLERANCE {
                    return Err(Error::InconsistentState(format!(
                        "spheres {i} and {j} overlap: norm {d}"
                    )));
                }
            }
        }
        for (a, b) in self.tree_edges() {
            let d = self.norm(a, b);
            if (d - 1.0).abs() > NORM_TOLERANCE {
                return Err(Error::InconsistentState(format!(
                    "tree pair ({a}, {b}) has norm {d}"
                )));
            }
        }
        if self.positions[self.root] != [0.0; 3] {
            return Err(Error::InconsistentState("root is not at the origin".into()));
        }
        Ok(())
    }
}

pub fn spheroid_norm(a: &[f64; 3], b: &[f64; 3], beta: f64) -> f64 {
    let d = [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
    (d[0] * d[0] + beta * (d[1] * d[1] + d[2] * d[2])).sqrt()
}

/// Uniform random polymer of `n` unit-diameter spheres (or spheroids).
pub fn sample_polymer_3d<R: Rng + ?Sized>(
    n: usize,
    beta: &BetaWeights,
    rng: &mut R,
) -> Result<Polymer3D> {
    if n == 0 {
        return Err(Error::InvalidInput("need at least one sphere".into()));
    }
    beta.validate(n)?;
    loop {
        let root = rng.random_range(0..n);
        let tree = sample_labeled_tree(n, rng)?;
        let proj = project_x_from(&tree, root, rng)?;
        let x = &proj.x;
        let degenerate = (0..n).any(|i| {
            (i + 1..n).any(|j| {
                let dx = (x[i] - x[j]).abs();
                dx == 0.0 || (dx - 1.0).abs() < UNIT_GAP_MARGIN
            })
        });
        if degenerate {
            continue;
        }
        let h = interval_graph_with(x, |i, j| beta.beta(i, j))?;
        let order = proj.order();
        let planar = sample_gpolymer(&h, &order, rng)?;
        let base: Vec2 = planar.positions[root];
        let positions: Vec<[f64; 3]> = (0..n)
            .map(|v| {
                let yz = planar.positions[v] - base;
                [x[v] - x[root], yz.x, yz.y]
            })
            .collect();
        let (tree_parent, _) = LabeledTree::from_edges(n, &planar.tree_edges())?.rooted_at(root);
        let mut polymer = Polymer3D {
            positions,
            root,
            tree_parent,
            tangency_edges: Vec::new(),
            beta: beta.clone(),
        };
        polymer.tangency_edges = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| (polymer.norm(i, j) - 1.0).abs() <= NORM_TOLERANCE)
            .collect();
        return Ok(polymer);
    }
}
