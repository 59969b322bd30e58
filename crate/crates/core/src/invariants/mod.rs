//! The invariant `mu(G)`: planar `G`-polymers fill a space of volume
//! `mu(G) * (2pi)^(n-1)`.
//!
//! Three independent routes compute it (safe spanning trees, the alternating
//! sum over connected spanning subgraphs, and a Tutte-polynomial evaluation);
//! closed families come from exponential generating functions, and unit
//! interval graphs reduce to a product of counts.

mod interval;
mod safe_trees;
mod series;
mod subgraph_sum;
mod tutte;

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use interval::{gamma_product, gamma_values, interval_graph, interval_graph_with};
pub use safe_trees::{is_safe_tree, mu_safe_trees};
pub use series::{mu_bipartite, mu_kpartite, Series};
pub use subgraph_sum::{mu_subgraph_sum, MAX_SUBGRAPH_EDGES};
pub use tutte::{tutte_at_one_zero, tutte_mu};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MuMethod {
    SafeTrees,
    SubgraphSum,
    Tutte,
}

impl fmt::Display for MuMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MuMethod::SafeTrees => "safe-trees",
            MuMethod::SubgraphSum => "subgraph-sum",
            MuMethod::Tutte => "tutte",
        })
    }
}

/// `mu(G)` together with the algorithm that produced it.
///
/// `signed_sum` is the alternating sum over connected spanning subgraphs.
/// Only the subgraph-sum method computes it directly; the other methods fill
/// in `(-1)^(n-1) * value`, the sign every spanning tree contributes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuValue {
    pub value: u64,
    pub method: MuMethod,
    pub signed_sum: i64,
}

impl MuValue {
    pub(crate) fn from_count(value: u64, n: usize, method: MuMethod) -> Self {
        let sign = if n % 2 == 1 { 1 } else { -1 };
        Self {
            value,
            method,
            signed_sum: sign * value as i64,
        }
    }
}

/// A total order on the edges of a graph: `ids()[k]` is the edge with rank `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeOrder(Vec<usize>);

impl EdgeOrder {
    pub fn identity(m: usize) -> Self {
        Self((0..m).collect())
    }

    pub fn shuffled<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Self {
        let mut ids: Vec<usize> = (0..m).collect();
        ids.shuffle(rng);
        Self(ids)
    }

    pub fn from_ids(ids: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; ids.len()];
        for &i in &ids {
            if i >= ids.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidInput(
                    "edge order is not a permutation".into(),
                ));
            }
        }
        Ok(Self(ids))
    }

    pub fn ids(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `ranks()[edge] = position of edge in the order`.
    pub fn ranks(&self) -> Vec<usize> {
        let mut r = vec![0; self.0.len()];
        for (k, &e) in self.0.iter().enumerate() {
            r[e] = k;
        }
        r
    }
}

#[cfg(test)]
mod tests;
