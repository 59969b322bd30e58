//! Exact uniform sampling of planar polymers by inductive growth.
//!
//! Vertices are inserted one at a time. A new vertex starts infinitesimally
//! small next to a random placed neighbour and its contact lengths grow
//! linearly in a parameter `t`. The configuration is described by a tight
//! tree with fixed angles; when a non-tree pair comes into contact, the
//! resulting cycle is broken by dropping one of its edges, chosen in
//! proportion to the rate at which that edge's chart gains volume.

mod events;
mod growth;
mod state;


pub use events::{
    break_cycle, candidate_rates, detect_next_event, Candidate, CycleEvent, PairEvent,
    EVENT_RESOLUTION,
};
pub use growth::{
    add_vertex, chordal_fill, run_phase, sample_crossing_inductive_tree, sample_gpolymer,
    sample_gpolymer_counted, sample_polymer_2d, validate_order, PolymerGrowth, MAX_FILL_ATTEMPTS,
};
pub use state::{ContactLaw, GrowthState};

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::geometry::{gap_tolerance, Vec2};
use crate::graph::WeightedGraph;

/// Pairs within this multiple of the coordinate scale of their contact
/// distance are reported as tangent.
pub const TANGENCY_TOLERANCE: f64 = 1e-14;

/// A finished planar polymer.
#[derive(Clone, Debug, PartialEq)]
pub struct Polymer2D {
    /// Centres, vertex 0 at the origin.
    pub positions: Vec<Vec2>,
    /// Disk radii for disk polymers; `None` for general `G`-polymers.
    pub radii: Option<Vec<f64>>,
    /// The constraint graph (for disks, the complete graph with `r_i + r_j`).
    pub graph: WeightedGraph,
    /// Tight tree rooted at vertex 0.
    pub tree_parent: Vec<Option<usize>>,
    /// Every constrained pair at zero gap, as `(i, j)` with `i < j`.
    pub tangency_edges: Vec<(usize, usize)>,
}

impl Polymer2D {
    /// Translate vertex 0 to the origin and root `tree` there.
    pub(crate) fn assemble(
        mut positions: Vec<Vec2>,
        radii: Option<Vec<f64>>,
        graph: WeightedGraph,
        tree: &[(usize, usize)],
    ) -> Result<Self> {
        let n = positions.len();
        if let Some(&origin) = positions.first() {
            for p in &mut positions {
                *p = *p - origin;
            }
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in tree {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut tree_parent = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        if n > 0 {
            seen[0] = true;
            queue.push_back(0);
        }
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    tree_parent[w] = Some(v);
                    queue.push_back(w);
                }
            }
        }
        if seen.iter().any(|s| !s) || tree.len() + 1 != n.max(1) {
            return Err(Error::Structure(
                "tight edges do not form a spanning tree".into(),
            ));
        }
        let tangency_edges = tight_pairs(&positions, &graph);
        Ok(Self {
            positions,
            radii,
            graph,
            tree_parent,
            tangency_edges,
        })
    }

    pub fn n(&self) -> usize {
        self.positions.len()
    }

    /// Tree edges as sorted `(i, j)` pairs with `i < j`.
    pub fn tree_edges(&self) -> Vec<(usize, usize)> {
        let mut edges: Vec<(usize, usize)> = self
            .tree_parent
            .iter()
            .enumerate()
            .filter_map(|(c, p)| p.map(|p| (p.min(c), p.max(c))))
            .collect();
        edges.sort_unstable();
        edges
    }

    /// Largest constraint violation (0 when every pair keeps its distance).
    pub fn max_overlap(&self) -> f64 {
        self.graph
            .edges()
            .iter()
            .map(|e| e.length - (self.positions[e.a] - self.positions[e.b]).norm())
            .fold(0.0, f64::max)
    }

    /// Check the polymer invariants: no overlaps, tree edges tight.
    pub fn validate(&self) -> Result<()> {
        for e in self.graph.edges() {
            let (pa, pb) = (self.positions[e.a], self.positions[e.b]);
            let gap = (pa - pb).norm() - e.length;
            if gap < -gap_tolerance(e.length, pa, pb) {
                return Err(Error::InconsistentState(format!(
                    "pair ({}, {}) overlaps by {:e}",
                    e.a, e.b, -gap
                )));
            }
        }
        for (a, b) in self.tree_edges() {
            let id = self.graph.edge_between(a, b).ok_or_else(|| {
                Error::Structure(format!("tree edge ({a}, {b}) is not constrained"))
            })?;
            let len = self.graph.edge(id).length;
            let (pa, pb) = (self.positions[a], self.positions[b]);
            let gap = (pa - pb).norm() - len;
            if gap.abs() > gap_tolerance(len, pa, pb) {
                return Err(Error::InconsistentState(format!(
                    "tree edge ({a}, {b}) has gap {gap:e}"
                )));
            }
        }
        Ok(())
    }
}

fn tight_pairs(positions: &[Vec2], graph: &WeightedGraph) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = graph
        .edges()
        .iter()
        .filter(|e| {
            let (pa, pb) = (positions[e.a], positions[e.b]);
            ((pa - pb).norm() - e.length).abs()
                <= TANGENCY_TOLERANCE * (pa.norm() + pb.norm() + e.length)
        })
        .map(|e| (e.a.min(e.b), e.a.max(e.b)))
        .collect();
    out.sort_unstable();
    out
}
