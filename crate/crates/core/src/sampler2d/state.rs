use crate::error::{Error, Result};
use crate::geometry::{
    forward_positions, forward_velocities, gap_tolerance, AngleAssignment, EdgeLength,
    LengthFunction, RootedTree, Vec2,
};
use crate::graph::WeightedGraph;

/// How the contact lengths of a newly inserted vertex grow with `t`.
#[derive(Clone, Debug, PartialEq)]
pub enum ContactLaw {
    /// Every edge `{i, k}` requires `t * r_ik` (the vertex starts on top of a neighbour).
    Scaled,
    /// Disk `k` grows its radius: edge `{i, k}` requires `r_i + t * r_k`.
    Disks(Vec<f64>),
}

impl ContactLaw {
    fn growing(&self, graph: &WeightedGraph, edge: usize, k: usize) -> EdgeLength {
        let e = graph.edge(edge);
        match self {
            ContactLaw::Scaled => EdgeLength {
                base: 0.0,
                coeff: e.length,
            },
            ContactLaw::Disks(r) => EdgeLength {
                base: r[e.other(k)],
                coeff: r[k],
            },
        }
    }
}

/// Partially grown polymer: the placed vertices, their tight tree and the
/// per-edge length laws of the current growth phase.
#[derive(Clone, Debug)]
pub struct GrowthState {
    graph: WeightedGraph,
    law: ContactLaw,
    /// Required length of every graph edge as an affine function of `t`.
    req: Vec<EdgeLength>,
    placed: Vec<bool>,
    tree: RootedTree,
    angles: AngleAssignment,
    lengths: LengthFunction,
    growing: Option<usize>,
    t: f64,
}

impl GrowthState {
    /// A state holding only `root`, at the origin.
    pub fn new(graph: WeightedGraph, law: ContactLaw, root: usize) -> Result<Self> {
        let n = graph.n();
        if root >= n {
            return Err(Error::InvalidInput(format!(
                "root {root} outside {n} vertices"
            )));
        }
        if let ContactLaw::Disks(r) = &law {
            if r.len() != n {
                return Err(Error::InvalidInput(format!(
                    "{} radii for {n} vertices",
                    r.len()
                )));
            }
        }
        let req = graph
            .edges()
            .iter()
            .map(|e| EdgeLength::fixed(e.length))
            .collect();
        let mut placed = vec![false; n];
        placed[root] = true;
        Ok(Self {
            graph,
            law,
            req,
            placed,
            tree: RootedTree::singleton(n, root),
            angles: AngleAssignment::new(n),
            lengths: LengthFunction::new(n),
            growing: None,
            t: 0.0,
        })
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn law(&self) -> &ContactLaw {
        &self.law
    }

    pub fn tree(&self) -> &RootedTree {
        &self.tree
    }

    pub fn angles(&self) -> &AngleAssignment {
        &self.angles
    }

    pub fn lengths(&self) -> &LengthFunction {
        &self.lengths
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn growing(&self) -> Option<usize> {
        self.growing
    }

    pub fn is_placed(&self, v: usize) -> bool {
        self.placed[v]
    }

    pub fn placed_count(&self) -> usize {
        self.tree.len()
    }

    /// Required length law of graph edge `id` in the current phase.
    pub fn requirement(&self, id: usize) -> EdgeLength {
        self.req[id]
    }

    /// Whether graph edge `id` joins two placed vertices.
    pub fn is_active(&self, id: usize) -> bool {
        let e = self.graph.edge(id);
        self.placed[e.a] && self.placed[e.b]
    }

    pub fn positions_at(&self, t: f64) -> Result<Vec<Vec2>> {
        forward_positions(&self.tree, &self.angles, &self.lengths, t)
    }

    pub fn positions(&self) -> Result<Vec<Vec2>> {
        self.positions_at(self.t)
    }

    pub fn velocities(&self) -> Result<Vec<Vec2>> {
        forward_velocities(&self.tree, &self.angles, &self.lengths)
    }

    /// Placed neighbours of `k` in the target graph.
    pub fn placed_neighbors(&self, k: usize) -> Vec<usize> {
        self.graph
            .neighbors(k)
            .iter()
            .map(|&(w, _)| w)
            .filter(|&w| self.placed[w])
            .collect()
    }

    /// Insert `k` hanging off `neighbor` at absolute angle `theta`, at `t = 0`.
    pub fn begin_vertex(&mut self, k: usize, neighbor: usize, theta: f64) -> Result<()> {
        if self.growing.is_some() {
            return Err(Error::InconsistentState(
                "a phase is already running".into(),
            ));
        }
        if self.placed[k] {
            return Err(Error::Ordering(format!("vertex {k} is already placed")));
        }
        let edge = self
            .graph
            .edge_between(k, neighbor)
            .filter(|_| self.placed[neighbor])
            .ok_or_else(|| {
                Error::Ordering(format!(
                    "vertex {neighbor} is not a placed neighbour of {k}"
                ))
            })?;
        self.placed[k] = true;
        for &(w, id) in self.graph.neighbors(k) {
            if self.placed[w] {
                self.req[id] = self.law.growing(&self.graph, id, k);
            }
        }
        self.tree.attach(k, neighbor)?;
        self.angles.set(k, theta);
        self.lengths.set(k, self.req[edge]);
        self.growing = Some(k);
        self.t = 0.0;
        Ok(())
    }

    /// Start a phase in which every edge in `edges` shrinks linearly from its
    /// current length to 0 as `t` runs over `[0, 1]`.
    pub fn begin_shrink(&mut self, edges: &[usize]) -> Result<()> {
        if self.growing.is_some() {
            return Err(Error::InconsistentState(
                "a phase is already running".into(),
            ));
        }
        for &id in edges {
            let len = self.req[id].at(self.t);
            self.req[id] = EdgeLength {
                base: len,
                coeff: -len,
            };
        }
        self.t = 0.0;
        self.rebuild_lengths()?;
        Ok(())
    }

    /// Freeze every length law at its `t = 1` value.
    pub fn finish_phase(&mut self) -> Result<()> {
        self.t = 1.0;
        for r in &mut self.req {
            *r = EdgeLength::fixed(r.at(1.0));
        }
        self.growing = None;
        self.rebuild_lengths()
    }

    pub(crate) fn set_t(&mut self, t: f64) {
        self.t = t;
    }

    pub(crate) fn replace_tree(&mut self, tree: RootedTree, angles: AngleAssignment) -> Result<()> {
        self.tree = tree;
        self.angles = angles;
        self.rebuild_lengths()
    }

    fn rebuild_lengths(&mut self) -> Result<()> {
        let mut lengths = LengthFunction::new(self.graph.n());
        for (p, c) in self.tree.edges() {
            let id = self.graph.edge_between(p, c).ok_or_else(|| {
                Error::InconsistentState(format!("tree edge ({p}, {c}) is not a graph edge"))
            })?;
            lengths.set(c, self.req[id]);
        }
        self.lengths = lengths;
        Ok(())
    }

    /// Check the state invariants: tree edges tight, other active gaps non-negative.
    pub fn validate(&self) -> Result<()> {
        let pos = self.positions()?;
        for (id, e) in self.graph.edges().iter().enumerate() {
            if !self.is_active(id) {
                continue;
            }
            let required = self.req[id].at(self.t);
            let gap = (pos[e.a] - pos[e.b]).norm() - required;
            let tol = gap_tolerance(required, pos[e.a], pos[e.b]);
            if self.tree.has_edge(e.a, e.b) {
                if gap.abs() > tol {
                    return Err(Error::InconsistentState(format!(
                        "tree edge ({}, {}) has gap {gap:e}",
                        e.a, e.b
                    )));
                }
            } else if gap < -tol {
                return Err(Error::InconsistentState(format!(
                    "pair ({}, {}) overlaps by {:e}",
                    e.a, e.b, -gap
                )));
            }
        }
        if (0..self.graph.n()).any(|v| self.placed[v] != self.tree.contains(v)) {
            return Err(Error::InconsistentState(
                "tree does not span the placed vertices".into(),
            ));
        }
        Ok(())
    }
}
