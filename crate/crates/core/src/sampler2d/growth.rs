use std::f64::consts::TAU;

use rand::Rng;

use super::events::{break_cycle, candidate_rates, detect_next_event};
use super::state::{ContactLaw, GrowthState};
use super::Polymer2D;
use crate::error::{Error, Result};
use crate::geometry::Vec2;
use crate::graph::WeightedGraph;

/// Guard against a phase that never reaches `t = 1`.
const MAX_EVENTS_PER_PHASE: usize = 1_000_000;

/// Rejection attempts allowed for a graph whose order needs fill edges.
pub const MAX_FILL_ATTEMPTS: usize = 100_000;

/// Advance the current phase to `t = 1`, resolving every cycle event on the way.
/// Returns the number of events.
pub fn run_phase<R: Rng + ?Sized>(state: &mut GrowthState, rng: &mut R) -> Result<usize> {
    let mut events = 0;
    while let Some(ev) = detect_next_event(state)? {
        events += 1;
        if events > MAX_EVENTS_PER_PHASE {
            return Err(Error::InconsistentState(format!(
                "more than {MAX_EVENTS_PER_PHASE} events in one phase"
            )));
        }
        state.set_t(ev.t);
        let cycle = candidate_rates(state, &ev)?;
        break_cycle(state, &cycle, rng)?;
        #[cfg(debug_assertions)]
        state.validate()?;
    }
    state.finish_phase()?;
    Ok(events)
}

/// Insert `k` next to a uniformly chosen placed neighbour at a uniform angle
/// and grow its contacts to full length.
pub fn add_vertex<R: Rng + ?Sized>(
    state: &mut GrowthState,
    k: usize,
    rng: &mut R,
) -> Result<usize> {
    let nbrs = state.placed_neighbors(k);
    if nbrs.is_empty() {
        return Err(Error::Ordering(format!(
            "vertex {k} has no placed neighbour"
        )));
    }
    let j = nbrs[rng.random_range(0..nbrs.len())];
    let theta = rng.random::<f64>() * TAU;
    state.begin_vertex(k, j, theta)?;
    run_phase(state, rng)
}

/// Checks that `order` is a permutation of the vertices whose every prefix
/// induces a connected subgraph.
pub fn validate_order(graph: &WeightedGraph, order: &[usize]) -> Result<()> {
    let n = graph.n();
    if order.len() != n {
        return Err(Error::Ordering(format!(
            "order has {} entries for {n} vertices",
            order.len()
        )));
    }
    let mut seen = vec![false; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || seen[v] {
            return Err(Error::Ordering(format!(
                "order is not a permutation (entry {v})"
            )));
        }
        if i > 0 && !graph.neighbors(v).iter().any(|&(w, _)| seen[w]) {
            return Err(Error::Ordering(format!(
                "vertex {v} has no earlier neighbour in the order"
            )));
        }
        seen[v] = true;
    }
    Ok(())
}

/// Edges that make every vertex's earlier neighbours a clique (the
/// elimination game run backwards along `order`).
pub fn chordal_fill(graph: &WeightedGraph, order: &[usize]) -> Vec<(usize, usize)> {
    let n = graph.n();
    let mut rank = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let mut adj: Vec<std::collections::BTreeSet<usize>> = (0..n)
        .map(|v| graph.neighbors(v).iter().map(|&(w, _)| w).collect())
        .collect();
    let mut fill = Vec::new();
    for &v in order.iter().rev() {
        let earlier: Vec<usize> = adj[v]
            .iter()
            .copied()
            .filter(|&w| rank[w] < rank[v])
            .collect();
        for (i, &a) in earlier.iter().enumerate() {
            for &b in &earlier[i + 1..] {
                if adj[a].insert(b) {
                    adj[b].insert(a);
                    fill.push((a.min(b), a.max(b)));
                }
            }
        }
    }
    fill
}

/// Step-by-step growth, exposing the intermediate polymers.
#[derive(Clone, Debug)]
pub struct PolymerGrowth {
    state: GrowthState,
    order: Vec<usize>,
    next: usize,
    radii: Option<Vec<f64>>,
}

impl PolymerGrowth {
    /// Disk polymer growth in label order.
    pub fn disks(radii: &[f64]) -> Result<Self> {
        if radii.is_empty() {
            return Err(Error::InvalidInput("need at least one disk".into()));
        }
        let graph = WeightedGraph::disks(radii)?;
        let state = GrowthState::new(graph, ContactLaw::Disks(radii.to_vec()), 0)?;
        Ok(Self {
            state,
            order: (0..radii.len()).collect(),
            next: 1,
            radii: Some(radii.to_vec()),
        })
    }

    /// `G`-polymer growth along `order`, with no fill edges.
    pub fn graph(graph: WeightedGraph, order: &[usize]) -> Result<Self> {
        validate_order(&graph, order)?;
        let state = GrowthState::new(graph, ContactLaw::Scaled, order[0])?;
        Ok(Self {
            state,
            order: order.to_vec(),
            next: 1,
            radii: None,
        })
    }

    pub fn state(&self) -> &GrowthState {
        &self.state
    }

    pub fn placed(&self) -> usize {
        self.next
    }

    pub fn is_complete(&self) -> bool {
        self.next == self.order.len()
    }

    /// Grow the next vertex. Returns false once everything is placed.
    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<bool> {
        if self.is_complete() {
            return Ok(false);
        }
        add_vertex(&mut self.state, self.order[self.next], rng)?;
        self.next += 1;
        Ok(true)
    }

    /// Grow every remaining vertex; the result keeps the original labels.
    pub fn run<R: Rng + ?Sized>(mut self, rng: &mut R) -> Result<Polymer2D> {
        while self.step(rng)? {}
        let pos = self.state.positions()?;
        let tree: Vec<(usize, usize)> = self.state.tree().edges().collect();
        Polymer2D::assemble(pos, self.radii, self.state.graph().clone(), &tree)
    }

    /// The polymer formed by the vertices placed so far, relabelled by
    /// insertion rank.
    pub fn snapshot(&self) -> Result<Polymer2D> {
        let m = self.next;
        let prefix = &self.order[..m];
        let mut rank = vec![usize::MAX; self.order.len()];
        for (i, &v) in prefix.iter().enumerate() {
            rank[v] = i;
        }
        let full = self.state.graph();
        let mut graph = WeightedGraph::new(m);
        for e in full.edges() {
            if rank[e.a] < m && rank[e.b] < m {
                graph.add_edge_with_beta(rank[e.a], rank[e.b], e.length, e.beta)?;
            }
        }
        let pos = self.state.positions()?;
        let positions: Vec<Vec2> = prefix.iter().map(|&v| pos[v]).collect();
        let tree: Vec<(usize, usize)> = self
            .state
            .tree()
            .edges()
            .map(|(p, c)| (rank[p], rank[c]))
            .collect();
        let radii = self
            .radii
            .as_ref()
            .map(|r| prefix.iter().map(|&v| r[v]).collect());
        Polymer2D::assemble(positions, radii, graph, &tree)
    }
}

/// Uniform random polymer of disks with the given radii; disk 0 sits at the origin.
pub fn sample_polymer_2d<R: Rng + ?Sized>(radii: &[f64], rng: &mut R) -> Result<Polymer2D> {
    PolymerGrowth::disks(radii)?.run(rng)
}

/// Uniform random `G`-polymer grown along `order`.
pub fn sample_gpolymer<R: Rng + ?Sized>(
    graph: &WeightedGraph,
    order: &[usize],
    rng: &mut R,
) -> Result<Polymer2D> {
    sample_gpolymer_counted(graph, order, rng).map(|(p, _)| p)
}

/// [`sample_gpolymer`] plus the number of grow-and-shrink attempts it took
/// (always 1 when the order needs no fill edges).
pub fn sample_gpolymer_counted<R: Rng + ?Sized>(
    graph: &WeightedGraph,
    order: &[usize],
    rng: &mut R,
) -> Result<(Polymer2D, usize)> {
    validate_order(graph, order)?;
    let fill = chordal_fill(graph, order);
    if fill.is_empty() {
        let p = PolymerGrowth::graph(graph.clone(), order)?.run(rng)?;
        return Ok((p, 1));
    }
    let mean = graph.edges().iter().map(|e| e.length).sum::<f64>() / graph.edge_count() as f64;
    let fill_len = if mean > 0.0 { mean } else { 1.0 };
    let mut filled = graph.clone();
    let fill_ids = fill
        .iter()
        .map(|&(a, b)| filled.add_edge(a, b, fill_len))
        .collect::<Result<Vec<_>>>()?;
    for attempt in 1..=MAX_FILL_ATTEMPTS {
        let mut state = GrowthState::new(filled.clone(), ContactLaw::Scaled, order[0])?;
        for &k in &order[1..] {
            add_vertex(&mut state, k, rng)?;
        }
        state.begin_shrink(&fill_ids)?;
        run_phase(&mut state, rng)?;
        if fill.iter().any(|&(a, b)| state.tree().has_edge(a, b)) {
            continue;
        }
        let pos = state.positions()?;
        let tree: Vec<(usize, usize)> = state.tree().edges().collect();
        return Ok((
            Polymer2D::assemble(pos, None, graph.clone(), &tree)?,
            attempt,
        ));
    }
    Err(Error::Capacity(format!(
        "no fill-free sample in {MAX_FILL_ATTEMPTS} attempts"
    )))
}

/// Unit disks where disk `k` touches a uniformly chosen earlier disk at a
/// uniform angle, overlaps allowed.
pub fn sample_crossing_inductive_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Polymer2D> {
    if n == 0 {
        return Err(Error::InvalidInput("need at least one disk".into()));
    }
    let mut positions = vec![Vec2::ZERO; n];
    let mut tree = Vec::with_capacity(n - 1);
    let mut graph = WeightedGraph::new(n);
    for k in 1..n {
        let p = rng.random_range(0..k);
        positions[k] = positions[p] + Vec2::from_angle(rng.random::<f64>() * TAU) * 2.0;
        tree.push((p, k));
        graph.add_edge(p, k, 2.0)?;
    }
    Polymer2D::assemble(positions, Some(vec![1.0; n]), graph, &tree)
}
