//! Cycle events: detecting the next contact and choosing which edge of the
//! resulting cycle to release.
//!
//! Within one tree chart every position is affine in `t`, so the squared
//! distance of a pair is a quadratic in `t`. Each monotone piece of that
//! quadratic is checked for a downward zero crossing of the gap, which is
//! then refined by bisection.

use std::f64::consts::PI;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;

use super::state::GrowthState;
use crate::error::{Error, Result};
use crate::geometry::{gap_tolerance, reroot_and_orient, AngleAssignment, Vec2};

/// Events closer than this in `t` count as simultaneous, and contacts this
/// close to the end of a phase are ignored.
pub const EVENT_RESOLUTION: f64 = 1e-12;

/// A closing pair fires immediately only when its gap is within rounding of
/// zero, relative to the coordinates involved (not the required length: a
/// tiny disk next to a large one needs the finer scale).
const FIRE_NOW_TOLERANCE: f64 = 1e-13;

/// A constrained pair whose gap closes at parameter `t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairEvent {
    pub t: f64,
    /// Graph edge id of the pair.
    pub edge: usize,
    /// Endpoints with `pair.0 < pair.1`.
    pub pair: (usize, usize),
}

/// One removable edge of an event cycle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Candidate {
    /// Endpoints of the edge as traversed around the cycle.
    pub edge: (usize, usize),
    pub graph_edge: usize,
    /// Gap-opening rate of the edge in the chart that drops it.
    pub rate: f64,
    /// `length * rate`: the rate at which that chart gains volume here.
    pub weight: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CycleEvent {
    pub t: f64,
    pub pair: (usize, usize),
    /// Tree path from `pair.0` to `pair.1`; the cycle closes back through the pair.
    pub cycle: Vec<usize>,
    /// One entry per cycle edge, tree edges in path order and the new pair last.
    pub candidates: Vec<Candidate>,
}

struct PairMotion {
    a: Vec2,
    b: Vec2,
    c: f64,
    d: f64,
}

impl PairMotion {
    fn gap(&self, s: f64) -> f64 {
        (self.a + self.b * s).norm() - (self.c + self.d * s)
    }

    fn gap_rate_at_zero(&self) -> f64 {
        let r = self.a.norm();
        if r > 0.0 {
            self.a.dot(self.b) / r - self.d
        } else {
            self.b.norm() - self.d
        }
    }

    /// First `s` in `[0, horizon]` where the gap reaches 0 from above,
    /// bisected to machine precision.
    fn first_closing(&self, horizon: f64, tol: f64) -> Option<f64> {
        let g0 = self.gap(0.0);
        if g0 <= tol && self.gap_rate_at_zero() < 0.0 {
            return Some(0.0);
        }
        // q(s) = alpha s^2 + 2 beta s + const has the sign of the gap.
        let alpha = self.b.norm_sq() - self.d * self.d;
        let beta = self.a.dot(self.b) - self.c * self.d;
        let mut cuts = vec![0.0];
        if alpha != 0.0 {
            let vertex = -beta / alpha;
            if vertex > 0.0 && vertex < horizon {
                cuts.push(vertex);
            }
        }
        cuts.push(horizon);
        for w in cuts.windows(2) {
            let (mut lo, mut hi) = (w[0], w[1]);
            if self.gap(lo) > 0.0 && self.gap(hi) <= 0.0 {
                loop {
                    let mid = 0.5 * (lo + hi);
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    if self.gap(mid) > 0.0 {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                return Some(hi);
            }
        }
        None
    }
}

/// Earliest `t* > t` (or `t* = t` for a contact that is already closing) at
/// which an active non-tree pair becomes tight, if any before `t = 1`.
pub fn detect_next_event(state: &GrowthState) -> Result<Option<PairEvent>> {
    let t0 = state.t();
    let horizon = 1.0 - t0;
    let pos = state.positions()?;
    let vel = state.velocities()?;
    let graph = state.graph();
    let tree = state.tree();
    let mut best: Option<PairEvent> = None;
    for (id, e) in graph.edges().iter().enumerate() {
        if !state.is_active(id) || tree.has_edge(e.a, e.b) {
            continue;
        }
        let req = state.requirement(id);
        let motion = PairMotion {
            a: pos[e.b] - pos[e.a],
            b: vel[e.b] - vel[e.a],
            c: req.at(t0),
            d: req.coeff,
        };
        // Rigidly co-moving pairs were checked when they last moved.
        if motion.b == Vec2::ZERO && motion.d == 0.0 {
            continue;
        }
        let tol = gap_tolerance(motion.c, pos[e.a], pos[e.b]);
        let g0 = motion.gap(0.0);
        if g0 < -tol {
            return Err(Error::InconsistentState(format!(
                "pair ({}, {}) overlaps by {:e} at t = {t0}",
                e.a, e.b, -g0
            )));
        }
        let fire_tol = FIRE_NOW_TOLERANCE * (pos[e.a].norm() + pos[e.b].norm() + motion.c);
        let Some(s) = motion.first_closing(horizon, fire_tol) else {
            continue;
        };
        // A contact landing on the end of the phase has no volume to move
        // (and when lengths shrink to 0 the constraint is vacuous there).
        if s > 0.0 && t0 + s > 1.0 - EVENT_RESOLUTION {
            continue;
        }
        let ev = PairEvent {
            t: t0 + s,
            edge: id,
            pair: (e.a.min(e.b), e.a.max(e.b)),
        };
        best = match best {
            None => Some(ev),
            Some(b) if ev.t < b.t - EVENT_RESOLUTION => Some(ev),
            Some(b) if (ev.t - b.t).abs() <= EVENT_RESOLUTION && ev.pair < b.pair => Some(ev),
            keep => keep,
        };
    }
    Ok(best)
}

/// Rates of every cycle edge for the event `ev`, with the state already
/// advanced to `ev.t`.
///
/// Dropping cycle edge `e` leaves a tree `T'_e`. With the angles of `T'_e`
/// fixed, the edge vectors of the other cycle edges change only through
/// their lengths, so `e`'s vector moves at `-sum_{f != e} l'_f u_f`.
pub fn candidate_rates(state: &GrowthState, ev: &PairEvent) -> Result<CycleEvent> {
    let (a, b) = ev.pair;
    let tree = state.tree();
    let graph = state.graph();
    let t = state.t();
    let path = tree.path(a, b)?;
    // Oriented edge vectors around the cycle a -> ... -> b -> a.
    let mut dirs = Vec::with_capacity(path.len());
    let mut lens = Vec::with_capacity(path.len());
    let mut rates = Vec::with_capacity(path.len());
    let mut ends = Vec::with_capacity(path.len());
    let mut sum = Vec2::ZERO;
    for w in path.windows(2) {
        let (x, y) = (w[0], w[1]);
        let (child, sign) = if tree.parent(y) == Some(x) {
            (y, 1.0)
        } else {
            (x, -1.0)
        };
        let theta = state
            .angles()
            .get(child)
            .ok_or_else(|| Error::InconsistentState(format!("missing angle for {child}")))?;
        let len = state
            .lengths()
            .get(child)
            .ok_or_else(|| Error::InconsistentState(format!("missing length for {child}")))?;
        let u = Vec2::from_angle(theta) * sign;
        sum += u * len.at(t);
        dirs.push(u);
        lens.push(len.at(t));
        rates.push(len.coeff);
        ends.push((x, y));
    }
    let closing = -sum;
    let req = state.requirement(ev.edge);
    let norm = closing.norm();
    dirs.push(if norm > 0.0 {
        closing * (1.0 / norm)
    } else {
        Vec2::ZERO
    });
    lens.push(req.at(t));
    rates.push(req.coeff);
    ends.push((b, a));

    let total: Vec2 = dirs
        .iter()
        .zip(&rates)
        .fold(Vec2::ZERO, |acc, (&u, &r)| acc + u * r);
    let mut candidates = Vec::with_capacity(dirs.len());
    for i in 0..dirs.len() {
        let moved = -(total - dirs[i] * rates[i]);
        let rate = dirs[i].dot(moved) - rates[i];
        let (x, y) = ends[i];
        let graph_edge = graph.edge_between(x, y).ok_or_else(|| {
            Error::InconsistentState(format!("cycle edge ({x}, {y}) is not a graph edge"))
        })?;
        candidates.push(Candidate {
            edge: (x, y),
            graph_edge,
            rate,
            weight: lens[i] * rate,
        });
    }
    Ok(CycleEvent {
        t: ev.t,
        pair: ev.pair,
        cycle: path,
        candidates,
    })
}

/// Drop one cycle edge, chosen with probability proportional to its positive
/// weight, and re-root the remaining tight edges.
///
/// Returns the dropped edge.
pub fn break_cycle<R: Rng + ?Sized>(
    state: &mut GrowthState,
    event: &CycleEvent,
    rng: &mut R,
) -> Result<(usize, usize)> {
    let weights: Vec<f64> = event.candidates.iter().map(|c| c.weight.max(0.0)).collect();
    let dist = WeightedIndex::new(&weights).map_err(|_| {
        Error::Geometry(format!(
            "no cycle edge gains volume at t = {} for pair {:?}: rates {:?}",
            event.t,
            event.pair,
            event.candidates.iter().map(|c| c.rate).collect::<Vec<_>>()
        ))
    })?;
    let dropped = event.candidates[dist.sample(rng)].edge;
    let (a, b) = event.pair;
    let same = |x: (usize, usize), y: (usize, usize)| x == y || (x.1, x.0) == y;
    if same(dropped, (a, b)) {
        return Ok(dropped);
    }
    let old = state.tree().clone();
    let mut tight: Vec<(usize, usize)> = old.edges().filter(|&e| !same(e, dropped)).collect();
    tight.push((a, b));
    let pos = state.positions()?;
    let (tree, fresh) = reroot_and_orient(&tight, old.root(), &pos)?;
    // Keep the exact angles of surviving edges; only the new contact takes
    // its angle from the (rounded) positions.
    let mut angles = AngleAssignment::new(old.capacity());
    for (p, c) in tree.edges() {
        let theta = if old.parent(c) == Some(p) {
            state.angles().get(c)
        } else if old.parent(p) == Some(c) {
            state.angles().get(p).map(|th| th + PI)
        } else {
            fresh.get(c)
        };
        angles.set(
            c,
            theta
                .ok_or_else(|| Error::InconsistentState(format!("no angle for edge ({p}, {c})")))?,
        );
    }
    state.replace_tree(tree, angles)?;
    Ok(dropped)
}
