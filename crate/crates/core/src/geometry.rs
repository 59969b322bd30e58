//! Planar tree kinematics shared by the samplers.
//!
//! A configuration is stored as a rooted tangency tree plus one absolute
//! angle per tree edge (keyed by the child vertex). Positions are always
//! recomputed from the tree: the root sits at the origin and every child is
//! offset from its parent by `L_e(t) * (cos theta_e, sin theta_e)`.

use std::collections::VecDeque;
use std::f64::consts::TAU;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// Relative tolerance on constraint gaps (scaled by the required length).
pub const GAP_TOLERANCE: f64 = 1e-9;

/// Tolerance for a gap between two points whose required separation is
/// `required`. The second term absorbs rounding in positions far from the
/// origin when the required length itself is tiny.
pub fn gap_tolerance(required: f64, a: Vec2, b: Vec2) -> f64 {
    GAP_TOLERANCE * required.abs() + 1e-13 * (a.norm() + b.norm()) + 1e-15
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Unit vector at angle `theta` counterclockwise from the positive x-axis.
    pub fn from_angle(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self { x: c, y: s }
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    /// Angle in `[0, 2pi)`.
    pub fn angle(self) -> f64 {
        normalize_angle(self.y.atan2(self.x))
    }

    pub fn rotate(self, phi: f64) -> Self {
        let (s, c) = phi.sin_cos();
        Self {
            x: c * self.x - s * self.y,
            y: s * self.x + c * self.y,
        }
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Vec2 {
    fn add_assign(&mut self, o: Vec2) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// Reduce an angle into `[0, 2pi)`.
pub fn normalize_angle(theta: f64) -> f64 {
    let r = theta.rem_euclid(TAU);
    // rem_euclid can return TAU itself for tiny negative inputs.
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// A tree on a subset of the vertex slots `0..capacity`, directed away from its root.
///
/// Slots that are not members are simply absent; this lets the samplers keep
/// one tree while vertices are placed one at a time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    root: usize,
    parent: Vec<Option<usize>>,
    member: Vec<bool>,
    /// Members, every parent before its children.
    order: Vec<usize>,
}

impl RootedTree {
    /// The one-vertex tree `{root}` inside `capacity` slots.
    pub fn singleton(capacity: usize, root: usize) -> Self {
        assert!(root < capacity, "root {root} out of range");
        let mut member = vec![false; capacity];
        member[root] = true;
        Self {
            root,
            parent: vec![None; capacity],
            member,
            order: vec![root],
        }
    }

    /// Build from a parent map. Vertices with `None` other than `root` are
    /// treated as non-members unless some member names them as parent.
    pub fn from_parents(root: usize, parent: Vec<Option<usize>>) -> Result<Self> {
        let n = parent.len();
        if root >= n {
            return Err(Error::Structure(format!("root {root} outside {n} slots")));
        }
        if parent[root].is_some() {
            return Err(Error::Structure("root has a parent".into()));
        }
        let mut children = vec![Vec::new(); n];
        for (v, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                if p >= n || p == v {
                    return Err(Error::Structure(format!("bad parent {p} for vertex {v}")));
                }
                children[p].push(v);
            }
        }
        let mut member = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::from([root]);
        member[root] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &c in &children[v] {
                member[c] = true;
                queue.push_back(c);
            }
        }
        if let Some(v) = (0..n).find(|&v| parent[v].is_some() && !member[v]) {
            return Err(Error::Structure(format!(
                "vertex {v} does not reach the root (cycle)"
            )));
        }
        Ok(Self {
            root,
            parent,
            member,
            order,
        })
    }

    pub fn capacity(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.member.get(v).copied().unwrap_or(false)
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    /// Members in parent-before-child order.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Hang a new leaf `child` under the member `parent`.
    pub fn attach(&mut self, child: usize, parent: usize) -> Result<()> {
        if !self.contains(parent) {
            return Err(Error::Structure(format!(
                "parent {parent} is not in the tree"
            )));
        }
        if self.contains(child) {
            return Err(Error::Structure(format!(
                "vertex {child} already in the tree"
            )));
        }
        self.parent[child] = Some(parent);
        self.member[child] = true;
        self.order.push(child);
        Ok(())
    }

    /// Tree edges as `(parent, child)` pairs.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.order
            .iter()
            .filter_map(move |&c| self.parent[c].map(|p| (p, c)))
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.parent.get(a).copied().flatten() == Some(b)
            || self.parent.get(b).copied().flatten() == Some(a)
    }

    fn depth_of(&self, mut v: usize) -> usize {
        let mut d = 0;
        while let Some(p) = self.parent[v] {
            v = p;
            d += 1;
        }
        d
    }

    /// Vertex path from `a` to `b` inclusive.
    pub fn path(&self, a: usize, b: usize) -> Result<Vec<usize>> {
        if !self.contains(a) || !self.contains(b) {
            return Err(Error::Structure(format!(
                "path endpoints {a},{b} not both in tree"
            )));
        }
        let (mut x, mut y) = (a, b);
        let (mut dx, mut dy) = (self.depth_of(a), self.depth_of(b));
        let mut left = vec![x];
        let mut right = vec![y];
        while dx > dy {
            x = self.parent[x].expect("depth bookkeeping");
            left.push(x);
            dx -= 1;
        }
        while dy > dx {
            y = self.parent[y].expect("depth bookkeeping");
            right.push(y);
            dy -= 1;
        }
        while x != y {
            x = self.parent[x].expect("common ancestor exists");
            y = self.parent[y].expect("common ancestor exists");
            left.push(x);
            right.push(y);
        }
        right.pop();
        left.extend(right.into_iter().rev());
        Ok(left)
    }
}

/// One absolute angle per tree edge, keyed by the child vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct AngleAssignment {
    theta: Vec<Option<f64>>,
}

impl AngleAssignment {
    pub fn new(capacity: usize) -> Self {
        Self {
            theta: vec![None; capacity],
        }
    }

    pub fn set(&mut self, child: usize, theta: f64) {
        self.theta[child] = Some(normalize_angle(theta));
    }

    pub fn clear(&mut self, child: usize) {
        self.theta[child] = None;
    }

    pub fn get(&self, child: usize) -> Option<f64> {
        self.theta.get(child).copied().flatten()
    }
}

/// Affine length `base + coeff * t` of one tree edge.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EdgeLength {
    pub base: f64,
    pub coeff: f64,
}

impl EdgeLength {
    pub const fn fixed(len: f64) -> Self {
        Self {
            base: len,
            coeff: 0.0,
        }
    }

    pub fn at(&self, t: f64) -> f64 {
        self.base + self.coeff * t
    }
}

/// Lengths of the tree edges, keyed by child vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct LengthFunction {
    lengths: Vec<Option<EdgeLength>>,
}

impl LengthFunction {
    pub fn new(capacity: usize) -> Self {
        Self {
            lengths: vec![None; capacity],
        }
    }

    pub fn set(&mut self, child: usize, len: EdgeLength) {
        self.lengths[child] = Some(len);
    }

    pub fn get(&self, child: usize) -> Option<EdgeLength> {
        self.lengths.get(child).copied().flatten()
    }
}

fn edge_data(
    child: usize,
    angles: &AngleAssignment,
    lengths: &LengthFunction,
) -> Result<(f64, EdgeLength)> {
    let theta = angles
        .get(child)
        .ok_or_else(|| Error::Structure(format!("missing angle for edge into {child}")))?;
    let len = lengths
        .get(child)
        .ok_or_else(|| Error::Structure(format!("missing length for edge into {child}")))?;
    Ok((theta, len))
}

/// Positions of the tree members at growth parameter `t`. Non-members are
/// left at the origin.
pub fn forward_positions(
    tree: &RootedTree,
    angles: &AngleAssignment,
    lengths: &LengthFunction,
    t: f64,
) -> Result<Vec<Vec2>> {
    let mut pos = vec![Vec2::ZERO; tree.capacity()];
    for &c in tree.order() {
        if let Some(p) = tree.parent(c) {
            let (theta, len) = edge_data(c, angles, lengths)?;
            pos[c] = pos[p] + Vec2::from_angle(theta) * len.at(t);
        }
    }
    Ok(pos)
}

/// Time derivative of [`forward_positions`] with the angles held fixed.
pub fn forward_velocities(
    tree: &RootedTree,
    angles: &AngleAssignment,
    lengths: &LengthFunction,
) -> Result<Vec<Vec2>> {
    let mut vel = vec![Vec2::ZERO; tree.capacity()];
    for &c in tree.order() {
        if let Some(p) = tree.parent(c) {
            let (theta, len) = edge_data(c, angles, lengths)?;
            vel[c] = vel[p];
            if len.coeff != 0.0 {
                vel[c] += Vec2::from_angle(theta) * len.coeff;
            }
        }
    }
    Ok(vel)
}

/// `gap(e) = |p_i - p_j| - scale_e * r_e` for every edge of `graph`, in edge order.
pub fn constraint_gaps(
    positions: &[Vec2],
    graph: &WeightedGraph,
    required_scale: &[f64],
) -> Vec<f64> {
    graph
        .edges()
        .iter()
        .zip(required_scale)
        .map(|(e, s)| (positions[e.a] - positions[e.b]).norm() - s * e.length)
        .collect()
}

/// Rebuild a rooted tree from a tight-edge set and the current positions.
///
/// Every edge is directed away from `root`; its angle is the absolute angle
/// of `position(child) - position(parent)`.
pub fn reroot_and_orient(
    tight_edges: &[(usize, usize)],
    root: usize,
    positions: &[Vec2],
) -> Result<(RootedTree, AngleAssignment)> {
    let n = positions.len();
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in tight_edges {
        if a >= n || b >= n || a == b {
            return Err(Error::Structure(format!("bad tight edge ({a}, {b})")));
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    let mut angles = AngleAssignment::new(n);
    let mut queue = VecDeque::from([root]);
    seen[root] = true;
    let mut reached = 1;
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if w == parent[v].unwrap_or(usize::MAX) {
                continue;
            }
            if seen[w] {
                return Err(Error::Structure("tight edges contain a cycle".into()));
            }
            seen[w] = true;
            reached += 1;
            parent[w] = Some(v);
            angles.set(w, (positions[w] - positions[v]).angle());
            queue.push_back(w);
        }
    }
    if reached != tight_edges.len() + 1 {
        return Err(Error::Structure(
            "tight edges are disconnected or contain a cycle".into(),
        ));
    }
    Ok((RootedTree::from_parents(root, parent)?, angles))
}
