use std::f64::consts::TAU;

use rand::Rng;

use crate::error::{Error, Result};
use crate::geometry::Vec2;
use crate::graph::WeightedGraph;
use crate::sampler2d::Polymer2D;
use crate::sampler3d::{sample_labeled_tree, BetaWeights, LabeledTree, Polymer3D};

/// Place a tree from vertex 0 outwards: `offset(parent, child)` is the step
/// from parent to child.
fn place<const D: usize>(
    n: usize,
    edges: &[(usize, usize)],
    mut offset: impl FnMut(usize, usize) -> [f64; D],
) -> (Vec<[f64; D]>, Vec<Option<usize>>) {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut pos = vec![[0.0; D]; n];
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(v);
                let step = offset(v, w);
                for k in 0..D {
                    pos[w][k] = pos[v][k] + step[k];
                }
                stack.push(w);
            }
        }
    }
    (pos, parent)
}

fn dist_sq<const D: usize>(a: &[f64; D], b: &[f64; D]) -> f64 {
    (0..D).map(|k| (a[k] - b[k]).powi(2)).sum()
}

fn planar_step<R: Rng + ?Sized>(len: f64, rng: &mut R) -> [f64; 2] {
    let (s, c) = (rng.random::<f64>() * TAU).sin_cos();
    [len * c, len * s]
}

/// Uniform labeled tree, uniform angles, accepted iff every non-tree pair of
/// disks is strictly apart.
pub fn rejection_sample_2d<R: Rng + ?Sized>(
    radii: &[f64],
    rng: &mut R,
) -> Result<Option<Polymer2D>> {
    let n = radii.len();
    if n == 0 || radii.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
        return Err(Error::InvalidInput(
            "need at least one positive radius".into(),
        ));
    }
    let tree = sample_labeled_tree(n, rng)?;
    let (pos, _) = place::<2>(n, tree.edges(), |p, c| {
        planar_step(radii[p] + radii[c], rng)
    });
    for i in 0..n {
        for j in i + 1..n {
            if tree.edges().binary_search(&(i, j)).is_err()
                && dist_sq(&pos[i], &pos[j]) <= (radii[i] + radii[j]).powi(2)
            {
                return Ok(None);
            }
        }
    }
    let positions = pos.iter().map(|p| Vec2::new(p[0], p[1])).collect();
    Polymer2D::assemble(
        positions,
        Some(radii.to_vec()),
        WeightedGraph::disks(radii)?,
        tree.edges(),
    )
    .map(Some)
}

/// Rejection sampler for `G`-polymers: a uniform spanning tree of `G` with
/// uniform angles, accepted iff every non-tree edge is strictly longer than
/// its bound.
#[derive(Clone, Debug)]
pub struct GPolymerOracle {
    graph: WeightedGraph,
    trees: Vec<Vec<usize>>,
}

impl GPolymerOracle {
    pub fn new(graph: &WeightedGraph) -> Result<Self> {
        if graph.n() == 0 {
            return Err(Error::InvalidInput("empty graph".into()));
        }
        if !graph.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(Self {
            graph: graph.clone(),
            trees: graph.spanning_trees(),
        })
    }

    pub fn spanning_tree_count(&self) -> usize {
        self.trees.len()
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Option<Polymer2D>> {
        let g = &self.graph;
        let n = g.n();
        let ids = &self.trees[rng.random_range(0..self.trees.len())];
        let mut in_tree = vec![false; g.edge_count()];
        let mut edges = Vec::with_capacity(ids.len());
        for &id in ids {
            in_tree[id] = true;
            edges.push((g.edge(id).a, g.edge(id).b));
        }
        let (pos, _) = place::<2>(n, &edges, |p, c| {
            let id = g.edge_between(p, c).expect("tree edge is a graph edge");
            planar_step(g.edge(id).length, rng)
        });
        for (id, e) in g.edges().iter().enumerate() {
            if !in_tree[id] && dist_sq(&pos[e.a], &pos[e.b]) <= e.length * e.length {
                return Ok(None);
            }
        }
        let positions = pos.iter().map(|p| Vec2::new(p[0], p[1])).collect();
        Polymer2D::assemble(positions, None, g.clone(), &edges).map(Some)
    }
}

/// One draw of [`GPolymerOracle`]; enumerates the spanning trees each call.
pub fn rejection_sample_gpolymer<R: Rng + ?Sized>(
    graph: &WeightedGraph,
    rng: &mut R,
) -> Result<Option<Polymer2D>> {
    GPolymerOracle::new(graph)?.sample(rng)
}

/// Uniform labeled tree, unit steps in uniform directions on the sphere,
/// accepted iff every non-tree pair of unit-diameter spheres is strictly
/// apart. Sphere 0 is the root, at the origin.
pub fn rejection_sample_3d<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Option<Polymer3D>> {
    if n == 0 {
        return Err(Error::InvalidInput("need at least one sphere".into()));
    }
    let tree = sample_labeled_tree(n, rng)?;
    let (pos, parent) = place::<3>(n, tree.edges(), |_, _| {
        let z = rng.random::<f64>() * 2.0 - 1.0;
        let (s, c) = (rng.random::<f64>() * TAU).sin_cos();
        let rho = (1.0 - z * z).sqrt();
        [z, rho * c, rho * s]
    });
    for i in 0..n {
        for j in i + 1..n {
            if tree.edges().binary_search(&(i, j)).is_err() && dist_sq(&pos[i], &pos[j]) <= 1.0 {
                return Ok(None);
            }
        }
    }
    let tangency_edges = LabeledTree::from_edges(n, tree.edges())?.edges().to_vec();
    Ok(Some(Polymer3D {
        positions: pos,
        root: 0,
        tree_parent: parent,
        tangency_edges,
        beta: BetaWeights::Uniform,
    }))
}
