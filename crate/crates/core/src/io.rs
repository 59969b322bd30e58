//! JSON and CSV formats for sampled polymers.
//!
//! Labels are 1-indexed in every file. JSON is the canonical format and
//! round-trips exactly; CSV flattens one row per vertex.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Vec2;
use crate::graph::WeightedGraph;
use crate::sampler2d::Polymer2D;
use crate::sampler3d::{BetaWeights, Polymer3D};

/// A constraint edge with 1-indexed endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub a: usize,
    pub b: usize,
    pub length: f64,
    pub beta: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Polymer2DFile {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub radii: Option<Vec<f64>>,
    pub positions: Vec<[f64; 2]>,
    pub tree_parent: Vec<Option<usize>>,
    pub tangency_edges: Vec<[usize; 2]>,
    /// Present for `G`-polymers; disk polymers rebuild it from the radii.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub graph: Option<Vec<EdgeRecord>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Polymer3DFile {
    pub n: usize,
    pub positions: Vec<[f64; 3]>,
    pub root: usize,
    pub tree_parent: Vec<Option<usize>>,
    pub tangency_edges: Vec<[usize; 2]>,
    pub beta: BetaWeights,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
}

fn one_based_pairs(pairs: &[(usize, usize)]) -> Vec<[usize; 2]> {
    pairs.iter().map(|&(a, b)| [a + 1, b + 1]).collect()
}

fn one_based_parents(parents: &[Option<usize>]) -> Vec<Option<usize>> {
    parents.iter().map(|p| p.map(|p| p + 1)).collect()
}

fn label(v: usize, n: usize) -> Result<usize> {
    if v == 0 || v > n {
        return Err(Error::InvalidInput(format!("label {v} outside 1..={n}")));
    }
    Ok(v - 1)
}

fn zero_based_pairs(pairs: &[[usize; 2]], n: usize) -> Result<Vec<(usize, usize)>> {
    pairs
        .iter()
        .map(|&[a, b]| Ok((label(a, n)?, label(b, n)?)))
        .collect()
}

fn zero_based_parents(parents: &[Option<usize>], n: usize) -> Result<Vec<Option<usize>>> {
    if parents.len() != n {
        return Err(Error::InvalidInput(format!(
            "{} parents for {n} vertices",
            parents.len()
        )));
    }
    parents
        .iter()
        .map(|p| p.map(|p| label(p, n)).transpose())
        .collect()
}

impl Polymer2DFile {
    pub fn from_polymer(p: &Polymer2D, seed: Option<u64>) -> Self {
        let graph = p.radii.is_none().then(|| {
            p.graph
                .edges()
                .iter()
                .map(|e| EdgeRecord {
                    a: e.a + 1,
                    b: e.b + 1,
                    length: e.length,
                    beta: e.beta,
                })
                .collect()
        });
        Self {
            n: p.n(),
            radii: p.radii.clone(),
            positions: p.positions.iter().map(|v| [v.x, v.y]).collect(),
            tree_parent: one_based_parents(&p.tree_parent),
            tangency_edges: one_based_pairs(&p.tangency_edges),
            graph,
            seed,
        }
    }

    pub fn to_polymer(&self) -> Result<Polymer2D> {
        let n = self.n;
        if self.positions.len() != n {
            return Err(Error::InvalidInput(format!(
                "{} positions for {n} vertices",
                self.positions.len()
            )));
        }
        let graph = match (&self.radii, &self.graph) {
            (Some(r), None) if r.len() == n => WeightedGraph::disks(r)?,
            (None, Some(edges)) => {
                let mut g = WeightedGraph::new(n);
                for e in edges {
                    g.add_edge_with_beta(label(e.a, n)?, label(e.b, n)?, e.length, e.beta)?;
                }
                g
            }
            _ => return Err(Error::InvalidInput("need either n radii or a graph".into())),
        };
        Ok(Polymer2D {
            positions: self
                .positions
                .iter()
                .map(|&[x, y]| Vec2::new(x, y))
                .collect(),
            radii: self.radii.clone(),
            graph,
            tree_parent: zero_based_parents(&self.tree_parent, n)?,
            tangency_edges: zero_based_pairs(&self.tangency_edges, n)?,
        })
    }
}

impl Polymer3DFile {
    pub fn from_polymer(p: &Polymer3D, seed: Option<u64>) -> Self {
        Self {
            n: p.n(),
            positions: p.positions.clone(),
            root: p.root + 1,
            tree_parent: one_based_parents(&p.tree_parent),
            tangency_edges: one_based_pairs(&p.tangency_edges),
            beta: p.beta.clone(),
            seed,
        }
    }

    pub fn to_polymer(&self) -> Result<Polymer3D> {
        let n = self.n;
        if self.positions.len() != n {
            return Err(Error::InvalidInput(format!(
                "{} positions for {n} vertices",
                self.positions.len()
            )));
        }
        Ok(Polymer3D {
            positions: self.positions.clone(),
            root: label(self.root, n)?,
            tree_parent: zero_based_parents(&self.tree_parent, n)?,
            tangency_edges: zero_based_pairs(&self.tangency_edges, n)?,
            beta: self.beta.clone(),
        })
    }
}

pub fn polymer2d_to_json(p: &Polymer2D, seed: Option<u64>) -> Result<String> {
    Ok(serde_json::to_string_pretty(&Polymer2DFile::from_polymer(
        p, seed,
    ))?)
}

/// The polymer and the seed recorded with it.
pub fn polymer2d_from_json(text: &str) -> Result<(Polymer2D, Option<u64>)> {
    let file: Polymer2DFile = serde_json::from_str(text)?;
    Ok((file.to_polymer()?, file.seed))
}

pub fn polymer3d_to_json(p: &Polymer3D, seed: Option<u64>) -> Result<String> {
    Ok(serde_json::to_string_pretty(&Polymer3DFile::from_polymer(
        p, seed,
    ))?)
}

pub fn polymer3d_from_json(text: &str) -> Result<(Polymer3D, Option<u64>)> {
    let file: Polymer3DFile = serde_json::from_str(text)?;
    Ok((file.to_polymer()?, file.seed))
}

/// `label,x,y,radius,parent`; radius is empty for `G`-polymers, parent is
/// empty for vertex 1.
pub fn polymer2d_to_csv(p: &Polymer2D) -> String {
    let mut out = String::from("label,x,y,radius,parent\n");
    for (i, v) in p.positions.iter().enumerate() {
        let r = p
            .radii
            .as_ref()
            .map(|r| r[i].to_string())
            .unwrap_or_default();
        let parent = p.tree_parent[i]
            .map(|q| (q + 1).to_string())
            .unwrap_or_default();
        let _ = writeln!(out, "{},{},{},{r},{parent}", i + 1, v.x, v.y);
    }
    out
}

/// `label,x,y,z,parent`; parent is empty for the root.
pub fn polymer3d_to_csv(p: &Polymer3D) -> String {
    let mut out = String::from("label,x,y,z,parent\n");
    for (i, v) in p.positions.iter().enumerate() {
        let parent = p.tree_parent[i]
            .map(|q| (q + 1).to_string())
            .unwrap_or_default();
        let _ = writeln!(out, "{},{},{},{},{parent}", i + 1, v[0], v[1], v[2]);
    }
    out
}
