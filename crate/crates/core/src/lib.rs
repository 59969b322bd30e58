//! Exact uniform sampling of branched polymers.
//!
//! A branched polymer of order `n` is a connected arrangement of `n` labeled
//! disks (or balls) with disjoint interiors, disk 1 centred at the origin.
//! This crate samples such configurations exactly from the uniform measure
//! in the plane ([`sampler2d`]) and in 3-space ([`sampler3d`]), computes the
//! graph invariant `mu(G)` that gives the volume of the space of planar
//! `G`-polymers ([`invariants`]), and ships the independent oracles used to
//! check all of it ([`verification`]).
//!
//! Vertices are 0-indexed throughout the API; the text formats in [`io`] and
//! [`graph::WeightedGraph::parse_edge_list`] use 1-indexed labels.

pub mod error;
pub mod geometry;
pub mod graph;
pub mod invariants;
pub mod io;
pub mod render;
pub mod rng;
pub mod sampler2d;
pub mod sampler3d;
pub mod verification;

pub use error::{Error, Result};
pub use geometry::{AngleAssignment, LengthFunction, RootedTree, Vec2};
pub use graph::{GraphEdge, WeightedGraph};
pub use invariants::{EdgeOrder, MuMethod, MuValue};
pub use sampler2d::{sample_gpolymer, sample_polymer_2d, GrowthState, Polymer2D};
pub use sampler3d::{sample_polymer_3d, BetaWeights, LabeledTree, Polymer3D, ProjectionVector};
pub use verification::TrialReport;
