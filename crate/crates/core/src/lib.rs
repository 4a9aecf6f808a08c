//! Wiener indices of graphs, digraphs and mixed graphs, together with exact
//! search over graph orientations.
//!
//! The crate is organised around [`graph::MixedGraph`], a single carrier type
//! for undirected graphs, oriented graphs and partial orientations. On top of
//! it sit:
//!
//! - [`graph`]: BFS distances under the zero-distance convention and every
//!   Wiener-index variant (undirected, directed, `W^max`, subset sums).
//! - [`constructions`]: the `T_k` tree family, its orientation stages
//!   `D_k' ⊇ D_k'' ⊇ D_k`, exact closed-form evaluators, and zig-zag /
//!   centre-vertex detection for tree orientations.
//! - [`solver`]: exhaustive and branch-and-bound search for orientations of
//!   maximum or minimum Wiener index, a hill-climbing heuristic, and a
//!   labelled-tournament maximiser.
//! - [`reduction`]: the `G^{a,b}` gadget that ties Hamiltonian `(a,b)`-paths
//!   to high-Wiener orientations, with a verifier for the forward direction.
//! - [`transitive`]: transitivity checking and transitive-orientation
//!   (comparability) recognition by edge-direction forcing.
//!
//! All types are immutable after construction and every operation is pure, so
//! instances can be shared freely across threads.

pub mod constructions;
pub mod graph;
pub mod reduction;
pub mod solver;
pub mod transitive;

pub use graph::{
    DistanceMatrix, EdgeChoice, GraphError, MixedGraph, OrientationAssignment, VertexSubset,
};
