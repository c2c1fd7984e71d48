//! Extremal gaps between adjacency eigenvalues of graphs with self-loops.
//!
//! The (i,j)-spread of a graph on `n` vertices is `λ_{i+1} − λ_{n−j}`. This
//! crate provides the looped-graph model, dense eigensolvers, the extremal
//! constructions (closed path, closed cube, Hadamard equality graphs and the
//! conjectured families), graph6/sparse6 interchange, closed-form bounds with
//! certificate-backed tables, and exhaustive/heuristic search.

pub mod bounds;
pub mod canonical;
pub mod codec;
pub mod constructions;
pub mod format;
pub mod graph;
pub mod search;
pub mod spectral;
pub mod verify;

pub use canonical::{CanonicalForm, CANONICAL_LIMIT};
pub use graph::{DegreeProfile, GraphError, LoopedGraph};
pub use spectral::{Spectrum, SpreadQuery};
