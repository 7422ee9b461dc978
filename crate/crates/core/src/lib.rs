//! Judicious bipartitions of directed graphs.
//!
//! The crate is organised around a handful of modules:
//!
//! - [`digraph`]: simple digraphs, vertex sets, bipartitions and cut accounting.
//! - [`tightness`]: tight components of undirected graphs, decided both from
//!   the block structure and from the perfect-matching definition.
//! - [`partition`]: gap balancing of a high-degree set, randomized rounding
//!   with concentration certificates, local search and the staged pipeline
//!   that combines them.
//! - [`oracle`]: exhaustive optimal cuts for small instances and the classical
//!   Edwards-type lower bounds.
//! - [`generators`]: seeded instance families.
//!
//! All bound comparisons are done with exact rationals ([`Rational`]).

pub mod digraph;
pub mod error;
pub mod generators;
pub mod oracle;
pub mod partition;
pub mod ratio;
pub mod rng;
pub mod tightness;

pub use digraph::{Bipartition, CutStats, Digraph, Side, UGraph, VertexSet};
pub use error::{Error, Result};
pub use ratio::Rational;
