//! Device connectivity: coupling graphs, hop distances, non-cutting vertices
//! and approximate Steiner trees.

mod builtin;
mod graph;
mod steiner;

pub use builtin::{benchmark_architectures, builtin_names};
pub use graph::{floyd_warshall, CouplingGraph, GraphSpec};
pub use steiner::SteinerTree;
