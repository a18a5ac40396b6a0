//! Colorings in which every triangle sees exactly two colors, and the
//! mixed-hypergraph machinery behind them.

pub mod cli;
pub mod constructions;
pub mod fast_paths;
pub mod graph;
pub mod hypergraph;
pub mod io;
pub mod named;
pub mod solver;

pub use graph::{Graph, GraphError, Triangle};
pub use hypergraph::{is_worm_coloring, Coloring, MixedHypergraph};
pub use solver::{ChromaticValue, SearchBudget, SearchOutcome, SpectrumReport};
