//! Single-source shortest paths on graphs with negative arc weights.
//!
//! The reweighting loop alternates three phases until no arc is negative:
//! *expand* relaxes the admissible subgraph (arcs of nonpositive reduced
//! weight) in topological order, *connect* runs Dijkstra over the remaining
//! nonnegative arcs with every vertex seeded at its current label, and
//! *adjust* folds the labels into the arc weights. The accumulated potentials
//! make every arc nonnegative, after which one Dijkstra from the source gives
//! exact distances. Negative cycles are reported with a verified certificate.
//!
//! ```
//! use snakes_sp::{solve_sssp, Graph, SolveConfig, SolveOutcome};
//!
//! let g = Graph::from_triples(3, &[(0, 1, 2), (1, 2, -5), (0, 2, 0)]).unwrap();
//! match solve_sssp(&g, 0, &SolveConfig::default()).unwrap() {
//!     SolveOutcome::ShortestPaths(labels) => {
//!         assert_eq!(labels.dist, vec![Some(0), Some(2), Some(-3)]);
//!     }
//!     SolveOutcome::NegativeCycle(_) => unreachable!(),
//! }
//! ```

pub mod bench;
pub mod classic;
pub mod cli;
pub mod contraction;
pub mod counters;
pub mod dimacs;
pub mod error;
pub mod gen;
pub mod graph;
pub mod pqueue;
pub mod snakes;
pub mod solver;

pub use counters::Counters;
pub use error::{Error, Result};
pub use graph::{
    Arc, ArcId, Digraph, DistanceLabels, Graph, NegativeCycle, Potentials, SolveOutcome, VertexId,
    Weight,
};
pub use pqueue::HeapKind;
pub use snakes::Variant;
pub use solver::{
    differential_check, reweight, solve_sssp, solve_with_report, DiffVerdict, ReweightArtifact,
    Reweighted, SolveConfig,
};
