//! Exact Hamiltonian cycle search for empirical hardness studies.
//!
//! * [`graph`]: mutable simple graph with journaled deletions.
//! * [`generators`]: seeded instance families.
//! * [`pruning`]: forced-edge pruning and non-Hamiltonicity certificates.
//! * [`solver`]: backtrack search with iterated restarts.
//! * [`experiments`]: sweeps, CSV records and aggregate statistics.

pub mod edgelist;
pub mod error;
pub mod experiments;
pub mod generators;
pub mod graph;
pub mod named;
pub mod pruning;
pub mod solver;

pub use error::{Error, Result};
pub use generators::{Family, Instance, InstanceSpec};
pub use graph::{DeletionJournal, Graph, Vertex};
pub use pruning::NonHamReason;
pub use solver::{solve, SearchConfig, SearchStats, SolveOutcome};
