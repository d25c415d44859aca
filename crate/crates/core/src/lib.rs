//! Disk scaling: decide whether rescaling at most `k` disks within a radius
//! interval puts a disk intersection graph into a target class.
//!
//! Shared types live in [`geom`] and are re-exported at the crate root.

pub mod gadgets;
pub mod geom;
pub mod graph;
pub mod harness;
pub mod io;
pub mod lp;
pub mod oracle;
pub mod solver;

pub use gadgets::{GadgetError, ReductionArtifact, Role};
pub use geom::{
    build_disk_graph, build_unit_disk_graph, verify_solution, GraphClass, Instance, InstanceError, Point, RadiusAssignment,
    Rational, Verdict, VerifyError, Violation,
};
pub use graph::AdjacencyGraph;
pub use io::{InstanceFile, IoError, SolutionFile};
pub use lp::DEFAULT_LP_SEED;
pub use oracle::{brute_force_solve, OracleBudget, OracleError};
pub use solver::{solve, solve_cluster_fpt, solve_complete, solve_xp, Algorithm, Answer, SolveError, SolveOptions, SolveOutcome, SolveStats};
