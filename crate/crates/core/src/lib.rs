//! Approximate Turing kernelizations for domination problems parameterized by
//! treewidth plus maximum degree, with the oracles, combination steps and
//! reductions they rely on.

pub mod graph;
pub mod kernels;
pub mod oracles;
pub mod problems;
pub mod rational;
pub mod reductions;
pub mod solution;
pub mod treedecomp;

pub use graph::{CapacitatedGraph, Graph, GraphError, Separation, Vertex, VertexSet};
pub use problems::{HittingSetInstance, SteinerInstance};
pub use rational::{parse_ratio, Rational};
pub use solution::{
    check_solution, CapacitatedSolution, Instance, ProblemKind, Solution, Violation,
};
pub use treedecomp::{NiceTreeDecomposition, TreeDecomposition};
