//! Approximation-preserving reductions with their lifting algorithms, the
//! gap construction for independent domination, and the self-reduction that
//! turns an IDS decision oracle into a solver.

mod cnf;
mod hitting;
mod selfreduce;

use serde::{Deserialize, Serialize};

pub use cnf::{brute_force_sat, cnf_to_ids_gap, CnfError, CnfFormula, GapArtifact, Literal};
pub use hitting::{ds_to_capds, hs_to_ds, hs_to_nst, lift_ds_to_hs, lift_nst_to_hs};
pub use selfreduce::{ids_selfreduce, SelfReduction};

/// What a vertex of a produced instance stands for in the source instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Origin {
    /// `v_x` for universe element `x`.
    Element(usize),
    /// `w_S` for the set with this index.
    Set(usize),
    /// The extra vertex `u` joined to every element vertex.
    Hub,
    /// `v_i` (positive) or its negation `v̄_i`.
    Literal { var: usize, positive: bool },
    /// Copy `copy` of the clause with index `clause`.
    ClauseCopy { clause: usize, copy: usize },
}

/// A produced instance and, per produced vertex, its origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionArtifact<I> {
    pub instance: I,
    pub back_map: Vec<Origin>,
}
