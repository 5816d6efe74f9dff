//! The four approximate Turing kernelizations and the lemmas that glue
//! partial solutions together.

mod combine;
mod recursion;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::oracles::{Backend, OracleError, OracleHandle};
use crate::rational::{ceil_nonneg, Rational};
use crate::solution::{Instance, ProblemKind, Solution};
use crate::treedecomp::{DecompositionError, NiceTreeDecomposition, NodeId};

pub use combine::{combine_capds, combine_cds, combine_ids, complete_independent};
pub use recursion::{kernelize_capds, kernelize_cds, kernelize_ds, kernelize_ids};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("epsilon must be positive, got {0}")]
    NonPositiveEpsilon(Rational),
    #[error("no kernelization for problem kind {0}")]
    UnsupportedKind(ProblemKind),
    #[error("oracle answers {got} but the kernelization needs {want}")]
    OracleKind { got: ProblemKind, want: ProblemKind },
    #[error("{0}")]
    Precondition(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The size threshold `s` of the kernelization for `kind`, rounded up.
///
/// DS: `2(1+ε)/ε·(tw+1)(Δ+1)`; CapDS and IDS: `3(1+ε)/ε·(tw+1)(Δ+1)²`;
/// CDS: `4(1+ε)/ε·(Δ+1)(tw+1) + (2Δ+2)(1+ε)/ε`.
pub fn kernel_size(
    kind: ProblemKind,
    epsilon: Rational,
    tw: usize,
    delta: usize,
) -> Result<usize, KernelError> {
    if epsilon <= Ratio::from_integer(0) {
        return Err(KernelError::NonPositiveEpsilon(epsilon));
    }
    let f = (Ratio::from_integer(1) + epsilon) / epsilon;
    let t = Ratio::from_integer((tw + 1) as i64);
    let d = Ratio::from_integer((delta + 1) as i64);
    let int = |k: i64| Ratio::from_integer(k);
    let s = match kind {
        ProblemKind::Ds => int(2) * f * t * d,
        ProblemKind::CapDs | ProblemKind::Ids => int(3) * f * t * d * d,
        ProblemKind::Cds => int(4) * f * d * t + int(2) * d * f,
        other => return Err(KernelError::UnsupportedKind(other)),
    };
    Ok(ceil_nonneg(s))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KernelConfig {
    pub epsilon: Rational,
    /// Keep one record per recursion level in the trace.
    pub record_trace: bool,
}

impl KernelConfig {
    pub fn new(epsilon: Rational) -> Self {
        Self {
            epsilon,
            record_trace: true,
        }
    }
}

/// Threshold and parameters a run uses; fixed for the whole recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelParams {
    pub kind: ProblemKind,
    pub tw: usize,
    pub delta: usize,
    pub s: usize,
}

impl KernelParams {
    /// Uses the width of `ntd` (at least 0) and the maximum degree of `g`.
    pub fn for_instance(
        kind: ProblemKind,
        epsilon: Rational,
        g: &Graph,
        ntd: &NiceTreeDecomposition,
    ) -> Result<Self, KernelError> {
        let tw = ntd.width().max(0) as usize;
        let delta = g.max_degree();
        let s = kernel_size(kind, epsilon, tw, delta)?;
        Ok(Self { kind, tw, delta, s })
    }

    /// Largest oracle query the run may make: `2s`, plus the gadget vertex for CDS.
    pub fn query_cap(&self) -> usize {
        2 * self.s + usize::from(self.kind == ProblemKind::Cds)
    }

    /// A fresh oracle whose size cap is [`Self::query_cap`].
    pub fn oracle(&self, backend: Backend) -> OracleHandle {
        OracleHandle::new(self.kind, backend, self.query_cap())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub depth: usize,
    /// Vertices of the graph at this level.
    pub n: usize,
    /// Split node, absent for base cases.
    pub node: Option<NodeId>,
    pub subtree_size: usize,
    pub bag_size: usize,
    pub query_size: usize,
    pub answer_size: usize,
    pub base_case: bool,
    /// CDS split with `V_t = V`, answered by one query on the whole graph.
    pub degenerate: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelTrace {
    pub s: usize,
    pub records: Vec<TraceRecord>,
    pub oracle_calls: usize,
    pub max_query_size: usize,
}

impl KernelTrace {
    fn push(&mut self, keep: bool, rec: TraceRecord) {
        self.oracle_calls += 1;
        self.max_query_size = self.max_query_size.max(rec.query_size);
        if keep {
            self.records.push(rec);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelOutput<S> {
    pub solution: S,
    pub params: KernelParams,
    pub trace: KernelTrace,
}

/// Runs the kernelization for `kind`; CapDS needs a capacitated instance.
pub fn kernelize(
    kind: ProblemKind,
    instance: Instance<'_>,
    ntd: &NiceTreeDecomposition,
    cfg: &KernelConfig,
    oracle: &mut OracleHandle,
) -> Result<KernelOutput<Solution>, KernelError> {
    let graph = match instance {
        Instance::Graph(g) => g,
        Instance::Capacitated(c) => c.graph(),
        _ => return Err(KernelError::UnsupportedKind(kind)),
    };
    let wrap = |out: KernelOutput<crate::graph::VertexSet>| KernelOutput {
        solution: Solution::Set(out.solution),
        params: out.params,
        trace: out.trace,
    };
    match (kind, instance) {
        (ProblemKind::Ds, _) => kernelize_ds(graph, ntd, cfg, oracle).map(wrap),
        (ProblemKind::Ids, _) => kernelize_ids(graph, ntd, cfg, oracle).map(wrap),
        (ProblemKind::Cds, _) => kernelize_cds(graph, ntd, cfg, oracle).map(wrap),
        (ProblemKind::CapDs, Instance::Capacitated(c)) => {
            kernelize_capds(c, ntd, cfg, oracle).map(|out| KernelOutput {
                solution: Solution::Capacitated(out.solution),
                params: out.params,
                trace: out.trace,
            })
        }
        (ProblemKind::CapDs, _) => Err(KernelError::Precondition(
            "capacitated domination needs capacities".into(),
        )),
        (other, _) => Err(KernelError::UnsupportedKind(other)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_size_examples() {
        let one = Ratio::from_integer(1);
        assert_eq!(kernel_size(ProblemKind::Ds, one, 1, 2).unwrap(), 24);
        assert_eq!(kernel_size(ProblemKind::CapDs, one, 1, 2).unwrap(), 108);
        assert_eq!(kernel_size(ProblemKind::Ids, one, 1, 2).unwrap(), 108);
        assert_eq!(kernel_size(ProblemKind::Cds, one, 1, 2).unwrap(), 60);
    }

    #[test]
    fn kernel_size_rounds_up_exactly() {
        // 2 * 5/4 * 1 * 1 = 5/2, and 2 * 4/3 * 1 * 1 = 8/3.
        assert_eq!(
            kernel_size(ProblemKind::Ds, Ratio::from_integer(4), 0, 0).unwrap(),
            3
        );
        assert_eq!(
            kernel_size(ProblemKind::Ds, Ratio::from_integer(3), 0, 0).unwrap(),
            3
        );
        assert_eq!(
            kernel_size(ProblemKind::Ds, Ratio::new(1, 4), 0, 0).unwrap(),
            10
        );
        assert!(kernel_size(ProblemKind::Ds, Ratio::from_integer(0), 0, 0).is_err());
        assert!(kernel_size(ProblemKind::Hs, Ratio::from_integer(1), 0, 0).is_err());
    }

    #[test]
    fn threshold_exceeds_bag_size() {
        for kind in ProblemKind::DOMINATION {
            for tw in 0..6 {
                for delta in 0..6 {
                    let s = kernel_size(kind, Ratio::from_integer(1000), tw, delta).unwrap();
                    assert!(s > tw + 1, "{kind} tw={tw} delta={delta}");
                }
            }
        }
    }
}
