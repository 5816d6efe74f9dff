//! Oracles: exact and greedy solvers behind a size-capped, self-checking handle.

pub mod brute;
mod exact;
mod greedy;
mod matching;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{CapacitatedGraph, Graph, GraphError, VertexSet};
use crate::solution::{check_solution, CapacitatedSolution, Instance, ProblemKind, Solution};

pub use exact::{exact_capds, exact_cds, exact_ds, exact_hs, exact_ids, exact_nst};
pub use greedy::{greedy_capds, greedy_cds, greedy_ds, greedy_hs, greedy_ids, greedy_nst};
pub use matching::{capacitated_assignment, Assignment};

/// Environment variable overriding the exact-solver budgets.
pub const BUDGET_ENV: &str = "TDKERNEL_EXACT_BUDGET";

/// Solvers use 64-bit vertex masks.
pub const MAX_BUDGET: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{kind} instance of size {size} exceeds the exact-solver budget {budget}")]
    BudgetExceeded {
        kind: ProblemKind,
        size: usize,
        budget: usize,
    },
    #[error("oracle contract violated: {kind} query of size {size} exceeds the cap {cap}")]
    ContractViolation {
        kind: ProblemKind,
        size: usize,
        cap: usize,
    },
    #[error("oracle returned an invalid {kind} solution: {why}")]
    InvalidAnswer { kind: ProblemKind, why: String },
    #[error("{kind} instance has no solution: {why}")]
    NoSolution { kind: ProblemKind, why: String },
    #[error("decision oracle is inconsistent: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Greedy,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Exact => "exact",
            Backend::Greedy => "greedy",
        })
    }
}

impl FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "exact" => Ok(Backend::Exact),
            "greedy" => Ok(Backend::Greedy),
            other => Err(format!("unknown oracle backend `{other}`")),
        }
    }
}

/// Largest instance each exact solver accepts. For NST the budget counts
/// non-terminals, for HS the universe; all others count vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactBudget {
    pub ds: usize,
    pub ids: usize,
    pub cds: usize,
    pub capds: usize,
    pub hs: usize,
    pub nst: usize,
}

impl Default for ExactBudget {
    fn default() -> Self {
        Self {
            ds: 48,
            ids: 40,
            cds: 36,
            capds: 22,
            hs: 20,
            nst: 16,
        }
    }
}

impl ExactBudget {
    /// The same budget for every kind.
    pub fn uniform(b: usize) -> Self {
        let b = b.min(MAX_BUDGET);
        Self {
            ds: b,
            ids: b,
            cds: b,
            capds: b,
            hs: b,
            nst: b,
        }
    }

    pub fn for_kind(&self, kind: ProblemKind) -> usize {
        match kind {
            ProblemKind::Ds => self.ds,
            ProblemKind::Ids => self.ids,
            ProblemKind::Cds => self.cds,
            ProblemKind::CapDs => self.capds,
            ProblemKind::Hs => self.hs,
            ProblemKind::Nst => self.nst,
        }
    }

    fn slot(&mut self, kind: ProblemKind) -> &mut usize {
        match kind {
            ProblemKind::Ds => &mut self.ds,
            ProblemKind::Ids => &mut self.ids,
            ProblemKind::Cds => &mut self.cds,
            ProblemKind::CapDs => &mut self.capds,
            ProblemKind::Hs => &mut self.hs,
            ProblemKind::Nst => &mut self.nst,
        }
    }

    /// Applies an override such as `30` or `ds=30,ids=22` on top of `self`.
    /// Values above [`MAX_BUDGET`] are clamped.
    pub fn with_override(mut self, spec: &str) -> Result<Self, String> {
        let spec = spec.trim();
        if spec.is_empty() {
            return Ok(self);
        }
        if let Ok(b) = spec.parse::<usize>() {
            return Ok(Self::uniform(b));
        }
        for part in spec.split(',') {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| format!("budget entry `{part}` is not of the form kind=size"))?;
            let kind: ProblemKind = k.trim().parse()?;
            let b: usize = v
                .trim()
                .parse()
                .map_err(|_| format!("budget `{v}` is not a number"))?;
            *self.slot(kind) = b.min(MAX_BUDGET);
        }
        Ok(self)
    }

    /// Defaults, overridden by the environment variable when it is set.
    pub fn from_env() -> Result<Self, String> {
        match std::env::var(BUDGET_ENV) {
            Ok(spec) => Self::default().with_override(&spec),
            Err(_) => Ok(Self::default()),
        }
    }

    fn check(&self, kind: ProblemKind, instance: Instance<'_>) -> Result<(), OracleError> {
        let budget = self.for_kind(kind).min(MAX_BUDGET);
        let size = match instance {
            Instance::Steiner(s) => s.non_terminals().len(),
            other => other.size(),
        };
        let vertices = match instance {
            Instance::Steiner(s) => s.graph.vertex_count(),
            _ => size,
        };
        if size > budget || vertices > MAX_BUDGET {
            return Err(OracleError::BudgetExceeded { kind, size, budget });
        }
        Ok(())
    }
}

fn mismatch(kind: ProblemKind) -> OracleError {
    OracleError::Graph(GraphError::ShapeMismatch(kind.to_string()))
}

/// A minimum solution, or a budget error when the instance is too large.
///
/// Ties between optimal solutions are broken deterministically.
pub fn exact_solve(
    kind: ProblemKind,
    instance: Instance<'_>,
    budget: &ExactBudget,
) -> Result<Solution, OracleError> {
    budget.check(kind, instance)?;
    let graph = match instance {
        Instance::Graph(g) => Some(g),
        Instance::Capacitated(c) => Some(c.graph()),
        _ => None,
    };
    match (kind, instance) {
        (ProblemKind::Ds, _) => Ok(Solution::Set(exact_ds(
            graph.ok_or_else(|| mismatch(kind))?,
        ))),
        (ProblemKind::Ids, _) => Ok(Solution::Set(exact_ids(
            graph.ok_or_else(|| mismatch(kind))?,
        ))),
        (ProblemKind::Cds, _) => exact_cds(graph.ok_or_else(|| mismatch(kind))?).map(Solution::Set),
        (ProblemKind::CapDs, Instance::Capacitated(c)) => Ok(Solution::Capacitated(exact_capds(c))),
        (ProblemKind::Hs, Instance::HittingSet(h)) => Ok(Solution::Set(exact_hs(h))),
        (ProblemKind::Nst, Instance::Steiner(s)) => exact_nst(s).map(Solution::Set),
        _ => Err(mismatch(kind)),
    }
}

/// Heuristic solution from the greedy family; always valid when one exists.
pub fn greedy_solve(kind: ProblemKind, instance: Instance<'_>) -> Result<Solution, OracleError> {
    let graph = match instance {
        Instance::Graph(g) => Some(g),
        Instance::Capacitated(c) => Some(c.graph()),
        _ => None,
    };
    match (kind, instance) {
        (ProblemKind::Ds, _) => Ok(Solution::Set(greedy_ds(
            graph.ok_or_else(|| mismatch(kind))?,
        ))),
        (ProblemKind::Ids, _) => Ok(Solution::Set(greedy_ids(
            graph.ok_or_else(|| mismatch(kind))?,
        ))),
        (ProblemKind::Cds, _) => {
            greedy_cds(graph.ok_or_else(|| mismatch(kind))?).map(Solution::Set)
        }
        (ProblemKind::CapDs, Instance::Capacitated(c)) => {
            Ok(Solution::Capacitated(greedy_capds(c)))
        }
        (ProblemKind::Hs, Instance::HittingSet(h)) => Ok(Solution::Set(greedy_hs(h))),
        (ProblemKind::Nst, Instance::Steiner(s)) => greedy_nst(s).map(Solution::Set),
        _ => Err(mismatch(kind)),
    }
}

/// Whether `g` has an independent dominating set of size at most `k`.
pub fn ids_decision(g: &Graph, k: usize, budget: &ExactBudget) -> Result<bool, OracleError> {
    let sol = exact_solve(ProblemKind::Ids, Instance::Graph(g), budget)?;
    Ok(sol.len() <= k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryRecord {
    pub size: usize,
    pub answer: usize,
}

/// An oracle for one problem kind that refuses instances above `size_cap`,
/// checks every answer and logs every call.
#[derive(Debug, Clone)]
pub struct OracleHandle {
    kind: ProblemKind,
    backend: Backend,
    size_cap: usize,
    budget: ExactBudget,
    log: Vec<QueryRecord>,
}

/// Handle with the default exact budget (including any environment override).
pub fn wrap_as_oracle(kind: ProblemKind, backend: Backend, size_cap: usize) -> OracleHandle {
    OracleHandle::new(kind, backend, size_cap)
}

impl OracleHandle {
    pub fn new(kind: ProblemKind, backend: Backend, size_cap: usize) -> Self {
        let budget = ExactBudget::from_env().unwrap_or_default();
        Self {
            kind,
            backend,
            size_cap,
            budget,
            log: Vec::new(),
        }
    }

    pub fn with_budget(mut self, budget: ExactBudget) -> Self {
        self.budget = budget;
        self
    }

    pub fn kind(&self) -> ProblemKind {
        self.kind
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn size_cap(&self) -> usize {
        self.size_cap
    }

    pub fn set_size_cap(&mut self, cap: usize) {
        self.size_cap = cap;
    }

    pub fn budget(&self) -> &ExactBudget {
        &self.budget
    }

    pub fn log(&self) -> &[QueryRecord] {
        &self.log
    }

    pub fn calls(&self) -> usize {
        self.log.len()
    }

    pub fn max_query_size(&self) -> usize {
        self.log.iter().map(|r| r.size).max().unwrap_or(0)
    }

    pub fn clear_log(&mut self) {
        self.log.clear();
    }

    pub fn query(&mut self, instance: Instance<'_>) -> Result<Solution, OracleError> {
        let size = instance.size();
        if size > self.size_cap {
            return Err(OracleError::ContractViolation {
                kind: self.kind,
                size,
                cap: self.size_cap,
            });
        }
        let sol = match self.backend {
            Backend::Exact => exact_solve(self.kind, instance, &self.budget)?,
            Backend::Greedy => greedy_solve(self.kind, instance)?,
        };
        if let Err(v) = check_solution(instance, self.kind, &sol)? {
            return Err(OracleError::InvalidAnswer {
                kind: self.kind,
                why: v.to_string(),
            });
        }
        self.log.push(QueryRecord {
            size,
            answer: sol.len(),
        });
        Ok(sol)
    }

    pub fn query_set(&mut self, g: &Graph) -> Result<VertexSet, OracleError> {
        self.query(Instance::Graph(g))?
            .into_set()
            .ok_or_else(|| mismatch(self.kind))
    }

    pub fn query_capacitated(
        &mut self,
        g: &CapacitatedGraph,
    ) -> Result<CapacitatedSolution, OracleError> {
        self.query(Instance::Capacitated(g))?
            .into_capacitated()
            .ok_or_else(|| mismatch(self.kind))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> Graph {
        Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    #[test]
    fn budget_overrides() {
        let b = ExactBudget::default()
            .with_override("ds=30,ids=22")
            .unwrap();
        assert_eq!((b.ds, b.ids, b.cds), (30, 22, 36));
        assert_eq!(
            ExactBudget::default().with_override("12").unwrap(),
            ExactBudget::uniform(12)
        );
        assert_eq!(
            ExactBudget::default().with_override("ds=999").unwrap().ds,
            MAX_BUDGET
        );
        assert!(ExactBudget::default().with_override("ds").is_err());
        assert!(ExactBudget::default().with_override("xx=3").is_err());
    }

    #[test]
    fn handle_logs_queries() {
        let mut h =
            wrap_as_oracle(ProblemKind::Ds, Backend::Exact, 10).with_budget(ExactBudget::default());
        let x = h.query_set(&c4()).unwrap();
        assert_eq!(x.len(), 2);
        assert_eq!(h.log(), &[QueryRecord { size: 4, answer: 2 }]);
    }

    #[test]
    fn handle_enforces_cap() {
        let mut h = wrap_as_oracle(ProblemKind::Ds, Backend::Exact, 3);
        let err = h.query_set(&c4()).unwrap_err();
        assert_eq!(
            err,
            OracleError::ContractViolation {
                kind: ProblemKind::Ds,
                size: 4,
                cap: 3
            }
        );
        assert_eq!(h.calls(), 0);
    }

    #[test]
    fn greedy_handle_on_star() {
        let star = Graph::new(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let mut h = wrap_as_oracle(ProblemKind::Ds, Backend::Greedy, 5);
        assert_eq!(h.query_set(&star).unwrap(), VertexSet::from([0]));
    }

    #[test]
    fn exact_refuses_over_budget() {
        let g = Graph::empty(41);
        let err = exact_solve(
            ProblemKind::Ids,
            Instance::Graph(&g),
            &ExactBudget::default(),
        )
        .unwrap_err();
        assert_eq!(
            err,
            OracleError::BudgetExceeded {
                kind: ProblemKind::Ids,
                size: 41,
                budget: 40
            }
        );
    }

    #[test]
    fn decision_examples() {
        let b = ExactBudget::default();
        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(ids_decision(&star, 1, &b).unwrap());
        let c5 = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert!(!ids_decision(&c5, 1, &b).unwrap());
        assert!(ids_decision(&c5, 5, &b).unwrap());
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        let g = c4();
        assert!(exact_solve(
            ProblemKind::CapDs,
            Instance::Graph(&g),
            &ExactBudget::default()
        )
        .is_err());
        assert!(exact_solve(
            ProblemKind::Hs,
            Instance::Graph(&g),
            &ExactBudget::default()
        )
        .is_err());
    }
}
