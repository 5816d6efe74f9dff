use num_rational::Ratio;
use thiserror::Error;

use super::{Origin, ReductionArtifact};
use crate::graph::Graph;
use crate::rational::{ceil_nonneg, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CnfError {
    #[error("clause {0} is empty")]
    EmptyClause(usize),
    #[error("clause {clause} mentions variable {var}, formula has {count}")]
    VariableOutOfRange {
        clause: usize,
        var: usize,
        count: usize,
    },
    #[error("alpha must be at least 1, got {0}")]
    AlphaTooSmall(Rational),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    /// Variable index, `0..variable_count`.
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Self {
            var,
            positive: true,
        }
    }

    pub fn neg(var: usize) -> Self {
        Self {
            var,
            positive: false,
        }
    }

    /// DIMACS literal: `3` is variable 2, `-3` its negation. Zero is not a literal.
    pub fn from_dimacs(lit: i64) -> Option<Self> {
        (lit != 0).then(|| Self {
            var: lit.unsigned_abs() as usize - 1,
            positive: lit > 0,
        })
    }

    pub fn holds(&self, assignment: &[bool]) -> bool {
        assignment[self.var] == self.positive
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    variable_count: usize,
    clauses: Vec<Vec<Literal>>,
}

impl CnfFormula {
    pub fn new(variable_count: usize, clauses: Vec<Vec<Literal>>) -> Result<Self, CnfError> {
        for (j, c) in clauses.iter().enumerate() {
            if c.is_empty() {
                return Err(CnfError::EmptyClause(j));
            }
            if let Some(l) = c.iter().find(|l| l.var >= variable_count) {
                return Err(CnfError::VariableOutOfRange {
                    clause: j,
                    var: l.var,
                    count: variable_count,
                });
            }
        }
        Ok(Self {
            variable_count,
            clauses,
        })
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    pub fn clauses(&self) -> &[Vec<Literal>] {
        &self.clauses
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|l| l.holds(assignment)))
    }
}

/// A satisfying assignment found by trying all `2^n`, if any.
pub fn brute_force_sat(f: &CnfFormula) -> Option<Vec<bool>> {
    let n = f.variable_count();
    assert!(n < 32, "brute-force SAT limited to 31 variables");
    (0u64..(1u64 << n))
        .map(|m| (0..n).map(|i| m >> i & 1 == 1).collect::<Vec<_>>())
        .find(|a| f.satisfied_by(a))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapArtifact {
    pub artifact: ReductionArtifact<Graph>,
    /// Copies per clause, `⌈α·n⌉ + 1`.
    pub copies: usize,
}

/// Irving's graph: literal pairs `v_i – v̄_i` (ids `2i`, `2i+1`) and `s` copies
/// of each clause vertex (ids from `2n`), each copy joined to the literals of
/// its clause. A satisfiable formula gives an IDS of size `n`; otherwise every
/// IDS has at least `s > α·n` vertices.
pub fn cnf_to_ids_gap(f: &CnfFormula, alpha: Rational) -> Result<GapArtifact, CnfError> {
    if alpha < Ratio::from_integer(1) {
        return Err(CnfError::AlphaTooSmall(alpha));
    }
    let n = f.variable_count();
    let m = f.clauses().len();
    let s = ceil_nonneg(alpha * Ratio::from_integer(n as i64)) + 1;
    let lit_vertex = |l: &Literal| 2 * l.var + usize::from(!l.positive);
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (2 * i, 2 * i + 1)).collect();
    let mut back_map = Vec::with_capacity(2 * n + s * m);
    for var in 0..n {
        back_map.push(Origin::Literal {
            var,
            positive: true,
        });
        back_map.push(Origin::Literal {
            var,
            positive: false,
        });
    }
    for (j, clause) in f.clauses().iter().enumerate() {
        for copy in 0..s {
            let w = 2 * n + j * s + copy;
            back_map.push(Origin::ClauseCopy { clause: j, copy });
            edges.extend(clause.iter().map(|l| (lit_vertex(l), w)));
        }
    }
    let graph = Graph::from_edges_dedup(2 * n + s * m, &edges).expect("ids in range, no loops");
    Ok(GapArtifact {
        artifact: ReductionArtifact {
            instance: graph,
            back_map,
        },
        copies: s,
    })
}
