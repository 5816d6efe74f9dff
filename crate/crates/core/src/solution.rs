//! Solution shapes for the four domination variants and their validity checks.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::graph::{CapacitatedGraph, Graph, GraphError, Vertex, VertexSet};
use crate::problems::{HittingSetInstance, SteinerInstance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemKind {
    Ds,
    Ids,
    Cds,
    CapDs,
    Hs,
    Nst,
}

impl ProblemKind {
    pub const DOMINATION: [ProblemKind; 4] = [
        ProblemKind::Ds,
        ProblemKind::Ids,
        ProblemKind::Cds,
        ProblemKind::CapDs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::Ds => "ds",
            ProblemKind::Ids => "ids",
            ProblemKind::Cds => "cds",
            ProblemKind::CapDs => "capds",
            ProblemKind::Hs => "hs",
            ProblemKind::Nst => "nst",
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProblemKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ds" => Ok(ProblemKind::Ds),
            "ids" => Ok(ProblemKind::Ids),
            "cds" => Ok(ProblemKind::Cds),
            "capds" => Ok(ProblemKind::CapDs),
            "hs" => Ok(ProblemKind::Hs),
            "nst" => Ok(ProblemKind::Nst),
            other => Err(format!("unknown problem kind `{other}`")),
        }
    }
}

/// A capacitated dominating set `(X, f)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapacitatedSolution {
    pub chosen: VertexSet,
    /// Dominator of each vertex outside `chosen`.
    pub assignment: BTreeMap<Vertex, Vertex>,
}

impl CapacitatedSolution {
    pub fn len(&self) -> usize {
        self.chosen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chosen.is_empty()
    }

    /// Every vertex dominates itself; always feasible.
    pub fn all_vertices(g: &Graph) -> Self {
        Self {
            chosen: g.all_vertices(),
            assignment: BTreeMap::new(),
        }
    }

    pub fn map_through(&self, map: &[Vertex]) -> Self {
        Self {
            chosen: self.chosen.map_through(map),
            assignment: self
                .assignment
                .iter()
                .map(|(&v, &d)| (map[v], map[d]))
                .collect(),
        }
    }
}

/// First violated clause of a domination definition, in ascending vertex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Undominated(Vertex),
    EdgeInside(Vertex, Vertex),
    /// `G[X]` splits; carries the smallest vertex outside the component of `min X`.
    Disconnected(Vertex),
    /// A non-empty graph with an empty connected dominating set.
    EmptyConnected,
    Unassigned(Vertex),
    AssignedOutside {
        vertex: Vertex,
        target: Vertex,
    },
    NotAdjacent {
        vertex: Vertex,
        target: Vertex,
    },
    CapacityOverflow {
        vertex: Vertex,
        load: usize,
        cap: usize,
    },
    /// Assignment entry for a vertex that is itself chosen.
    ChosenAssigned(Vertex),
    /// Vertex may not be part of the solution (a Steiner terminal).
    NotAllowed(Vertex),
    /// Hitting set misses the set with this index.
    SetMissed(usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Undominated(v) => write!(f, "vertex {v} is not dominated"),
            Violation::EdgeInside(u, v) => write!(f, "edge {{{u}, {v}}} inside the set"),
            Violation::Disconnected(v) => write!(f, "induced subgraph disconnected at vertex {v}"),
            Violation::EmptyConnected => write!(f, "empty set cannot dominate a non-empty graph"),
            Violation::Unassigned(v) => write!(f, "vertex {v} has no dominator assigned"),
            Violation::AssignedOutside { vertex, target } => {
                write!(
                    f,
                    "vertex {vertex} assigned to {target}, which is not chosen"
                )
            }
            Violation::NotAdjacent { vertex, target } => {
                write!(f, "vertex {vertex} assigned to non-neighbor {target}")
            }
            Violation::CapacityOverflow { vertex, load, cap } => {
                write!(f, "vertex {vertex} serves {load} vertices, capacity {cap}")
            }
            Violation::ChosenAssigned(v) => write!(f, "chosen vertex {v} carries an assignment"),
            Violation::NotAllowed(v) => write!(f, "vertex {v} may not be chosen"),
            Violation::SetMissed(i) => write!(f, "set {i} is not hit"),
        }
    }
}

pub type Verdict = Result<(), Violation>;

pub fn check_ds(g: &Graph, x: &VertexSet) -> Result<Verdict, GraphError> {
    g.check_set(x)?;
    for v in g.vertices() {
        if !x.contains(v) && !g.neighbors(v).iter().any(|&u| x.contains(u)) {
            return Ok(Err(Violation::Undominated(v)));
        }
    }
    Ok(Ok(()))
}

pub fn check_independent(g: &Graph, x: &VertexSet) -> Result<Verdict, GraphError> {
    g.check_set(x)?;
    for u in x {
        if let Some(&v) = g.neighbors(u).iter().find(|&&v| v > u && x.contains(v)) {
            return Ok(Err(Violation::EdgeInside(u, v)));
        }
    }
    Ok(Ok(()))
}

pub fn check_ids(g: &Graph, x: &VertexSet) -> Result<Verdict, GraphError> {
    let dom = check_ds(g, x)?;
    if dom.is_err() {
        return Ok(dom);
    }
    check_independent(g, x)
}

pub fn check_cds(g: &Graph, x: &VertexSet) -> Result<Verdict, GraphError> {
    let dom = check_ds(g, x)?;
    if dom.is_err() {
        return Ok(dom);
    }
    if x.is_empty() {
        return Ok(if g.vertex_count() == 0 {
            Ok(())
        } else {
            Err(Violation::EmptyConnected)
        });
    }
    if g.is_connected_within(x) {
        return Ok(Ok(()));
    }
    // Report the smallest member unreachable from min X.
    let start = x.first().unwrap();
    let mut seen = VertexSet::from([start]);
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if x.contains(w) && seen.insert(w) {
                stack.push(w);
            }
        }
    }
    let missing = x.difference(&seen).first().unwrap();
    Ok(Err(Violation::Disconnected(missing)))
}

pub fn check_capds(g: &CapacitatedGraph, sol: &CapacitatedSolution) -> Result<Verdict, GraphError> {
    let base = g.graph();
    base.check_set(&sol.chosen)?;
    let n = base.vertex_count();
    let mut load = vec![0usize; n];
    for (&v, &t) in &sol.assignment {
        for w in [v, t] {
            if w >= n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n });
            }
        }
    }
    for v in base.vertices() {
        let assigned = sol.assignment.get(&v).copied();
        if sol.chosen.contains(v) {
            if assigned.is_some() {
                return Ok(Err(Violation::ChosenAssigned(v)));
            }
            continue;
        }
        let Some(t) = assigned else {
            return Ok(Err(Violation::Unassigned(v)));
        };
        if !sol.chosen.contains(t) {
            return Ok(Err(Violation::AssignedOutside {
                vertex: v,
                target: t,
            }));
        }
        if !base.has_edge(v, t) {
            return Ok(Err(Violation::NotAdjacent {
                vertex: v,
                target: t,
            }));
        }
        load[t] += 1;
    }
    for v in &sol.chosen {
        if load[v] > g.cap(v) {
            return Ok(Err(Violation::CapacityOverflow {
                vertex: v,
                load: load[v],
                cap: g.cap(v),
            }));
        }
    }
    Ok(Ok(()))
}

/// An instance of any of the problems handled by the oracles.
#[derive(Debug, Clone, Copy)]
pub enum Instance<'a> {
    Graph(&'a Graph),
    Capacitated(&'a CapacitatedGraph),
    HittingSet(&'a HittingSetInstance),
    Steiner(&'a SteinerInstance),
}

impl Instance<'_> {
    /// Size used against oracle caps and solver budgets: vertices for graph
    /// problems, universe size for Hitting Set.
    pub fn size(&self) -> usize {
        match self {
            Instance::Graph(g) => g.vertex_count(),
            Instance::Capacitated(g) => g.graph().vertex_count(),
            Instance::HittingSet(h) => h.universe_size(),
            Instance::Steiner(s) => s.graph.vertex_count(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Solution {
    /// Vertex set, or element set for Hitting Set.
    Set(VertexSet),
    Capacitated(CapacitatedSolution),
}

impl Solution {
    pub fn len(&self) -> usize {
        match self {
            Solution::Set(s) => s.len(),
            Solution::Capacitated(c) => c.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn into_set(self) -> Option<VertexSet> {
        match self {
            Solution::Set(s) => Some(s),
            Solution::Capacitated(_) => None,
        }
    }

    pub fn into_capacitated(self) -> Option<CapacitatedSolution> {
        match self {
            Solution::Capacitated(c) => Some(c),
            Solution::Set(_) => None,
        }
    }
}

/// Validity check dispatched on the problem kind.
///
/// A capacitated instance may be checked for the uncapacitated kinds, which
/// ignore the capacities.
pub fn check_solution(
    instance: Instance<'_>,
    kind: ProblemKind,
    sol: &Solution,
) -> Result<Verdict, GraphError> {
    match (kind, instance, sol) {
        (ProblemKind::Ds, Instance::Graph(g), Solution::Set(x)) => check_ds(g, x),
        (ProblemKind::Ids, Instance::Graph(g), Solution::Set(x)) => check_ids(g, x),
        (ProblemKind::Cds, Instance::Graph(g), Solution::Set(x)) => check_cds(g, x),
        (ProblemKind::CapDs, Instance::Capacitated(g), Solution::Capacitated(s)) => {
            check_capds(g, s)
        }
        (
            ProblemKind::Ds | ProblemKind::Ids | ProblemKind::Cds,
            Instance::Capacitated(g),
            Solution::Set(_),
        ) => check_solution(Instance::Graph(g.graph()), kind, sol),
        (ProblemKind::Hs, Instance::HittingSet(h), Solution::Set(y)) => h.check(y),
        (ProblemKind::Nst, Instance::Steiner(s), Solution::Set(x)) => s.check(x),
        _ => Err(GraphError::ShapeMismatch(kind.to_string())),
    }
}
