//! Tree decompositions: validation, width, nice form and the surgery the
//! kernelizers perform on them.

mod heuristic;
mod nice;

use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, Vertex};

pub use heuristic::heuristic_td;
pub use nice::{make_nice, NiceNode, NiceTreeDecomposition, NodeId, NodeKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TdViolation {
    VertexOutOfRange {
        node: NodeId,
        vertex: Vertex,
    },
    TreeEdgeOutOfRange {
        node: NodeId,
    },
    NotATree(String),
    /// No nodes were given for a non-empty graph.
    NoNodes,
    VertexUncovered(Vertex),
    EdgeUncovered(Vertex, Vertex),
    /// The bags containing this vertex do not form a subtree.
    DisconnectedOccurrence(Vertex),
}

impl fmt::Display for TdViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TdViolation::VertexOutOfRange { node, vertex } => {
                write!(f, "bag {node} references vertex {vertex} outside the graph")
            }
            TdViolation::TreeEdgeOutOfRange { node } => {
                write!(f, "tree edge references unknown node {node}")
            }
            TdViolation::NotATree(why) => write!(f, "decomposition is not a tree: {why}"),
            TdViolation::NoNodes => write!(f, "decomposition has no nodes"),
            TdViolation::VertexUncovered(v) => write!(f, "vertex {v} is in no bag"),
            TdViolation::EdgeUncovered(u, v) => write!(f, "edge {{{u}, {v}}} is in no bag"),
            TdViolation::DisconnectedOccurrence(v) => {
                write!(
                    f,
                    "bags containing vertex {v} are not connected in the tree"
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("invalid tree decomposition: {0}")]
    Invalid(TdViolation),
    #[error("no node with {s} <= |V_t| <= {twice} exists: graph has only {n} vertices", twice = 2 * s)]
    NoSuchNode { s: usize, n: usize },
    #[error("node {0} does not exist")]
    UnknownNode(NodeId),
    #[error("vertex {0} has no image under the relabelling")]
    Unmapped(Vertex),
    #[error("nice decomposition invariant broken at node {node}: {why}")]
    NotNice { node: NodeId, why: String },
}

/// A (possibly rooted) tree decomposition.
///
/// Bags are kept sorted. Node ids are positions in `bags`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TreeDecomposition {
    bags: Vec<Vec<Vertex>>,
    tree_edges: Vec<(NodeId, NodeId)>,
    root: Option<NodeId>,
}

impl TreeDecomposition {
    pub fn new(bags: Vec<Vec<Vertex>>, tree_edges: Vec<(NodeId, NodeId)>) -> Self {
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        Self {
            bags,
            tree_edges,
            root: None,
        }
    }

    /// One bag holding every vertex.
    pub fn trivial(g: &Graph) -> Self {
        Self::new(vec![g.vertices().collect()], Vec::new())
    }

    pub fn with_root(mut self, root: NodeId) -> Self {
        self.root = Some(root);
        self
    }

    pub fn root(&self) -> Option<NodeId> {
        self.root
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    pub fn bag(&self, t: NodeId) -> &[Vertex] {
        &self.bags[t]
    }

    pub fn bags(&self) -> &[Vec<Vertex>] {
        &self.bags
    }

    pub fn tree_edges(&self) -> &[(NodeId, NodeId)] {
        &self.tree_edges
    }

    /// Largest bag size minus one; -1 when there are no non-empty bags.
    pub fn width(&self) -> isize {
        self.bags
            .iter()
            .map(|b| b.len() as isize)
            .max()
            .unwrap_or(0)
            - 1
    }

    pub(crate) fn adjacency(&self) -> Vec<Vec<NodeId>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.tree_edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }
}

/// Checks the tree decomposition axioms, reporting the first failure.
///
/// Order of checks: ids, tree shape, vertex coverage, edge coverage,
/// connectivity of occurrences (each scanned by ascending vertex id).
pub fn validate(g: &Graph, td: &TreeDecomposition) -> Result<(), TdViolation> {
    let n = g.vertex_count();
    let k = td.node_count();
    for (node, bag) in td.bags.iter().enumerate() {
        if let Some(&v) = bag.iter().find(|&&v| v >= n) {
            return Err(TdViolation::VertexOutOfRange { node, vertex: v });
        }
    }
    for &(a, b) in &td.tree_edges {
        if a >= k || b >= k {
            return Err(TdViolation::TreeEdgeOutOfRange { node: a.max(b) });
        }
        if a == b {
            return Err(TdViolation::NotATree(format!("loop at node {a}")));
        }
    }
    if k == 0 {
        return if n == 0 {
            Ok(())
        } else {
            Err(TdViolation::NoNodes)
        };
    }
    if td.tree_edges.len() != k - 1 {
        return Err(TdViolation::NotATree(format!(
            "{} edges on {} nodes",
            td.tree_edges.len(),
            k
        )));
    }
    let adj = td.adjacency();
    let mut seen = vec![false; k];
    let mut stack = vec![0];
    seen[0] = true;
    let mut reached = 1;
    while let Some(t) = stack.pop() {
        for &u in &adj[t] {
            if !seen[u] {
                seen[u] = true;
                reached += 1;
                stack.push(u);
            }
        }
    }
    if reached != k {
        return Err(TdViolation::NotATree(
            "tree edges do not connect all nodes".into(),
        ));
    }
    if let Some(r) = td.root {
        if r >= k {
            return Err(TdViolation::NotATree(format!("root {r} is not a node")));
        }
    }

    let mut occurrences = vec![Vec::new(); n];
    for (node, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            occurrences[v].push(node);
        }
    }
    if let Some(v) = (0..n).find(|&v| occurrences[v].is_empty()) {
        return Err(TdViolation::VertexUncovered(v));
    }
    for (u, v) in g.edges() {
        let covered = occurrences[u]
            .iter()
            .any(|&t| td.bags[t].binary_search(&v).is_ok());
        if !covered {
            return Err(TdViolation::EdgeUncovered(u, v));
        }
    }
    // In a tree, a node subset is connected iff it spans |S| - 1 tree edges.
    let mut inner_edges = vec![0usize; n];
    for &(a, b) in &td.tree_edges {
        let (ba, bb) = (&td.bags[a], &td.bags[b]);
        for &v in ba {
            if bb.binary_search(&v).is_ok() {
                inner_edges[v] += 1;
            }
        }
    }
    if let Some(v) = (0..n).find(|&v| inner_edges[v] + 1 != occurrences[v].len()) {
        return Err(TdViolation::DisconnectedOccurrence(v));
    }
    Ok(())
}
