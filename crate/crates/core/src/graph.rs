//! Simple undirected graphs, vertex sets and the graph transformations used by
//! the kernelizers.
//!
//! Graphs are immutable once built. Every transformation returns a fresh graph
//! together with a mapping from new vertex ids to the ids of the source graph.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Dense vertex id, `0..n`.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("capacity table has {got} entries, graph has {n} vertices")]
    CapacityLength { got: usize, n: usize },
    #[error("solution shape does not match problem kind {0}")]
    ShapeMismatch(String),
    #[error("vertex set is not independent: edge {{{0}, {1}}}")]
    NotIndependent(Vertex, Vertex),
    #[error("invalid separation: {0}")]
    InvalidSplit(String),
    #[error("{0}")]
    Precondition(String),
}

/// A set of vertex ids, kept sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexSet(BTreeSet<Vertex>);

impl VertexSet {
    pub fn new() -> Self {
        Self(BTreeSet::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.contains(&v)
    }

    pub fn insert(&mut self, v: Vertex) -> bool {
        self.0.insert(v)
    }

    pub fn remove(&mut self, v: Vertex) -> bool {
        self.0.remove(&v)
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.0.union(&other.0).copied().collect()
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        self.0.intersection(&other.0).copied().collect()
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.0.difference(&other.0).copied().collect()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn first(&self) -> Option<Vertex> {
        self.0.first().copied()
    }

    pub fn max(&self) -> Option<Vertex> {
        self.0.last().copied()
    }

    /// Maps every member through `map`, e.g. a new-to-old id table.
    pub fn map_through(&self, map: &[Vertex]) -> VertexSet {
        self.iter().map(|v| map[v]).collect()
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.iter().collect()
    }

    /// Bit mask of the members; all members must be below 64.
    pub fn to_mask(&self) -> u64 {
        self.iter().fold(0u64, |m, v| m | (1u64 << v))
    }

    pub fn from_mask(mask: u64) -> Self {
        let mut set = VertexSet::new();
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            set.insert(v);
            m &= m - 1;
        }
        set
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl<const N: usize> From<[Vertex; N]> for VertexSet {
    fn from(arr: [Vertex; N]) -> Self {
        arr.into_iter().collect()
    }
}

impl Extend<Vertex> for VertexSet {
    fn extend<I: IntoIterator<Item = Vertex>>(&mut self, iter: I) {
        self.0.extend(iter)
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = Vertex;
    type IntoIter = std::iter::Copied<std::collections::btree_set::Iter<'a, Vertex>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// A simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<Vertex>>,
    edge_count: usize,
    labels: Option<Vec<u64>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges and bad ids.
    pub fn new(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (u, nbrs) in adjacency.iter_mut().enumerate() {
            nbrs.sort_unstable();
            if let Some(w) = nbrs.windows(2).find(|w| w[0] == w[1]) {
                let v = w[0];
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
        }
        Ok(Self {
            adjacency,
            edge_count: edges.len(),
            labels: None,
        })
    }

    /// Like [`Graph::new`] but silently drops repeated edges.
    pub fn from_edges_dedup(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let unique: BTreeSet<(Vertex, Vertex)> =
            edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        let unique: Vec<_> = unique.into_iter().collect();
        Self::new(n, &unique)
    }

    pub fn empty(n: usize) -> Self {
        Self {
            adjacency: vec![Vec::new(); n],
            edge_count: 0,
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<u64>) -> Result<Self, GraphError> {
        if labels.len() != self.vertex_count() {
            return Err(GraphError::Precondition(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.vertex_count()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// External identifier of `v`; defaults to the 1-based position.
    pub fn label(&self, v: Vertex) -> u64 {
        match &self.labels {
            Some(l) => l[v],
            None => v as u64 + 1,
        }
    }

    pub fn labels(&self) -> Option<&[u64]> {
        self.labels.as_deref()
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.vertex_count()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Maximum degree, 0 for the empty graph.
    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn all_vertices(&self) -> VertexSet {
        self.vertices().collect()
    }

    pub fn check_set(&self, set: &VertexSet) -> Result<(), GraphError> {
        match set.max() {
            Some(v) if v >= self.vertex_count() => Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.vertex_count(),
            }),
            _ => Ok(()),
        }
    }

    /// Closed neighborhood masks; only valid for graphs with at most 64 vertices.
    pub(crate) fn closed_masks(&self) -> Vec<u64> {
        debug_assert!(self.vertex_count() <= 64);
        self.adjacency
            .iter()
            .enumerate()
            .map(|(v, nbrs)| nbrs.iter().fold(1u64 << v, |m, &u| m | (1u64 << u)))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connected components, each as a sorted vertex list, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut comp = Vec::new();
            while let Some(u) = stack.pop() {
                comp.push(u);
                for &w in &self.adjacency[u] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Whether `G[set]` is connected. The empty set counts as connected.
    pub fn is_connected_within(&self, set: &VertexSet) -> bool {
        let Some(start) = set.first() else {
            return true;
        };
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &w in &self.adjacency[u] {
                if set.contains(w) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == set.len()
    }
}

/// `N[X]`: the members of `x` together with all their neighbors.
pub fn closed_neighborhood(g: &Graph, x: &VertexSet) -> Result<VertexSet, GraphError> {
    g.check_set(x)?;
    let mut out = x.clone();
    for v in x {
        out.extend(g.neighbors(v).iter().copied());
    }
    Ok(out)
}

/// `G[S]` with vertices renumbered in ascending order of their old ids.
///
/// Returns the subgraph and the new-to-old id table.
pub fn induced_subgraph(g: &Graph, s: &VertexSet) -> Result<(Graph, Vec<Vertex>), GraphError> {
    g.check_set(s)?;
    let new_to_old = s.to_vec();
    let mut old_to_new = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in new_to_old.iter().enumerate() {
        old_to_new[v] = i;
    }
    let mut adjacency = Vec::with_capacity(new_to_old.len());
    let mut edge_count = 0;
    for &v in &new_to_old {
        let nbrs: Vec<Vertex> = g
            .neighbors(v)
            .iter()
            .filter_map(|&w| (old_to_new[w] != usize::MAX).then_some(old_to_new[w]))
            .collect();
        edge_count += nbrs.len();
        adjacency.push(nbrs);
    }
    let labels = g
        .labels
        .as_ref()
        .map(|l| new_to_old.iter().map(|&v| l[v]).collect());
    Ok((
        Graph {
            adjacency,
            edge_count: edge_count / 2,
            labels,
        },
        new_to_old,
    ))
}

/// `G - S`.
pub fn delete_vertices(g: &Graph, s: &VertexSet) -> Result<(Graph, Vec<Vertex>), GraphError> {
    g.check_set(s)?;
    induced_subgraph(g, &g.all_vertices().difference(s))
}

/// Result of replacing a vertex set by a single gadget vertex.
#[derive(Debug, Clone)]
pub struct SeparatorGadget {
    pub graph: Graph,
    /// Id of the gadget vertex; always the largest id of `graph`.
    pub z: Vertex,
    /// Old ids of the surviving vertices `0..z`.
    pub new_to_old: Vec<Vertex>,
}

impl SeparatorGadget {
    /// Maps a vertex set of the gadget graph back to the source graph, dropping `z`.
    pub fn lift(&self, set: &VertexSet) -> VertexSet {
        set.iter()
            .filter(|&v| v != self.z)
            .map(|v| self.new_to_old[v])
            .collect()
    }
}

/// `R(G, S)`: deletes `s`, adds a vertex `z` and joins it to every surviving
/// vertex that had a neighbor in `s`.
pub fn attach_separator_vertex(g: &Graph, s: &VertexSet) -> Result<SeparatorGadget, GraphError> {
    let (rest, new_to_old) = delete_vertices(g, s)?;
    let z = rest.vertex_count();
    let mut adjacency = rest.adjacency;
    let mut z_nbrs = Vec::new();
    for (i, &old) in new_to_old.iter().enumerate() {
        if g.neighbors(old).iter().any(|&w| s.contains(w)) {
            adjacency[i].push(z);
            z_nbrs.push(i);
        }
    }
    let edge_count = rest.edge_count + z_nbrs.len();
    adjacency.push(z_nbrs);
    let labels = rest.labels.map(|mut l| {
        l.push(u64::MAX);
        l
    });
    Ok(SeparatorGadget {
        graph: Graph {
            adjacency,
            edge_count,
            labels,
        },
        z,
        new_to_old,
    })
}

/// `⌈n / (Δ + 1)⌉`, a lower bound on every domination variant.
pub fn ds_lower_bound(g: &Graph) -> usize {
    g.vertex_count().div_ceil(g.max_degree() + 1)
}

/// A graph with a capacity per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapacitatedGraph {
    pub base: Graph,
    cap: Vec<usize>,
}

impl CapacitatedGraph {
    pub fn new(base: Graph, cap: Vec<usize>) -> Result<Self, GraphError> {
        if cap.len() != base.vertex_count() {
            return Err(GraphError::CapacityLength {
                got: cap.len(),
                n: base.vertex_count(),
            });
        }
        Ok(Self { base, cap })
    }

    pub fn uniform(base: Graph, c: usize) -> Self {
        let cap = vec![c; base.vertex_count()];
        Self { base, cap }
    }

    pub fn cap(&self, v: Vertex) -> usize {
        self.cap[v]
    }

    pub fn capacities(&self) -> &[usize] {
        &self.cap
    }

    pub fn graph(&self) -> &Graph {
        &self.base
    }

    pub fn induced_subgraph(
        &self,
        s: &VertexSet,
    ) -> Result<(CapacitatedGraph, Vec<Vertex>), GraphError> {
        let (base, map) = induced_subgraph(&self.base, s)?;
        let cap = map.iter().map(|&v| self.cap[v]).collect();
        Ok((CapacitatedGraph { base, cap }, map))
    }
}

/// A split `(A, B, C)` with `A ∪ C = V`, `A ∩ C = B` and no edges between
/// `A \ B` and `C \ B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separation {
    pub a: VertexSet,
    pub b: VertexSet,
    pub c: VertexSet,
}

impl Separation {
    pub fn new(g: &Graph, a: VertexSet, c: VertexSet) -> Result<Self, GraphError> {
        let b = a.intersection(&c);
        let sep = Self { a, b, c };
        sep.validate(g)?;
        Ok(sep)
    }

    pub fn validate(&self, g: &Graph) -> Result<(), GraphError> {
        for set in [&self.a, &self.b, &self.c] {
            g.check_set(set)?;
        }
        if self.a.union(&self.c) != g.all_vertices() {
            return Err(GraphError::InvalidSplit("A ∪ C does not cover V".into()));
        }
        if self.a.intersection(&self.c) != self.b {
            return Err(GraphError::InvalidSplit("A ∩ C differs from B".into()));
        }
        for u in self.a.difference(&self.b).iter() {
            if let Some(&v) = g
                .neighbors(u)
                .iter()
                .find(|&&v| self.c.contains(v) && !self.b.contains(v))
            {
                return Err(GraphError::InvalidSplit(format!(
                    "edge {{{}, {}}} crosses the separator",
                    u.min(v),
                    u.max(v)
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::new(leaves + 1, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn rejects_malformed_edges() {
        assert_eq!(Graph::new(3, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(
            Graph::new(3, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Graph::new(2, &[(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        );
        assert_eq!(
            Graph::from_edges_dedup(2, &[(0, 1), (1, 0)])
                .unwrap()
                .edge_count(),
            1
        );
    }

    #[test]
    fn closed_neighborhood_examples() {
        let s = star(3);
        assert_eq!(
            closed_neighborhood(&s, &VertexSet::from([0])).unwrap(),
            s.all_vertices()
        );
        assert!(closed_neighborhood(&s, &VertexSet::new())
            .unwrap()
            .is_empty());
        let p = path(3);
        assert_eq!(
            closed_neighborhood(&p, &VertexSet::from([0])).unwrap(),
            VertexSet::from([0, 1])
        );
        assert!(closed_neighborhood(&p, &VertexSet::from([5])).is_err());
    }

    #[test]
    fn induced_subgraph_examples() {
        let c4 = cycle(4);
        let (h, map) = induced_subgraph(&c4, &c4.all_vertices()).unwrap();
        assert_eq!(h, c4);
        assert_eq!(map, vec![0, 1, 2, 3]);

        let (h, map) = induced_subgraph(&c4, &VertexSet::from([1, 2])).unwrap();
        assert_eq!(h.edge_count(), 1);
        assert_eq!(map, vec![1, 2]);

        let (h, _) = induced_subgraph(&star(3), &VertexSet::from([1, 2, 3])).unwrap();
        assert_eq!((h.vertex_count(), h.edge_count()), (3, 0));
    }

    #[test]
    fn separator_gadget_examples() {
        let r = attach_separator_vertex(&path(3), &VertexSet::from([1])).unwrap();
        assert_eq!(r.z, 2);
        assert_eq!(r.new_to_old, vec![0, 2]);
        assert_eq!(r.graph.edges().collect::<Vec<_>>(), vec![(0, 2), (1, 2)]);

        let r = attach_separator_vertex(&path(3), &VertexSet::new()).unwrap();
        assert_eq!(r.graph.vertex_count(), 4);
        assert_eq!(r.graph.degree(r.z), 0);
        assert_eq!(r.graph.edge_count(), 2);

        // C4 0-1-2-3-0 with s = {0}: path 1-2-3 plus z adjacent to 1 and 3.
        let r = attach_separator_vertex(&cycle(4), &VertexSet::from([0])).unwrap();
        assert_eq!(r.new_to_old, vec![1, 2, 3]);
        assert_eq!(
            r.graph.edges().collect::<Vec<_>>(),
            vec![(0, 1), (0, 3), (1, 2), (2, 3)]
        );
        assert_eq!(r.lift(&VertexSet::from([0, 3])), VertexSet::from([1]));
    }

    #[test]
    fn gadget_keeps_surviving_adjacency() {
        let g = Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (1, 4)]).unwrap();
        let s = VertexSet::from([1, 4]);
        let r = attach_separator_vertex(&g, &s).unwrap();
        for (i, &a) in r.new_to_old.iter().enumerate() {
            for (j, &b) in r.new_to_old.iter().enumerate() {
                assert_eq!(r.graph.has_edge(i, j), g.has_edge(a, b));
            }
            let touches_s = g.neighbors(a).iter().any(|&w| s.contains(w));
            assert_eq!(r.graph.has_edge(i, r.z), touches_s);
        }
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(ds_lower_bound(&star(4)), 1);
        assert_eq!(ds_lower_bound(&Graph::empty(6)), 6);
        assert_eq!(ds_lower_bound(&cycle(6)), 2);
        assert_eq!(ds_lower_bound(&Graph::empty(0)), 0);
    }

    #[test]
    fn separation_detects_cross_edges() {
        let g = path(4);
        let ok = Separation::new(&g, VertexSet::from([0, 1, 2]), VertexSet::from([2, 3]));
        assert_eq!(ok.unwrap().b, VertexSet::from([2]));
        let bad = Separation::new(&g, VertexSet::from([0, 1]), VertexSet::from([2, 3]));
        assert!(matches!(bad, Err(GraphError::InvalidSplit(_))));
    }

    #[test]
    fn mask_round_trip() {
        let s = VertexSet::from([0, 5, 63]);
        assert_eq!(VertexSet::from_mask(s.to_mask()), s);
    }
}
