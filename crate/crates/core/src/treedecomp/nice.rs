//! Nice tree decompositions.

use std::collections::BTreeSet;

use super::{validate, DecompositionError, TreeDecomposition};
use crate::graph::{Graph, Vertex, VertexSet};

pub type NodeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Leaf,
    Introduce(Vertex),
    Forget(Vertex),
    Join,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceNode {
    pub bag: Vec<Vertex>,
    pub kind: NodeKind,
    pub children: Vec<NodeId>,
    pub parent: Option<NodeId>,
}

/// A rooted tree decomposition whose root and leaf bags are empty and whose
/// inner nodes are introduce, forget or (binary) join nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceTreeDecomposition {
    nodes: Vec<NiceNode>,
    root: NodeId,
    /// `|V_t|` per node.
    subtree_sizes: Vec<usize>,
}

impl NiceTreeDecomposition {
    /// Decomposition of the empty graph: one empty leaf that is also the root.
    pub fn empty() -> Self {
        let mut b = Builder::default();
        let root = b.push(Vec::new(), NodeKind::Leaf, Vec::new());
        b.finish(root)
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node(&self, t: NodeId) -> &NiceNode {
        &self.nodes[t]
    }

    pub fn nodes(&self) -> &[NiceNode] {
        &self.nodes
    }

    pub fn bag(&self, t: NodeId) -> &[Vertex] {
        &self.nodes[t].bag
    }

    pub fn width(&self) -> isize {
        self.nodes
            .iter()
            .map(|n| n.bag.len() as isize)
            .max()
            .unwrap_or(0)
            - 1
    }

    /// Number of vertices of the decomposed graph (`|V_root|`).
    pub fn vertex_count(&self) -> usize {
        self.subtree_sizes[self.root]
    }

    /// `|V_t|`.
    pub fn subtree_size(&self, t: NodeId) -> usize {
        self.subtree_sizes[t]
    }

    /// `V_t`: the union of the bags in the subtree rooted at `t`.
    pub fn subtree_vertices(&self, t: NodeId) -> Result<VertexSet, DecompositionError> {
        if t >= self.nodes.len() {
            return Err(DecompositionError::UnknownNode(t));
        }
        let mut out = VertexSet::new();
        let mut stack = vec![t];
        while let Some(u) = stack.pop() {
            out.extend(self.nodes[u].bag.iter().copied());
            stack.extend(self.nodes[u].children.iter().copied());
        }
        Ok(out)
    }

    /// Nodes in post-order (children before parents).
    pub fn post_order(&self) -> Vec<NodeId> {
        let mut order = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![self.root];
        while let Some(t) = stack.pop() {
            order.push(t);
            stack.extend(self.nodes[t].children.iter().copied());
        }
        order.reverse();
        order
    }

    /// Descends from the root towards the larger child until `|V_t| <= 2s`.
    ///
    /// Introduce nodes shrink `V_t` by one and forget nodes keep it, while the
    /// larger child of a join keeps at least half, so the walk cannot step
    /// below `s` from above `2s`.
    pub fn find_split_node(&self, s: usize) -> Result<NodeId, DecompositionError> {
        let n = self.vertex_count();
        if s > n {
            return Err(DecompositionError::NoSuchNode { s, n });
        }
        let mut t = self.root;
        while self.subtree_sizes[t] > 2 * s {
            t = *self.nodes[t]
                .children
                .iter()
                .max_by(|&&a, &&b| {
                    self.subtree_sizes[a]
                        .cmp(&self.subtree_sizes[b])
                        .then(b.cmp(&a))
                })
                .expect("node with non-empty subtree has children");
        }
        debug_assert!(self.subtree_sizes[t] >= s);
        Ok(t)
    }

    /// Removes every strict descendant of `t`, keeping `t` and its bag.
    ///
    /// The result decomposes `G - (V_t \ X_t)` (vertex ids unchanged) and is
    /// re-normalised: `t` gets an introduce chain down to a fresh empty leaf.
    pub fn prune_subtree(&self, t: NodeId) -> Result<NiceTreeDecomposition, DecompositionError> {
        if t >= self.nodes.len() {
            return Err(DecompositionError::UnknownNode(t));
        }
        if t == self.root {
            return Ok(NiceTreeDecomposition::empty());
        }
        let mut removed = vec![false; self.nodes.len()];
        let mut stack = self.nodes[t].children.clone();
        while let Some(u) = stack.pop() {
            removed[u] = true;
            stack.extend(self.nodes[u].children.iter().copied());
        }
        let mut new_id = vec![usize::MAX; self.nodes.len()];
        let mut bags = Vec::new();
        for (i, node) in self.nodes.iter().enumerate() {
            if !removed[i] {
                new_id[i] = bags.len();
                bags.push(node.bag.clone());
            }
        }
        let edges = self
            .nodes
            .iter()
            .enumerate()
            .filter(|&(i, _)| !removed[i])
            .filter_map(|(i, node)| node.parent.map(|p| (new_id[p], new_id[i])))
            .collect();
        let td = TreeDecomposition::new(bags, edges).with_root(new_id[self.root]);
        Ok(nicify(&td))
    }

    /// Replaces every member of `old` in every bag by `z`.
    ///
    /// When `old` is empty, `z` is covered by a single bag `{z}` above the root.
    pub fn substitute_bag_vertices(&self, old: &VertexSet, z: Vertex) -> NiceTreeDecomposition {
        let mut td = self.to_tree_decomposition();
        if old.is_empty() {
            let top = td.bags.len();
            td.bags.push(vec![z]);
            td.tree_edges.push((top, self.root));
            td.root = Some(top);
        } else {
            for bag in &mut td.bags {
                let before = bag.len();
                bag.retain(|&v| !old.contains(v));
                if bag.len() != before {
                    bag.push(z);
                    bag.sort_unstable();
                    bag.dedup();
                }
            }
        }
        nicify(&td)
    }

    /// Renames vertices through `old_to_new`; every vertex in a bag must map.
    pub fn relabel(
        &self,
        old_to_new: &[Option<Vertex>],
    ) -> Result<NiceTreeDecomposition, DecompositionError> {
        let map = |v: Vertex| -> Result<Vertex, DecompositionError> {
            old_to_new
                .get(v)
                .copied()
                .flatten()
                .ok_or(DecompositionError::Unmapped(v))
        };
        let mut nodes = self.nodes.clone();
        for node in &mut nodes {
            let mut bag = node
                .bag
                .iter()
                .map(|&v| map(v))
                .collect::<Result<Vec<_>, _>>()?;
            bag.sort_unstable();
            node.bag = bag;
            node.kind = match node.kind {
                NodeKind::Introduce(v) => NodeKind::Introduce(map(v)?),
                NodeKind::Forget(v) => NodeKind::Forget(map(v)?),
                k => k,
            };
        }
        Ok(NiceTreeDecomposition {
            nodes,
            root: self.root,
            subtree_sizes: self.subtree_sizes.clone(),
        })
    }

    pub fn to_tree_decomposition(&self) -> TreeDecomposition {
        let bags = self.nodes.iter().map(|n| n.bag.clone()).collect();
        let edges = self
            .nodes
            .iter()
            .enumerate()
            .filter_map(|(i, n)| n.parent.map(|p| (p, i)))
            .collect();
        TreeDecomposition::new(bags, edges).with_root(self.root)
    }

    /// Checks the node-kind equations and the empty root/leaf rule.
    pub fn check_nice(&self) -> Result<(), DecompositionError> {
        let broken = |node: NodeId, why: &str| {
            Err(DecompositionError::NotNice {
                node,
                why: why.into(),
            })
        };
        if !self.nodes[self.root].bag.is_empty() {
            return broken(self.root, "root bag not empty");
        }
        if self.nodes[self.root].parent.is_some() {
            return broken(self.root, "root has a parent");
        }
        for (t, node) in self.nodes.iter().enumerate() {
            let child_bags: Vec<&Vec<Vertex>> =
                node.children.iter().map(|&c| &self.nodes[c].bag).collect();
            for &c in &node.children {
                if self.nodes[c].parent != Some(t) {
                    return broken(c, "parent link disagrees with child list");
                }
            }
            match node.kind {
                NodeKind::Leaf => {
                    if !node.children.is_empty() || !node.bag.is_empty() {
                        return broken(t, "leaf must be childless with an empty bag");
                    }
                }
                NodeKind::Introduce(v) => {
                    let [child] = child_bags[..] else {
                        return broken(t, "introduce needs one child");
                    };
                    if child.contains(&v) || !with(child, v).eq(&node.bag) {
                        return broken(t, "introduce bag equation fails");
                    }
                }
                NodeKind::Forget(v) => {
                    let [child] = child_bags[..] else {
                        return broken(t, "forget needs one child");
                    };
                    if node.bag.contains(&v) || !with(&node.bag, v).eq(child) {
                        return broken(t, "forget bag equation fails");
                    }
                }
                NodeKind::Join => {
                    let [c1, c2] = child_bags[..] else {
                        return broken(t, "join needs two children");
                    };
                    if c1 != &node.bag || c2 != &node.bag {
                        return broken(t, "join bags differ");
                    }
                }
            }
        }
        Ok(())
    }
}

fn with(bag: &[Vertex], v: Vertex) -> Vec<Vertex> {
    let mut out = bag.to_vec();
    out.push(v);
    out.sort_unstable();
    out
}

/// Converts a valid tree decomposition into a nice one of the same width.
pub fn make_nice(
    g: &Graph,
    td: &TreeDecomposition,
) -> Result<NiceTreeDecomposition, DecompositionError> {
    validate(g, td).map_err(DecompositionError::Invalid)?;
    Ok(nicify(td))
}

/// Nice form of `td` rooted at its root (or node 0). Assumes `td` is valid
/// for some graph.
pub(crate) fn nicify(td: &TreeDecomposition) -> NiceTreeDecomposition {
    if td.node_count() == 0 {
        return NiceTreeDecomposition::empty();
    }
    let root = td.root().unwrap_or(0);
    let adj = td.adjacency();

    // Rooted children lists and a pre-order.
    let mut children = vec![Vec::new(); td.node_count()];
    let mut order = vec![root];
    let mut visited = vec![false; td.node_count()];
    visited[root] = true;
    let mut i = 0;
    while i < order.len() {
        let t = order[i];
        let mut next: Vec<NodeId> = adj[t].iter().copied().filter(|&u| !visited[u]).collect();
        next.sort_unstable();
        for &u in &next {
            visited[u] = true;
            order.push(u);
        }
        children[t] = next;
        i += 1;
    }

    let mut b = Builder::default();
    let mut top = vec![usize::MAX; td.node_count()];
    for &t in order.iter().rev() {
        let bag = td.bag(t);
        let tops: Vec<NodeId> = if children[t].is_empty() {
            let leaf = b.push(Vec::new(), NodeKind::Leaf, Vec::new());
            vec![b.transition(leaf, bag)]
        } else {
            children[t]
                .iter()
                .map(|&c| b.transition(top[c], bag))
                .collect()
        };
        let mut acc = tops[0];
        for &other in &tops[1..] {
            acc = b.push(bag.to_vec(), NodeKind::Join, vec![acc, other]);
        }
        top[t] = acc;
    }
    let root_node = b.transition(top[root], &[]);
    b.finish(root_node)
}

#[derive(Default)]
struct Builder {
    nodes: Vec<NiceNode>,
}

impl Builder {
    fn push(&mut self, bag: Vec<Vertex>, kind: NodeKind, children: Vec<NodeId>) -> NodeId {
        let id = self.nodes.len();
        for &c in &children {
            self.nodes[c].parent = Some(id);
        }
        self.nodes.push(NiceNode {
            bag,
            kind,
            children,
            parent: None,
        });
        id
    }

    /// Forget chain then introduce chain from the bag of `from` up to `target`.
    fn transition(&mut self, from: NodeId, target: &[Vertex]) -> NodeId {
        let start: BTreeSet<Vertex> = self.nodes[from].bag.iter().copied().collect();
        let goal: BTreeSet<Vertex> = target.iter().copied().collect();
        let mut cur = from;
        let mut bag = start.clone();
        for &v in start.difference(&goal) {
            bag.remove(&v);
            cur = self.push(
                bag.iter().copied().collect(),
                NodeKind::Forget(v),
                vec![cur],
            );
        }
        for &v in goal.difference(&start) {
            bag.insert(v);
            cur = self.push(
                bag.iter().copied().collect(),
                NodeKind::Introduce(v),
                vec![cur],
            );
        }
        cur
    }

    fn finish(self, root: NodeId) -> NiceTreeDecomposition {
        debug_assert_eq!(self.nodes.len(), root + 1);
        // |V_t| = |X_t| + number of forget nodes in the subtree: every vertex
        // below t but outside X_t is forgotten exactly once inside the subtree.
        let mut forgets = vec![0usize; self.nodes.len()];
        for (t, node) in self.nodes.iter().enumerate() {
            let below: usize = node.children.iter().map(|&c| forgets[c]).sum();
            forgets[t] = below + usize::from(matches!(node.kind, NodeKind::Forget(_)));
        }
        let subtree_sizes = self
            .nodes
            .iter()
            .zip(&forgets)
            .map(|(n, f)| n.bag.len() + f)
            .collect();
        NiceTreeDecomposition {
            nodes: self.nodes,
            root,
            subtree_sizes,
        }
    }
}
