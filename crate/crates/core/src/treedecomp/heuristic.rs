use std::collections::BTreeSet;

use super::TreeDecomposition;
use crate::graph::{Graph, Vertex};

/// Tree decomposition from a min-degree elimination ordering.
///
/// Ties go to the smallest vertex id. Each eliminated vertex `v` yields the
/// bag `{v} ∪ N(v)` in the current fill graph; that bag hangs below the bag
/// of the neighbor eliminated next (or below the next bag in the ordering if
/// `v` had no neighbors left). The last bag is the root.
pub fn heuristic_td(g: &Graph) -> TreeDecomposition {
    let n = g.vertex_count();
    if n == 0 {
        return TreeDecomposition::new(vec![Vec::new()], Vec::new()).with_root(0);
    }
    let mut adj: Vec<BTreeSet<Vertex>> = g
        .vertices()
        .map(|v| g.neighbors(v).iter().copied().collect())
        .collect();
    let mut alive = vec![true; n];
    let mut position = vec![usize::MAX; n];
    let mut bags: Vec<Vec<Vertex>> = Vec::with_capacity(n);
    let mut eliminated_with: Vec<Vec<Vertex>> = Vec::with_capacity(n);

    for step in 0..n {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (adj[v].len(), v))
            .expect("a vertex remains");
        let nbrs: Vec<Vertex> = adj[v].iter().copied().collect();
        for (i, &a) in nbrs.iter().enumerate() {
            adj[a].remove(&v);
            for &b in &nbrs[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        alive[v] = false;
        position[v] = step;
        let mut bag = nbrs.clone();
        bag.push(v);
        bags.push(bag);
        eliminated_with.push(nbrs);
    }

    let mut edges = Vec::with_capacity(n - 1);
    for (step, nbrs) in eliminated_with.iter().enumerate().take(n - 1) {
        let parent = nbrs.iter().map(|&u| position[u]).min().unwrap_or(step + 1);
        edges.push((step, parent));
    }
    TreeDecomposition::new(bags, edges).with_root(n - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treedecomp::validate;

    #[test]
    fn tree_has_width_one() {
        let g = Graph::new(7, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (5, 6)]).unwrap();
        let td = heuristic_td(&g);
        assert_eq!(validate(&g, &td), Ok(()));
        assert_eq!(td.width(), 1);
    }

    #[test]
    fn cycle_has_width_two() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let td = heuristic_td(&g);
        assert_eq!(validate(&g, &td), Ok(()));
        assert_eq!(td.width(), 2);
    }

    #[test]
    fn clique_has_full_bag() {
        let edges: Vec<_> = (0..5)
            .flat_map(|u| (u + 1..5).map(move |v| (u, v)))
            .collect();
        let g = Graph::new(5, &edges).unwrap();
        let td = heuristic_td(&g);
        assert_eq!(validate(&g, &td), Ok(()));
        assert_eq!(td.width(), 4);
    }

    #[test]
    fn disconnected_and_empty_graphs() {
        let g = Graph::new(5, &[(0, 1), (3, 4)]).unwrap();
        assert_eq!(validate(&g, &heuristic_td(&g)), Ok(()));
        let e = Graph::empty(0);
        let td = heuristic_td(&e);
        assert_eq!(validate(&e, &td), Ok(()));
        assert_eq!(td.width(), -1);
    }
}
