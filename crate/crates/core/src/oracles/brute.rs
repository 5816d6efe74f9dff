//! Exhaustive reference solvers, deliberately naive. Used to cross-check the
//! exact solvers on small instances.

use crate::graph::{CapacitatedGraph, Graph, Vertex, VertexSet};
use crate::problems::{ElementSet, HittingSetInstance, SteinerInstance};
use crate::solution::{check_cds, check_ds, check_ids};

/// Smallest set (first in mask order among the smallest) passing `ok`.
fn min_subset(n: usize, ok: impl Fn(&VertexSet) -> bool) -> Option<VertexSet> {
    assert!(n <= 24, "brute force limited to 24 elements");
    let mut best: Option<VertexSet> = None;
    for mask in 0u64..(1u64 << n) {
        if best
            .as_ref()
            .is_some_and(|b| mask.count_ones() as usize >= b.len())
        {
            continue;
        }
        let set = VertexSet::from_mask(mask);
        if ok(&set) {
            best = Some(set);
        }
    }
    best
}

pub fn brute_ds(g: &Graph) -> VertexSet {
    min_subset(g.vertex_count(), |x| check_ds(g, x).unwrap().is_ok()).expect("V dominates")
}

pub fn brute_ids(g: &Graph) -> VertexSet {
    min_subset(g.vertex_count(), |x| check_ids(g, x).unwrap().is_ok())
        .expect("a maximal independent set exists")
}

pub fn brute_cds(g: &Graph) -> Option<VertexSet> {
    min_subset(g.vertex_count(), |x| check_cds(g, x).unwrap().is_ok())
}

pub fn brute_hs(inst: &HittingSetInstance) -> ElementSet {
    min_subset(inst.universe_size(), |y| inst.first_unhit(y).is_none()).expect("U hits every set")
}

pub fn brute_nst(inst: &SteinerInstance) -> Option<VertexSet> {
    min_subset(inst.graph.vertex_count(), |x| {
        inst.check(x).unwrap().is_ok()
    })
}

/// Hall's condition: every `S ⊆ V \ X` has total capacity of `N(S) ∩ X` at least `|S|`.
pub fn capds_feasible_hall(g: &CapacitatedGraph, x: &VertexSet) -> bool {
    let base = g.graph();
    let outside: Vec<Vertex> = base.vertices().filter(|&v| !x.contains(v)).collect();
    assert!(outside.len() <= 24);
    for mask in 1u64..(1u64 << outside.len()) {
        let s: Vec<Vertex> = (0..outside.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| outside[i])
            .collect();
        let mut nbrs = VertexSet::new();
        for &v in &s {
            nbrs.extend(base.neighbors(v).iter().copied().filter(|&u| x.contains(u)));
        }
        let capacity: usize = nbrs.iter().map(|u| g.cap(u)).sum();
        if capacity < s.len() {
            return false;
        }
    }
    true
}

/// Minimum size of a capacitated dominating set.
pub fn brute_capds_size(g: &CapacitatedGraph) -> usize {
    min_subset(g.graph().vertex_count(), |x| capds_feasible_hall(g, x))
        .expect("V is feasible")
        .len()
}

/// All maximal independent sets, by Bron–Kerbosch with pivoting on the
/// complement graph's cliques.
pub fn maximal_independent_sets(g: &Graph) -> Vec<VertexSet> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    let p: Vec<Vertex> = (0..n).collect();
    bron_kerbosch(g, &mut Vec::new(), p, Vec::new(), &mut out);
    out
}

fn bron_kerbosch(
    g: &Graph,
    r: &mut Vec<Vertex>,
    p: Vec<Vertex>,
    x: Vec<Vertex>,
    out: &mut Vec<VertexSet>,
) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r.iter().copied().collect());
        }
        return;
    }
    // In the complement graph, u's neighbors are the non-neighbors of u in g.
    let compl_adj = |u: Vertex, v: Vertex| u != v && !g.has_edge(u, v);
    let pivot = p
        .iter()
        .chain(x.iter())
        .copied()
        .max_by_key(|&u| p.iter().filter(|&&v| compl_adj(u, v)).count())
        .unwrap();
    let branch: Vec<Vertex> = p
        .iter()
        .copied()
        .filter(|&v| !compl_adj(pivot, v))
        .collect();
    let mut p = p;
    let mut x = x;
    for v in branch {
        let np: Vec<Vertex> = p.iter().copied().filter(|&w| compl_adj(v, w)).collect();
        let nx: Vec<Vertex> = x.iter().copied().filter(|&w| compl_adj(v, w)).collect();
        r.push(v);
        bron_kerbosch(g, r, np, nx, out);
        r.pop();
        p.retain(|&w| w != v);
        x.push(v);
    }
}

/// Minimum independent dominating set size: an independent set dominates
/// exactly when it is maximal.
pub fn min_ids_by_enumeration(g: &Graph) -> usize {
    maximal_independent_sets(g)
        .iter()
        .map(|s| s.len())
        .min()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c4_and_star() {
        let c4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(brute_ds(&c4).len(), 2);
        assert_eq!(brute_cds(&c4).unwrap().len(), 2);
        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(brute_ids(&star), VertexSet::from([0]));
    }

    #[test]
    fn hall_on_path() {
        let p = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let g = CapacitatedGraph::uniform(p, 1);
        assert!(!capds_feasible_hall(&g, &VertexSet::from([1])));
        assert!(capds_feasible_hall(&g, &VertexSet::from([0, 1])));
        assert_eq!(brute_capds_size(&g), 2);
    }

    #[test]
    fn mis_enumeration() {
        // C5 has exactly five maximal independent sets, all of size 2.
        let c5 = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let all = maximal_independent_sets(&c5);
        assert_eq!(all.len(), 5);
        assert!(all.iter().all(|s| s.len() == 2));
        assert_eq!(min_ids_by_enumeration(&Graph::empty(3)), 3);
        assert_eq!(min_ids_by_enumeration(&Graph::empty(0)), 0);
    }
}
