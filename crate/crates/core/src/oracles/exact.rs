//! Exact solvers on 64-bit vertex masks. Callers enforce the size budget.

use super::greedy::{greedy_cds, greedy_ds, greedy_hs, greedy_ids};
use super::matching::capacitated_assignment;
use super::OracleError;
use crate::graph::{CapacitatedGraph, Graph, VertexSet};
use crate::problems::{ElementSet, HittingSetInstance, SteinerInstance};
use crate::solution::{CapacitatedSolution, ProblemKind};

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(v)
    })
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn pop(m: u64) -> u32 {
    m.count_ones()
}

/// Branch and bound for DS, and for IDS when `independent` is set.
///
/// Branches on the undominated vertex with the fewest candidate dominators;
/// candidates are tried by decreasing gain and excluded from later siblings.
struct DomSearch<'a> {
    closed: &'a [u64],
    full: u64,
    independent: bool,
    best: u64,
    best_len: u32,
}

impl DomSearch<'_> {
    fn go(&mut self, chosen: u64, dominated: u64, excluded: u64) {
        let count = pop(chosen);
        let undom = self.full & !dominated;
        if undom == 0 {
            if count < self.best_len {
                self.best = chosen;
                self.best_len = count;
            }
            return;
        }
        if count + 1 >= self.best_len {
            return;
        }
        let avail = if self.independent {
            undom & !excluded
        } else {
            self.full & !excluded & !chosen
        };
        let max_gain = bits(avail)
            .map(|u| pop(self.closed[u] & undom))
            .max()
            .unwrap_or(0);
        if max_gain == 0 || count + pop(undom).div_ceil(max_gain) >= self.best_len {
            return;
        }
        let mut pick = usize::MAX;
        let mut fewest = u32::MAX;
        for v in bits(undom) {
            let c = pop(self.closed[v] & avail);
            if c < fewest {
                fewest = c;
                pick = v;
                if c == 0 {
                    return;
                }
            }
        }
        let mut cands: Vec<usize> = bits(self.closed[pick] & avail).collect();
        cands.sort_by_key(|&u| (std::cmp::Reverse(pop(self.closed[u] & undom)), u));
        let mut excl = excluded;
        for u in cands {
            self.go(chosen | (1 << u), dominated | self.closed[u], excl);
            excl |= 1 << u;
        }
    }
}

fn dom_search(g: &Graph, independent: bool, start: &VertexSet) -> VertexSet {
    let closed = g.closed_masks();
    let mut s = DomSearch {
        closed: &closed,
        full: full_mask(g.vertex_count()),
        independent,
        best: start.to_mask(),
        best_len: start.len() as u32,
    };
    s.go(0, 0, 0);
    VertexSet::from_mask(s.best)
}

pub fn exact_ds(g: &Graph) -> VertexSet {
    dom_search(g, false, &greedy_ds(g))
}

/// Every independent dominating set meets `N[v]` for each undominated `v`,
/// and only undominated vertices can still join.
pub fn exact_ids(g: &Graph) -> VertexSet {
    dom_search(g, true, &greedy_ids(g))
}

/// Include/exclude search over connected sets grown from a root in `N[v0]`,
/// `v0` of minimum degree. Prunes with the gain bound and with the BFS
/// distance from the set to the closest dominator of each undominated vertex.
struct CdsSearch<'a> {
    closed: &'a [u64],
    open: &'a [u64],
    full: u64,
    best: u64,
    best_len: u32,
}

impl CdsSearch<'_> {
    fn go(&mut self, set: u64, dominated: u64, forbidden: u64) {
        let count = pop(set);
        let undom = self.full & !dominated;
        if undom == 0 {
            if count < self.best_len {
                self.best = set;
                self.best_len = count;
            }
            return;
        }
        if count + 1 >= self.best_len {
            return;
        }
        let allowed = self.full & !forbidden & !set;
        let max_gain = bits(allowed)
            .map(|u| pop(self.closed[u] & undom))
            .max()
            .unwrap_or(0);
        if max_gain == 0 {
            return;
        }
        let mut need = pop(undom).div_ceil(max_gain);
        // Distance layers from the set through allowed vertices.
        let mut reached = set;
        let mut layer = set;
        let mut waiting = undom;
        let mut d = 0;
        while waiting != 0 {
            let next = bits(layer).fold(0u64, |m, u| m | self.open[u]) & allowed & !reached;
            if next == 0 {
                return;
            }
            d += 1;
            reached |= next;
            layer = next;
            waiting = bits(waiting)
                .filter(|&w| self.closed[w] & next == 0)
                .fold(0, |m, w| m | (1 << w));
        }
        need = need.max(d);
        if count + need >= self.best_len {
            return;
        }
        let frontier = bits(set).fold(0u64, |m, u| m | self.open[u]) & allowed;
        let Some(f) =
            bits(frontier).max_by_key(|&u| (pop(self.closed[u] & undom), std::cmp::Reverse(u)))
        else {
            return;
        };
        self.go(set | (1 << f), dominated | self.closed[f], forbidden);
        self.go(set, dominated, forbidden | (1 << f));
    }
}

pub fn exact_cds(g: &Graph) -> Result<VertexSet, OracleError> {
    let n = g.vertex_count();
    if n <= 1 {
        return Ok(g.all_vertices());
    }
    let start = greedy_cds(g)?;
    let closed = g.closed_masks();
    let open: Vec<u64> = closed
        .iter()
        .enumerate()
        .map(|(v, &m)| m & !(1 << v))
        .collect();
    let mut s = CdsSearch {
        closed: &closed,
        open: &open,
        full: full_mask(n),
        best: start.to_mask(),
        best_len: start.len() as u32,
    };
    let v0 = g.vertices().min_by_key(|&v| (g.degree(v), v)).unwrap();
    let mut forbidden = 0u64;
    for r in bits(closed[v0]) {
        s.go(1 << r, closed[r], forbidden);
        forbidden |= 1 << r;
    }
    Ok(VertexSet::from_mask(s.best))
}

/// Gosper's hack over `n`-bit masks with `k` ones, in increasing order.
fn subsets(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit: u128 = 1u128 << n;
    let mut cur: Option<u128> = if k > n { None } else { Some((1u128 << k) - 1) };
    std::iter::from_fn(move || {
        let x = cur?;
        if x >= limit {
            cur = None;
            return None;
        }
        cur = if x == 0 {
            None
        } else {
            let c = x & x.wrapping_neg();
            let r = x + c;
            Some((((r ^ x) >> 2) / c) | r)
        };
        Some(x as u64)
    })
}

/// Candidate sets by increasing size, starting at the exact DS optimum;
/// feasibility by capacitated matching.
pub fn exact_capds(g: &CapacitatedGraph) -> CapacitatedSolution {
    let base = g.graph();
    let n = base.vertex_count();
    let full = full_mask(n);
    let closed = base.closed_masks();
    let served: Vec<usize> = base
        .vertices()
        .map(|v| g.cap(v).min(base.degree(v)))
        .collect();
    let k0 = exact_ds(base).len();
    for k in k0..=n {
        for x in subsets(n, k) {
            if bits(x).fold(0u64, |m, v| m | closed[v]) != full {
                continue;
            }
            if bits(x).map(|v| served[v]).sum::<usize>() < n - k {
                continue;
            }
            let chosen = VertexSet::from_mask(x);
            if let Ok(assignment) = capacitated_assignment(g, &chosen) {
                return CapacitatedSolution { chosen, assignment };
            }
        }
    }
    CapacitatedSolution::all_vertices(base)
}

struct HsSearch<'a> {
    sets: &'a [u64],
    best: u64,
    best_len: u32,
}

impl HsSearch<'_> {
    fn go(&mut self, chosen: u64, excluded: u64) {
        let count = pop(chosen);
        let unhit: Vec<u64> = self
            .sets
            .iter()
            .copied()
            .filter(|&s| s & chosen == 0)
            .collect();
        if unhit.is_empty() {
            if count < self.best_len {
                self.best = chosen;
                self.best_len = count;
            }
            return;
        }
        if count + 1 >= self.best_len {
            return;
        }
        // Pairwise disjoint unhit sets each need their own element.
        let mut used = 0u64;
        let mut packing = 0;
        let mut pick = 0u64;
        let mut fewest = u32::MAX;
        for &s in &unhit {
            let a = s & !excluded;
            if a == 0 {
                return;
            }
            if a & used == 0 {
                used |= a;
                packing += 1;
            }
            if pop(a) < fewest {
                fewest = pop(a);
                pick = a;
            }
        }
        if count + packing >= self.best_len {
            return;
        }
        let mut cands: Vec<usize> = bits(pick).collect();
        cands.sort_by_key(|&x| {
            (
                std::cmp::Reverse(unhit.iter().filter(|&&s| s >> x & 1 == 1).count()),
                x,
            )
        });
        let mut excl = excluded;
        for x in cands {
            self.go(chosen | (1 << x), excl);
            excl |= 1 << x;
        }
    }
}

pub fn exact_hs(inst: &HittingSetInstance) -> ElementSet {
    let sets: Vec<u64> = inst
        .sets()
        .iter()
        .map(|s| s.iter().fold(0, |m, &x| m | (1u64 << x)))
        .collect();
    let start = greedy_hs(inst);
    let mut s = HsSearch {
        sets: &sets,
        best: start.to_mask(),
        best_len: start.len() as u32,
    };
    s.go(0, 0);
    ElementSet::from_mask(s.best)
}

/// Non-terminal subsets by increasing size until `G[X ∪ T]` is connected.
pub fn exact_nst(inst: &SteinerInstance) -> Result<VertexSet, OracleError> {
    let g = &inst.graph;
    let open: Vec<u64> = g
        .closed_masks()
        .iter()
        .enumerate()
        .map(|(v, &m)| m & !(1 << v))
        .collect();
    let terminals = inst.terminals.to_mask();
    let others = inst.non_terminals().to_vec();
    let connected = |members: u64| {
        if members == 0 {
            return true;
        }
        let mut seen = members & members.wrapping_neg();
        let mut frontier = seen;
        while frontier != 0 {
            let next = bits(frontier).fold(0u64, |m, u| m | open[u]) & members & !seen;
            seen |= next;
            frontier = next;
        }
        seen == members
    };
    for k in 0..=others.len() {
        for pick in subsets(others.len(), k) {
            let x = bits(pick).fold(0u64, |m, i| m | (1u64 << others[i]));
            if connected(x | terminals) {
                return Ok(VertexSet::from_mask(x));
            }
        }
    }
    Err(OracleError::NoSolution {
        kind: ProblemKind::Nst,
        why: "terminals lie in different components".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn gosper_enumerates_binomials() {
        assert_eq!(subsets(5, 2).count(), 10);
        assert_eq!(subsets(5, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(subsets(3, 3).collect::<Vec<_>>(), vec![7]);
        assert_eq!(subsets(2, 3).count(), 0);
        assert_eq!(subsets(64, 1).count(), 64);
        let v: Vec<_> = subsets(4, 2).collect();
        assert!(v.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn small_optima() {
        assert_eq!(exact_ds(&cycle(4)).len(), 2);
        assert_eq!(exact_ds(&cycle(9)).len(), 3);
        assert_eq!(
            exact_ids(&Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap()),
            VertexSet::from([0])
        );
        assert_eq!(exact_cds(&cycle(6)).unwrap().len(), 4);
        assert_eq!(exact_cds(&Graph::empty(1)).unwrap().len(), 1);
        assert_eq!(exact_cds(&Graph::empty(0)).unwrap().len(), 0);
        assert!(exact_cds(&Graph::empty(2)).is_err());
        assert_eq!(exact_ds(&Graph::empty(0)).len(), 0);
    }

    #[test]
    fn capds_path_unit_capacity() {
        let p = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let sol = exact_capds(&CapacitatedGraph::uniform(p, 1));
        assert_eq!(sol.len(), 2);
    }

    #[test]
    fn hs_and_nst() {
        let hs = HittingSetInstance::new(3, vec![vec![0], vec![1], vec![0, 2]]).unwrap();
        assert_eq!(exact_hs(&hs), ElementSet::from([0, 1]));
        let g = Graph::new(4, &[(0, 1), (1, 2), (0, 3), (3, 2)]).unwrap();
        let st = SteinerInstance::new(g, VertexSet::from([0, 2])).unwrap();
        assert_eq!(exact_nst(&st).unwrap(), VertexSet::from([1]));
    }
}
