use std::collections::VecDeque;

use super::matching::capacitated_assignment;
use super::OracleError;
use crate::graph::{CapacitatedGraph, Graph, Vertex, VertexSet};
use crate::problems::{ElementSet, HittingSetInstance, SteinerInstance};
use crate::solution::{CapacitatedSolution, ProblemKind};

fn gain(g: &Graph, v: Vertex, dominated: &[bool]) -> usize {
    usize::from(!dominated[v]) + g.neighbors(v).iter().filter(|&&u| !dominated[u]).count()
}

fn mark(g: &Graph, v: Vertex, dominated: &mut [bool]) -> usize {
    let mut newly = 0;
    for u in std::iter::once(v).chain(g.neighbors(v).iter().copied()) {
        if !dominated[u] {
            dominated[u] = true;
            newly += 1;
        }
    }
    newly
}

/// Repeatedly takes the vertex dominating the most undominated vertices
/// (ties: smallest id).
pub fn greedy_ds(g: &Graph) -> VertexSet {
    let n = g.vertex_count();
    let mut dominated = vec![false; n];
    let mut left = n;
    let mut out = VertexSet::new();
    while left > 0 {
        let best = g
            .vertices()
            .max_by_key(|&v| (gain(g, v, &dominated), std::cmp::Reverse(v)))
            .unwrap();
        left -= mark(g, best, &mut dominated);
        out.insert(best);
    }
    out
}

/// Like [`greedy_ds`] but only undominated vertices may be picked, so the
/// result is a maximal independent set.
pub fn greedy_ids(g: &Graph) -> VertexSet {
    let n = g.vertex_count();
    let mut dominated = vec![false; n];
    let mut left = n;
    let mut out = VertexSet::new();
    while left > 0 {
        let best = g
            .vertices()
            .filter(|&v| !dominated[v])
            .max_by_key(|&v| (gain(g, v, &dominated), std::cmp::Reverse(v)))
            .unwrap();
        left -= mark(g, best, &mut dominated);
        out.insert(best);
    }
    out
}

/// Grows a connected set from a maximum-degree vertex, each time adding the
/// neighbor of the set with the largest gain. When no neighbor gains, walks
/// toward the nearest undominated vertex.
pub fn greedy_cds(g: &Graph) -> Result<VertexSet, OracleError> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(VertexSet::new());
    }
    if !g.is_connected() {
        return Err(OracleError::NoSolution {
            kind: ProblemKind::Cds,
            why: "graph is disconnected".into(),
        });
    }
    let start = g
        .vertices()
        .max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)))
        .unwrap();
    let mut dominated = vec![false; n];
    let mut inside = vec![false; n];
    let mut left = n - mark(g, start, &mut dominated);
    inside[start] = true;
    let mut out = VertexSet::from([start]);
    while left > 0 {
        let frontier = out
            .iter()
            .flat_map(|v| g.neighbors(v).iter().copied())
            .filter(|&u| !inside[u]);
        let best = frontier
            .max_by_key(|&u| (gain(g, u, &dominated), std::cmp::Reverse(u)))
            .unwrap();
        let next = if gain(g, best, &dominated) > 0 {
            best
        } else {
            step_toward_undominated(g, &inside, &dominated)
        };
        left -= mark(g, next, &mut dominated);
        inside[next] = true;
        out.insert(next);
    }
    Ok(out)
}

/// First vertex outside the set on a shortest path from the set to an
/// undominated vertex.
fn step_toward_undominated(g: &Graph, inside: &[bool], dominated: &[bool]) -> Vertex {
    let n = g.vertex_count();
    let mut first: Vec<Option<Vertex>> = vec![None; n];
    let mut seen = inside.to_vec();
    let mut queue: VecDeque<Vertex> = (0..n).filter(|&v| inside[v]).collect();
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if seen[w] {
                continue;
            }
            seen[w] = true;
            let via = first[u].unwrap_or(w);
            first[w] = Some(via);
            if !dominated[w] {
                return via;
            }
            queue.push_back(w);
        }
    }
    unreachable!("connected graph with an undominated vertex")
}

/// Greedy dominating set, then every vertex left unassigned by the
/// capacitated matching joins the set and dominates itself.
pub fn greedy_capds(g: &CapacitatedGraph) -> CapacitatedSolution {
    let mut chosen = greedy_ds(g.graph());
    loop {
        match capacitated_assignment(g, &chosen) {
            Ok(assignment) => return CapacitatedSolution { chosen, assignment },
            Err((_, missing)) => chosen.extend(missing),
        }
    }
}

/// Repeatedly takes the element hitting the most unhit sets (ties: smallest element).
pub fn greedy_hs(inst: &HittingSetInstance) -> ElementSet {
    let mut hit = vec![false; inst.sets().len()];
    let mut out = ElementSet::new();
    while hit.iter().any(|h| !h) {
        let mut count = vec![0usize; inst.universe_size()];
        for (i, s) in inst.sets().iter().enumerate() {
            if !hit[i] {
                for &x in s {
                    count[x] += 1;
                }
            }
        }
        let best = (0..inst.universe_size())
            .max_by_key(|&x| (count[x], std::cmp::Reverse(x)))
            .unwrap();
        for (i, s) in inst.sets().iter().enumerate() {
            if s.binary_search(&best).is_ok() {
                hit[i] = true;
            }
        }
        out.insert(best);
    }
    out
}

/// Joins the terminal components one at a time along shortest paths,
/// starting from the component of the smallest terminal.
pub fn greedy_nst(inst: &SteinerInstance) -> Result<VertexSet, OracleError> {
    let g = &inst.graph;
    let n = g.vertex_count();
    let mut out = VertexSet::new();
    let Some(t0) = inst.terminals.first() else {
        return Ok(out);
    };
    loop {
        let members = out.union(&inst.terminals);
        // Component of t0 inside G[members].
        let mut comp = vec![false; n];
        comp[t0] = true;
        let mut stack = vec![t0];
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if members.contains(w) && !comp[w] {
                    comp[w] = true;
                    stack.push(w);
                }
            }
        }
        if members.iter().all(|v| comp[v]) {
            return Ok(out);
        }
        let mut parent: Vec<Option<Vertex>> = vec![None; n];
        let mut seen = comp.clone();
        let mut queue: VecDeque<Vertex> = (0..n).filter(|&v| comp[v]).collect();
        let mut hit = None;
        'bfs: while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if seen[w] {
                    continue;
                }
                seen[w] = true;
                parent[w] = Some(u);
                if members.contains(w) {
                    hit = Some(w);
                    break 'bfs;
                }
                queue.push_back(w);
            }
        }
        let Some(end) = hit else {
            return Err(OracleError::NoSolution {
                kind: ProblemKind::Nst,
                why: "terminals lie in different components".into(),
            });
        };
        let mut cur = parent[end].unwrap();
        while !comp[cur] {
            out.insert(cur);
            cur = parent[cur].unwrap();
        }
    }
}
