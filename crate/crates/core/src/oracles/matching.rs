use std::collections::BTreeMap;

use crate::graph::{CapacitatedGraph, Vertex, VertexSet};

/// Dominator of each assigned vertex.
pub type Assignment = BTreeMap<Vertex, Vertex>;

/// Assigns every vertex outside `chosen` to a chosen neighbor without
/// exceeding capacities, by augmenting paths.
///
/// Vertices are processed in ascending order and try their chosen neighbors
/// in ascending order. On failure returns the maximum partial assignment
/// together with the vertices left unassigned.
pub fn capacitated_assignment(
    g: &CapacitatedGraph,
    chosen: &VertexSet,
) -> Result<Assignment, (Assignment, Vec<Vertex>)> {
    let base = g.graph();
    let n = base.vertex_count();
    let mut served: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    let mut target: Vec<Option<Vertex>> = vec![None; n];
    let mut unassigned = Vec::new();
    for v in base.vertices().filter(|&v| !chosen.contains(v)) {
        let mut visited = vec![false; n];
        if !augment(g, chosen, v, &mut visited, &mut served, &mut target) {
            unassigned.push(v);
        }
    }
    let assignment: BTreeMap<Vertex, Vertex> = target
        .iter()
        .enumerate()
        .filter_map(|(v, t)| t.map(|t| (v, t)))
        .collect();
    if unassigned.is_empty() {
        Ok(assignment)
    } else {
        Err((assignment, unassigned))
    }
}

fn augment(
    g: &CapacitatedGraph,
    chosen: &VertexSet,
    v: Vertex,
    visited: &mut [bool],
    served: &mut [Vec<Vertex>],
    target: &mut [Option<Vertex>],
) -> bool {
    for &x in g.graph().neighbors(v) {
        if !chosen.contains(x) || visited[x] || g.cap(x) == 0 {
            continue;
        }
        visited[x] = true;
        if served[x].len() < g.cap(x) {
            served[x].push(v);
            target[v] = Some(x);
            return true;
        }
        for i in 0..served[x].len() {
            let w = served[x][i];
            if augment(g, chosen, w, visited, served, target) {
                served[x][i] = v;
                target[v] = Some(x);
                return true;
            }
        }
    }
    false
}
