use std::collections::{BTreeMap, VecDeque};

use crate::graph::{
    closed_neighborhood, CapacitatedGraph, Graph, GraphError, Separation, Vertex, VertexSet,
};
use crate::solution::{check_independent, CapacitatedSolution};

/// Merges capacitated solutions of `G[A]` and `G[C]`.
///
/// `Z = X ∪ Y ∪ N[B]`; vertices outside `Z` keep their dominator from the
/// side they lie on. `|Z| <= |X| + |Y| + (Δ+1)|B|`.
pub fn combine_capds(
    g: &CapacitatedGraph,
    x: &CapacitatedSolution,
    y: &CapacitatedSolution,
    sep: &Separation,
) -> Result<CapacitatedSolution, GraphError> {
    let base = g.graph();
    sep.validate(base)?;
    let nb = closed_neighborhood(base, &sep.b)?;
    let chosen = x.chosen.union(&y.chosen).union(&nb);
    let mut assignment = BTreeMap::new();
    for v in base.vertices().filter(|&v| !chosen.contains(v)) {
        let (side, sol) = if sep.a.contains(v) {
            ("A", x)
        } else {
            ("C", y)
        };
        let t = *sol.assignment.get(&v).ok_or_else(|| {
            GraphError::Precondition(format!(
                "vertex {v} has no dominator in the solution for {side}"
            ))
        })?;
        assignment.insert(v, t);
    }
    Ok(CapacitatedSolution { chosen, assignment })
}

/// Extends an independent set to an independent dominating set by adding
/// the smallest undominated vertex until none is left.
pub fn complete_independent(g: &Graph, x: &VertexSet) -> Result<VertexSet, GraphError> {
    if let Err(v) = check_independent(g, x)? {
        let crate::solution::Violation::EdgeInside(a, b) = v else {
            unreachable!()
        };
        return Err(GraphError::NotIndependent(a, b));
    }
    let mut dominated = vec![false; g.vertex_count()];
    for v in x {
        dominated[v] = true;
        for &u in g.neighbors(v) {
            dominated[u] = true;
        }
    }
    let mut out = x.clone();
    for v in g.vertices() {
        if !dominated[v] {
            out.insert(v);
            dominated[v] = true;
            for &u in g.neighbors(v) {
                dominated[u] = true;
            }
        }
    }
    Ok(out)
}

/// `Z = (X ∪ Y) \ B`, completed to an independent dominating set.
pub fn combine_ids(
    g: &Graph,
    x: &VertexSet,
    y: &VertexSet,
    sep: &Separation,
) -> Result<VertexSet, GraphError> {
    sep.validate(g)?;
    let z = x.union(y).difference(&sep.b);
    complete_independent(g, &z)
}

/// Merges connected dominating sets of `R(G[A], B)` and `R(G[C], B)`, given
/// with the gadget vertex already removed and in the ids of `g`.
///
/// Starts from `X ∪ Y ∪ B`. While the set is disconnected, takes the
/// component holding the smallest vertex and adds the inner vertices of a
/// shortest path to the rest of the set (at most two, since the set
/// dominates `g`).
pub fn combine_cds(
    g: &Graph,
    x: &VertexSet,
    y: &VertexSet,
    sep: &Separation,
) -> Result<VertexSet, GraphError> {
    sep.validate(g)?;
    if !g.is_connected() {
        return Err(GraphError::Precondition("graph must be connected".into()));
    }
    if sep.a.difference(&sep.b).is_empty() || sep.c.difference(&sep.b).is_empty() {
        return Err(GraphError::Precondition(
            "A \\ B and C \\ B must both be non-empty".into(),
        ));
    }
    let mut z = x.union(y).union(&sep.b);
    loop {
        let Some(start) = z.first() else { return Ok(z) };
        let n = g.vertex_count();
        let mut comp = vec![false; n];
        comp[start] = true;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if z.contains(w) && !comp[w] {
                    comp[w] = true;
                    stack.push(w);
                }
            }
        }
        if z.iter().all(|v| comp[v]) {
            return Ok(z);
        }
        let path = shortest_path_out(g, &comp, &z);
        z.extend(path);
    }
}

/// Inner vertices of a shortest path from the marked component to another
/// member of `z`, scanning in ascending id order.
fn shortest_path_out(g: &Graph, comp: &[bool], z: &VertexSet) -> Vec<Vertex> {
    let n = g.vertex_count();
    let mut parent: Vec<Option<Vertex>> = vec![None; n];
    let mut seen = comp.to_vec();
    let mut queue: VecDeque<Vertex> = (0..n).filter(|&v| comp[v]).collect();
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if seen[w] {
                continue;
            }
            seen[w] = true;
            parent[w] = Some(u);
            if z.contains(w) {
                let mut inner = Vec::new();
                let mut cur = u;
                while !comp[cur] {
                    inner.push(cur);
                    cur = parent[cur].unwrap();
                }
                return inner;
            }
            queue.push_back(w);
        }
    }
    unreachable!("connected graph")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solution::{check_capds, check_cds, check_ids};

    /// Triangles {0,1,2} and {2,3,4} sharing vertex 2.
    fn bowtie() -> (Graph, Separation) {
        let g = Graph::new(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let sep =
            Separation::new(&g, VertexSet::from([0, 1, 2]), VertexSet::from([2, 3, 4])).unwrap();
        (g, sep)
    }

    #[test]
    fn completion_examples() {
        let c5 = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let x = complete_independent(&c5, &VertexSet::new()).unwrap();
        assert_eq!(x, VertexSet::from([0, 2]));
        assert_eq!(
            complete_independent(&Graph::empty(3), &VertexSet::new())
                .unwrap()
                .len(),
            3
        );
        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(
            complete_independent(&star, &VertexSet::from([0])).unwrap(),
            VertexSet::from([0])
        );
        assert_eq!(
            complete_independent(&star, &VertexSet::from([0, 1])),
            Err(GraphError::NotIndependent(0, 1))
        );
    }

    #[test]
    fn ids_on_bowtie() {
        let (g, sep) = bowtie();
        let z = combine_ids(&g, &VertexSet::from([0]), &VertexSet::from([3]), &sep).unwrap();
        assert_eq!(check_ids(&g, &z).unwrap(), Ok(()));
        assert!(z.len() <= 1 + 1 + 5);
    }

    #[test]
    fn capds_disjoint_union() {
        let g = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        let cg = CapacitatedGraph::uniform(g.clone(), 1);
        let sep = Separation::new(&g, VertexSet::from([0, 1]), VertexSet::from([2, 3])).unwrap();
        let x = CapacitatedSolution {
            chosen: VertexSet::from([0]),
            assignment: BTreeMap::from([(1, 0)]),
        };
        let y = CapacitatedSolution {
            chosen: VertexSet::from([3]),
            assignment: BTreeMap::from([(2, 3)]),
        };
        let z = combine_capds(&cg, &x, &y, &sep).unwrap();
        assert_eq!(z.len(), 2);
        assert_eq!(check_capds(&cg, &z).unwrap(), Ok(()));
    }

    #[test]
    fn cds_merges_components() {
        // Path 0-1-2-3-4-5-6 split at B = {3}; X = {1}, Y = {5} after z removal.
        let edges: Vec<_> = (0..6).map(|i| (i, i + 1)).collect();
        let g = Graph::new(7, &edges).unwrap();
        let sep = Separation::new(
            &g,
            VertexSet::from([0, 1, 2, 3]),
            VertexSet::from([3, 4, 5, 6]),
        )
        .unwrap();
        let z = combine_cds(&g, &VertexSet::from([1, 2]), &VertexSet::from([4, 5]), &sep).unwrap();
        assert_eq!(z, VertexSet::from([1, 2, 3, 4, 5]));
        let z = combine_cds(&g, &VertexSet::from([1]), &VertexSet::from([5]), &sep).unwrap();
        assert_eq!(check_cds(&g, &z).unwrap(), Ok(()));
        assert!(z.len() <= 1 + 1 + 3);
    }

    #[test]
    fn cds_rejects_degenerate_split() {
        let (g, _) = bowtie();
        let sep = Separation::new(&g, VertexSet::from([2]), g.all_vertices()).unwrap();
        assert!(combine_cds(&g, &VertexSet::new(), &VertexSet::from([2]), &sep).is_err());
    }
}
