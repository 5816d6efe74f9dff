use crate::graph::{closed_neighborhood, induced_subgraph, Graph, Vertex, VertexSet};
use crate::oracles::OracleError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfReduction {
    pub set: VertexSet,
    /// Smallest `k` the oracle accepted.
    pub k0: usize,
    pub queries: usize,
}

/// Minimum independent dominating set from an exact decision oracle
/// `dec(H, k)` = "H has an IDS of size at most k".
///
/// Finds the smallest accepted `k`, then repeatedly takes the smallest vertex
/// `u` of the remaining graph `H` with `dec(H - N[u], ℓ - 1)`, rescanning
/// from the smallest vertex after every acceptance.
pub fn ids_selfreduce<F>(g: &Graph, mut dec: F) -> Result<SelfReduction, OracleError>
where
    F: FnMut(&Graph, usize) -> Result<bool, OracleError>,
{
    let n = g.vertex_count();
    let mut queries = 0;
    if n == 0 {
        return Ok(SelfReduction {
            set: VertexSet::new(),
            k0: 0,
            queries,
        });
    }
    let mut k0 = None;
    for k in 1..=n {
        queries += 1;
        if dec(g, k)? {
            k0 = Some(k);
            break;
        }
    }
    let k0 = k0.ok_or_else(|| OracleError::Inconsistent(format!("no k up to n = {n} accepted")))?;

    let mut h = g.clone();
    let mut h_to_g: Vec<Vertex> = g.vertices().collect();
    let mut set = VertexSet::new();
    let mut left = k0;
    while left > 0 {
        let mut accepted = None;
        for u in h.vertices() {
            let rest = h
                .all_vertices()
                .difference(&closed_neighborhood(&h, &VertexSet::from([u]))?);
            let (h2, map) = induced_subgraph(&h, &rest)?;
            queries += 1;
            if dec(&h2, left - 1)? {
                accepted = Some((u, h2, map));
                break;
            }
        }
        let Some((u, h2, map)) = accepted else {
            return Err(OracleError::Inconsistent(format!(
                "no vertex extends a solution with {left} left"
            )));
        };
        set.insert(h_to_g[u]);
        h_to_g = map.iter().map(|&v| h_to_g[v]).collect();
        h = h2;
        left -= 1;
    }
    if h.vertex_count() > 0 {
        return Err(OracleError::Inconsistent(
            "vertices remain after the budget is spent".into(),
        ));
    }
    Ok(SelfReduction { set, k0, queries })
}
