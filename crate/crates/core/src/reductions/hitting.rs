use super::{Origin, ReductionArtifact};
use crate::graph::{CapacitatedGraph, Graph, GraphError, Vertex, VertexSet};
use crate::problems::{ElementSet, HittingSetInstance, SteinerInstance};
use crate::solution::check_ds;

/// Element vertices `0..|U|`, set vertices `|U|..|U|+|𝒮|`, then the hub `u`.
fn hs_graph(inst: &HittingSetInstance) -> (Graph, Vec<Origin>) {
    let nu = inst.universe_size();
    let ns = inst.sets().len();
    let hub = nu + ns;
    let mut edges = Vec::new();
    for x in 0..nu {
        for y in x + 1..nu {
            edges.push((x, y));
        }
        edges.push((x, hub));
    }
    for (j, s) in inst.sets().iter().enumerate() {
        edges.extend(s.iter().map(|&x| (x, nu + j)));
    }
    let g = Graph::new(hub + 1, &edges).expect("construction is simple");
    let back_map = (0..nu)
        .map(Origin::Element)
        .chain((0..ns).map(Origin::Set))
        .chain([Origin::Hub])
        .collect();
    (g, back_map)
}

/// Hitting Set to Dominating Set: element vertices and the hub form a clique,
/// and each set vertex is joined to its elements. Optima coincide.
pub fn hs_to_ds(inst: &HittingSetInstance) -> ReductionArtifact<Graph> {
    let (instance, back_map) = hs_graph(inst);
    ReductionArtifact { instance, back_map }
}

/// Drops the hub and replaces each set vertex by the smallest element of its set.
pub fn lift_ds_to_hs(
    source: &HittingSetInstance,
    artifact: &ReductionArtifact<Graph>,
    x: &VertexSet,
) -> Result<ElementSet, GraphError> {
    if let Err(v) = check_ds(&artifact.instance, x)? {
        return Err(GraphError::Precondition(format!(
            "not a dominating set: {v}"
        )));
    }
    let mut y = ElementSet::new();
    for v in x {
        match artifact.back_map[v] {
            Origin::Element(e) => {
                y.insert(e);
            }
            Origin::Set(j) => {
                y.insert(source.sets()[j][0]);
            }
            _ => {}
        }
    }
    Ok(y)
}

/// Capacities equal to degrees; optima coincide.
pub fn ds_to_capds(g: &Graph) -> CapacitatedGraph {
    let cap = g.vertices().map(|v| g.degree(v)).collect();
    CapacitatedGraph::new(g.clone(), cap).expect("one capacity per vertex")
}

/// Same graph as [`hs_to_ds`] with the set vertices and the hub as terminals.
pub fn hs_to_nst(inst: &HittingSetInstance) -> ReductionArtifact<SteinerInstance> {
    let (g, back_map) = hs_graph(inst);
    let nu = inst.universe_size();
    let terminals: VertexSet = (nu..g.vertex_count()).collect();
    let instance = SteinerInstance::new(g, terminals).expect("terminals are vertices");
    ReductionArtifact { instance, back_map }
}

/// The elements whose vertices were chosen.
pub fn lift_nst_to_hs(
    artifact: &ReductionArtifact<SteinerInstance>,
    x: &VertexSet,
) -> Result<ElementSet, GraphError> {
    if let Err(v) = artifact.instance.check(x)? {
        return Err(GraphError::Precondition(format!(
            "not a Steiner solution: {v}"
        )));
    }
    Ok(x.iter()
        .filter_map(|v: Vertex| match artifact.back_map[v] {
            Origin::Element(e) => Some(e),
            _ => None,
        })
        .collect())
}
