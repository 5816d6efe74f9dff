use super::combine::{combine_capds, combine_cds, combine_ids};
use super::{KernelConfig, KernelError, KernelOutput, KernelParams, KernelTrace, TraceRecord};
use crate::graph::{
    attach_separator_vertex, induced_subgraph, CapacitatedGraph, Graph, GraphError, Separation,
    Vertex, VertexSet,
};
use crate::oracles::{OracleError, OracleHandle};
use crate::solution::{CapacitatedSolution, ProblemKind};
use crate::treedecomp::{validate, DecompositionError, NiceTreeDecomposition};

/// What differs between the DS, IDS and CapDS recursions.
trait Variant {
    type Inst;
    type Sol;
    const KIND: ProblemKind;
    fn graph(inst: &Self::Inst) -> &Graph;
    fn induced(inst: &Self::Inst, s: &VertexSet) -> Result<(Self::Inst, Vec<Vertex>), GraphError>;
    fn query(oracle: &mut OracleHandle, inst: &Self::Inst) -> Result<Self::Sol, OracleError>;
    fn lift(sol: &Self::Sol, map: &[Vertex]) -> Self::Sol;
    fn empty() -> Self::Sol;
    fn size(sol: &Self::Sol) -> usize;
    /// `a_sol` solves `G[A]`, `c_sol` solves `G[C]`.
    fn combine(
        inst: &Self::Inst,
        a_sol: &Self::Sol,
        c_sol: &Self::Sol,
        sep: &Separation,
    ) -> Result<Self::Sol, GraphError>;
}

struct Ds;
struct Ids;
struct CapDs;

impl Variant for Ds {
    type Inst = Graph;
    type Sol = VertexSet;
    const KIND: ProblemKind = ProblemKind::Ds;
    fn graph(inst: &Graph) -> &Graph {
        inst
    }
    fn induced(inst: &Graph, s: &VertexSet) -> Result<(Graph, Vec<Vertex>), GraphError> {
        induced_subgraph(inst, s)
    }
    fn query(oracle: &mut OracleHandle, inst: &Graph) -> Result<VertexSet, OracleError> {
        oracle.query_set(inst)
    }
    fn lift(sol: &VertexSet, map: &[Vertex]) -> VertexSet {
        sol.map_through(map)
    }
    fn empty() -> VertexSet {
        VertexSet::new()
    }
    fn size(sol: &VertexSet) -> usize {
        sol.len()
    }
    fn combine(
        _: &Graph,
        a_sol: &VertexSet,
        c_sol: &VertexSet,
        _: &Separation,
    ) -> Result<VertexSet, GraphError> {
        Ok(a_sol.union(c_sol))
    }
}

impl Variant for Ids {
    type Inst = Graph;
    type Sol = VertexSet;
    const KIND: ProblemKind = ProblemKind::Ids;
    fn graph(inst: &Graph) -> &Graph {
        inst
    }
    fn induced(inst: &Graph, s: &VertexSet) -> Result<(Graph, Vec<Vertex>), GraphError> {
        induced_subgraph(inst, s)
    }
    fn query(oracle: &mut OracleHandle, inst: &Graph) -> Result<VertexSet, OracleError> {
        oracle.query_set(inst)
    }
    fn lift(sol: &VertexSet, map: &[Vertex]) -> VertexSet {
        sol.map_through(map)
    }
    fn empty() -> VertexSet {
        VertexSet::new()
    }
    fn size(sol: &VertexSet) -> usize {
        sol.len()
    }
    fn combine(
        g: &Graph,
        a_sol: &VertexSet,
        c_sol: &VertexSet,
        sep: &Separation,
    ) -> Result<VertexSet, GraphError> {
        combine_ids(g, a_sol, c_sol, sep)
    }
}

impl Variant for CapDs {
    type Inst = CapacitatedGraph;
    type Sol = CapacitatedSolution;
    const KIND: ProblemKind = ProblemKind::CapDs;
    fn graph(inst: &CapacitatedGraph) -> &Graph {
        inst.graph()
    }
    fn induced(
        inst: &CapacitatedGraph,
        s: &VertexSet,
    ) -> Result<(CapacitatedGraph, Vec<Vertex>), GraphError> {
        inst.induced_subgraph(s)
    }
    fn query(
        oracle: &mut OracleHandle,
        inst: &CapacitatedGraph,
    ) -> Result<CapacitatedSolution, OracleError> {
        oracle.query_capacitated(inst)
    }
    fn lift(sol: &CapacitatedSolution, map: &[Vertex]) -> CapacitatedSolution {
        sol.map_through(map)
    }
    fn empty() -> CapacitatedSolution {
        CapacitatedSolution::default()
    }
    fn size(sol: &CapacitatedSolution) -> usize {
        sol.len()
    }
    fn combine(
        g: &CapacitatedGraph,
        a_sol: &CapacitatedSolution,
        c_sol: &CapacitatedSolution,
        sep: &Separation,
    ) -> Result<CapacitatedSolution, GraphError> {
        combine_capds(g, a_sol, c_sol, sep)
    }
}

struct Run<'a> {
    s: usize,
    keep: bool,
    oracle: &'a mut OracleHandle,
    trace: KernelTrace,
}

fn prepare(
    kind: ProblemKind,
    g: &Graph,
    ntd: &NiceTreeDecomposition,
    cfg: &KernelConfig,
    oracle: &OracleHandle,
) -> Result<KernelParams, KernelError> {
    if oracle.kind() != kind {
        return Err(KernelError::OracleKind {
            got: oracle.kind(),
            want: kind,
        });
    }
    ntd.check_nice()?;
    validate(g, &ntd.to_tree_decomposition()).map_err(DecompositionError::Invalid)?;
    KernelParams::for_instance(kind, cfg.epsilon, g, ntd)
}

/// Nice decomposition of the graph induced on the old ids `new_to_old`.
fn renumber(
    ntd: &NiceTreeDecomposition,
    new_to_old: &[Vertex],
    old_n: usize,
    extra: Option<(Vertex, Vertex)>,
) -> Result<NiceTreeDecomposition, DecompositionError> {
    let mut old_to_new = vec![None; old_n + 1];
    for (new, &old) in new_to_old.iter().enumerate() {
        old_to_new[old] = Some(new);
    }
    if let Some((old, new)) = extra {
        old_to_new[old] = Some(new);
    }
    ntd.relabel(&old_to_new)
}

fn run<V: Variant>(
    r: &mut Run<'_>,
    inst: &V::Inst,
    ntd: &NiceTreeDecomposition,
    depth: usize,
) -> Result<V::Sol, KernelError> {
    let g = V::graph(inst);
    let n = g.vertex_count();
    if n == 0 {
        return Ok(V::empty());
    }
    if n <= r.s {
        let sol = V::query(r.oracle, inst)?;
        let rec = TraceRecord {
            depth,
            n,
            node: None,
            subtree_size: n,
            bag_size: 0,
            query_size: n,
            answer_size: V::size(&sol),
            base_case: true,
            degenerate: false,
        };
        r.trace.push(r.keep, rec);
        return Ok(sol);
    }
    let t = ntd.find_split_node(r.s)?;
    let vt = ntd.subtree_vertices(t)?;
    let xt: VertexSet = ntd.bag(t).iter().copied().collect();
    let (sub, map) = V::induced(inst, &vt)?;
    let c_sol = V::lift(&V::query(r.oracle, &sub)?, &map);
    let rec = TraceRecord {
        depth,
        n,
        node: Some(t),
        subtree_size: vt.len(),
        bag_size: xt.len(),
        query_size: vt.len(),
        answer_size: V::size(&c_sol),
        base_case: false,
        degenerate: false,
    };
    r.trace.push(r.keep, rec);

    let a = g.all_vertices().difference(&vt.difference(&xt));
    let (rest, map_rest) = V::induced(inst, &a)?;
    let ntd_rest = renumber(&ntd.prune_subtree(t)?, &map_rest, n, None)?;
    let a_sol = V::lift(&run::<V>(r, &rest, &ntd_rest, depth + 1)?, &map_rest);
    let sep = Separation::new(g, a, vt)?;
    Ok(V::combine(inst, &a_sol, &c_sol, &sep)?)
}

fn drive<V: Variant>(
    inst: &V::Inst,
    ntd: &NiceTreeDecomposition,
    cfg: &KernelConfig,
    oracle: &mut OracleHandle,
) -> Result<KernelOutput<V::Sol>, KernelError> {
    let params = prepare(V::KIND, V::graph(inst), ntd, cfg, oracle)?;
    let mut r = Run {
        s: params.s,
        keep: cfg.record_trace,
        oracle,
        trace: KernelTrace {
            s: params.s,
            ..Default::default()
        },
    };
    let solution = run::<V>(&mut r, inst, ntd, 0)?;
    Ok(KernelOutput {
        solution,
        params,
        trace: r.trace,
    })
}

/// Dominating set within `(1+ε)·c·OPT` using oracle queries of at most `2s` vertices.
pub fn kernelize_ds(
    g: &Graph,
    ntd: &NiceTreeDecomposition,
    cfg: &KernelConfig,
    oracle: &mut OracleHandle,
) -> Result<KernelOutput<VertexSet>, KernelError> {
    drive::<Ds>(g, ntd, cfg, oracle)
}

pub fn kernelize_ids(
    g: &Graph,
    ntd: &NiceTreeDecomposition,
    cfg: &KernelConfig,
    oracle: &mut OracleHandle,
) -> Result<KernelOutput<VertexSet>, KernelError> {
    drive::<Ids>(g, ntd, cfg, oracle)
}

pub fn kernelize_capds(
    g: &CapacitatedGraph,
    ntd: &NiceTreeDecomposition,
    cfg: &KernelConfig,
    oracle: &mut OracleHandle,
) -> Result<KernelOutput<CapacitatedSolution>, KernelError> {
    drive::<CapDs>(g, ntd, cfg, oracle)
}

fn run_cds(
    r: &mut Run<'_>,
    g: &Graph,
    ntd: &NiceTreeDecomposition,
    depth: usize,
) -> Result<VertexSet, KernelError> {
    let n = g.vertex_count();
    let whole = |r: &mut Run<'_>,
                 node: Option<usize>,
                 degenerate: bool|
     -> Result<VertexSet, KernelError> {
        let sol = r.oracle.query_set(g)?;
        let rec = TraceRecord {
            depth,
            n,
            node,
            subtree_size: n,
            bag_size: 0,
            query_size: n,
            answer_size: sol.len(),
            base_case: !degenerate,
            degenerate,
        };
        r.trace.push(r.keep, rec);
        Ok(sol)
    };
    if n <= r.s {
        return whole(r, None, false);
    }
    let t = ntd.find_split_node(r.s)?;
    let vt = ntd.subtree_vertices(t)?;
    if vt.len() == n {
        // Nothing would remain outside V_t; |V_t| <= 2s, so ask about G itself.
        return whole(r, Some(t), true);
    }
    let xt: VertexSet = ntd.bag(t).iter().copied().collect();

    let (gt, map_t) = induced_subgraph(g, &vt)?;
    let xt_local: VertexSet = map_t
        .iter()
        .enumerate()
        .filter(|&(_, &old)| xt.contains(old))
        .map(|(i, _)| i)
        .collect();
    let side_c = attach_separator_vertex(&gt, &xt_local)?;
    let c_sol = side_c
        .lift(&r.oracle.query_set(&side_c.graph)?)
        .map_through(&map_t);
    let rec = TraceRecord {
        depth,
        n,
        node: Some(t),
        subtree_size: vt.len(),
        bag_size: xt.len(),
        query_size: side_c.graph.vertex_count(),
        answer_size: c_sol.len(),
        base_case: false,
        degenerate: false,
    };
    r.trace.push(r.keep, rec);

    // R(G - (V_t \ X_t), X_t) equals R(G, V_t): nothing outside V_t touches V_t \ X_t.
    let side_a = attach_separator_vertex(g, &vt)?;
    let placeholder = n;
    let ntd_a = ntd
        .prune_subtree(t)?
        .substitute_bag_vertices(&xt, placeholder);
    let ntd_a = renumber(&ntd_a, &side_a.new_to_old, n, Some((placeholder, side_a.z)))?;
    let a_sol = side_a.lift(&run_cds(r, &side_a.graph, &ntd_a, depth + 1)?);

    let a = g.all_vertices().difference(&vt.difference(&xt));
    let sep = Separation::new(g, a, vt)?;
    Ok(combine_cds(g, &a_sol, &c_sol, &sep)?)
}

/// Connected dominating set of a connected graph. Oracle queries are made on
/// gadget graphs `R(G[V_t], X_t)`, at most `2s + 1` vertices.
pub fn kernelize_cds(
    g: &Graph,
    ntd: &NiceTreeDecomposition,
    cfg: &KernelConfig,
    oracle: &mut OracleHandle,
) -> Result<KernelOutput<VertexSet>, KernelError> {
    let params = prepare(ProblemKind::Cds, g, ntd, cfg, oracle)?;
    if !g.is_connected() {
        return Err(KernelError::Precondition(
            "connected dominating set needs a connected graph; handle each component separately"
                .into(),
        ));
    }
    let mut r = Run {
        s: params.s,
        keep: cfg.record_trace,
        oracle,
        trace: KernelTrace {
            s: params.s,
            ..Default::default()
        },
    };
    let solution = if g.vertex_count() == 0 {
        VertexSet::new()
    } else {
        run_cds(&mut r, g, ntd, 0)?
    };
    Ok(KernelOutput {
        solution,
        params,
        trace: r.trace,
    })
}
