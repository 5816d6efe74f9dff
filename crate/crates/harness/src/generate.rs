//! Seeded instance families.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use tdkernel::problems::HittingSetInstance;
use tdkernel::reductions::{CnfFormula, Literal};
use tdkernel::{Graph, Separation, Vertex, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("infeasible generator parameters: {0}")]
pub struct GenError(pub String);

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Graph families understood by [`Family::generate`] and the command line.
///
/// Text form: `name:arg:arg...`, for example `path:10`, `grid:4:5`,
/// `random:40:4:0.3` (n, Δ, edge probability) or `cliques:3:4` (three K4
/// joined in a chain by bridges).
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Path(usize),
    Cycle(usize),
    Grid(usize, usize),
    Star(usize),
    Complete(usize),
    Edgeless(usize),
    /// Random tree with the given degree cap.
    Tree(usize, usize),
    Random {
        n: usize,
        max_deg: usize,
        p: f64,
    },
    /// Random spanning tree under the degree cap plus random extra edges.
    Connected {
        n: usize,
        max_deg: usize,
        p: f64,
    },
    /// `k` cliques of size `size`, consecutive ones joined by one edge.
    Cliques {
        k: usize,
        size: usize,
    },
}

impl Family {
    pub fn generate(&self, seed: u64) -> Result<Graph, GenError> {
        let mut r = rng(seed);
        match *self {
            Family::Path(n) => Ok(path(n)),
            Family::Cycle(n) => cycle(n),
            Family::Grid(a, b) => Ok(grid(a, b)),
            Family::Star(k) => Ok(star(k)),
            Family::Complete(n) => Ok(complete(n)),
            Family::Edgeless(n) => Ok(Graph::empty(n)),
            Family::Tree(n, d) => connected_bounded(&mut r, n, d, 0.0),
            Family::Random { n, max_deg, p } => bounded_degree(&mut r, n, max_deg, p),
            Family::Connected { n, max_deg, p } => connected_bounded(&mut r, n, max_deg, p),
            Family::Cliques { k, size } => Ok(cliques_with_bridges(k, size)),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Path(n) => write!(f, "path:{n}"),
            Family::Cycle(n) => write!(f, "cycle:{n}"),
            Family::Grid(a, b) => write!(f, "grid:{a}:{b}"),
            Family::Star(k) => write!(f, "star:{k}"),
            Family::Complete(n) => write!(f, "complete:{n}"),
            Family::Edgeless(n) => write!(f, "edgeless:{n}"),
            Family::Tree(n, d) => write!(f, "tree:{n}:{d}"),
            Family::Random { n, max_deg, p } => write!(f, "random:{n}:{max_deg}:{p}"),
            Family::Connected { n, max_deg, p } => write!(f, "connected:{n}:{max_deg}:{p}"),
            Family::Cliques { k, size } => write!(f, "cliques:{k}:{size}"),
        }
    }
}

impl FromStr for Family {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || GenError(format!("cannot read family `{s}`"));
        let int = |i: usize| {
            parts
                .get(i)
                .and_then(|t| t.parse::<usize>().ok())
                .ok_or_else(bad)
        };
        let prob = |i: usize| {
            parts
                .get(i)
                .and_then(|t| t.parse::<f64>().ok())
                .filter(|p| (0.0..=1.0).contains(p))
                .ok_or_else(bad)
        };
        let arity = |k: usize| {
            if parts.len() == k + 1 {
                Ok(())
            } else {
                Err(bad())
            }
        };
        let fam = match parts[0] {
            "path" => arity(1).and_then(|_| Ok(Family::Path(int(1)?)))?,
            "cycle" => arity(1).and_then(|_| Ok(Family::Cycle(int(1)?)))?,
            "grid" => arity(2).and_then(|_| Ok(Family::Grid(int(1)?, int(2)?)))?,
            "star" => arity(1).and_then(|_| Ok(Family::Star(int(1)?)))?,
            "complete" => arity(1).and_then(|_| Ok(Family::Complete(int(1)?)))?,
            "edgeless" => arity(1).and_then(|_| Ok(Family::Edgeless(int(1)?)))?,
            "tree" => arity(2).and_then(|_| Ok(Family::Tree(int(1)?, int(2)?)))?,
            "random" => {
                arity(3)?;
                Family::Random {
                    n: int(1)?,
                    max_deg: int(2)?,
                    p: prob(3)?,
                }
            }
            "connected" => {
                arity(3)?;
                Family::Connected {
                    n: int(1)?,
                    max_deg: int(2)?,
                    p: prob(3)?,
                }
            }
            "cliques" => {
                arity(2)?;
                Family::Cliques {
                    k: int(1)?,
                    size: int(2)?,
                }
            }
            _ => return Err(bad()),
        };
        Ok(fam)
    }
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::new(n, &edges).unwrap()
}

pub fn cycle(n: usize) -> Result<Graph, GenError> {
    if n < 3 {
        return Err(GenError(format!(
            "a cycle needs at least 3 vertices, got {n}"
        )));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Ok(Graph::new(n, &edges).unwrap())
}

pub fn grid(rows: usize, cols: usize) -> Graph {
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Graph::new(rows * cols, &edges).unwrap()
}

/// `K_{1,leaves}` with the center at 0.
pub fn star(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    Graph::new(leaves + 1, &edges).unwrap()
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    Graph::new(n, &edges).unwrap()
}

pub fn cliques_with_bridges(k: usize, size: usize) -> Graph {
    let mut edges = Vec::new();
    for c in 0..k {
        let base = c * size;
        for u in 0..size {
            for v in u + 1..size {
                edges.push((base + u, base + v));
            }
        }
        if c > 0 && size > 0 {
            // Last vertex of the previous clique to the first of this one.
            edges.push((base - 1, base));
        }
    }
    Graph::new(k * size, &edges).unwrap()
}

/// Candidate pairs in random order, each kept with probability `p` while
/// both ends are below `max_deg`.
pub fn bounded_degree(
    r: &mut ChaCha8Rng,
    n: usize,
    max_deg: usize,
    p: f64,
) -> Result<Graph, GenError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GenError(format!("edge probability {p} outside [0, 1]")));
    }
    let mut pairs: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    pairs.shuffle(r);
    let mut deg = vec![0; n];
    let mut edges = Vec::new();
    for (u, v) in pairs {
        if deg[u] < max_deg && deg[v] < max_deg && r.gen_bool(p) {
            deg[u] += 1;
            deg[v] += 1;
            edges.push((u, v));
        }
    }
    Ok(Graph::new(n, &edges).unwrap())
}

/// Connected graph of maximum degree at most `max_deg`: a random tree, then
/// every remaining pair with room kept with probability `p`.
pub fn connected_bounded(
    r: &mut ChaCha8Rng,
    n: usize,
    max_deg: usize,
    p: f64,
) -> Result<Graph, GenError> {
    if n > 2 && max_deg < 2 || n == 2 && max_deg < 1 {
        return Err(GenError(format!(
            "a connected graph on {n} vertices needs maximum degree above {max_deg}"
        )));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(GenError(format!("edge probability {p} outside [0, 1]")));
    }
    let mut deg = vec![0; n];
    let mut edges = Vec::new();
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(r);
    for i in 1..n {
        let v = order[i];
        let candidates: Vec<Vertex> = order[..i]
            .iter()
            .copied()
            .filter(|&u| deg[u] < max_deg)
            .collect();
        // Can only run dry if max_deg < 2, which was excluded.
        let u = *candidates.choose(r).unwrap();
        deg[u] += 1;
        deg[v] += 1;
        edges.push((u.min(v), u.max(v)));
    }
    let tree: std::collections::BTreeSet<_> = edges.iter().copied().collect();
    for u in 0..n {
        for v in u + 1..n {
            if deg[u] < max_deg && deg[v] < max_deg && !tree.contains(&(u, v)) && r.gen_bool(p) {
                deg[u] += 1;
                deg[v] += 1;
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::new(n, &edges).unwrap())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparatedParams {
    pub n: usize,
    /// Size of the separator, at least 1 and leaving both sides non-empty.
    pub b: usize,
    pub max_deg: usize,
    pub p: f64,
    /// Make `G[A]` and `G[C]` connected, hence `G` too.
    pub connected: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatedGraph {
    pub graph: Graph,
    pub sep: Separation,
}

/// Two random blobs `A \ B` and `C \ B` glued through a random separator `B`.
///
/// Every vertex gets a random side, and edges are only drawn inside `A` and
/// inside `C`. The split is validated before returning.
pub fn separated(seed: u64, params: SeparatedParams) -> Result<SeparatedGraph, GenError> {
    let SeparatedParams {
        n,
        b,
        max_deg,
        connected,
        ..
    } = params;
    if b == 0 || n < b + 2 {
        return Err(GenError(format!(
            "separated graph needs 1 <= |B| <= n - 2, got |B| = {b}, n = {n}"
        )));
    }
    if connected && max_deg < 2 {
        return Err(GenError(
            "connected sides need maximum degree at least 2".into(),
        ));
    }
    let mut r = rng(seed);
    // A side tree can get stuck on separator vertices that are already
    // full; redraw from the same stream.
    for _ in 0..64 {
        if let Some(out) = separated_attempt(&mut r, params) {
            return Ok(out);
        }
    }
    Err(GenError(format!(
        "degree cap {max_deg} too small to connect both sides"
    )))
}

fn separated_attempt(r: &mut ChaCha8Rng, params: SeparatedParams) -> Option<SeparatedGraph> {
    let SeparatedParams {
        n,
        b,
        max_deg,
        p,
        connected,
    } = params;
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(r);
    let bs: Vec<Vertex> = order[..b].to_vec();
    let rest = &order[b..];
    // First two non-separator vertices pin one to each side.
    let mut a_only = vec![rest[0]];
    let mut c_only = vec![rest[1]];
    for &v in &rest[2..] {
        if r.gen_bool(0.5) {
            a_only.push(v);
        } else {
            c_only.push(v);
        }
    }
    let mut deg = vec![0usize; n];
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let mut has = std::collections::BTreeSet::new();
    let mut add =
        |u: Vertex, v: Vertex, deg: &mut Vec<usize>, edges: &mut Vec<(Vertex, Vertex)>| {
            let key = (u.min(v), u.max(v));
            if u != v && deg[u] < max_deg && deg[v] < max_deg && has.insert(key) {
                deg[u] += 1;
                deg[v] += 1;
                edges.push(key);
                true
            } else {
                false
            }
        };
    let sides: [Vec<Vertex>; 2] = [
        bs.iter().chain(&a_only).copied().collect(),
        bs.iter().chain(&c_only).copied().collect(),
    ];
    if connected {
        for side in &sides {
            let mut order = side.clone();
            order.shuffle(r);
            for i in 1..order.len() {
                let mut candidates: Vec<Vertex> = order[..i].to_vec();
                candidates.shuffle(r);
                let v = order[i];
                if !candidates.iter().any(|&u| add(u, v, &mut deg, &mut edges)) {
                    return None;
                }
            }
        }
    }
    for side in &sides {
        let mut pairs: Vec<(Vertex, Vertex)> = side
            .iter()
            .flat_map(|&u| side.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect();
        pairs.sort_unstable();
        pairs.shuffle(r);
        for (u, v) in pairs {
            if r.gen_bool(p) {
                add(u, v, &mut deg, &mut edges);
            }
        }
    }
    let graph = Graph::new(n, &edges).expect("edges deduplicated");
    let a: VertexSet = sides[0].iter().copied().collect();
    let c: VertexSet = sides[1].iter().copied().collect();
    let sep = Separation::new(&graph, a, c).expect("edges stay inside a side");
    Some(SeparatedGraph { graph, sep })
}

/// Random hitting set instance: `|U|` in `1..=max_u`, `1..=max_sets` sets
/// of up to four elements each.
pub fn random_hs(seed: u64, max_u: usize, max_sets: usize) -> Result<HittingSetInstance, GenError> {
    if max_u == 0 || max_sets == 0 {
        return Err(GenError(
            "hitting set needs a non-empty universe and at least one set".into(),
        ));
    }
    let mut r = rng(seed);
    let u = r.gen_range(1..=max_u);
    let m = r.gen_range(1..=max_sets);
    let sets = (0..m)
        .map(|_| {
            let k = r.gen_range(1..=u.min(4));
            (0..k).map(|_| r.gen_range(0..u)).collect()
        })
        .collect();
    HittingSetInstance::new(u, sets).map_err(|e| GenError(e.to_string()))
}

/// Random CNF with `1..=max_vars` variables and `1..=max_clauses` clauses of
/// one to three literals.
pub fn random_cnf(seed: u64, max_vars: usize, max_clauses: usize) -> Result<CnfFormula, GenError> {
    if max_vars == 0 || max_clauses == 0 {
        return Err(GenError(
            "formula needs at least one variable and one clause".into(),
        ));
    }
    let mut r = rng(seed);
    let n = r.gen_range(1..=max_vars);
    let m = r.gen_range(1..=max_clauses);
    let clauses = (0..m)
        .map(|_| {
            let k = r.gen_range(1..=3);
            (0..k)
                .map(|_| Literal {
                    var: r.gen_range(0..n),
                    positive: r.gen_bool(0.5),
                })
                .collect()
        })
        .collect();
    CnfFormula::new(n, clauses).map_err(|e| GenError(e.to_string()))
}
