//! Seeded checks of the separator inequalities, combination bounds,
//! reduction equalities, the Irving gap, the self-reduction and the split
//! machinery. Instance `i` of a run with seed `s` uses seed `s + i`, so a
//! reported seed reproduces its counterexample on its own.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use tdkernel::graph::{attach_separator_vertex, ds_lower_bound, induced_subgraph};
use tdkernel::kernels::{combine_capds, combine_cds, combine_ids};
use tdkernel::oracles::brute::min_ids_by_enumeration;
use tdkernel::oracles::{
    exact_capds, exact_cds, exact_ds, exact_hs, exact_ids, exact_nst, greedy_capds, greedy_cds,
    greedy_ds, greedy_ids, ids_decision, ExactBudget,
};
use tdkernel::reductions::{
    brute_force_sat, cnf_to_ids_gap, hs_to_ds, hs_to_nst, ids_selfreduce, lift_ds_to_hs,
    lift_nst_to_hs,
};
use tdkernel::solution::{check_capds, check_cds, check_ds, check_ids};
use tdkernel::treedecomp::{heuristic_td, make_nice, validate};
use tdkernel::{CapacitatedGraph, Graph, Rational, VertexSet};

use crate::error::HarnessError;
use crate::generate::{
    bounded_degree, connected_bounded, random_cnf, random_hs, rng, separated, SeparatedParams,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Lemma {
    /// `OPT_DS(G) >= OPT_DS(G[A]) + OPT_DS(G[C]) - 2|B|`.
    LemmaDsIi,
    LemmaCapdsI,
    LemmaIdsIi,
    /// `OPT_CDS(G) >= OPT_CDS(R(G[A],B)) + OPT_CDS(R(G[C],B)) - 2`.
    LemmaCdsI,
    CombineCapds,
    CombineIds,
    CombineCds,
    Reductions,
    Irving,
    Selfreduce,
    Split,
    LowerBound,
}

impl Lemma {
    pub const ALL: [Lemma; 12] = [
        Lemma::LemmaDsIi,
        Lemma::LemmaCapdsI,
        Lemma::LemmaIdsIi,
        Lemma::LemmaCdsI,
        Lemma::CombineCapds,
        Lemma::CombineIds,
        Lemma::CombineCds,
        Lemma::Reductions,
        Lemma::Irving,
        Lemma::Selfreduce,
        Lemma::Split,
        Lemma::LowerBound,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Lemma::LemmaDsIi => "lemma-ds-ii",
            Lemma::LemmaCapdsI => "lemma-capds-i",
            Lemma::LemmaIdsIi => "lemma-ids-ii",
            Lemma::LemmaCdsI => "lemma-cds-i",
            Lemma::CombineCapds => "combine-capds",
            Lemma::CombineIds => "combine-ids",
            Lemma::CombineCds => "combine-cds",
            Lemma::Reductions => "reductions",
            Lemma::Irving => "irving",
            Lemma::Selfreduce => "selfreduce",
            Lemma::Split => "split",
            Lemma::LowerBound => "lower-bound",
        }
    }

    /// Whether `--tighten` changes this check.
    pub fn has_bound(self) -> bool {
        !matches!(
            self,
            Lemma::Reductions | Lemma::Irving | Lemma::Selfreduce | Lemma::Split
        )
    }
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Lemma {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Lemma::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| {
                format!(
                    "unknown lemma `{s}`; known: {}",
                    Lemma::ALL.map(Lemma::name).join(", ")
                )
            })
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub count: usize,
    pub max_n: usize,
    pub seed: u64,
    /// Irving gap factor; both 1 and 2 are checked when absent.
    pub alpha: Option<Rational>,
    /// Drop the additive slack of the bound: a negative control that must fail.
    pub tighten: bool,
}

impl VerifyConfig {
    pub fn new(count: usize, max_n: usize, seed: u64) -> Self {
        Self {
            count,
            max_n,
            seed,
            alpha: None,
            tighten: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub seed: u64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub lemma: Lemma,
    pub instances: usize,
    /// Individual checks; more than `instances` for the split suite.
    pub checks: usize,
    pub failures: Vec<Failure>,
}

impl LemmaReport {
    pub fn passed(&self) -> usize {
        self.instances - self.failures.len()
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for LemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {}/{} pass ({} checks)",
            self.lemma,
            self.passed(),
            self.instances,
            self.checks
        )?;
        for fail in &self.failures {
            write!(f, "\n  seed {}: {}", fail.seed, fail.detail)?;
        }
        Ok(())
    }
}

/// Outcome of one instance: number of checks made, first failure if any.
type Check = Result<(usize, Option<String>), HarnessError>;

fn pass(checks: usize) -> Check {
    Ok((checks, None))
}

fn fail(detail: String) -> Check {
    Ok((1, Some(detail)))
}

pub fn verify(lemma: Lemma, cfg: &VerifyConfig) -> Result<LemmaReport, HarnessError> {
    let min_n = match lemma {
        Lemma::LemmaDsIi
        | Lemma::LemmaCapdsI
        | Lemma::LemmaIdsIi
        | Lemma::LemmaCdsI
        | Lemma::CombineCapds
        | Lemma::CombineIds
        | Lemma::CombineCds => 3,
        _ => 1,
    };
    if cfg.max_n < min_n && !matches!(lemma, Lemma::Reductions | Lemma::Irving) {
        return Err(HarnessError::Usage(format!(
            "{lemma} needs --max-n at least {min_n}"
        )));
    }
    let results: Vec<Check> = (0..cfg.count)
        .into_par_iter()
        .map(|i| {
            let seed = cfg.seed.wrapping_add(i as u64);
            match lemma {
                Lemma::LemmaDsIi | Lemma::LemmaCapdsI | Lemma::LemmaIdsIi | Lemma::LemmaCdsI => {
                    separator_inequality(lemma, seed, cfg)
                }
                Lemma::CombineCapds | Lemma::CombineIds | Lemma::CombineCds => {
                    combine_bound(lemma, seed, cfg)
                }
                Lemma::Reductions => reductions(seed),
                Lemma::Irving => irving(seed, cfg),
                Lemma::Selfreduce => selfreduce(seed, cfg),
                Lemma::Split => split(seed, cfg),
                Lemma::LowerBound => lower_bound(seed, cfg),
            }
        })
        .collect();
    let mut report = LemmaReport {
        lemma,
        instances: cfg.count,
        checks: 0,
        failures: Vec::new(),
    };
    for (i, r) in results.into_iter().enumerate() {
        let (checks, failure) = r?;
        report.checks += checks;
        if let Some(detail) = failure {
            report.failures.push(Failure {
                seed: cfg.seed.wrapping_add(i as u64),
                detail,
            });
        }
    }
    Ok(report)
}

/// Separated graph for `seed`: `n` in `3..=max_n`, `|B|` in `1..=3`, Δ ≤ 4.
pub fn separated_for_seed(
    seed: u64,
    max_n: usize,
    connected: bool,
) -> Result<crate::generate::SeparatedGraph, HarnessError> {
    let mut r = rng(seed ^ 0x5e9a_7a7e);
    let n = r.gen_range(3..=max_n.max(3));
    let b = r.gen_range(1..=(n - 2).min(3));
    let p = r.gen_range(0.15..0.6);
    Ok(separated(
        seed,
        SeparatedParams {
            n,
            b,
            max_deg: 4,
            p,
            connected,
        },
    )?)
}

/// Capacities in `1..=3` drawn from `seed`.
fn random_caps(seed: u64, g: &Graph) -> CapacitatedGraph {
    let mut r = rng(seed ^ 0xca9a);
    let caps = g.vertices().map(|_| r.gen_range(1..=3)).collect();
    CapacitatedGraph::new(g.clone(), caps).expect("one capacity per vertex")
}

fn side_graphs(
    g: &Graph,
    side: &VertexSet,
    b: &VertexSet,
) -> Result<(Graph, Vec<usize>, VertexSet), HarnessError> {
    let (h, map) = induced_subgraph(g, side)?;
    let b_local: VertexSet = map
        .iter()
        .enumerate()
        .filter(|(_, &v)| b.contains(v))
        .map(|(i, _)| i)
        .collect();
    Ok((h, map, b_local))
}

fn separator_inequality(lemma: Lemma, seed: u64, cfg: &VerifyConfig) -> Check {
    let connected = lemma == Lemma::LemmaCdsI || seed.is_multiple_of(2);
    let sg = separated_for_seed(seed, cfg.max_n, connected)?;
    let (g, sep) = (&sg.graph, &sg.sep);
    let b = sep.b.len();
    let (ga, _, ba) = side_graphs(g, &sep.a, &sep.b)?;
    let (gc, _, bc) = side_graphs(g, &sep.c, &sep.b)?;
    let (whole, a, c, slack) = match lemma {
        Lemma::LemmaDsIi => (
            exact_ds(g).len(),
            exact_ds(&ga).len(),
            exact_ds(&gc).len(),
            2 * b,
        ),
        Lemma::LemmaIdsIi => (
            exact_ids(g).len(),
            exact_ids(&ga).len(),
            exact_ids(&gc).len(),
            2 * b,
        ),
        Lemma::LemmaCapdsI => {
            let cg = random_caps(seed, g);
            let (ca, _) = cg.induced_subgraph(&sep.a)?;
            let (cc, _) = cg.induced_subgraph(&sep.c)?;
            (
                exact_capds(&cg).len(),
                exact_capds(&ca).len(),
                exact_capds(&cc).len(),
                2 * b,
            )
        }
        Lemma::LemmaCdsI => {
            let ra = attach_separator_vertex(&ga, &ba)?;
            let rc = attach_separator_vertex(&gc, &bc)?;
            (
                exact_cds(g)?.len(),
                exact_cds(&ra.graph)?.len(),
                exact_cds(&rc.graph)?.len(),
                2,
            )
        }
        _ => unreachable!(),
    };
    let slack = if cfg.tighten { 0 } else { slack };
    if whole + slack >= a + c {
        pass(1)
    } else {
        fail(format!(
            "n={} |B|={b}: OPT(G)={whole} < {a} + {c} - {slack}",
            g.vertex_count()
        ))
    }
}

fn combine_bound(lemma: Lemma, seed: u64, cfg: &VerifyConfig) -> Check {
    let sg = separated_for_seed(
        seed,
        cfg.max_n,
        lemma == Lemma::CombineCds || seed.is_multiple_of(2),
    )?;
    let (g, sep) = (&sg.graph, &sg.sep);
    let b = sep.b.len();
    let delta = g.max_degree();
    // Odd seeds feed greedy solutions, even seeds optimal ones.
    let exact = seed.is_multiple_of(2);
    let (ga, ma, ba) = side_graphs(g, &sep.a, &sep.b)?;
    let (gc, mc, bc) = side_graphs(g, &sep.c, &sep.b)?;
    let (x, y, z, slack, verdict) = match lemma {
        Lemma::CombineCapds => {
            let cg = random_caps(seed, g);
            let (ca, _) = cg.induced_subgraph(&sep.a)?;
            let (cc, _) = cg.induced_subgraph(&sep.c)?;
            let solve = |h: &CapacitatedGraph| {
                if exact {
                    exact_capds(h)
                } else {
                    greedy_capds(h)
                }
            };
            let x = solve(&ca).map_through(&ma);
            let y = solve(&cc).map_through(&mc);
            let z = combine_capds(&cg, &x, &y, sep)?;
            let verdict = check_capds(&cg, &z)?;
            (x.len(), y.len(), z.len(), (delta + 1) * b, verdict)
        }
        Lemma::CombineIds => {
            let solve = |h: &Graph| if exact { exact_ids(h) } else { greedy_ids(h) };
            let x = solve(&ga).map_through(&ma);
            let y = solve(&gc).map_through(&mc);
            let z = combine_ids(g, &x, &y, sep)?;
            let verdict = check_ids(g, &z)?;
            (x.len(), y.len(), z.len(), (delta + 1) * b, verdict)
        }
        Lemma::CombineCds => {
            let ra = attach_separator_vertex(&ga, &ba)?;
            let rc = attach_separator_vertex(&gc, &bc)?;
            let solve = |h: &Graph| if exact { exact_cds(h) } else { greedy_cds(h) };
            // Strip z, then go back to the ids of g.
            let x = ra.lift(&solve(&ra.graph)?).map_through(&ma);
            let y = rc.lift(&solve(&rc.graph)?).map_through(&mc);
            let z = combine_cds(g, &x, &y, sep)?;
            let verdict = check_cds(g, &z)?;
            (x.len(), y.len(), z.len(), 3 * b, verdict)
        }
        _ => unreachable!(),
    };
    if let Err(v) = verdict {
        return fail(format!("combined solution invalid: {v}"));
    }
    let slack = if cfg.tighten { 0 } else { slack };
    if z <= x + y + slack {
        pass(1)
    } else {
        fail(format!(
            "n={} |B|={b}: |Z|={z} > {x} + {y} + {slack}",
            g.vertex_count()
        ))
    }
}

fn reductions(seed: u64) -> Check {
    let hs = random_hs(seed, 8, 12)?;
    let opt = exact_hs(&hs).len();
    let art = hs_to_ds(&hs);
    let g = &art.instance;
    let ds = exact_ds(g);
    let cds = exact_cds(g)?.len();
    let nst = hs_to_nst(&hs);
    let steiner = exact_nst(&nst.instance)?;
    if (ds.len(), cds, steiner.len()) != (opt, opt, opt) {
        return fail(format!(
            "OPT_HS={opt}, OPT_DS={}, OPT_CDS={cds}, OPT_NST={}",
            ds.len(),
            steiner.len()
        ));
    }
    for x in [ds, greedy_ds(g), g.all_vertices()] {
        let y = lift_ds_to_hs(&hs, &art, &x)?;
        if hs.first_unhit(&y).is_some() || y.len() > x.len() {
            return fail(format!(
                "DS lifting of {:?} gave {:?}",
                x.to_vec(),
                y.to_vec()
            ));
        }
    }
    let y = lift_nst_to_hs(&nst, &steiner)?;
    if hs.first_unhit(&y).is_some() || y.len() > steiner.len() {
        return fail(format!("Steiner lifting gave {:?}", y.to_vec()));
    }
    pass(1)
}

fn irving(seed: u64, cfg: &VerifyConfig) -> Check {
    let f = random_cnf(seed, 6, 10)?;
    let sat = brute_force_sat(&f).is_some();
    let alphas = match cfg.alpha {
        Some(a) => vec![a],
        None => vec![Ratio::from_integer(1), Ratio::from_integer(2)],
    };
    let n = Ratio::from_integer(f.variable_count() as i64);
    for alpha in &alphas {
        let gap =
            cnf_to_ids_gap(&f, *alpha).map_err(|e| HarnessError::Precondition(e.to_string()))?;
        let min = Ratio::from_integer(min_ids_by_enumeration(&gap.artifact.instance) as i64);
        let limit = *alpha * n;
        if sat != (min <= limit) {
            return fail(format!(
                "alpha={alpha}: satisfiable={sat} but min IDS={min}, alpha*n={limit}"
            ));
        }
        if !sat && min < limit.ceil() + 1 {
            return fail(format!(
                "alpha={alpha}: unsatisfiable but min IDS={min} < ceil(alpha*n)+1"
            ));
        }
    }
    pass(alphas.len())
}

fn selfreduce(seed: u64, cfg: &VerifyConfig) -> Check {
    let mut r = rng(seed);
    let n = r.gen_range(0..=cfg.max_n);
    let p = r.gen_range(0.1..0.6);
    let g = bounded_degree(&mut r, n, 4, p)?;
    let budget = ExactBudget::default();
    let out = ids_selfreduce(&g, |h: &Graph, k| ids_decision(h, k, &budget))?;
    if let Err(v) = check_ids(&g, &out.set)? {
        return fail(format!("output is not an IDS: {v}"));
    }
    let opt = exact_ids(&g).len();
    if out.set.len() != opt {
        return fail(format!(
            "output size {} differs from OPT_IDS={opt}",
            out.set.len()
        ));
    }
    if out.queries > n + n * out.k0 {
        return fail(format!(
            "{} queries above n + n*k0 = {}",
            out.queries,
            n + n * out.k0
        ));
    }
    pass(1)
}

/// Corpus graph for the decomposition checks: the family cycles with the seed.
pub fn corpus_graph(seed: u64, max_n: usize) -> Result<Graph, HarnessError> {
    let mut r = rng(seed);
    let n = r.gen_range(1..=max_n);
    let p: f64 = r.gen_range(0.0..0.5);
    let g = match seed % 4 {
        0 => bounded_degree(&mut r, n, 5, p)?,
        1 => connected_bounded(&mut r, n, 5, p / 2.0)?,
        2 => {
            let cols = r.gen_range(1..=n.min(8));
            crate::generate::grid(n / cols, cols)
        }
        _ => connected_bounded(&mut r, n, 3, 0.0)?,
    };
    Ok(g)
}

fn split(seed: u64, cfg: &VerifyConfig) -> Check {
    let g = corpus_graph(seed, cfg.max_n)?;
    let td = heuristic_td(&g);
    if let Err(v) = validate(&g, &td) {
        return fail(format!("heuristic decomposition invalid: {v}"));
    }
    let ntd = make_nice(&g, &td)?;
    if ntd.width() != td.width() {
        return fail(format!(
            "make_nice changed width {} to {}",
            td.width(),
            ntd.width()
        ));
    }
    if let Err(e) = ntd.check_nice() {
        return fail(e.to_string());
    }
    if let Err(v) = validate(&g, &ntd.to_tree_decomposition()) {
        return fail(format!("nice decomposition invalid: {v}"));
    }
    let n = g.vertex_count();
    for s in 1..=n {
        let t = ntd.find_split_node(s)?;
        let size = ntd.subtree_vertices(t)?.len();
        if size < s || size > 2 * s {
            return fail(format!("s={s}: chosen node has |V_t|={size}"));
        }
    }
    pass(n + 3)
}

fn lower_bound(seed: u64, cfg: &VerifyConfig) -> Check {
    let mut r = rng(seed);
    let n = r.gen_range(1..=cfg.max_n);
    let p = r.gen_range(0.0..0.3);
    let g = connected_bounded(&mut r, n, 5, p)?;
    let lb = ds_lower_bound(&g) + usize::from(cfg.tighten);
    let cap = crate::experiment::Capacity::Degree.apply(&g);
    let ds = exact_ds(&g).len();
    let optima = [
        ("ds", ds),
        ("ids", exact_ids(&g).len()),
        ("cds", exact_cds(&g)?.len()),
        ("capds", exact_capds(&cap).len()),
        (
            "capds-1",
            exact_capds(&CapacitatedGraph::uniform(g.clone(), 1)).len(),
        ),
    ];
    for (name, opt) in optima {
        if opt < lb {
            return fail(format!(
                "n={n} Δ={}: OPT_{name}={opt} below bound {lb}",
                g.max_degree()
            ));
        }
    }
    if check_ds(&g, &exact_ds(&g))?.is_err() {
        return fail("exact DS invalid".into());
    }
    pass(optima.len())
}
