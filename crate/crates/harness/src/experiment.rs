//! One kernelization run per instance, reported as an [`ExperimentRecord`].

use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use tdkernel::kernels::{kernelize, KernelConfig, KernelParams, KernelTrace, TraceRecord};
use tdkernel::oracles::{exact_solve, Backend, ExactBudget, OracleError};
use tdkernel::treedecomp::{heuristic_td, make_nice, TreeDecomposition};
use tdkernel::{
    check_solution, CapacitatedGraph, Graph, Instance, ProblemKind, Rational, Solution,
};

use crate::error::HarnessError;

/// Capacities used for CapDS runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Capacity {
    /// `cap(v) = deg(v)`, under which CapDS and DS share their optimum.
    Degree,
    Uniform(usize),
}

impl FromStr for Capacity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "degree" => Ok(Capacity::Degree),
            _ => s
                .parse()
                .map(Capacity::Uniform)
                .map_err(|_| format!("capacity must be `degree` or an integer, got `{s}`")),
        }
    }
}

impl Capacity {
    pub fn apply(self, g: &Graph) -> CapacitatedGraph {
        match self {
            Capacity::Degree => {
                let caps = g.vertices().map(|v| g.degree(v)).collect();
                CapacitatedGraph::new(g.clone(), caps).expect("one capacity per vertex")
            }
            Capacity::Uniform(c) => CapacitatedGraph::uniform(g.clone(), c),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunSpec {
    pub kind: ProblemKind,
    pub epsilon: Rational,
    pub backend: Backend,
    pub exact_opt: bool,
    pub capacity: Capacity,
    pub budget: ExactBudget,
    /// Replaces the `2s` (`2s + 1`) oracle size cap; used to exercise the
    /// contract check.
    pub query_cap: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct InstanceInput {
    pub id: String,
    pub graph: Graph,
    /// Decomposition to use; the min-degree heuristic otherwise.
    pub td: Option<TreeDecomposition>,
}

/// One CSV row. Field order is the column order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentRecord {
    pub instance_id: String,
    pub n: usize,
    pub m: usize,
    /// Width of the decomposition the run used.
    pub width: isize,
    pub delta: usize,
    pub problem: ProblemKind,
    pub epsilon: f64,
    pub backend: Backend,
    pub size: usize,
    pub opt: Option<usize>,
    /// `size / opt`; `1` when both are zero.
    pub ratio: Option<f64>,
    pub oracle_calls: usize,
    pub max_query_size: usize,
    pub wall_ms: f64,
}

impl ExperimentRecord {
    pub const HEADER: [&'static str; 14] = [
        "instance_id",
        "n",
        "m",
        "width",
        "delta",
        "problem",
        "epsilon",
        "backend",
        "size",
        "opt",
        "ratio",
        "oracle_calls",
        "max_query_size",
        "wall_ms",
    ];
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub record: ExperimentRecord,
    pub params: KernelParams,
    pub trace: KernelTrace,
    pub solution: Solution,
    /// `size <= (1+ε)·opt`, checked in exact arithmetic when OPT is known.
    pub within_ratio: Option<bool>,
}

impl RunOutcome {
    /// The run fails when the exact oracle misses the guarantee it promises.
    pub fn guarantee_holds(&self, spec: &RunSpec) -> bool {
        spec.backend != Backend::Exact || self.within_ratio != Some(false)
    }
}

fn as_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Runs the kernelization for `spec.kind` on one instance, checks the output
/// and optionally computes the exact optimum for the ratio column.
pub fn run_instance(input: &InstanceInput, spec: &RunSpec) -> Result<RunOutcome, HarnessError> {
    let g = &input.graph;
    if spec.kind == ProblemKind::Cds && !g.is_connected() {
        return Err(HarnessError::Precondition(
            "connected domination needs a connected graph; handle each component separately".into(),
        ));
    }
    let start = Instant::now();
    let td = match &input.td {
        Some(td) => td.clone(),
        None => heuristic_td(g),
    };
    let ntd = make_nice(g, &td)?;
    let params = KernelParams::for_instance(spec.kind, spec.epsilon, g, &ntd)?;
    let mut oracle = params.oracle(spec.backend).with_budget(spec.budget);
    if let Some(cap) = spec.query_cap {
        oracle.set_size_cap(cap);
    }
    let cap = spec.capacity.apply(g);
    let instance = if spec.kind == ProblemKind::CapDs {
        Instance::Capacitated(&cap)
    } else {
        Instance::Graph(g)
    };
    let cfg = KernelConfig::new(spec.epsilon);
    let out = kernelize(spec.kind, instance, &ntd, &cfg, &mut oracle)?;
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;

    if let Err(v) = check_solution(instance, spec.kind, &out.solution)? {
        return Err(HarnessError::Verification(format!(
            "{}: {} output is invalid: {v}",
            input.id, spec.kind
        )));
    }
    if out.trace.max_query_size > oracle.size_cap() {
        return Err(HarnessError::Verification(format!(
            "{}: query of {} vertices above the cap {}",
            input.id,
            out.trace.max_query_size,
            oracle.size_cap()
        )));
    }
    let opt = if spec.exact_opt {
        match exact_solve(spec.kind, instance, &spec.budget) {
            Ok(sol) => Some(sol.len()),
            Err(OracleError::BudgetExceeded { .. }) => None,
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };
    let size = out.solution.len();
    let ratio = opt.map(|o| if o == 0 { 1.0 } else { size as f64 / o as f64 });
    let within_ratio = opt.map(|o| {
        Ratio::from_integer(size as i64)
            <= (Ratio::from_integer(1) + spec.epsilon) * Ratio::from_integer(o as i64)
    });
    let record = ExperimentRecord {
        instance_id: input.id.clone(),
        n: g.vertex_count(),
        m: g.edge_count(),
        width: ntd.width(),
        delta: params.delta,
        problem: spec.kind,
        epsilon: as_f64(spec.epsilon),
        backend: spec.backend,
        size,
        opt,
        ratio,
        oracle_calls: out.trace.oracle_calls,
        max_query_size: out.trace.max_query_size,
        wall_ms,
    };
    Ok(RunOutcome {
        record,
        params,
        trace: out.trace,
        solution: out.solution,
        within_ratio,
    })
}

/// Runs every instance on the rayon pool; results come back in input order.
pub fn run_all(inputs: &[InstanceInput], spec: &RunSpec) -> Vec<Result<RunOutcome, HarnessError>> {
    inputs
        .par_iter()
        .map(|input| run_instance(input, spec))
        .collect()
}

pub fn write_csv<W: Write>(out: W, records: &[ExperimentRecord]) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    w.write_record(ExperimentRecord::HEADER)?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
#[serde(tag = "event", rename_all = "snake_case")]
enum TraceLine<'a> {
    Level {
        instance: &'a str,
        #[serde(flatten)]
        record: &'a TraceRecord,
    },
    Summary {
        instance: &'a str,
        s: usize,
        oracle_calls: usize,
        max_query_size: usize,
    },
}

/// One JSON object per recursion level, then a summary line.
pub fn trace_lines(instance: &str, trace: &KernelTrace) -> Vec<String> {
    let mut lines: Vec<String> = trace
        .records
        .iter()
        .map(|record| serde_json::to_string(&TraceLine::Level { instance, record }).unwrap())
        .collect();
    let summary = TraceLine::Summary {
        instance,
        s: trace.s,
        oracle_calls: trace.oracle_calls,
        max_query_size: trace.max_query_size,
    };
    lines.push(serde_json::to_string(&summary).unwrap());
    lines
}
