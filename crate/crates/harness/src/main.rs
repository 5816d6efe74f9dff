use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tdkernel::oracles::{Backend, ExactBudget};
use tdkernel::treedecomp::{heuristic_td, make_nice};
use tdkernel::{parse_ratio, ProblemKind, Rational};
use tdkernel_harness::experiment::{trace_lines, write_csv};
use tdkernel_harness::io::{write_gr, write_td};
use tdkernel_harness::{
    load_graph, load_td, run_all, write_file, Capacity, Family, HarnessError, InstanceInput, Lemma,
    RunSpec, VerifyConfig,
};

/// Approximate Turing kernelizations for domination problems on graphs of
/// bounded treewidth and degree.
///
/// Exit codes: 0 success, 1 usage or I/O, 2 parse, 3 oracle contract,
/// 4 verification, 5 unmet precondition. The exact solver budget can be
/// overridden with TDKERNEL_EXACT_BUDGET (`30` or `ds=30,ids=22`).
#[derive(Parser)]
#[command(name = "tdkernel", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a kernelization and print one CSV row per instance.
    Kernelize(KernelizeArgs),
    /// Run a seeded verification suite and print pass/fail counts.
    Verify(VerifyArgs),
    /// Write a generated graph in .gr format.
    Generate(GenerateArgs),
    /// Write the min-degree heuristic decomposition of a graph in .td format.
    Decompose(DecomposeArgs),
}

#[derive(Args)]
struct KernelizeArgs {
    #[arg(long, value_parser = parse_kind)]
    problem: ProblemKind,
    #[arg(long, value_parser = parse_ratio)]
    epsilon: Rational,
    #[arg(long, default_value = "exact")]
    oracle: Backend,
    /// Input graphs; each becomes one row.
    #[arg(long, num_args = 1.., required_unless_present = "family")]
    graph: Vec<PathBuf>,
    /// Decomposition for a single --graph; the heuristic is used otherwise.
    #[arg(long)]
    td: Option<PathBuf>,
    /// Generated instances instead of files, e.g. `random:40:4:0.3`.
    #[arg(long, conflicts_with_all = ["graph", "td"])]
    family: Option<Family>,
    /// Number of generated instances, seeds `seed..seed+count`.
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Compute the exact optimum when within budget and fill opt and ratio.
    #[arg(long)]
    exact_opt: bool,
    /// Write the kernel trace as JSON lines.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// CapDS capacities: `degree` or a uniform integer.
    #[arg(long, default_value = "degree")]
    capacity: Capacity,
    /// Override the oracle size cap; smaller than 2s makes runs fail with
    /// a contract violation.
    #[arg(long, hide = true)]
    query_cap: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of lemma-ds-ii, lemma-capds-i, lemma-ids-ii, lemma-cds-i,
    /// combine-capds, combine-ids, combine-cds, reductions, irving,
    /// selfreduce, split, lower-bound, or `all`.
    lemma: String,
    #[arg(long, default_value_t = 200)]
    count: usize,
    #[arg(long, default_value_t = 14)]
    max_n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Irving gap factor (rational); 1 and 2 when omitted.
    #[arg(long, value_parser = parse_ratio)]
    alpha: Option<Rational>,
    /// Drop the additive slack from the bound; expected to fail.
    #[arg(long)]
    tighten: bool,
    /// Print the reports as JSON lines instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GenerateArgs {
    family: Family,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DecomposeArgs {
    graph: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_kind(s: &str) -> Result<ProblemKind, String> {
    let kind: ProblemKind = s.parse()?;
    if !ProblemKind::DOMINATION.contains(&kind) {
        return Err(format!(
            "no kernelization for `{s}`; expected ds, ids, cds or capds"
        ));
    }
    Ok(kind)
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), HarnessError> {
    match out {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn kernelize(args: KernelizeArgs) -> Result<(), HarnessError> {
    let budget = ExactBudget::from_env().map_err(HarnessError::Usage)?;
    let inputs: Vec<InstanceInput> = match &args.family {
        Some(fam) => (0..args.count as u64)
            .map(|i| {
                let seed = args.seed.wrapping_add(i);
                Ok(InstanceInput {
                    id: format!("{fam}#{seed}"),
                    graph: fam.generate(seed)?,
                    td: None,
                })
            })
            .collect::<Result<_, HarnessError>>()?,
        None => {
            if args.td.is_some() && args.graph.len() != 1 {
                return Err(HarnessError::Usage("--td needs exactly one --graph".into()));
            }
            args.graph
                .iter()
                .map(|path| {
                    let graph = load_graph(path)?;
                    let td = args.td.as_ref().map(|p| load_td(p, &graph)).transpose()?;
                    Ok(InstanceInput {
                        id: path.display().to_string(),
                        graph,
                        td,
                    })
                })
                .collect::<Result<_, HarnessError>>()?
        }
    };
    let spec = RunSpec {
        kind: args.problem,
        epsilon: args.epsilon,
        backend: args.oracle,
        exact_opt: args.exact_opt,
        capacity: args.capacity,
        budget,
        query_cap: args.query_cap,
    };
    if spec.epsilon <= Rational::from_integer(0) {
        return Err(HarnessError::Usage(format!(
            "epsilon must be positive, got {}",
            spec.epsilon
        )));
    }
    let results = run_all(&inputs, &spec);
    let mut records = Vec::new();
    let mut trace = String::new();
    let mut first_error = None;
    let mut missed = Vec::new();
    for (input, result) in inputs.iter().zip(results) {
        match result {
            Ok(out) => {
                for line in trace_lines(&input.id, &out.trace) {
                    trace.push_str(&line);
                    trace.push('\n');
                }
                if !out.guarantee_holds(&spec) {
                    missed.push(format!(
                        "{}: size {} above (1+ε)·{}",
                        input.id,
                        out.record.size,
                        out.record.opt.unwrap()
                    ));
                }
                records.push(out.record);
            }
            Err(e) => {
                eprintln!("{}: {e}", input.id);
                first_error.get_or_insert(e);
            }
        }
    }
    let stdout = std::io::stdout();
    write_csv(stdout.lock(), &records).map_err(|e| HarnessError::Usage(e.to_string()))?;
    if let Some(path) = &args.trace {
        write_file(path, &trace)?;
    }
    if let Some(e) = first_error {
        return Err(e);
    }
    if !missed.is_empty() {
        return Err(HarnessError::Verification(missed.join("; ")));
    }
    Ok(())
}

fn verify(args: VerifyArgs) -> Result<(), HarnessError> {
    let lemmas = if args.lemma == "all" {
        Lemma::ALL.to_vec()
    } else {
        vec![args.lemma.parse::<Lemma>().map_err(HarnessError::Usage)?]
    };
    let cfg = VerifyConfig {
        count: args.count,
        max_n: args.max_n,
        seed: args.seed,
        alpha: args.alpha,
        tighten: args.tighten,
    };
    let mut failed = Vec::new();
    let stdout = std::io::stdout();
    for lemma in lemmas {
        let report = tdkernel_harness::verify(lemma, &cfg)?;
        let mut out = stdout.lock();
        if args.json {
            writeln!(out, "{}", serde_json::to_string(&report).unwrap()).ok();
        } else {
            writeln!(out, "{report}").ok();
        }
        if !report.ok() {
            let seeds: Vec<String> = report.failures.iter().map(|f| f.seed.to_string()).collect();
            failed.push(format!("{lemma} (seeds {})", seeds.join(", ")));
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(HarnessError::Verification(failed.join("; ")))
    }
}

fn run(cli: Cli) -> Result<(), HarnessError> {
    match cli.command {
        Command::Kernelize(args) => kernelize(args),
        Command::Verify(args) => verify(args),
        Command::Generate(args) => {
            let g = args.family.generate(args.seed)?;
            emit(args.out.as_ref(), &write_gr(&g))
        }
        Command::Decompose(args) => {
            let g = load_graph(&args.graph)?;
            let td = heuristic_td(&g);
            // Fails only on a bug in the heuristic; make_nice validates.
            make_nice(&g, &td)?;
            emit(args.out.as_ref(), &write_td(&td, g.vertex_count()))
        }
    }
}

fn main() -> ExitCode {
    // Clap reports usage errors with code 2, which belongs to parse errors here.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            e.print().ok();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
