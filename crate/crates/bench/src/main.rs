use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use mtsp_bench::algorithm::Algorithm;
use mtsp_bench::experiment::{run_experiment, ExperimentConfig};
use mtsp_bench::report::{emit_report, load_results};
use mtsp_bench::stats::t_test;
use mtsp_bench::tsplib::load_instance;
use mtsp_core::SomNetwork;
use rand::SeedableRng;

#[derive(Parser)]
#[command(
    name = "mtsp",
    about = "MinMax single-depot multiple-TSP solvers and benchmark harness",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment (repeated seeded runs of one algorithm) and
    /// write results.csv, results.json and per-run trace CSVs.
    Solve(SolveArgs),
    /// Welch two-sample t-test between the per-run costs of two
    /// results.json files.
    Compare(CompareArgs),
    /// Export ring-neuron weight snapshots of one SOM training as CSV.
    SomTrace(SomTraceArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Declarative experiment file (TOML); flags below override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// TSPLIB .tsp instance path.
    #[arg(long)]
    instance: Option<PathBuf>,
    /// Number of salesmen.
    #[arg(long)]
    m: Option<usize>,
    /// Algorithm to benchmark.
    #[arg(long = "algo", value_enum)]
    algorithm: Option<Algorithm>,
    /// Independent seeded runs (seed, seed+1, ...).
    #[arg(long)]
    runs: Option<usize>,
    /// Base seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Fitness-evaluation budget per run.
    #[arg(long)]
    budget: Option<u64>,
    /// Output directory.
    #[arg(long, default_value = "results")]
    out: PathBuf,
    /// Trace sampling grid in evaluations.
    #[arg(long)]
    trace_every: Option<u64>,
    /// Concurrent runs (MTSP_WORKERS overrides).
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Args)]
struct CompareArgs {
    /// First results.json (sample A).
    #[arg(long)]
    a: PathBuf,
    /// Second results.json (sample B).
    #[arg(long)]
    b: PathBuf,
    /// Significance level.
    #[arg(long, default_value_t = 0.10)]
    alpha: f64,
}

#[derive(Args)]
struct SomTraceArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Ring rotation offset for the depot insertion points.
    #[arg(long, default_value_t = 0)]
    rotation: usize,
    /// Snapshot period in iterations.
    #[arg(long, default_value_t = 500)]
    every: usize,
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
    /// Training iterations.
    #[arg(long, default_value_t = 5000)]
    iterations: usize,
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Solve(args) => solve(args),
        Command::Compare(args) => compare(args),
        Command::SomTrace(args) => som_trace(args),
    }
}

fn solve(args: SolveArgs) -> Result<()> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading config {}", path.display()))?;
            toml::from_str::<ExperimentConfig>(&text)
                .with_context(|| format!("parsing config {}", path.display()))?
        }
        None => {
            let (Some(instance), Some(m), Some(algorithm)) =
                (args.instance.clone(), args.m, args.algorithm)
            else {
                bail!("--instance, --m and --algo are required unless --config is given");
            };
            ExperimentConfig::new(instance, m, algorithm)
        }
    };
    if let Some(instance) = args.instance {
        cfg.instance = instance;
    }
    if let Some(m) = args.m {
        cfg.m = m;
    }
    if let Some(algorithm) = args.algorithm {
        cfg.algorithm = algorithm;
    }
    if let Some(runs) = args.runs {
        cfg.runs = runs;
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(budget) = args.budget {
        cfg.budget = budget;
    }
    if let Some(every) = args.trace_every {
        cfg.trace_every = every;
    }
    if args.workers.is_some() {
        cfg.workers = args.workers;
    }

    let outcome = run_experiment(&cfg)?;
    let written = emit_report(&args.out, std::slice::from_ref(&outcome))?;
    println!(
        "{} m={} {}: runs={} budget={} min={:.2} max={:.2} avg={:.2} stdev={:.2}",
        outcome.instance,
        outcome.m,
        outcome.algorithm,
        outcome.runs,
        outcome.budget,
        outcome.stats.min,
        outcome.stats.max,
        outcome.stats.avg,
        outcome.stats.stdev
    );
    println!("wrote {} files under {}", written.len(), args.out.display());
    Ok(())
}

fn compare(args: CompareArgs) -> Result<()> {
    let load_single = |path: &PathBuf| -> Result<_> {
        let mut outcomes = load_results(path)?;
        if outcomes.len() != 1 {
            bail!(
                "{} holds {} experiments; compare expects exactly one per file",
                path.display(),
                outcomes.len()
            );
        }
        Ok(outcomes.remove(0))
    };
    let a = load_single(&args.a)?;
    let b = load_single(&args.b)?;
    let outcome = t_test(&a.final_costs(), &b.final_costs(), args.alpha);

    println!(
        "A: {} m={} {} (runs={}, avg={:.2})",
        a.instance, a.m, a.algorithm, a.runs, a.stats.avg
    );
    println!(
        "B: {} m={} {} (runs={}, avg={:.2})",
        b.instance, b.m, b.algorithm, b.runs, b.stats.avg
    );
    match (outcome.statistic, outcome.p_value) {
        (Some(t), Some(p)) => println!(
            "Welch t = {t:.4}, df = {:.2}, p = {p:.4}",
            outcome.df.unwrap_or(f64::NAN)
        ),
        _ => println!("t statistic undefined (both samples constant and equal)"),
    }
    println!(
        "difference at alpha {}: {}",
        args.alpha,
        if outcome.significant {
            "significant"
        } else {
            "not significant"
        }
    );
    Ok(())
}

fn som_trace(args: SomTraceArgs) -> Result<()> {
    use std::fmt::Write as _;
    let inst = load_instance(&args.instance)?;
    let cfg = mtsp_core::SomConfig {
        iterations: args.iterations,
        ..Default::default()
    };
    let mut net = SomNetwork::init_ring(&inst, args.m, cfg, args.rotation)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(args.seed);

    let mut csv = String::from("iteration,neuron,x,y\n");
    let snapshot = |net: &SomNetwork, csv: &mut String| {
        for (i, w) in net.weights().iter().enumerate() {
            writeln!(csv, "{},{},{},{}", net.iteration(), i, w.x, w.y).expect("string write");
        }
    };
    snapshot(&net, &mut csv);
    while net.iteration() < cfg.iterations {
        net.step(&inst, &mut rng);
        if net.iteration() % args.every.max(1) == 0 || net.iteration() == cfg.iterations {
            snapshot(&net, &mut csv);
        }
    }
    if let Some(parent) = args.out.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    fs::write(&args.out, csv)?;
    let solution = net.extract_solution(&inst);
    println!(
        "trained {} iterations on {}; extracted MinMax {:.2}; snapshots in {}",
        cfg.iterations,
        inst.name(),
        solution.minmax_cost(&inst),
        args.out.display()
    );
    Ok(())
}
