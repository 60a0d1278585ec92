//! Multi-run experiment engine: seeded repetitions of one algorithm on
//! one instance, executed across a worker pool, with deterministic
//! aggregation.

use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use mtsp_core::{Instance, TracePoint};
use serde::{Deserialize, Serialize};

use crate::algorithm::{run_algorithm, Algorithm, AlgorithmParams};
use crate::stats::{summarize, RunStats};
use crate::tsplib;

fn default_runs() -> usize {
    50
}

fn default_budget() -> u64 {
    250_000
}

fn default_trace_every() -> u64 {
    1_000
}

/// One experiment: `runs` independent seeded runs (seed, seed+1, ...) of
/// one algorithm on one instance. Loadable from a declarative TOML file;
/// the CLI flags override individual fields.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub instance: PathBuf,
    pub m: usize,
    pub algorithm: Algorithm,
    #[serde(default = "default_runs")]
    pub runs: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_budget")]
    pub budget: u64,
    /// Convergence-trace sampling grid (evaluations per emitted point).
    #[serde(default = "default_trace_every")]
    pub trace_every: u64,
    /// Concurrent runs; defaults to the available cores. The MTSP_WORKERS
    /// environment variable overrides both this and the default.
    #[serde(default)]
    pub workers: Option<usize>,
    #[serde(default)]
    pub params: AlgorithmParams,
}

impl ExperimentConfig {
    pub fn new(instance: PathBuf, m: usize, algorithm: Algorithm) -> Self {
        Self {
            instance,
            m,
            algorithm,
            runs: default_runs(),
            seed: 0,
            budget: default_budget(),
            trace_every: default_trace_every(),
            workers: None,
            params: AlgorithmParams::default(),
        }
    }
}

/// One seeded run's results. Tours use the instance file's 1-based city
/// labels; the convergence trace is written to its own CSV, not the JSON.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunRecord {
    pub run: usize,
    pub seed: u64,
    pub minmax: f64,
    pub minsum: f64,
    pub evaluations: u64,
    pub wall_ms: u64,
    pub tours: Vec<Vec<usize>>,
    pub tour_costs: Vec<f64>,
    #[serde(skip, default)]
    pub trace: Vec<TracePoint>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentOutcome {
    pub instance: String,
    pub instance_path: String,
    pub m: usize,
    pub algorithm: Algorithm,
    pub runs: usize,
    pub base_seed: u64,
    pub budget: u64,
    pub trace_every: u64,
    pub stats: RunStats,
    pub records: Vec<RunRecord>,
}

impl ExperimentOutcome {
    pub fn final_costs(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.minmax).collect()
    }
}

fn resolve_workers(configured: Option<usize>) -> usize {
    if let Ok(raw) = std::env::var("MTSP_WORKERS") {
        if let Ok(v) = raw.parse::<usize>() {
            if v >= 1 {
                return v;
            }
        }
    }
    configured
        .or_else(|| std::thread::available_parallelism().ok().map(|p| p.get()))
        .unwrap_or(1)
        .max(1)
}

/// Runs the whole experiment. Configuration problems (unreadable
/// instance, infeasible salesman count, zero runs) are reported before
/// any run starts; per-run seeds are `seed + run_index` and results are
/// aggregated in run order, so the outcome does not depend on the worker
/// count.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutcome> {
    let instance = tsplib::load_instance(&cfg.instance)
        .with_context(|| format!("loading instance {}", cfg.instance.display()))?;
    if cfg.runs == 0 {
        bail!("runs must be at least 1");
    }
    if cfg.m == 0 || cfg.m > instance.max_salesmen() {
        bail!(
            "cannot route {} salesmen on {} ({} cities)",
            cfg.m,
            instance.name(),
            instance.n()
        );
    }
    if cfg.budget == 0 {
        bail!("budget must be at least 1");
    }

    let workers = resolve_workers(cfg.workers).min(cfg.runs);
    let records = run_all(&instance, cfg, workers)?;
    let stats = summarize(&records.iter().map(|r| r.minmax).collect::<Vec<_>>());
    Ok(ExperimentOutcome {
        instance: instance.name().to_string(),
        instance_path: cfg.instance.display().to_string(),
        m: cfg.m,
        algorithm: cfg.algorithm,
        runs: cfg.runs,
        base_seed: cfg.seed,
        budget: cfg.budget,
        trace_every: cfg.trace_every,
        stats,
        records,
    })
}

fn run_all(instance: &Instance, cfg: &ExperimentConfig, workers: usize) -> Result<Vec<RunRecord>> {
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Result<RunRecord>>>> =
        Mutex::new((0..cfg.runs).map(|_| None).collect());

    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let run = next.fetch_add(1, Ordering::Relaxed);
                if run >= cfg.runs {
                    break;
                }
                let result = execute_run(instance, cfg, run);
                slots.lock().unwrap()[run] = Some(result);
            });
        }
    });

    let mut records = Vec::with_capacity(cfg.runs);
    for (run, slot) in slots.into_inner().unwrap().into_iter().enumerate() {
        let record = slot
            .unwrap_or_else(|| Err(anyhow::anyhow!("worker pool never executed run {run}")))
            .with_context(|| format!("run {run} failed"))?;
        records.push(record);
    }
    Ok(records)
}

fn execute_run(instance: &Instance, cfg: &ExperimentConfig, run: usize) -> Result<RunRecord> {
    let seed = cfg.seed.wrapping_add(run as u64);
    let started = Instant::now();
    let out = run_algorithm(instance, cfg.m, cfg.algorithm, &cfg.params, cfg.budget, seed)?;
    let wall_ms = started.elapsed().as_millis() as u64;
    out.best
        .validate(instance)
        .map_err(|v| anyhow::anyhow!("run {run} produced an invalid solution: {v:?}"))?;
    let tour_costs = out.best.tour_costs(instance);
    let tours = out
        .best
        .tours
        .iter()
        .map(|t| t.cities.iter().map(|&c| c + 1).collect())
        .collect();
    Ok(RunRecord {
        run,
        seed,
        minmax: out.best_cost,
        minsum: out.minsum,
        evaluations: out.evaluations,
        wall_ms,
        tours,
        tour_costs,
        trace: out.trace,
    })
}

/// Downsamples a per-generation trace onto the `every`-evaluations grid:
/// the first and last points are kept, in between a point is kept
/// whenever it crosses into a new grid cell.
pub fn sample_trace(trace: &[TracePoint], every: u64) -> Vec<TracePoint> {
    let every = every.max(1);
    let mut sampled = Vec::new();
    let mut last_cell: Option<u64> = None;
    for (i, p) in trace.iter().enumerate() {
        let cell = p.evaluations / every;
        let keep = i == 0 || i == trace.len() - 1 || Some(cell) != last_cell;
        if keep {
            sampled.push(*p);
        }
        last_cell = Some(cell);
    }
    sampled
}

/// Best cost at or before each requested evaluation count, stepping
/// through the trace; `None` while the trace has not started yet.
pub fn best_at(trace: &[TracePoint], evaluations: u64) -> Option<f64> {
    let mut best = None;
    for p in trace {
        if p.evaluations <= evaluations {
            best = Some(p.best_cost);
        } else {
            break;
        }
    }
    best
}
