//! Result persistence: a summary CSV row per experiment, a JSON file with
//! full per-run detail, and one convergence-trace CSV per run.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};

use crate::experiment::{sample_trace, ExperimentOutcome};

/// Renders the summary table: one row per algorithm x instance x m.
pub fn results_csv(outcomes: &[ExperimentOutcome]) -> String {
    let mut csv = String::from("instance,m,algorithm,runs,budget,min,max,avg,stdev\n");
    for o in outcomes {
        writeln!(
            csv,
            "{},{},{},{},{},{},{},{},{}",
            o.instance,
            o.m,
            o.algorithm,
            o.runs,
            o.budget,
            o.stats.min,
            o.stats.max,
            o.stats.avg,
            o.stats.stdev
        )
        .expect("writing to string");
    }
    csv
}

fn trace_file_name(outcome: &ExperimentOutcome, run: usize, lone: bool) -> String {
    if lone {
        format!("trace_{run:03}.csv")
    } else {
        format!(
            "trace_{}_{}_m{}_{run:03}.csv",
            outcome.instance, outcome.algorithm, outcome.m
        )
    }
}

/// Writes `results.csv`, `results.json`, and the per-run trace CSVs into
/// `out_dir`, returning the written paths. Identical experiment outcomes
/// produce byte-identical files.
pub fn emit_report(out_dir: &Path, outcomes: &[ExperimentOutcome]) -> Result<Vec<PathBuf>> {
    anyhow::ensure!(!outcomes.is_empty(), "nothing to report");
    fs::create_dir_all(out_dir)
        .with_context(|| format!("creating output directory {}", out_dir.display()))?;
    let mut written = Vec::new();

    let csv_path = out_dir.join("results.csv");
    fs::write(&csv_path, results_csv(outcomes))?;
    written.push(csv_path);

    let json_path = out_dir.join("results.json");
    let json = serde_json::to_string_pretty(outcomes)?;
    fs::write(&json_path, json)?;
    written.push(json_path);

    let lone = outcomes.len() == 1;
    for outcome in outcomes {
        let every = outcome.trace_every.max(1);
        for record in &outcome.records {
            let mut csv = String::from("evaluations,best_minmax\n");
            for p in sample_trace(&record.trace, every) {
                writeln!(csv, "{},{}", p.evaluations, p.best_cost).expect("writing to string");
            }
            let path = out_dir.join(trace_file_name(outcome, record.run, lone));
            fs::write(&path, csv)?;
            written.push(path);
        }
    }
    Ok(written)
}

/// Loads experiment outcomes back from a `results.json` file.
pub fn load_results(path: &Path) -> Result<Vec<ExperimentOutcome>> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading results file {}", path.display()))?;
    Ok(serde_json::from_str(&text)?)
}
