//! Benchmark harness for the MinMax multiple-TSP solvers: TSPLIB file
//! ingestion, a seeded multi-run experiment engine, summary statistics
//! with a Welch two-sample test, and report/trace persistence. The `mtsp`
//! binary fronts all of it.

pub mod algorithm;
pub mod experiment;
pub mod report;
pub mod stats;
pub mod tsplib;

pub use algorithm::{run_algorithm, Algorithm, AlgorithmParams};
pub use experiment::{run_experiment, ExperimentConfig, ExperimentOutcome, RunRecord};
pub use report::{emit_report, load_results, results_csv};
pub use stats::{summarize, t_test, RunStats, TTestOutcome};
pub use tsplib::{load_instance, parse_tsplib, TsplibError};
