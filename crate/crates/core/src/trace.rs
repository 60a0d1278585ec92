//! Types shared by the search loops.

use core::fmt;

/// One convergence sample: the best MinMax cost found so far after a
/// given number of counted fitness evaluations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TracePoint {
    pub evaluations: u64,
    pub best_cost: f64,
}

/// Errors shared by the solver entry points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverError {
    /// More salesmen than non-depot cities: some tour would stay empty.
    InfeasibleSalesmen { m: usize, n: usize },
    /// A seed population was supplied with the wrong number of solutions.
    BadSeedCount { expected: usize, got: usize },
}

impl fmt::Display for SolverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InfeasibleSalesmen { m, n } => write!(
                f,
                "{m} salesmen cannot all serve a non-empty tour on {n} cities"
            ),
            Self::BadSeedCount { expected, got } => {
                write!(f, "seed population has {got} solutions, expected {expected}")
            }
        }
    }
}

impl core::error::Error for SolverError {}
