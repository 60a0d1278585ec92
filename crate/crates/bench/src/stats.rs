//! Aggregate statistics over repeated runs and the two-sample test used
//! to compare algorithms.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};

/// Min/max/avg/stdev of the final MinMax cost over an experiment's runs.
/// The standard deviation is the sample estimate (n - 1 denominator).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunStats {
    pub min: f64,
    pub max: f64,
    pub avg: f64,
    pub stdev: f64,
}

pub fn summarize(costs: &[f64]) -> RunStats {
    assert!(!costs.is_empty(), "no runs to summarize");
    let n = costs.len() as f64;
    let min = costs.iter().copied().fold(f64::INFINITY, f64::min);
    let max = costs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let avg = costs.iter().sum::<f64>() / n;
    let stdev = if costs.len() < 2 {
        0.0
    } else {
        (costs.iter().map(|c| (c - avg) * (c - avg)).sum::<f64>() / (n - 1.0)).sqrt()
    };
    RunStats {
        min,
        max,
        avg,
        stdev,
    }
}

/// Welch two-sample t-test result. `statistic` is `None` when both
/// samples have zero variance and equal means, which leaves t undefined.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TTestOutcome {
    pub statistic: Option<f64>,
    pub df: Option<f64>,
    pub p_value: Option<f64>,
    pub significant: bool,
}

/// Two-sided Welch (unequal-variance) t-test at the given significance
/// level. Welch is the safe choice here: run variances of the compared
/// algorithms differ by an order of magnitude on some instances.
pub fn t_test(a: &[f64], b: &[f64], significance: f64) -> TTestOutcome {
    assert!(a.len() >= 2 && b.len() >= 2, "need at least 2 runs per sample");
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let mean = |s: &[f64]| s.iter().sum::<f64>() / s.len() as f64;
    let (ma, mb) = (mean(a), mean(b));
    let var = |s: &[f64], m: f64| s.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (s.len() as f64 - 1.0);
    let (va, vb) = (var(a, ma), var(b, mb));

    let se2 = va / na + vb / nb;
    if se2 == 0.0 {
        // zero variance on both sides: identical means leave t undefined,
        // distinct means separate the samples completely
        return if ma == mb {
            TTestOutcome {
                statistic: None,
                df: None,
                p_value: None,
                significant: false,
            }
        } else {
            TTestOutcome {
                statistic: Some(if ma > mb { f64::INFINITY } else { f64::NEG_INFINITY }),
                df: None,
                p_value: Some(0.0),
                significant: true,
            }
        };
    }

    let t = (ma - mb) / se2.sqrt();
    // Welch-Satterthwaite degrees of freedom
    let df = se2 * se2
        / ((va / na) * (va / na) / (na - 1.0) + (vb / nb) * (vb / nb) / (nb - 1.0));
    let dist = StudentsT::new(0.0, 1.0, df).expect("df > 0");
    let p = 2.0 * (1.0 - dist.cdf(t.abs()));
    TTestOutcome {
        statistic: Some(t),
        df: Some(df),
        p_value: Some(p),
        significant: p < significance,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_of_single_run() {
        let s = summarize(&[42.5]);
        assert_eq!(s.min, 42.5);
        assert_eq!(s.max, 42.5);
        assert_eq!(s.avg, 42.5);
        assert_eq!(s.stdev, 0.0);
    }

    #[test]
    fn summary_orders_and_spreads() {
        let s = summarize(&[2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0]);
        assert_eq!(s.min, 2.0);
        assert_eq!(s.max, 9.0);
        assert_eq!(s.avg, 5.0);
        // sample stdev of this classic set is sqrt(32/7)
        assert!((s.stdev - (32.0f64 / 7.0).sqrt()).abs() < 1e-12);
        assert!(s.min <= s.avg && s.avg <= s.max);
    }

    #[test]
    fn identical_samples_are_not_significant() {
        let a = [1.0, 2.0, 3.0];
        let out = t_test(&a, &a, 0.10);
        assert_eq!(out.statistic, Some(0.0));
        assert!(!out.significant);
    }

    #[test]
    fn shifted_samples_are_significant() {
        let a = [1.0, 2.0, 3.0];
        let b = [1001.0, 1002.0, 1003.0];
        let out = t_test(&a, &b, 0.10);
        assert!(out.significant);
        assert!(out.statistic.unwrap() < -100.0);
    }

    #[test]
    fn welch_matches_frozen_reference() {
        // frozen from an independent computation of the Welch formulas
        let a = [1.1, 2.3, 3.5, 4.2, 5.0];
        let b = [2.0, 2.1, 3.9, 4.4, 6.1, 7.2];
        let out = t_test(&a, &b, 0.10);
        assert!((out.statistic.unwrap() - (-0.9670619196657658)).abs() < 1e-12);
        assert!((out.df.unwrap() - 8.911295891818192).abs() < 1e-9);
        assert!((out.p_value.unwrap() - 0.35902388417055).abs() < 1e-9);
        assert!(!out.significant);
    }

    #[test]
    fn degenerate_zero_variance_cases() {
        let a = [5.0, 5.0, 5.0];
        let same = t_test(&a, &a, 0.10);
        assert_eq!(adjacent_flags(&same), (None, false));
        let b = [6.0, 6.0];
        let apart = t_test(&a, &b, 0.10);
        assert!(apart.significant);
        assert_eq!(apart.p_value, Some(0.0));
        assert_eq!(apart.statistic, Some(f64::NEG_INFINITY));
    }

    fn adjacent_flags(t: &TTestOutcome) -> (Option<f64>, bool) {
        (t.statistic, t.significant)
    }
}
