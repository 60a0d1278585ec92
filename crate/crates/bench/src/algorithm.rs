//! The six benchmarked algorithms and a single-run dispatcher.

use clap::ValueEnum;
use mtsp_core::ea::{run_ea, EaConfig};
use mtsp_core::hybrid::{som_pheromone_seed, som_seed_population, SomLength};
use mtsp_core::{aco, AcoConfig, DepotBreak, Instance, Solution, SolverError, SomConfig, SomNetwork, TracePoint};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// The solver families from the benchmark protocol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Som,
    Ea,
    SomEa,
    #[value(name = "som-ea-2opt")]
    #[serde(rename = "som-ea-2opt")]
    SomEa2opt,
    Aco,
    SomAco,
}

impl Algorithm {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Som => "som",
            Self::Ea => "ea",
            Self::SomEa => "som-ea",
            Self::SomEa2opt => "som-ea-2opt",
            Self::Aco => "aco",
            Self::SomAco => "som-aco",
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Ring-map schedule; mirrors the library defaults.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SomParams {
    pub alpha0: f64,
    pub alpha_min: f64,
    pub iterations: usize,
    pub neuron_multiplier: usize,
    /// `false` keeps the default soft break: neighborhood influence passes
    /// over the depot insertion points.
    pub hard_depot_break: bool,
    /// Extra ring hops charged per depot breakpoint crossed (soft mode).
    pub crossing_penalty: usize,
}

impl Default for SomParams {
    fn default() -> Self {
        let cfg = SomConfig::default();
        Self {
            alpha0: cfg.alpha0,
            alpha_min: cfg.alpha_min,
            iterations: cfg.iterations,
            neuron_multiplier: cfg.neuron_multiplier,
            hard_depot_break: false,
            crossing_penalty: cfg.crossing_penalty,
        }
    }
}

impl SomParams {
    pub fn to_config(&self) -> SomConfig {
        SomConfig {
            alpha0: self.alpha0,
            alpha_min: self.alpha_min,
            iterations: self.iterations,
            neuron_multiplier: self.neuron_multiplier,
            crossing_penalty: self.crossing_penalty,
            depot_break: if self.hard_depot_break {
                DepotBreak::Hard
            } else {
                DepotBreak::Soft
            },
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EaParams {
    pub pop_size: usize,
    pub cross_tour_rate: f64,
    pub sorted_pairing_rate: f64,
    pub in_tour_rate: f64,
    pub elite_fraction: f64,
    /// Used by the 2-opt variant only.
    pub two_opt_period: usize,
}

impl Default for EaParams {
    fn default() -> Self {
        let cfg = EaConfig::default();
        Self {
            pop_size: cfg.pop_size,
            cross_tour_rate: cfg.cross_tour_rate,
            sorted_pairing_rate: cfg.sorted_pairing_rate,
            in_tour_rate: cfg.in_tour_rate,
            elite_fraction: cfg.elite_fraction,
            two_opt_period: 10,
        }
    }
}

impl EaParams {
    fn to_config(&self, budget: u64, two_opt_period: usize) -> EaConfig {
        EaConfig {
            pop_size: self.pop_size,
            cross_tour_rate: self.cross_tour_rate,
            sorted_pairing_rate: self.sorted_pairing_rate,
            in_tour_rate: self.in_tour_rate,
            elite_fraction: self.elite_fraction,
            two_opt_period,
            budget,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AcoParams {
    pub q0: f64,
    pub global_decay: f64,
    pub local_decay: f64,
    pub beta: f64,
    pub colony_size: usize,
    pub force_first_moves: bool,
    /// SOM trainings whose lengths seed the pheromone level (hybrid only).
    pub seed_runs: usize,
    /// `true` seeds from longest-tour lengths instead of totals.
    pub seed_minmax_length: bool,
}

impl Default for AcoParams {
    fn default() -> Self {
        let cfg = AcoConfig::default();
        Self {
            q0: cfg.q0,
            global_decay: cfg.global_decay,
            local_decay: cfg.local_decay,
            beta: cfg.beta,
            colony_size: cfg.colony_size,
            force_first_moves: cfg.force_first_moves,
            seed_runs: 10,
            seed_minmax_length: false,
        }
    }
}

impl AcoParams {
    fn to_config(&self, budget: u64) -> AcoConfig {
        AcoConfig {
            q0: self.q0,
            global_decay: self.global_decay,
            local_decay: self.local_decay,
            beta: self.beta,
            colony_size: self.colony_size,
            budget,
            force_first_moves: self.force_first_moves,
        }
    }

    fn seed_length(&self) -> SomLength {
        if self.seed_minmax_length {
            SomLength::MinMax
        } else {
            SomLength::MinSum
        }
    }
}

#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AlgorithmParams {
    pub som: SomParams,
    pub ea: EaParams,
    pub aco: AcoParams,
}

/// Output of one seeded run.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub best: Solution,
    pub best_cost: f64,
    pub minsum: f64,
    pub evaluations: u64,
    pub trace: Vec<TracePoint>,
}

/// Executes one run of the named algorithm, fully determined by the seed.
pub fn run_algorithm(
    inst: &Instance,
    m: usize,
    algorithm: Algorithm,
    params: &AlgorithmParams,
    budget: u64,
    seed: u64,
) -> Result<RunOutcome, SolverError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let som_cfg = params.som.to_config();
    let (best, best_cost, evaluations, trace) = match algorithm {
        Algorithm::Som => {
            // each run samples its own depot-insertion rotation; the
            // solution depends on that initialization, so repeated runs
            // explore the rotations just like the hybrids do
            let ring_len = som_cfg.neuron_multiplier * inst.n();
            let rotation = rand::Rng::gen_range(&mut rng, 0..ring_len);
            let mut net = SomNetwork::init_ring(inst, m, som_cfg, rotation)?;
            net.train(inst, &mut rng);
            let sol = net.extract_solution(inst);
            let cost = sol.minmax_cost(inst);
            let trace = vec![TracePoint {
                evaluations: 1,
                best_cost: cost,
            }];
            (sol, cost, 1, trace)
        }
        Algorithm::Ea => {
            let cfg = params.ea.to_config(budget, 0);
            let out = run_ea(inst, m, &cfg, None, &mut rng)?;
            (out.best, out.best_cost, out.evaluations, out.trace)
        }
        Algorithm::SomEa | Algorithm::SomEa2opt => {
            let period = if algorithm == Algorithm::SomEa2opt {
                params.ea.two_opt_period
            } else {
                0
            };
            let cfg = params.ea.to_config(budget, period);
            let seeds = som_seed_population(inst, m, &som_cfg, cfg.pop_size, &mut rng)?;
            let out = run_ea(inst, m, &cfg, Some(seeds), &mut rng)?;
            (out.best, out.best_cost, out.evaluations, out.trace)
        }
        Algorithm::Aco => {
            let cfg = params.aco.to_config(budget);
            let out = aco::run_acs(inst, m, &cfg, None, &mut rng)?;
            (out.best, out.best_cost, out.evaluations, out.trace)
        }
        Algorithm::SomAco => {
            let cfg = params.aco.to_config(budget);
            let tau0 = som_pheromone_seed(
                inst,
                m,
                &som_cfg,
                params.aco.seed_runs,
                params.aco.seed_length(),
                &mut rng,
            )?;
            let out = aco::run_acs(inst, m, &cfg, Some(tau0), &mut rng)?;
            (out.best, out.best_cost, out.evaluations, out.trace)
        }
    };
    let minsum = best.minsum_cost(inst);
    Ok(RunOutcome {
        best,
        best_cost,
        minsum,
        evaluations,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use mtsp_core::Point;

    fn tiny_instance() -> Instance {
        let pts = vec![
            Point::new(0.0, 0.0),
            Point::new(10.0, 0.0),
            Point::new(10.0, 10.0),
            Point::new(0.0, 10.0),
            Point::new(5.0, 15.0),
            Point::new(-5.0, 5.0),
            Point::new(15.0, 5.0),
        ];
        Instance::from_coords("tiny", pts, 0).unwrap()
    }

    #[test]
    fn every_algorithm_runs_and_validates() {
        let inst = tiny_instance();
        let mut params = AlgorithmParams::default();
        params.som.iterations = 300;
        params.ea.pop_size = 10;
        for algo in [
            Algorithm::Som,
            Algorithm::Ea,
            Algorithm::SomEa,
            Algorithm::SomEa2opt,
            Algorithm::Aco,
            Algorithm::SomAco,
        ] {
            let out = run_algorithm(&inst, 2, algo, &params, 500, 7).unwrap();
            assert!(out.best.validate(&inst).is_ok(), "{algo}");
            assert!(out.best_cost.is_finite());
            assert!(out.minsum >= out.best_cost);
            assert!(!out.trace.is_empty());
        }
    }

    #[test]
    fn runs_are_seed_deterministic() {
        let inst = tiny_instance();
        let mut params = AlgorithmParams::default();
        params.som.iterations = 200;
        params.ea.pop_size = 8;
        for algo in [Algorithm::SomEa2opt, Algorithm::SomAco] {
            let a = run_algorithm(&inst, 2, algo, &params, 300, 5).unwrap();
            let b = run_algorithm(&inst, 2, algo, &params, 300, 5).unwrap();
            assert_eq!(a.best, b.best, "{algo}");
            assert_eq!(a.trace, b.trace, "{algo}");
        }
    }

    #[test]
    fn algorithm_names_roundtrip() {
        for (algo, name) in [
            (Algorithm::Som, "som"),
            (Algorithm::Ea, "ea"),
            (Algorithm::SomEa, "som-ea"),
            (Algorithm::SomEa2opt, "som-ea-2opt"),
            (Algorithm::Aco, "aco"),
            (Algorithm::SomAco, "som-aco"),
        ] {
            assert_eq!(algo.name(), name);
            let json = serde_json::to_string(&algo).unwrap();
            assert_eq!(json, format!("\"{name}\""));
            let back: Algorithm = serde_json::from_str(&json).unwrap();
            assert_eq!(back, algo);
        }
    }

    #[test]
    fn infeasible_m_is_an_error() {
        let inst = tiny_instance();
        let params = AlgorithmParams::default();
        let err = run_algorithm(&inst, 7, Algorithm::Som, &params, 100, 1).unwrap_err();
        assert_eq!(err, SolverError::InfeasibleSalesmen { m: 7, n: 7 });
    }
}
