//! SOM-seeded initialization for the other two solvers: a population of
//! ring-map solutions obtained by rotating the depot insertion points, and
//! a pheromone level derived from the lengths of such solutions.

use alloc::vec::Vec;
use rand::{Rng, SeedableRng};

use crate::instance::Instance;
use crate::solution::Solution;
use crate::som::{SomConfig, SomNetwork};
use crate::trace::SolverError;

/// Which length of a SOM solution enters the pheromone seed formula.
/// The total (MinSum) length generalizes the nearest-neighbor tour length
/// of the unseeded rule and is the default; the longest-tour reading is
/// available as a switch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SomLength {
    #[default]
    MinSum,
    MinMax,
}

/// Evenly spread ring rotations: offset `round(j * ring_len / count)` for
/// run `j`. All offsets are distinct while `count <= ring_len`.
pub(crate) fn rotation_offsets(ring_len: usize, count: usize) -> Vec<usize> {
    (0..count)
        .map(|j| {
            let num = 2 * j as u64 * ring_len as u64 + count as u64;
            ((num / (2 * count as u64)) as usize) % ring_len
        })
        .collect()
}

/// Generates `pop_size` solutions by full SOM trainings, run `j` using a
/// ring rotated by `round(j * ring_len / pop_size)` and its own draw-order
/// seed derived from `rng`. Every returned solution is valid.
pub fn som_seed_population<R: Rng + SeedableRng>(
    inst: &Instance,
    m: usize,
    cfg: &SomConfig,
    pop_size: usize,
    rng: &mut R,
) -> Result<Vec<Solution>, SolverError> {
    let ring_len = cfg.neuron_multiplier * inst.n();
    let mut seeds = Vec::with_capacity(pop_size);
    for rotation in rotation_offsets(ring_len, pop_size) {
        let mut net = SomNetwork::init_ring(inst, m, *cfg, rotation)?;
        let mut child = R::seed_from_u64(rng.next_u64());
        net.train(inst, &mut child);
        seeds.push(net.extract_solution(inst));
    }
    Ok(seeds)
}

pub(crate) fn pheromone_sum(n: usize, lengths: &[f64]) -> f64 {
    lengths.iter().map(|&l| 1.0 / (n as f64 * l)).sum()
}

/// Pheromone level seeded from `runs` rotated SOM trainings:
/// `tau0 = sum over runs of 1 / (n * L_i)`, with `L_i` the chosen length
/// measure of run `i`'s solution. Pass the result to the colony as its
/// initial level override.
pub fn som_pheromone_seed<R: Rng + SeedableRng>(
    inst: &Instance,
    m: usize,
    cfg: &SomConfig,
    runs: usize,
    length: SomLength,
    rng: &mut R,
) -> Result<f64, SolverError> {
    let solutions = som_seed_population(inst, m, cfg, runs, rng)?;
    let lengths: Vec<f64> = solutions
        .iter()
        .map(|s| match length {
            SomLength::MinSum => s.minsum_cost(inst),
            SomLength::MinMax => s.minmax_cost(inst),
        })
        .collect();
    Ok(pheromone_sum(inst.n(), &lengths))
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Point;
    use rand::RngCore;
    use rand_chacha::ChaCha8Rng;

    fn scatter_instance(n: usize, seed: u64) -> Instance {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let raw: Vec<Point> = (0..n)
            .map(|_| Point::new(rng.gen_range(0.0..100.0), rng.gen_range(0.0..100.0)))
            .collect();
        Instance::from_coords("scatter", raw, 0).unwrap()
    }

    #[test]
    fn pheromone_sum_worked_example() {
        assert!((pheromone_sum(10, &[100.0, 200.0]) - 0.0015).abs() < 1e-18);
    }

    #[test]
    fn offsets_distinct_when_count_fits() {
        for &(ring, count) in &[(30usize, 30usize), (153, 100), (10, 7), (9, 9)] {
            let offs = rotation_offsets(ring, count);
            let mut sorted = offs.clone();
            sorted.sort_unstable();
            sorted.dedup();
            assert_eq!(sorted.len(), count, "ring={ring} count={count}");
            assert!(offs.iter().all(|&o| o < ring));
        }
        assert_eq!(rotation_offsets(12, 1), alloc::vec![0]);
    }

    #[test]
    fn single_seed_is_rotation_zero_training() {
        let inst = scatter_instance(15, 4);
        let cfg = SomConfig {
            iterations: 800,
            ..SomConfig::default()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let seeds = som_seed_population(&inst, 3, &cfg, 1, &mut rng).unwrap();
        assert_eq!(seeds.len(), 1);

        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut net = SomNetwork::init_ring(&inst, 3, cfg, 0).unwrap();
        let mut child = ChaCha8Rng::seed_from_u64(rng.next_u64());
        net.train(&inst, &mut child);
        assert_eq!(seeds[0], net.extract_solution(&inst));
    }

    #[test]
    fn seeded_solutions_all_validate() {
        let inst = scatter_instance(20, 8);
        let cfg = SomConfig {
            iterations: 500,
            ..SomConfig::default()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let seeds = som_seed_population(&inst, 4, &cfg, 12, &mut rng).unwrap();
        assert_eq!(seeds.len(), 12);
        for s in &seeds {
            assert!(s.validate(&inst).is_ok());
        }
    }

    #[test]
    fn single_run_seed_matches_direct_formula() {
        let inst = scatter_instance(12, 5);
        let cfg = SomConfig {
            iterations: 400,
            ..SomConfig::default()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let tau0 = som_pheromone_seed(&inst, 2, &cfg, 1, SomLength::MinSum, &mut rng).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let sol = som_seed_population(&inst, 2, &cfg, 1, &mut rng).unwrap().remove(0);
        let expected = 1.0 / (inst.n() as f64 * sol.minsum_cost(&inst));
        assert_eq!(tau0, expected);
    }

    #[test]
    fn pheromone_seed_positive_and_growing_with_runs() {
        let inst = scatter_instance(14, 2);
        let cfg = SomConfig {
            iterations: 300,
            ..SomConfig::default()
        };
        let mut last = 0.0;
        for runs in [1usize, 2, 4, 8] {
            let mut rng = ChaCha8Rng::seed_from_u64(77);
            let tau0 =
                som_pheromone_seed(&inst, 3, &cfg, runs, SomLength::MinSum, &mut rng).unwrap();
            assert!(tau0 > last, "runs={runs}: {tau0} <= {last}");
            last = tau0;
        }
    }

    #[test]
    fn minmax_reading_gives_larger_seed() {
        // the longest tour is shorter than the total, so its reciprocal
        // sum is larger
        let inst = scatter_instance(16, 6);
        let cfg = SomConfig {
            iterations: 300,
            ..SomConfig::default()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let by_sum = som_pheromone_seed(&inst, 3, &cfg, 4, SomLength::MinSum, &mut rng).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let by_max = som_pheromone_seed(&inst, 3, &cfg, 4, SomLength::MinMax, &mut rng).unwrap();
        assert!(by_max > by_sum);
    }

    #[test]
    fn infeasible_m_propagates() {
        let inst = scatter_instance(4, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let err = som_seed_population(&inst, 7, &SomConfig::default(), 3, &mut rng).unwrap_err();
        assert_eq!(err, SolverError::InfeasibleSalesmen { m: 7, n: 4 });
    }
}
