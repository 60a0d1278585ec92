//! Evolution strategy over the multi-chromosome representation: one
//! permutation chromosome per salesman, mutated by cross-tour segment
//! transposition and three in-tour operators, with fitness-proportional
//! selection and a global elite archive. Individuals never exchange
//! information with each other.

use alloc::vec::Vec;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::instance::Instance;
use crate::solution::{Solution, Tour};
use crate::trace::{SolverError, TracePoint};
use crate::two_opt::two_opt;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EaConfig {
    pub pop_size: usize,
    /// Per-chromosome probability of joining the cross-tour swap pool.
    pub cross_tour_rate: f64,
    /// Probability that the swap pool is paired longest-with-shortest by
    /// tour cost instead of at random.
    pub sorted_pairing_rate: f64,
    /// Global in-tour mutation rate, split evenly over the three in-tour
    /// operators.
    pub in_tour_rate: f64,
    /// Fraction of the population replaced by historically best
    /// individuals after selection.
    pub elite_fraction: f64,
    /// Run 2-opt on every tour of every individual once per this many
    /// generations; 0 disables it.
    pub two_opt_period: usize,
    /// Counted fitness evaluations before the search stops.
    pub budget: u64,
}

impl Default for EaConfig {
    fn default() -> Self {
        Self {
            pop_size: 100,
            cross_tour_rate: 0.4,
            sorted_pairing_rate: 0.1,
            in_tour_rate: 0.1,
            elite_fraction: 0.25,
            two_opt_period: 0,
            budget: 250_000,
        }
    }
}

/// The three in-tour operator rates: the global rate split evenly over
/// sequence inversion, insertion, and transposition.
pub fn mutation_probabilities(cfg: &EaConfig) -> (f64, f64, f64) {
    let each = cfg.in_tour_rate / 3.0;
    (each, each, each)
}

/// One candidate: a multi-chromosome genome plus its cached MinMax cost.
#[derive(Debug, Clone)]
pub struct Individual {
    pub genome: Solution,
    fitness: f64,
    dirty: bool,
}

impl Individual {
    pub fn new(genome: Solution) -> Self {
        Self {
            genome,
            fitness: f64::NAN,
            dirty: true,
        }
    }

    /// Cached MinMax cost; stale while [`Self::is_dirty`] is true.
    pub fn fitness(&self) -> f64 {
        self.fitness
    }

    pub fn is_dirty(&self) -> bool {
        self.dirty
    }

    pub fn mark_dirty(&mut self) {
        self.dirty = true;
    }
}

// ---------------------------------------------------------------------------
// mutation operators

/// Swaps the gene segment `a[ca.0..ca.1]` with `b[cb.0..cb.1]`; the
/// segments may have different lengths.
pub(crate) fn splice_segments(
    a: &mut Vec<usize>,
    b: &mut Vec<usize>,
    ca: (usize, usize),
    cb: (usize, usize),
) {
    let seg_a: Vec<usize> = a.splice(ca.0..ca.1, b[cb.0..cb.1].iter().copied()).collect();
    b.splice(cb.0..cb.1, seg_a);
}

/// Cross-tour gene sequence transposition: each chromosome independently
/// joins the pool with probability `cross_tour_rate`; pooled chromosomes
/// are paired (longest tour with shortest when the sorted pairing
/// triggers, uniformly at random otherwise, an odd leftover stays single)
/// and each pair swaps one random contiguous segment per chromosome.
/// Draws that would leave a chromosome empty are resampled a few times,
/// then the pair is skipped.
///
/// Returns true when the genome changed.
pub fn cross_tour_transposition(
    ind: &mut Individual,
    inst: &Instance,
    cfg: &EaConfig,
    rng: &mut impl Rng,
) -> bool {
    let m = ind.genome.m();
    if m < 2 {
        return false;
    }
    let mut pool: Vec<usize> = (0..m)
        .filter(|_| rng.gen::<f64>() < cfg.cross_tour_rate)
        .collect();
    if pool.len() < 2 {
        return false;
    }
    if rng.gen::<f64>() < cfg.sorted_pairing_rate {
        let costs: Vec<f64> = pool
            .iter()
            .map(|&c| ind.genome.tours[c].cost(inst))
            .collect();
        let mut order: Vec<usize> = (0..pool.len()).collect();
        order.sort_by(|&x, &y| costs[y].total_cmp(&costs[x]).then(pool[x].cmp(&pool[y])));
        pool = order.into_iter().map(|i| pool[i]).collect();
        // longest with shortest: fold the sorted list onto itself
        let mut paired = Vec::with_capacity(pool.len());
        let (mut lo, mut hi) = (0, pool.len() - 1);
        while lo < hi {
            paired.push(pool[lo]);
            paired.push(pool[hi]);
            lo += 1;
            hi -= 1;
        }
        pool = paired;
    } else {
        pool.shuffle(rng);
        if pool.len() % 2 == 1 {
            pool.pop();
        }
    }

    let mut changed = false;
    for pair in pool.chunks_exact(2) {
        let (ai, bi) = (pair[0], pair[1]);
        for _attempt in 0..10 {
            let (a_len, b_len) = (ind.genome.tours[ai].len(), ind.genome.tours[bi].len());
            let ca = sorted_cuts(a_len, rng);
            let cb = sorted_cuts(b_len, rng);
            let empties_a = ca.1 - ca.0 == a_len && cb.1 == cb.0;
            let empties_b = cb.1 - cb.0 == b_len && ca.1 == ca.0;
            if empties_a || empties_b {
                continue;
            }
            if ca.1 != ca.0 || cb.1 != cb.0 {
                let (left, right) = ind.genome.tours.split_at_mut(bi.max(ai));
                let (a, b) = if ai < bi {
                    (&mut left[ai], &mut right[0])
                } else {
                    (&mut right[0], &mut left[bi])
                };
                splice_segments(&mut a.cities, &mut b.cities, ca, cb);
                changed = true;
            }
            break;
        }
    }
    if changed {
        ind.mark_dirty();
    }
    changed
}

fn sorted_cuts(len: usize, rng: &mut impl Rng) -> (usize, usize) {
    let a = rng.gen_range(0..=len);
    let b = rng.gen_range(0..=len);
    (a.min(b), a.max(b))
}

pub(crate) fn invert_segment(tour: &mut Tour, i: usize, j: usize) -> bool {
    if j.saturating_sub(i) < 2 {
        return false;
    }
    tour.cities[i..j].reverse();
    true
}

pub(crate) fn move_city(tour: &mut Tour, src: usize, dst: usize) -> bool {
    if src == dst {
        return false;
    }
    let city = tour.cities.remove(src);
    tour.cities.insert(dst, city);
    true
}

pub(crate) fn swap_cities(tour: &mut Tour, a: usize, b: usize) -> bool {
    if a == b {
        return false;
    }
    tour.cities.swap(a, b);
    true
}

/// In-tour gene sequence inversion: every gene position triggers with
/// probability `p_si / k` (k = tour length), so a tour sees `p_si`
/// inversions per application in expectation; each trigger picks two
/// uniform cut points and reverses the genes in between.
pub fn in_tour_inversion(tour: &mut Tour, p_si: f64, rng: &mut impl Rng) -> bool {
    let k = tour.len();
    if k == 0 {
        return false;
    }
    let per_gene = p_si / k as f64;
    let mut changed = false;
    for _ in 0..k {
        if rng.gen::<f64>() < per_gene {
            let (i, j) = sorted_cuts(k, rng);
            changed |= invert_segment(tour, i, j);
        }
    }
    changed
}

/// In-tour gene insertion: every gene position triggers with probability
/// `p_in / k`; each trigger removes one random city and reinserts it at a
/// random position.
pub fn in_tour_insertion(tour: &mut Tour, p_in: f64, rng: &mut impl Rng) -> bool {
    let k = tour.len();
    if k == 0 {
        return false;
    }
    let per_gene = p_in / k as f64;
    let mut changed = false;
    for _ in 0..k {
        if rng.gen::<f64>() < per_gene {
            let src = rng.gen_range(0..k);
            let dst = rng.gen_range(0..k);
            changed |= move_city(tour, src, dst);
        }
    }
    changed
}

/// In-tour gene transposition: every gene position triggers with
/// probability `p_tr / k`; each trigger swaps two random cities.
pub fn in_tour_transposition(tour: &mut Tour, p_tr: f64, rng: &mut impl Rng) -> bool {
    let k = tour.len();
    if k == 0 {
        return false;
    }
    let per_gene = p_tr / k as f64;
    let mut changed = false;
    for _ in 0..k {
        if rng.gen::<f64>() < per_gene {
            let a = rng.gen_range(0..k);
            let b = rng.gen_range(0..k);
            changed |= swap_cities(tour, a, b);
        }
    }
    changed
}

// ---------------------------------------------------------------------------
// selection and elitism

/// Best individuals seen over the whole run, cheapest first, deduplicated
/// by genome.
#[derive(Debug, Clone)]
pub struct EliteArchive {
    capacity: usize,
    entries: Vec<Individual>,
}

impl EliteArchive {
    pub fn new(capacity: usize) -> Self {
        Self {
            capacity,
            entries: Vec::with_capacity(capacity),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Individual> {
        self.entries.iter()
    }

    pub fn update(&mut self, candidate: &Individual) {
        debug_assert!(!candidate.is_dirty());
        if self.capacity == 0 {
            return;
        }
        if self.entries.len() == self.capacity
            && candidate.fitness() >= self.entries.last().unwrap().fitness()
        {
            return;
        }
        // clones share the exact same cost, so only equal-cost entries can
        // be duplicates
        if self
            .entries
            .iter()
            .any(|e| e.fitness() == candidate.fitness() && e.genome == candidate.genome)
        {
            return;
        }
        let at = self
            .entries
            .partition_point(|e| e.fitness() <= candidate.fitness());
        self.entries.insert(at, candidate.clone());
        self.entries.truncate(self.capacity);
    }
}

/// Wheel-of-fortune survival: `pop_size` draws with replacement, each
/// individual weighted by the reciprocal of its MinMax cost, after which
/// the archived historically best individuals replace the worst draws.
pub fn select_next_generation(
    pop: &[Individual],
    elites: &EliteArchive,
    cfg: &EaConfig,
    rng: &mut impl Rng,
) -> Vec<Individual> {
    debug_assert!(pop.iter().all(|i| !i.is_dirty()));
    let mut cumulative = Vec::with_capacity(pop.len());
    let mut total = 0.0;
    for ind in pop {
        total += 1.0 / ind.fitness().max(1e-300);
        cumulative.push(total);
    }
    let mut drawn: Vec<Individual> = (0..cfg.pop_size)
        .map(|_| {
            let x = rng.gen::<f64>() * total;
            let idx = cumulative.partition_point(|&c| c <= x).min(pop.len() - 1);
            pop[idx].clone()
        })
        .collect();

    let elite_count = ((cfg.elite_fraction * cfg.pop_size as f64) as usize).min(elites.len());
    if elite_count > 0 {
        let mut order: Vec<usize> = (0..drawn.len()).collect();
        order.sort_by(|&x, &y| {
            drawn[y]
                .fitness()
                .total_cmp(&drawn[x].fitness())
                .then(x.cmp(&y))
        });
        for (&slot, elite) in order.iter().take(elite_count).zip(elites.iter()) {
            drawn[slot] = elite.clone();
        }
    }
    drawn
}

// ---------------------------------------------------------------------------
// search loop

#[derive(Debug, Clone)]
pub struct EaResult {
    pub best: Solution,
    pub best_cost: f64,
    pub evaluations: u64,
    /// One point per generation: evaluations spent so far and the
    /// historically best cost, which never increases.
    pub trace: Vec<TracePoint>,
}

/// Runs the evolution strategy until the evaluation budget is spent.
///
/// Unseeded initialization shuffles the non-depot cities and deals them
/// round-robin over the `m` chromosomes; a seed population (for the
/// SOM hybrid) must hold exactly `pop_size` solutions. Every MinMax
/// computation of the per-generation population evaluation counts
/// against the budget; 2-opt internal cost computations do not.
pub fn run_ea(
    inst: &Instance,
    m: usize,
    cfg: &EaConfig,
    seed_population: Option<Vec<Solution>>,
    rng: &mut impl Rng,
) -> Result<EaResult, SolverError> {
    if m == 0 || m > inst.max_salesmen() {
        return Err(SolverError::InfeasibleSalesmen { m, n: inst.n() });
    }
    debug_assert!(cfg.pop_size >= 2);
    debug_assert!(cfg.budget >= 1);

    let mut pop: Vec<Individual> = match seed_population {
        Some(seeds) => {
            if seeds.len() != cfg.pop_size {
                return Err(SolverError::BadSeedCount {
                    expected: cfg.pop_size,
                    got: seeds.len(),
                });
            }
            seeds.into_iter().map(Individual::new).collect()
        }
        None => (0..cfg.pop_size)
            .map(|_| Individual::new(random_solution(inst, m, rng)))
            .collect(),
    };

    let elite_capacity = ceil_to_usize(cfg.elite_fraction * cfg.pop_size as f64);
    let mut archive = EliteArchive::new(elite_capacity);
    let mut evals: u64 = 0;
    let mut best_cost = f64::INFINITY;
    let mut best = pop[0].genome.clone();
    let mut trace = Vec::new();

    evaluate_population(
        inst, &mut pop, cfg.budget, &mut evals, &mut archive, &mut best, &mut best_cost,
    );
    trace.push(TracePoint {
        evaluations: evals,
        best_cost,
    });

    let (p_si, p_in, p_tr) = mutation_probabilities(cfg);
    let mut generation: u64 = 0;
    while evals < cfg.budget {
        generation += 1;
        for ind in &mut pop {
            cross_tour_transposition(ind, inst, cfg, rng);
            let mut changed = false;
            for tour in &mut ind.genome.tours {
                changed |= in_tour_inversion(tour, p_si, rng);
                changed |= in_tour_insertion(tour, p_in, rng);
                changed |= in_tour_transposition(tour, p_tr, rng);
            }
            if changed {
                ind.mark_dirty();
            }
        }
        if cfg.two_opt_period > 0 && generation % cfg.two_opt_period as u64 == 0 {
            for ind in &mut pop {
                let mut changed = false;
                for tour in &mut ind.genome.tours {
                    let (improved, _) = two_opt(inst, tour);
                    if improved.cities != tour.cities {
                        *tour = improved;
                        changed = true;
                    }
                }
                if changed {
                    ind.mark_dirty();
                }
            }
        }

        evaluate_population(
            inst, &mut pop, cfg.budget, &mut evals, &mut archive, &mut best, &mut best_cost,
        );
        trace.push(TracePoint {
            evaluations: evals,
            best_cost,
        });
        if evals >= cfg.budget {
            break;
        }
        pop = select_next_generation(&pop, &archive, cfg, rng);
    }

    Ok(EaResult {
        best,
        best_cost,
        evaluations: evals,
        trace,
    })
}

/// Evaluates the whole population; each MinMax computation counts one
/// evaluation until the budget is exhausted, after which the remaining
/// individuals keep their previous fitness.
fn evaluate_population(
    inst: &Instance,
    pop: &mut [Individual],
    budget: u64,
    evals: &mut u64,
    archive: &mut EliteArchive,
    best: &mut Solution,
    best_cost: &mut f64,
) {
    for ind in pop.iter_mut() {
        if *evals >= budget {
            break;
        }
        ind.fitness = ind.genome.minmax_cost(inst);
        ind.dirty = false;
        *evals += 1;
        archive.update(ind);
        if ind.fitness < *best_cost {
            *best_cost = ind.fitness;
            *best = ind.genome.clone();
        }
    }
}

/// Near-balanced random partition: shuffle the non-depot cities, then deal
/// them round-robin over the chromosomes.
pub fn random_solution(inst: &Instance, m: usize, rng: &mut impl Rng) -> Solution {
    let mut cities: Vec<usize> = (0..inst.n()).filter(|&c| c != inst.depot()).collect();
    cities.shuffle(rng);
    let mut lists: Vec<Vec<usize>> = alloc::vec![Vec::new(); m];
    for (idx, city) in cities.into_iter().enumerate() {
        lists[idx % m].push(city);
    }
    Solution::from_city_lists(lists)
}

fn ceil_to_usize(x: f64) -> usize {
    let truncated = x as usize;
    if x > truncated as f64 {
        truncated + 1
    } else {
        truncated
    }
}
