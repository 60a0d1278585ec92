//! Ant colony system for MinMax multiple-TSP: `m` ants start at the depot
//! and jointly build one solution, the salesman to move next being drawn
//! at random. Local pheromone decay fires on every crossed edge, and after
//! each colony iteration the edges of the global best solution are
//! reinforced in proportion to the inverse of its longest-tour cost.

use alloc::vec::Vec;
use rand::Rng;

use crate::instance::Instance;
use crate::solution::Solution;
use crate::trace::{SolverError, TracePoint};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AcoConfig {
    /// Exploitation threshold: with probability `q0` the ant takes the
    /// best-scoring edge, otherwise it samples proportionally.
    pub q0: f64,
    /// Global pheromone decay (alpha).
    pub global_decay: f64,
    /// Local pheromone decay (rho).
    pub local_decay: f64,
    /// Exponent on the heuristic visibility 1/distance.
    pub beta: f64,
    /// Solutions constructed per iteration, between global updates.
    pub colony_size: usize,
    /// Constructed-solution limit.
    pub budget: u64,
    /// Give every salesman its first city before any salesman takes a
    /// second one, which guarantees non-empty tours. When disabled the
    /// salesman is drawn uniformly from the start and a rare empty tour is
    /// repaired from the fullest tour when construction closes.
    pub force_first_moves: bool,
}

impl Default for AcoConfig {
    fn default() -> Self {
        Self {
            q0: 0.9,
            global_decay: 0.1,
            local_decay: 0.1,
            beta: 2.0,
            colony_size: 15,
            budget: 250_000,
            force_first_moves: true,
        }
    }
}

/// Symmetric edge pheromone levels.
#[derive(Debug, Clone)]
pub struct PheromoneMatrix {
    n: usize,
    tau: Vec<f64>,
    tau0: f64,
}

impl PheromoneMatrix {
    /// All edges start at the initial level `tau0`.
    pub fn new(n: usize, tau0: f64) -> Self {
        Self {
            n,
            tau: alloc::vec![tau0; n * n],
            tau0,
        }
    }

    pub fn tau0(&self) -> f64 {
        self.tau0
    }

    #[inline]
    pub fn get(&self, r: usize, s: usize) -> f64 {
        self.tau[r * self.n + s]
    }

    /// Local pheromone update on a crossed edge, applied symmetrically:
    /// `tau <- (1 - rho) * tau + rho * tau0`. Fires regardless of which
    /// salesman traverses the edge.
    pub fn local_update(&mut self, r: usize, s: usize, rho: f64) {
        debug_assert_ne!(r, s);
        let v = (1.0 - rho) * self.tau[r * self.n + s] + rho * self.tau0;
        self.tau[r * self.n + s] = v;
        self.tau[s * self.n + r] = v;
    }

    /// Global pheromone update: every edge decays by `1 - alpha`, and the
    /// edges used by the global best solution (depot legs included, on any
    /// of its tours) additionally receive `alpha / L_gb`, where `L_gb` is
    /// the best solution's longest-tour cost. Each undirected edge is
    /// reinforced once even when a single-city tour crosses it both ways.
    pub fn global_update(&mut self, inst: &Instance, best: &Solution, alpha: f64) {
        let l_gb = best.minmax_cost(inst);
        let deposit = alpha / l_gb;
        for v in &mut self.tau {
            *v *= 1.0 - alpha;
        }
        let depot = inst.depot();
        let mut reinforced = alloc::vec![false; self.n * self.n];
        let mut add = |tau: &mut [f64], r: usize, s: usize| {
            if !reinforced[r * self.n + s] {
                reinforced[r * self.n + s] = true;
                reinforced[s * self.n + r] = true;
                tau[r * self.n + s] += deposit;
                tau[s * self.n + r] += deposit;
            }
        };
        for tour in &best.tours {
            let mut prev = depot;
            for &city in &tour.cities {
                add(&mut self.tau, prev, city);
                prev = city;
            }
            if prev != depot {
                add(&mut self.tau, prev, depot);
            }
        }
    }
}

/// Precomputed heuristic term `(1 / distance)^beta` for every edge.
#[derive(Debug, Clone)]
pub struct Visibility {
    n: usize,
    table: Vec<f64>,
}

impl Visibility {
    pub fn new(inst: &Instance, beta: f64) -> Self {
        let n = inst.n();
        let mut table = alloc::vec![0.0; n * n];
        for r in 0..n {
            for s in 0..n {
                if r != s {
                    // coincident cities would divide by zero
                    let d = inst.distance(r, s).max(1e-12);
                    table[r * n + s] = crate::math::powf(1.0 / d, beta);
                }
            }
        }
        Self { n, table }
    }

    #[inline]
    pub fn get(&self, r: usize, s: usize) -> f64 {
        self.table[r * self.n + s]
    }
}

/// Length of the greedy nearest-neighbor tour over all cities, starting
/// and ending at the depot.
pub fn nearest_neighbor_length(inst: &Instance) -> f64 {
    let n = inst.n();
    let depot = inst.depot();
    let mut visited = alloc::vec![false; n];
    visited[depot] = true;
    let mut current = depot;
    let mut length = 0.0;
    for _ in 1..n {
        let mut best = f64::INFINITY;
        let mut next = current;
        for c in 0..n {
            if !visited[c] {
                let d = inst.distance(current, c);
                if d < best {
                    best = d;
                    next = c;
                }
            }
        }
        visited[next] = true;
        length += best;
        current = next;
    }
    length + inst.distance(current, depot)
}

/// Initial pheromone level `1 / (n * L_NN)` from the nearest-neighbor
/// tour length.
pub fn initial_pheromone(inst: &Instance) -> f64 {
    1.0 / (inst.n() as f64 * nearest_neighbor_length(inst))
}

/// The pseudo-random-proportional transition rule: with probability `q0`
/// the candidate maximizing `tau * visibility` is taken (exploitation),
/// otherwise the next city is sampled with probability proportional to
/// the same score (exploration).
pub fn choose_next_city(
    current: usize,
    candidates: &[usize],
    tau: &PheromoneMatrix,
    vis: &Visibility,
    q0: f64,
    rng: &mut impl Rng,
) -> usize {
    debug_assert!(!candidates.is_empty());
    if candidates.len() == 1 {
        return candidates[0];
    }
    let score = |u: usize| tau.get(current, u) * vis.get(current, u);
    let q: f64 = rng.gen();
    if q <= q0 {
        let mut best = f64::NEG_INFINITY;
        let mut pick = candidates[0];
        for &u in candidates {
            let s = score(u);
            if s > best {
                best = s;
                pick = u;
            }
        }
        pick
    } else {
        let total: f64 = candidates.iter().map(|&u| score(u)).sum();
        let x = rng.gen::<f64>() * total;
        let mut acc = 0.0;
        for &u in candidates {
            acc += score(u);
            if x < acc {
                return u;
            }
        }
        *candidates.last().unwrap()
    }
}

/// Builds one complete solution: all ants start at the depot, and until
/// every city is visited a salesman is drawn at random and extended via
/// [`choose_next_city`], with a local pheromone update on every crossed
/// edge including the closing legs back to the depot.
pub fn construct_solution(
    inst: &Instance,
    m: usize,
    tau: &mut PheromoneMatrix,
    vis: &Visibility,
    cfg: &AcoConfig,
    rng: &mut impl Rng,
) -> Solution {
    let depot = inst.depot();
    let mut positions = alloc::vec![depot; m];
    let mut tours: Vec<Vec<usize>> = alloc::vec![Vec::new(); m];
    let mut unvisited: Vec<usize> = (0..inst.n()).filter(|&c| c != depot).collect();

    while !unvisited.is_empty() {
        let salesman = if cfg.force_first_moves && tours.iter().any(|t| t.is_empty()) {
            let idle: Vec<usize> = (0..m).filter(|&s| tours[s].is_empty()).collect();
            idle[rng.gen_range(0..idle.len())]
        } else {
            rng.gen_range(0..m)
        };
        let from = positions[salesman];
        let next = choose_next_city(from, &unvisited, tau, vis, cfg.q0, rng);
        tau.local_update(from, next, cfg.local_decay);
        unvisited.retain(|&c| c != next);
        tours[salesman].push(next);
        positions[salesman] = next;
    }

    // without forced first moves a salesman can end up with nothing
    while let Some(empty) = tours.iter().position(|t| t.is_empty()) {
        let donor = (0..m)
            .max_by_key(|&s| tours[s].len())
            .expect("at least one tour");
        let city = tours[donor].pop().expect("donor tour is non-empty");
        tours[empty].push(city);
        positions[donor] = tours[donor].last().copied().unwrap_or(depot);
        positions[empty] = city;
    }

    for s in 0..m {
        tau.local_update(positions[s], depot, cfg.local_decay);
    }

    Solution::from_city_lists(tours)
}

#[derive(Debug, Clone)]
pub struct AcsResult {
    pub best: Solution,
    pub best_cost: f64,
    /// Constructed solutions, each counted as one fitness evaluation.
    pub evaluations: u64,
    /// One point per colony iteration; the best cost never increases.
    pub trace: Vec<TracePoint>,
}

/// Runs the colony until the construction budget is spent. The pheromone
/// matrix starts uniformly at `1 / (n * L_NN)` unless an override (for
/// SOM seeding) is supplied; after each iteration of `colony_size`
/// constructions a single global update reinforces the global best.
pub fn run_acs(
    inst: &Instance,
    m: usize,
    cfg: &AcoConfig,
    tau0_override: Option<f64>,
    rng: &mut impl Rng,
) -> Result<AcsResult, SolverError> {
    if m == 0 || m > inst.max_salesmen() {
        return Err(SolverError::InfeasibleSalesmen { m, n: inst.n() });
    }
    debug_assert!(cfg.colony_size >= 1);
    debug_assert!(cfg.budget >= 1);

    let vis = Visibility::new(inst, cfg.beta);
    let tau0 = tau0_override.unwrap_or_else(|| initial_pheromone(inst));
    let mut tau = PheromoneMatrix::new(inst.n(), tau0);

    let mut best: Option<(f64, Solution)> = None;
    let mut evals: u64 = 0;
    let mut trace = Vec::new();

    while evals < cfg.budget {
        for _ in 0..cfg.colony_size {
            if evals >= cfg.budget {
                break;
            }
            let sol = construct_solution(inst, m, &mut tau, &vis, cfg, rng);
            evals += 1;
            let cost = sol.minmax_cost(inst);
            if best.as_ref().is_none_or(|(c, _)| cost < *c) {
                best = Some((cost, sol));
            }
        }
        let (cost, sol) = best.as_ref().expect("colony_size >= 1");
        tau.global_update(inst, sol, cfg.global_decay);
        trace.push(TracePoint {
            evaluations: evals,
            best_cost: *cost,
        });
    }

    let (best_cost, best) = best.expect("budget >= 1");
    Ok(AcsResult {
        best,
        best_cost,
        evaluations: evals,
        trace,
    })
}
