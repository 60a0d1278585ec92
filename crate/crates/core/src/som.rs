//! Self-organizing map on a depot-interleaved neuron ring.
//!
//! A ring of `d * n` neurons is laid out on a circle over the city space,
//! with one extra depot neuron logically interleaved at `m` equally spaced
//! ring positions. Training pulls neurons toward randomly drawn cities;
//! the depot neuron never moves. After training, each city maps to its
//! nearest ring neuron and the `m` depot positions cut the ring into the
//! `m` tours.

use alloc::vec::Vec;
use rand::Rng;

use crate::instance::{Instance, Point};
use crate::math;
use crate::solution::Solution;
use crate::trace::SolverError;

/// How neighborhood influence treats the depot insertion points.
///
/// The ring is logically discontinued where the depot is interleaved. In
/// `Soft` mode (default) the Gaussian neighborhood still passes over those
/// breakpoints (the depot itself is never updated); in `Hard` mode the
/// influence stops at the nearest breakpoint, so a winner never drags
/// neurons of another segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DepotBreak {
    #[default]
    Soft,
    Hard,
}

/// Training schedule for the ring map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SomConfig {
    /// Initial learning rate.
    pub alpha0: f64,
    /// Learning rate after the final iteration.
    pub alpha_min: f64,
    /// Total training iterations.
    pub iterations: usize,
    /// Ring neurons per city.
    pub neuron_multiplier: usize,
    pub depot_break: DepotBreak,
    /// Extra hop count added per depot breakpoint crossed when measuring
    /// ring distance in `Soft` mode; 0 lets influence pass freely, large
    /// values approach `Hard` segmentation.
    pub crossing_penalty: usize,
}

impl Default for SomConfig {
    fn default() -> Self {
        Self {
            alpha0: 0.6,
            alpha_min: 0.01,
            iterations: 5000,
            neuron_multiplier: 3,
            depot_break: DepotBreak::Soft,
            crossing_penalty: 5,
        }
    }
}

impl SomConfig {
    /// Learning rate after `t` iterations: `alpha0 * exp(-t / lambda)`
    /// with `lambda = iterations / ln(alpha0 / alpha_min)`, which decays
    /// to exactly `alpha_min` at the final iteration.
    pub fn learning_rate(&self, t: usize) -> f64 {
        if self.iterations == 0 {
            return self.alpha0;
        }
        let lambda = self.iterations as f64 / math::ln(self.alpha0 / self.alpha_min);
        self.alpha0 * math::exp(-(t as f64) / lambda)
    }
}

/// The neuron ring of one SOM run. Mutated by exactly one trainer;
/// independent networks can train in parallel.
#[derive(Debug, Clone)]
pub struct SomNetwork {
    cfg: SomConfig,
    weights: Vec<Point>,
    depot_weight: Point,
    /// Extended-ring slot of each ring neuron.
    ext_of_neuron: Vec<usize>,
    /// Extended-ring slots holding the depot aliases, ascending.
    depot_positions: Vec<usize>,
    /// Segment index of each ring neuron (which pair of depot aliases
    /// brackets it).
    seg_of_neuron: Vec<usize>,
    /// Hop count from each extended slot to its nearest depot alias.
    alias_min: Vec<usize>,
    ext_len: usize,
    sigma0: f64,
    t: usize,
}

impl SomNetwork {
    /// Places `d * n` ring neurons evenly on a circle centered at the city
    /// centroid (radius: half the smaller bounding-box side) and interleaves
    /// the depot at `m` equally spaced ring positions shifted by `rotation`
    /// (a ring-neuron index below `d * n`).
    pub fn init_ring(
        inst: &Instance,
        m: usize,
        cfg: SomConfig,
        rotation: usize,
    ) -> Result<Self, SolverError> {
        let n = inst.n();
        if m == 0 || m > inst.max_salesmen() {
            return Err(SolverError::InfeasibleSalesmen { m, n });
        }
        debug_assert!(cfg.neuron_multiplier >= 1);
        debug_assert!(0.0 < cfg.alpha_min && cfg.alpha_min < cfg.alpha0 && cfg.alpha0 <= 1.0);

        let ring_len = cfg.neuron_multiplier * n;
        let rotation = rotation % ring_len;

        let (mut cx, mut cy) = (0.0, 0.0);
        let (mut min_x, mut max_x) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut min_y, mut max_y) = (f64::INFINITY, f64::NEG_INFINITY);
        for p in inst.coords() {
            cx += p.x;
            cy += p.y;
            min_x = min_x.min(p.x);
            max_x = max_x.max(p.x);
            min_y = min_y.min(p.y);
            max_y = max_y.max(p.y);
        }
        cx /= n as f64;
        cy /= n as f64;
        let radius_x = 0.5 * (max_x - min_x);
        let radius_y = 0.5 * (max_y - min_y);

        let mut weights = Vec::with_capacity(ring_len);
        for i in 0..ring_len {
            let angle = core::f64::consts::TAU * i as f64 / ring_len as f64;
            weights.push(Point::new(
                cx + radius_x * math::cos(angle),
                cy + radius_y * math::sin(angle),
            ));
        }

        // Ring-neuron indices that get a depot alias inserted before them.
        let mut gaps: Vec<usize> = (0..m)
            .map(|j| {
                let even = math::round(j as f64 * ring_len as f64 / m as f64) as usize;
                (rotation + even) % ring_len
            })
            .collect();
        gaps.sort_unstable();
        debug_assert!(gaps.windows(2).all(|w| w[0] < w[1]), "depot gaps collide");

        let ext_len = ring_len + m;
        let mut ext_of_neuron = Vec::with_capacity(ring_len);
        let mut depot_positions = Vec::with_capacity(m);
        let mut next_gap = 0;
        let mut slot = 0;
        for i in 0..ring_len {
            if next_gap < m && gaps[next_gap] == i {
                depot_positions.push(slot);
                slot += 1;
                next_gap += 1;
            }
            ext_of_neuron.push(slot);
            slot += 1;
        }
        debug_assert_eq!(slot, ext_len);

        // Segment j runs from alias j (exclusive) to alias j+1, wrapping.
        let seg_of_neuron: Vec<usize> = ext_of_neuron
            .iter()
            .map(|&p| {
                let below = depot_positions.iter().filter(|&&a| a < p).count();
                (below + m - 1) % m
            })
            .collect();

        let cyc = |a: usize, b: usize| {
            let diff = a.abs_diff(b);
            diff.min(ext_len - diff)
        };
        let alias_min = (0..ext_len)
            .map(|p| depot_positions.iter().map(|&a| cyc(a, p)).min().unwrap())
            .collect();

        Ok(Self {
            cfg,
            weights,
            depot_weight: inst.coord(inst.depot()),
            ext_of_neuron,
            depot_positions,
            seg_of_neuron,
            alias_min,
            ext_len,
            sigma0: (ring_len + 1) as f64,
            t: 0,
        })
    }

    pub fn config(&self) -> &SomConfig {
        &self.cfg
    }

    /// Number of ring neurons (the depot neuron not included).
    pub fn ring_len(&self) -> usize {
        self.weights.len()
    }

    /// Ring length plus the `m` interleaved depot aliases.
    pub fn extended_len(&self) -> usize {
        self.ext_len
    }

    pub fn salesmen(&self) -> usize {
        self.depot_positions.len()
    }

    pub fn weights(&self) -> &[Point] {
        &self.weights
    }

    pub fn depot_weight(&self) -> Point {
        self.depot_weight
    }

    /// Extended-ring slots of the depot aliases, ascending.
    pub fn depot_positions(&self) -> &[usize] {
        &self.depot_positions
    }

    /// Extended-ring slot of ring neuron `i`.
    pub fn neuron_position(&self, i: usize) -> usize {
        self.ext_of_neuron[i]
    }

    /// Completed training iterations.
    pub fn iteration(&self) -> usize {
        self.t
    }

    /// Initial neighborhood radius: the total neuron count (ring plus the
    /// depot neuron).
    pub fn sigma0(&self) -> f64 {
        self.sigma0
    }

    /// Neighborhood radius after `t` iterations: `sigma0 * exp(-t / lambda)`
    /// with `lambda = iterations / ln(sigma0)`, which decays to exactly 1
    /// at the final iteration.
    pub fn radius(&self, t: usize) -> f64 {
        if self.cfg.iterations == 0 {
            return self.sigma0;
        }
        let lambda = self.cfg.iterations as f64 / math::ln(self.sigma0);
        self.sigma0 * math::exp(-(t as f64) / lambda)
    }

    /// Hop count between two extended-ring slots, shortest way around.
    pub fn ring_distance(&self, a: usize, b: usize) -> usize {
        let diff = a.abs_diff(b);
        diff.min(self.ext_len - diff)
    }

    /// Ring distance with `crossing_penalty` extra hops per depot alias
    /// strictly inside the connecting arc, taking the cheaper direction.
    fn penalized_distance(&self, a: usize, b: usize) -> usize {
        let penalty = self.cfg.crossing_penalty;
        if penalty == 0 {
            return self.ring_distance(a, b);
        }
        let (lo, hi) = (a.min(b), a.max(b));
        let inner: usize = self
            .depot_positions
            .iter()
            .filter(|&&p| lo < p && p < hi)
            .count();
        let outer = self.depot_positions.len() - inner
            - self
                .depot_positions
                .iter()
                .filter(|&&p| p == lo || p == hi)
                .count();
        let fwd = (hi - lo) + penalty * inner;
        let back = (self.ext_len - (hi - lo)) + penalty * outer;
        fwd.min(back)
    }

    /// Neighborhood weight of slot `i` relative to the winning slot at
    /// iteration `t`: a Gaussian of the ring distance at scale
    /// `radius(t) / 10`.
    pub fn neighborhood(&self, winner: usize, i: usize, t: usize) -> f64 {
        let dist = self.ring_distance(winner, i) as f64;
        let scale = self.radius(t) / 10.0;
        math::exp(-(dist * dist) / (2.0 * scale * scale))
    }

    /// Runs the remaining training iterations.
    pub fn train(&mut self, inst: &Instance, rng: &mut impl Rng) {
        while self.t < self.cfg.iterations {
            self.step(inst, rng);
        }
    }

    /// One training iteration: draw a city uniformly at random, find the
    /// nearest neuron in weight space (the depot neuron competes too), and
    /// pull every ring neuron toward the city by its neighborhood weight.
    /// The depot neuron itself is never updated.
    pub fn step(&mut self, inst: &Instance, rng: &mut impl Rng) {
        if self.t >= self.cfg.iterations {
            return;
        }
        let city = inst.coord(rng.gen_range(0..inst.n()));

        // Winner: lowest-index ring neuron at minimal distance; the depot
        // only wins when strictly closer than every ring neuron.
        let mut win_d2 = f64::INFINITY;
        let mut winner: Option<usize> = None;
        for (i, w) in self.weights.iter().enumerate() {
            let (dx, dy) = (w.x - city.x, w.y - city.y);
            let d2 = dx * dx + dy * dy;
            if d2 < win_d2 {
                win_d2 = d2;
                winner = Some(i);
            }
        }
        {
            let (dx, dy) = (self.depot_weight.x - city.x, self.depot_weight.y - city.y);
            if dx * dx + dy * dy < win_d2 {
                winner = None; // the depot neuron
            }
        }

        let alpha = self.cfg.learning_rate(self.t);
        let factors = self.factor_table(self.t);

        let winner_slot = winner.map(|i| self.ext_of_neuron[i]);
        let winner_seg = winner.map(|i| self.seg_of_neuron[i]);
        for i in 0..self.weights.len() {
            let hops = match winner_slot {
                Some(ws) => match self.cfg.depot_break {
                    DepotBreak::Soft => Some(self.penalized_distance(ws, self.ext_of_neuron[i])),
                    DepotBreak::Hard => {
                        if winner_seg == Some(self.seg_of_neuron[i]) {
                            let (a, b) = (ws, self.ext_of_neuron[i]);
                            let diff = a.abs_diff(b);
                            Some(diff.min(self.ext_len - diff))
                        } else {
                            None
                        }
                    }
                },
                // depot won: one physical neuron at m alias slots, so the
                // distance is the hop count to the nearest alias (in Hard
                // mode only the two aliases bounding the neuron's own
                // segment are reachable)
                None => {
                    let p = self.ext_of_neuron[i];
                    match self.cfg.depot_break {
                        DepotBreak::Soft => Some(self.alias_min[p]),
                        DepotBreak::Hard => {
                            let seg = self.seg_of_neuron[i];
                            let m = self.depot_positions.len();
                            let open = self.depot_positions[seg];
                            let close = self.depot_positions[(seg + 1) % m];
                            let fwd = (p + self.ext_len - open) % self.ext_len;
                            let back = (close + self.ext_len - p) % self.ext_len;
                            Some(fwd.min(back))
                        }
                    }
                }
            };
            if let Some(h) = hops {
                let f = alpha * factors[h];
                let w = &mut self.weights[i];
                w.x += f * (city.x - w.x);
                w.y += f * (city.y - w.y);
            }
        }
        self.t += 1;
    }

    /// Gaussian factors for every possible hop count at iteration `t`,
    /// built with one `exp` and a multiply recurrence:
    /// `f(h) = q^(h^2)` with `q = exp(-1 / (2 * (sigma/10)^2))`.
    fn factor_table(&self, t: usize) -> Vec<f64> {
        let scale = self.radius(t) / 10.0;
        let q = math::exp(-1.0 / (2.0 * scale * scale));
        let len = self.ext_len / 2
            + 1
            + self.cfg.crossing_penalty * (self.depot_positions.len() / 2 + 1);
        let mut table = Vec::with_capacity(len);
        let mut f = 1.0;
        let mut r = q;
        let q2 = q * q;
        for _ in 0..len {
            table.push(f);
            f *= r;
            r *= q2;
        }
        table
    }

    /// Builds the solution encoded by the current weights: each city joins
    /// its nearest ring neuron (the depot neuron does not compete here),
    /// cities are ordered along the ring, and the depot aliases cut the
    /// ring into the `m` tours. Empty tours are repaired by shifting
    /// boundary cities from the fuller neighboring segment, so the result
    /// always validates.
    pub fn extract_solution(&self, inst: &Instance) -> Solution {
        let ring_len = self.ring_len();
        let m = self.depot_positions.len();

        // cities attached to each ring neuron, ordered by (distance, index)
        let mut attached: Vec<Vec<(f64, usize)>> = alloc::vec![Vec::new(); ring_len];
        for city in 0..inst.n() {
            if city == inst.depot() {
                continue;
            }
            let p = inst.coord(city);
            let mut best = f64::INFINITY;
            let mut best_neuron = 0;
            for (i, w) in self.weights.iter().enumerate() {
                let (dx, dy) = (w.x - p.x, w.y - p.y);
                let d2 = dx * dx + dy * dy;
                if d2 < best {
                    best = d2;
                    best_neuron = i;
                }
            }
            attached[best_neuron].push((best, city));
        }
        for list in &mut attached {
            list.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        }

        // neuron at each extended slot
        let mut slot_neuron: Vec<Option<usize>> = alloc::vec![None; self.ext_len];
        for (i, &p) in self.ext_of_neuron.iter().enumerate() {
            slot_neuron[p] = Some(i);
        }

        // walk each segment from its opening alias to the next
        let mut tours: Vec<Vec<usize>> = alloc::vec![Vec::new(); m];
        for j in 0..m {
            let end = self.depot_positions[(j + 1) % m];
            let mut p = (self.depot_positions[j] + 1) % self.ext_len;
            while p != end {
                if let Some(neuron) = slot_neuron[p] {
                    tours[j].extend(attached[neuron].iter().map(|&(_, c)| c));
                }
                p = (p + 1) % self.ext_len;
            }
        }

        repair_empty_tours(&mut tours);
        Solution::from_city_lists(tours)
    }
}

/// Moves boundary-adjacent cities (by ring order) from the fuller
/// neighboring segment into empty ones until every tour is non-empty.
fn repair_empty_tours(tours: &mut [Vec<usize>]) {
    let m = tours.len();
    if m <= 1 {
        return;
    }
    let total: usize = tours.iter().map(|t| t.len()).sum();
    assert!(total >= m, "fewer cities than tours; cannot repair");
    let mut guard = 0;
    loop {
        // On a ring, whenever an empty and a non-empty tour coexist, some
        // empty tour borders a non-empty one; None means nothing is empty.
        let Some(j) = (0..m).find(|&j| {
            tours[j].is_empty()
                && (!tours[(j + m - 1) % m].is_empty() || !tours[(j + 1) % m].is_empty())
        }) else {
            break;
        };
        let prev = (j + m - 1) % m;
        let next = (j + 1) % m;
        let from_prev = !tours[prev].is_empty()
            && (tours[next].is_empty() || tours[prev].len() >= tours[next].len());
        if from_prev {
            let city = tours[prev].pop().unwrap();
            tours[j].push(city);
        } else {
            let city = tours[next].remove(0);
            tours[j].push(city);
        }
        guard += 1;
        assert!(guard <= m * (total + 1), "tour repair failed to converge");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use alloc::vec::Vec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn inst(raw: &[(f64, f64)], depot: usize) -> Instance {
        let pts = raw.iter().map(|&(x, y)| Point::new(x, y)).collect();
        Instance::from_coords("test", pts, depot).unwrap()
    }

    fn grid_instance(n: usize) -> Instance {
        // deterministic scattered cities on a jittered grid
        let raw: Vec<(f64, f64)> = (0..n)
            .map(|i| {
                let x = (i % 10) as f64 * 7.3 + (i as f64 * 0.37).sin() * 2.0;
                let y = (i / 10) as f64 * 6.1 + (i as f64 * 0.73).cos() * 2.0;
                (x, y)
            })
            .collect();
        let pts = raw.iter().map(|&(x, y)| Point::new(x, y)).collect();
        Instance::from_coords("grid", pts, 0).unwrap()
    }

    #[test]
    fn ring_counts_for_76_cities_5_salesmen() {
        let inst = grid_instance(76);
        let net = SomNetwork::init_ring(&inst, 5, SomConfig::default(), 0).unwrap();
        assert_eq!(net.ring_len(), 228);
        assert_eq!(net.depot_positions().len(), 5);
        assert_eq!(net.extended_len(), 233);
        assert_eq!(net.sigma0(), 229.0);
    }

    #[test]
    fn minimal_ring() {
        let inst = inst(&[(0.0, 0.0), (1.0, 1.0)], 0);
        let cfg = SomConfig {
            neuron_multiplier: 1,
            ..SomConfig::default()
        };
        let net = SomNetwork::init_ring(&inst, 1, cfg, 0).unwrap();
        assert_eq!(net.ring_len(), 2);
        assert_eq!(net.depot_positions().len(), 1);
    }

    #[test]
    fn rejects_infeasible_salesmen() {
        let inst = inst(&[(0.0, 0.0), (1.0, 1.0), (2.0, 0.0)], 0);
        let err = SomNetwork::init_ring(&inst, 3, SomConfig::default(), 0).unwrap_err();
        assert_eq!(err, SolverError::InfeasibleSalesmen { m: 3, n: 3 });
    }

    #[test]
    fn rotation_shifts_depot_gaps_only() {
        let inst = grid_instance(20);
        let cfg = SomConfig::default();
        let base = SomNetwork::init_ring(&inst, 3, cfg, 0).unwrap();
        let turned = SomNetwork::init_ring(&inst, 3, cfg, 7).unwrap();
        assert_eq!(base.weights(), turned.weights());
        assert_ne!(base.depot_positions(), turned.depot_positions());
        // gap sets (in ring-neuron index space) differ by the rotation
        let gaps = |net: &SomNetwork| -> Vec<usize> {
            net.depot_positions()
                .iter()
                .enumerate()
                .map(|(j, &p)| p - j)
                .collect()
        };
        let mut shifted: Vec<usize> =
            gaps(&base).iter().map(|g| (g + 7) % base.ring_len()).collect();
        shifted.sort_unstable();
        assert_eq!(shifted, gaps(&turned));
    }

    #[test]
    fn radius_endpoints() {
        let inst = grid_instance(51);
        let net = SomNetwork::init_ring(&inst, 2, SomConfig::default(), 0).unwrap();
        assert_eq!(net.sigma0(), 154.0);
        assert_eq!(net.radius(0), 154.0);
        assert!((net.radius(5000) - 1.0).abs() < 1e-12);
        assert!((net.radius(2500) - 154.0f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn learning_rate_endpoints() {
        let cfg = SomConfig::default();
        assert_eq!(cfg.learning_rate(0), 0.6);
        assert!((cfg.learning_rate(5000) - 0.01).abs() < 1e-12);
        assert!((cfg.learning_rate(2500) - (0.6f64 * 0.01).sqrt()).abs() < 1e-9);
    }

    #[test]
    fn schedules_strictly_decrease() {
        let inst = grid_instance(30);
        let cfg = SomConfig::default();
        let net = SomNetwork::init_ring(&inst, 2, cfg, 0).unwrap();
        for t in 0..cfg.iterations {
            assert!(net.radius(t + 1) < net.radius(t));
            assert!(cfg.learning_rate(t + 1) < cfg.learning_rate(t));
        }
    }

    #[test]
    fn neighborhood_analytic_values() {
        // 3 cities, d=3: sigma0 = 10, so at t=0 the Gaussian scale is
        // exactly one hop
        let inst = inst(&[(0.0, 0.0), (4.0, 0.0), (0.0, 4.0)], 0);
        let net = SomNetwork::init_ring(&inst, 1, SomConfig::default(), 0).unwrap();
        assert_eq!(net.sigma0(), 10.0);
        assert_eq!(net.neighborhood(3, 3, 0), 1.0);
        assert!((net.neighborhood(3, 4, 0) - (-0.5f64).exp()).abs() < 1e-12);
        assert!((net.neighborhood(3, 6, 0) - (-4.5f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn factor_table_matches_direct_formula() {
        let inst = grid_instance(24);
        let net = SomNetwork::init_ring(&inst, 3, SomConfig::default(), 0).unwrap();
        for &t in &[0usize, 117, 2500, 4999] {
            let table = net.factor_table(t);
            let scale = net.radius(t) / 10.0;
            for (h, &f) in table.iter().enumerate() {
                let direct = (-((h * h) as f64) / (2.0 * scale * scale)).exp();
                assert!(
                    (f - direct).abs() <= 1e-12 * direct.max(1e-300),
                    "t={t} h={h}: {f} vs {direct}"
                );
            }
        }
    }

    #[test]
    fn zero_iterations_leave_network_unchanged() {
        let inst = grid_instance(12);
        let cfg = SomConfig {
            iterations: 0,
            ..SomConfig::default()
        };
        let mut net = SomNetwork::init_ring(&inst, 2, cfg, 0).unwrap();
        let before = net.weights().to_vec();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        net.train(&inst, &mut rng);
        assert_eq!(net.weights(), &before[..]);
    }

    #[test]
    fn coincident_cities_never_move_weights() {
        // all cities at one point: the ring collapses to radius zero, every
        // update has zero displacement
        let inst = inst(&[(5.0, 5.0), (5.0, 5.0), (5.0, 5.0)], 0);
        let cfg = SomConfig {
            iterations: 50,
            ..SomConfig::default()
        };
        let mut net = SomNetwork::init_ring(&inst, 1, cfg, 0).unwrap();
        let before = net.weights().to_vec();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        net.train(&inst, &mut rng);
        assert_eq!(net.weights(), &before[..]);
    }

    #[test]
    fn depot_weight_constant_through_training() {
        let inst = grid_instance(25);
        let mut net = SomNetwork::init_ring(&inst, 3, SomConfig::default(), 0).unwrap();
        let depot_before = net.depot_weight();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        net.train(&inst, &mut rng);
        assert_eq!(net.depot_weight(), depot_before);
        assert_eq!(net.depot_weight(), inst.coord(inst.depot()));
    }

    #[test]
    fn extraction_is_valid_before_and_after_training() {
        for &(n, m) in &[(8usize, 2usize), (15, 4), (25, 7), (40, 3)] {
            let inst = grid_instance(n);
            let mut net = SomNetwork::init_ring(&inst, m, SomConfig::default(), 0).unwrap();
            let untrained = net.extract_solution(&inst);
            assert!(untrained.validate(&inst).is_ok(), "untrained n={n} m={m}");
            let mut rng = ChaCha8Rng::seed_from_u64(n as u64 * 31 + m as u64);
            net.train(&inst, &mut rng);
            let trained = net.extract_solution(&inst);
            assert!(trained.validate(&inst).is_ok(), "trained n={n} m={m}");
            assert_eq!(trained.m(), m);
        }
    }

    #[test]
    fn clustered_cities_force_repair() {
        // all cities collapse onto one neuron, so one segment holds
        // everything until repair rebalances
        let inst = inst(&[(9.0, 0.0), (10.0, 0.0), (10.1, 0.0), (10.2, 0.0)], 0);
        let cfg = SomConfig {
            iterations: 0,
            neuron_multiplier: 1,
            ..SomConfig::default()
        };
        let net = SomNetwork::init_ring(&inst, 2, cfg, 0).unwrap();
        let sol = net.extract_solution(&inst);
        assert!(sol.validate(&inst).is_ok());
        assert!(sol.tours.iter().all(|t| !t.is_empty()));
    }

    #[test]
    fn same_seed_same_solution() {
        let inst = grid_instance(30);
        let run = |seed: u64| {
            let mut net = SomNetwork::init_ring(&inst, 3, SomConfig::default(), 5).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            net.train(&inst, &mut rng);
            net.extract_solution(&inst)
        };
        assert_eq!(run(42), run(42));
        assert_ne!(run(42), run(43));
    }

    #[test]
    fn hard_break_trains_and_extracts() {
        let inst = grid_instance(20);
        let cfg = SomConfig {
            depot_break: DepotBreak::Hard,
            iterations: 1000,
            ..SomConfig::default()
        };
        let mut net = SomNetwork::init_ring(&inst, 4, cfg, 0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        net.train(&inst, &mut rng);
        assert!(net.extract_solution(&inst).validate(&inst).is_ok());
    }

    #[test]
    fn repair_examples() {
        let mut tours = vec![vec![1, 2, 3], vec![], vec![]];
        repair_empty_tours(&mut tours);
        assert!(tours.iter().all(|t| t.len() == 1));

        let mut tours = vec![vec![5, 6], vec![]];
        repair_empty_tours(&mut tours);
        assert_eq!(tours, vec![vec![5], vec![6]]);
    }
}
