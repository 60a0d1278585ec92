//! Multi-tour solutions, MinMax/MinSum objectives, validation, and a
//! brute-force optimum oracle for tiny instances.

use alloc::vec::Vec;
use core::fmt;

use crate::instance::Instance;

/// One salesman's tour, stored depot-free: the depot is implicitly the
/// first and last stop and is never part of `cities`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tour {
    pub cities: Vec<usize>,
}

impl Tour {
    pub fn new(cities: Vec<usize>) -> Self {
        Self { cities }
    }

    pub fn len(&self) -> usize {
        self.cities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cities.is_empty()
    }

    /// Cost of the closed tour depot -> cities... -> depot.
    pub fn cost(&self, inst: &Instance) -> f64 {
        let depot = inst.depot();
        match self.cities.first() {
            None => 0.0,
            Some(&first) => {
                let mut total = inst.distance(depot, first);
                for pair in self.cities.windows(2) {
                    total += inst.distance(pair[0], pair[1]);
                }
                total += inst.distance(*self.cities.last().unwrap(), depot);
                total
            }
        }
    }
}

/// A candidate solution: an exact partition of the non-depot cities into
/// `m` ordered tours. Plain immutable value once built; safe to share and
/// send between threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub tours: Vec<Tour>,
}

impl Solution {
    pub fn new(tours: Vec<Tour>) -> Self {
        Self { tours }
    }

    pub fn from_city_lists(lists: Vec<Vec<usize>>) -> Self {
        Self {
            tours: lists.into_iter().map(Tour::new).collect(),
        }
    }

    /// Number of salesmen.
    pub fn m(&self) -> usize {
        self.tours.len()
    }

    pub fn tour_costs(&self, inst: &Instance) -> Vec<f64> {
        self.tours.iter().map(|t| t.cost(inst)).collect()
    }

    /// Cost of the longest tour (the MinMax objective).
    pub fn minmax_cost(&self, inst: &Instance) -> f64 {
        self.tours
            .iter()
            .map(|t| t.cost(inst))
            .fold(0.0, f64::max)
    }

    /// Total cost of all tours (the MinSum objective).
    pub fn minsum_cost(&self, inst: &Instance) -> f64 {
        self.tours.iter().map(|t| t.cost(inst)).sum()
    }

    /// Checks that the tours form an exact partition of the non-depot
    /// cities: no tour empty, no duplicates, depot never visited mid-tour,
    /// every city covered. Returns all violations found.
    pub fn validate(&self, inst: &Instance) -> Result<(), Vec<Violation>> {
        let n = inst.n();
        let depot = inst.depot();
        let mut violations = Vec::new();
        if self.tours.is_empty() {
            violations.push(Violation::NoTours);
        }
        let mut seen = alloc::vec![false; n];
        for (ti, tour) in self.tours.iter().enumerate() {
            if tour.is_empty() {
                violations.push(Violation::EmptyTour { tour: ti });
            }
            for &city in &tour.cities {
                if city >= n {
                    violations.push(Violation::CityOutOfRange { tour: ti, city });
                    continue;
                }
                if city == depot {
                    violations.push(Violation::DepotInTour { tour: ti });
                    continue;
                }
                if seen[city] {
                    violations.push(Violation::DuplicateCity { city });
                } else {
                    seen[city] = true;
                }
            }
        }
        for (city, &covered) in seen.iter().enumerate() {
            if city != depot && !covered {
                violations.push(Violation::MissingCity { city });
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }
}

/// A single rule breach reported by [`Solution::validate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    NoTours,
    EmptyTour { tour: usize },
    DepotInTour { tour: usize },
    CityOutOfRange { tour: usize, city: usize },
    DuplicateCity { city: usize },
    MissingCity { city: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NoTours => write!(f, "solution has no tours"),
            Self::EmptyTour { tour } => write!(f, "tour {tour} is empty"),
            Self::DepotInTour { tour } => write!(f, "tour {tour} contains the depot"),
            Self::CityOutOfRange { tour, city } => {
                write!(f, "tour {tour} contains out-of-range city {city}")
            }
            Self::DuplicateCity { city } => write!(f, "city {city} appears more than once"),
            Self::MissingCity { city } => write!(f, "city {city} is not visited"),
        }
    }
}

/// Errors from [`brute_force_minmax`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BruteForceError {
    /// Exhaustive enumeration is only feasible for up to 9 non-depot cities.
    TooLarge { non_depot: usize },
    /// Cannot split the cities into `m` non-empty tours.
    Infeasible { m: usize, non_depot: usize },
}

impl fmt::Display for BruteForceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::TooLarge { non_depot } => write!(
                f,
                "instance too large for exhaustive search: {non_depot} non-depot cities (max 9)"
            ),
            Self::Infeasible { m, non_depot } => {
                write!(f, "cannot form {m} non-empty tours from {non_depot} cities")
            }
        }
    }
}

impl core::error::Error for BruteForceError {}

/// Exhaustive optimum for tiny instances: enumerates every partition of
/// the non-depot cities into `m` non-empty tours and every tour order
/// (direction-canonicalized to halve the work), returning a solution with
/// globally minimal MinMax cost.
pub fn brute_force_minmax(
    inst: &Instance,
    m: usize,
) -> Result<(Solution, f64), BruteForceError> {
    let others: Vec<usize> = (0..inst.n()).filter(|&c| c != inst.depot()).collect();
    let k = others.len();
    if k > 9 {
        return Err(BruteForceError::TooLarge { non_depot: k });
    }
    if m == 0 || m > k {
        return Err(BruteForceError::Infeasible { m, non_depot: k });
    }

    // Optimal closed-tour cost (and order) for every subset of cities.
    // Tours are independent under the max objective, so each part of a
    // partition can be ordered optimally on its own.
    let mut subset_best: Vec<Option<(f64, Vec<usize>)>> = alloc::vec![None; 1 << k];
    for mask in 1usize..(1 << k) {
        let members: Vec<usize> = (0..k).filter(|&i| mask & (1 << i) != 0).collect();
        let mut best_cost = f64::INFINITY;
        let mut best_order = Vec::new();
        let mut current = Vec::with_capacity(members.len());
        permute_tours(
            inst,
            &others,
            &members,
            &mut current,
            &mut best_cost,
            &mut best_order,
        );
        subset_best[mask] = Some((best_cost, best_order));
    }

    let mut best_max = f64::INFINITY;
    let mut best_parts: Vec<usize> = Vec::new();
    let mut parts: Vec<usize> = Vec::new();
    partition_masks(k, m, 0, &mut parts, &subset_best, &mut best_max, &mut best_parts);

    let tours = best_parts
        .iter()
        .map(|&mask| Tour::new(subset_best[mask].as_ref().unwrap().1.clone()))
        .collect();
    Ok((Solution::new(tours), best_max))
}

/// Enumerates tour orders for one subset, keeping the cheapest. Orders are
/// canonicalized by direction (first city index below last) since reversal
/// does not change the cost of a closed tour.
fn permute_tours(
    inst: &Instance,
    others: &[usize],
    remaining: &[usize],
    current: &mut Vec<usize>,
    best_cost: &mut f64,
    best_order: &mut Vec<usize>,
) {
    if remaining.is_empty() {
        if current.len() >= 2 && current[0] > *current.last().unwrap() {
            return;
        }
        let tour: Vec<usize> = current.iter().map(|&i| others[i]).collect();
        let cost = Tour::new(tour.clone()).cost(inst);
        if cost < *best_cost {
            *best_cost = cost;
            *best_order = tour;
        }
        return;
    }
    for (pos, &next) in remaining.iter().enumerate() {
        let mut rest = remaining.to_vec();
        rest.remove(pos);
        current.push(next);
        permute_tours(inst, others, &rest, current, best_cost, best_order);
        current.pop();
    }
}

/// Enumerates partitions of `k` items into exactly `m` non-empty subsets.
/// Item 0 of the unassigned remainder is always placed in the next new
/// subset, which enumerates unordered partitions exactly once.
fn partition_masks(
    k: usize,
    m: usize,
    assigned: usize,
    parts: &mut Vec<usize>,
    subset_best: &[Option<(f64, Vec<usize>)>],
    best_max: &mut f64,
    best_parts: &mut Vec<usize>,
) {
    let full = (1usize << k) - 1;
    if assigned == full {
        if parts.len() == m {
            let maxcost = parts
                .iter()
                .map(|&p| subset_best[p].as_ref().unwrap().0)
                .fold(0.0, f64::max);
            if maxcost < *best_max {
                *best_max = maxcost;
                *best_parts = parts.clone();
            }
        }
        return;
    }
    if parts.len() == m {
        return;
    }
    let lowest = (!assigned & full).trailing_zeros() as usize;
    let candidates = !assigned & full & !((1 << lowest) - 1);
    // every subset containing the lowest unassigned item
    let mut sub = candidates;
    loop {
        if sub & (1 << lowest) != 0 {
            let cost = subset_best[sub].as_ref().unwrap().0;
            // a part at least this long already loses to the incumbent
            if cost < *best_max {
                parts.push(sub);
                partition_masks(k, m, assigned | sub, parts, subset_best, best_max, best_parts);
                parts.pop();
            }
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & candidates;
    }
}
