//! 2-opt local search on a single depot-closed tour.

use alloc::vec::Vec;

use crate::instance::Instance;
use crate::solution::Tour;

/// Improvements below this are treated as noise so float rounding cannot
/// cycle the search.
const MIN_GAIN: f64 = 1e-10;

/// Repeatedly applies the best-improving 2-opt exchange on the closed tour
/// depot -> cities -> depot until no exchange shortens it. The depot legs
/// take part in exchanges but the depot itself stays the fixed endpoint.
///
/// Returns the improved tour and its cost; the output cost never exceeds
/// the input cost and the city set is unchanged.
pub fn two_opt(inst: &Instance, tour: &Tour) -> (Tour, f64) {
    let mut cities = tour.cities.clone();
    let k = cities.len();
    if k < 2 {
        return (Tour::new(cities), tour.cost(inst));
    }
    let depot = inst.depot();
    // stop(i) for i in 0..=k+1 maps onto depot, cities..., depot
    let stop = |cities: &[usize], i: usize| -> usize {
        if i == 0 || i == k + 1 {
            depot
        } else {
            cities[i - 1]
        }
    };

    loop {
        let mut best_gain = MIN_GAIN;
        let mut best = None;
        // exchange edges (i, i+1) and (j, j+1); reversing stops i+1..=j
        for i in 0..k {
            for j in (i + 1)..=k {
                let a = stop(&cities, i);
                let b = stop(&cities, i + 1);
                let c = stop(&cities, j);
                let d = stop(&cities, j + 1);
                let gain = inst.distance(a, b) + inst.distance(c, d)
                    - inst.distance(a, c)
                    - inst.distance(b, d);
                if gain > best_gain {
                    best_gain = gain;
                    best = Some((i, j));
                }
            }
        }
        match best {
            Some((i, j)) => cities[i..j].reverse(),
            None => break,
        }
    }

    let improved = Tour::new(cities);
    let cost = improved.cost(inst);
    (improved, cost)
}

/// Applies [`two_opt`] to every tour of a solution in place, returning the
/// resulting tour costs.
pub fn two_opt_solution(inst: &Instance, tours: &mut [Tour]) -> Vec<f64> {
    tours
        .iter_mut()
        .map(|t| {
            let (improved, cost) = two_opt(inst, t);
            *t = improved;
            cost
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Point;
    use alloc::vec;
    use alloc::vec::Vec;

    fn inst(raw: &[(f64, f64)], depot: usize) -> Instance {
        let pts = raw.iter().map(|&(x, y)| Point::new(x, y)).collect();
        Instance::from_coords("test", pts, depot).unwrap()
    }

    #[test]
    fn uncrosses_square_tour() {
        // depot (0,0) with the three other unit-square corners; visiting
        // them as (0,1),(1,0),(1,1) crosses itself at cost 2 + 2*sqrt(2),
        // while the perimeter order costs 4 (cheapest of all 3 orders).
        let inst = inst(&[(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)], 0);
        let crossing = Tour::new(vec![1, 2, 3]);
        assert!((crossing.cost(&inst) - (2.0 + 2.0 * core::f64::consts::SQRT_2)).abs() < 1e-12);
        let (fixed, cost) = two_opt(&inst, &crossing);
        assert!((cost - 4.0).abs() < 1e-12);
        let mut sorted = fixed.cities.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![1, 2, 3]);
    }

    #[test]
    fn optimal_tour_unchanged() {
        let inst = inst(&[(0.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, 0.0)], 0);
        let perimeter = Tour::new(vec![1, 2, 3]);
        let (out, cost) = two_opt(&inst, &perimeter);
        assert_eq!(out.cities, perimeter.cities);
        assert_eq!(cost, 4.0);
    }

    #[test]
    fn single_city_tour_unchanged() {
        let inst = inst(&[(0.0, 0.0), (2.0, 3.0)], 0);
        let t = Tour::new(vec![1]);
        let (out, cost) = two_opt(&inst, &t);
        assert_eq!(out.cities, vec![1]);
        assert_eq!(cost, t.cost(&inst));
    }

    #[test]
    fn idempotent_at_local_optimum() {
        let raw: Vec<(f64, f64)> = vec![
            (0.0, 0.0),
            (4.1, 0.3),
            (2.0, 5.5),
            (-3.0, 2.2),
            (1.1, -4.0),
            (6.0, 3.0),
            (-2.5, -2.5),
        ];
        let inst = inst(&raw, 0);
        let t = Tour::new(vec![3, 1, 5, 2, 6, 4]);
        let (once, c1) = two_opt(&inst, &t);
        let (twice, c2) = two_opt(&inst, &once);
        assert_eq!(once.cities, twice.cities);
        assert_eq!(c1, c2);
    }
}
