//! Problem instances: city coordinates, the depot, and Euclidean distances.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::math;

/// A 2-D city coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Exact (unrounded) Euclidean distance to another point.
    pub fn distance(&self, other: &Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        math::sqrt(dx * dx + dy * dy)
    }
}

/// Errors raised when constructing an [`Instance`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstanceError {
    /// Fewer than two cities.
    TooFewCities(usize),
    /// Depot index is not a valid city index.
    DepotOutOfRange { depot: usize, n: usize },
    /// A coordinate is NaN or infinite.
    NonFiniteCoord { city: usize },
}

impl fmt::Display for InstanceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::TooFewCities(n) => write!(f, "instance needs at least 2 cities, got {n}"),
            Self::DepotOutOfRange { depot, n } => {
                write!(f, "depot index {depot} out of range for {n} cities")
            }
            Self::NonFiniteCoord { city } => {
                write!(f, "city {city} has a non-finite coordinate")
            }
        }
    }
}

impl core::error::Error for InstanceError {}

/// One problem instance: `n` cities, a depot among them, and exact
/// Euclidean distances.
///
/// Distances are real-valued (not rounded to integers): the reference
/// costs this library is benchmarked against are fractional, which is
/// only attainable with the exact metric. The full n x n distance matrix
/// is precomputed at construction; instances here are small (n <= a few
/// hundred) and inner solver loops dominate runtime.
///
/// City indices are 0-based internally; report output uses 1-based labels.
/// An `Instance` is immutable after construction and safe to share across
/// threads.
#[derive(Debug, Clone)]
pub struct Instance {
    name: String,
    coords: Vec<Point>,
    depot: usize,
    dist: Vec<f64>,
}

impl Instance {
    /// Builds an instance from city coordinates and a depot index.
    pub fn from_coords(
        name: impl Into<String>,
        coords: Vec<Point>,
        depot: usize,
    ) -> Result<Self, InstanceError> {
        let n = coords.len();
        if n < 2 {
            return Err(InstanceError::TooFewCities(n));
        }
        if depot >= n {
            return Err(InstanceError::DepotOutOfRange { depot, n });
        }
        if let Some(city) = coords
            .iter()
            .position(|p| !p.x.is_finite() || !p.y.is_finite())
        {
            return Err(InstanceError::NonFiniteCoord { city });
        }
        let mut dist = alloc::vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = coords[i].distance(&coords[j]);
                dist[i * n + j] = d;
                dist[j * n + i] = d;
            }
        }
        Ok(Self {
            name: name.into(),
            coords,
            depot,
            dist,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of cities, depot included.
    pub fn n(&self) -> usize {
        self.coords.len()
    }

    /// 0-based index of the depot city.
    pub fn depot(&self) -> usize {
        self.depot
    }

    pub fn coords(&self) -> &[Point] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> Point {
        self.coords[i]
    }

    /// Exact Euclidean distance between cities `i` and `j`.
    ///
    /// Symmetric, zero on the diagonal. Panics if an index is out of range.
    #[inline]
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        let n = self.coords.len();
        assert!(i < n && j < n, "city index out of range ({i}, {j}) for n={n}");
        self.dist[i * n + j]
    }

    /// Largest feasible salesman count: every salesman must serve at least
    /// one non-depot city.
    pub fn max_salesmen(&self) -> usize {
        self.n() - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn pts(raw: &[(f64, f64)]) -> Vec<Point> {
        raw.iter().map(|&(x, y)| Point::new(x, y)).collect()
    }

    #[test]
    fn pythagorean_distance() {
        let inst = Instance::from_coords("two", pts(&[(0.0, 0.0), (3.0, 4.0)]), 0).unwrap();
        assert_eq!(inst.n(), 2);
        assert_eq!(inst.distance(0, 1), 5.0);
        assert_eq!(inst.distance(1, 0), 5.0);
    }

    #[test]
    fn self_distance_is_zero() {
        let inst =
            Instance::from_coords("tri", pts(&[(0.0, 0.0), (3.0, 4.0), (-1.0, 2.5)]), 0).unwrap();
        for i in 0..inst.n() {
            assert_eq!(inst.distance(i, i), 0.0);
        }
    }

    #[test]
    fn rejects_single_city() {
        let err = Instance::from_coords("one", pts(&[(0.0, 0.0)]), 0).unwrap_err();
        assert_eq!(err, InstanceError::TooFewCities(1));
    }

    #[test]
    fn rejects_depot_out_of_range() {
        let err = Instance::from_coords("two", pts(&[(0.0, 0.0), (1.0, 1.0)]), 2).unwrap_err();
        assert_eq!(err, InstanceError::DepotOutOfRange { depot: 2, n: 2 });
    }

    #[test]
    fn rejects_non_finite_coords() {
        let err =
            Instance::from_coords("bad", pts(&[(0.0, 0.0), (f64::NAN, 1.0)]), 0).unwrap_err();
        assert_eq!(err, InstanceError::NonFiniteCoord { city: 1 });
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn distance_panics_out_of_range() {
        let inst = Instance::from_coords("two", pts(&[(0.0, 0.0), (1.0, 0.0)]), 0).unwrap();
        inst.distance(0, 2);
    }
}
