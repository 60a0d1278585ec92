//! Solvers for the MinMax single-depot multiple traveling salesman problem.
//!
//! `m` salesmen start and end at a shared depot and jointly visit every city
//! exactly once; the objective is to minimize the cost of the longest tour.
//! Three solver families are provided, plus hybrids between them:
//!
//! * [`som`] — a self-organizing map on a depot-interleaved neuron ring,
//! * [`ea`] — an evolution strategy over a multi-chromosome representation,
//! * [`aco`] — an ant colony system where `m` ants build one joint solution,
//! * [`two_opt`] — intra-tour 2-opt refinement,
//! * [`hybrid`] — SOM-seeded initialization for the EA population and the
//!   ACO pheromone matrix.
//!
//! The crate is `no_std`-compatible (with `alloc`); disable the default
//! `std` feature and enable `libm` for float math on bare targets. All
//! solvers are deterministic given the seed of the random generator passed
//! in, and tours are plain value types safe to share across threads.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod aco;
pub mod ea;
pub mod hybrid;
pub mod instance;
mod math;
pub mod solution;
pub mod som;
pub mod trace;
pub mod two_opt;

pub use aco::{AcoConfig, AcsResult, PheromoneMatrix, Visibility};
pub use ea::{EaConfig, EaResult, Individual};
pub use instance::{Instance, InstanceError, Point};
pub use solution::{brute_force_minmax, Solution, Tour, Violation};
pub use som::{DepotBreak, SomConfig, SomNetwork};
pub use trace::{SolverError, TracePoint};
