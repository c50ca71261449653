//! Best-response dynamics for the coordination game with neutral options on
//! graphs: every vertex picks a strategy and earns one unit per neighbor
//! playing the same strategy.
//!
//! * [`graph`]: simple undirected graphs, named families and random models.
//! * [`dynamics`]: payoffs, synchronous best response with inertia, runs.
//! * [`equilibria`]: vertex partitions and the partition-level Nash check.
//! * [`catalogue`]: connected-graph enumeration and the equilibrium census.
//! * [`experiments`]: basin estimates, connectivity recursion, sweeps.
//! * [`io`]: graph6, DOT, CSV and JSON output.

pub mod catalogue;
pub mod dynamics;
pub mod equilibria;
pub mod experiments;
pub mod error;
pub mod graph;
pub mod io;
pub mod rng;

pub use error::{Error, Result};
