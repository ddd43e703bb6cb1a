//! Simulation and exact-verification laboratory for continuous-time random
//! walks in dynamic random conductance environments on `Z^1` and `Z^2`.
//!
//! The crate is organised around the objects of the model:
//!
//! - [`lattice`]: finite boxes and tori of `Z^d` (`d = 1, 2`) with stable
//!   vertex/edge enumerations.
//! - [`environment`]: piecewise-constant dynamic conductance fields
//!   (static, dynamical percolation, exclusion, deterministic phase),
//!   their space-time shifts, time reversal, and infinitesimal p-norms.
//! - [`walker`]: Poisson clock processes attached to edges and the induced
//!   walks, built forwards and backwards in time, censored walks, jump
//!   counts, and collision statistics for pairs of walks.
//! - [`kernel`]: exact transition kernels of the time-inhomogeneous walk via
//!   uniformization over the environment's constant pieces, detailed-balance
//!   and mass-transport checks, backward collision sums.
//! - [`verify`]: seeded Monte Carlo experiments that turn moment bounds,
//!   the maximal displacement bound, stationarity, and collision growth
//!   into pass/fail reports with explicit error budgets.
//! - [`voter`]: voter model with dynamic rates on a torus and its
//!   single-walker duality check against kernels of the reversed
//!   environment.
//!
//! Everything is deterministic given a [`rng::RandomSeed`]: replicas derive
//! child seeds by index, so results do not depend on thread scheduling.

pub mod environment;
pub mod error;
pub mod kernel;
pub mod lattice;
pub mod rng;
pub mod stats;
pub mod verify;
pub mod voter;
pub mod walker;

pub use error::{Error, Result};
pub use rng::RandomSeed;
