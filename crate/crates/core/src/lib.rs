//! Exact simulation and asymptotic analysis of bucket-brigade production
//! lines with zero-length stations.
//!
//! Workers move along the unit interval with piecewise-constant velocity
//! profiles; when the last worker finishes an item everyone hands off
//! backward and worker 1 restarts at 0. The post-reset positions evolve under
//! the reset map, a self-map of the ordered simplex Δ. All dynamics run in
//! exact rationals; binary floats appear only where orbits are scouted.
//!
//! * [`numerics`]: [`Rational`], [`QuadraticReal`], scouting floats.
//! * [`line`]: the general n-worker model and its reset map.
//! * [`fixed_point`]: closed-form fixed points and the uniqueness scan.
//! * [`three_worker`]: the explicit four-cell map, regions, θ/φ/α, the
//!   Region-2 segment, the Region-3 classifier and the set Σ.
//! * [`cycle`]: scouting, itinerary composition and exact cycle certificates.
//! * [`cli`]: the `brigade` command-line front end.

pub mod cli;
pub mod cycle;
pub mod error;
pub mod fixed_point;
pub mod line;
pub mod numerics;
mod par;
pub mod three_worker;

pub use error::{Error, Result};
pub use numerics::{q, QuadraticReal, Rational};
