//! Throughput of the IEEE 802.11 DCF (basic access) under unsaturated
//! Poisson traffic.
//!
//! - [`params`]: protocol constants and derived channel times
//! - [`geom`]: backoff-chain stage sums and the collision probability
//! - [`model`]: the coupled per-station fixed point and its throughput
//! - [`regime`]: maximum throughput, critical arrival rate, linear law
//! - [`sim`]: slot-level contention simulator with replications
//! - [`harness`]: table/sweep/compare/sim experiments with CSV output

pub mod error;
pub mod geom;
pub mod harness;
pub mod model;
pub mod params;
pub mod regime;
pub mod sim;

pub use error::{Error, Result};
pub use geom::{collision_probability, geom_quantities, GeomQuantities};
pub use model::{
    access_and_service_time, idle_slot_time, queue_empty_probability, slot_times_at,
    solve_fixed_point, solve_saturated, throughput, throughput_tau_form, FixedPointSolution,
    SlotTimes, SolverConfig,
};
pub use params::{derive_times, DerivedTimes, PhyMacParams};
pub use regime::{
    critical_lambda, linear_throughput, linearity_error, max_throughput, Regime, RegimeReport,
};

/// Packets per second to packets per microsecond.
pub fn per_second_to_per_us(rate: f64) -> f64 {
    rate * 1e-6
}

/// Packets per microsecond to packets per second.
pub fn per_us_to_per_second(rate: f64) -> f64 {
    rate * 1e6
}
