//! Geometric aggregates of the backoff chain and the collision probability.

use serde::Serialize;

use crate::error::{Error, Result};

/// Sums over the backoff stages at collision probability `p`.
///
/// `gamma = Σ (2p)^i`, `epsilon = Σ p^i` for `i = 0..=m`, and
/// `alpha`, `theta` are `(gamma·W0 ± epsilon) / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeomQuantities {
    pub gamma: f64,
    pub epsilon: f64,
    pub theta: f64,
    pub alpha: f64,
}

/// Explicit `m + 1` term sums, so `p = 1/2` and `p = 1` need no special case.
pub fn geom_quantities(p: f64, w0: u32, m: u32) -> Result<GeomQuantities> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::domain("p", p, "[0, 1]"));
    }
    if w0 < 2 {
        return Err(Error::param("w0", "must be >= 2"));
    }
    if m < 1 {
        return Err(Error::param("m", "must be >= 1"));
    }
    Ok(geom_unchecked(p, w0, m))
}

pub(crate) fn geom_unchecked(p: f64, w0: u32, m: u32) -> GeomQuantities {
    let (gamma, epsilon) = stage_sums(p, m);
    let scaled = gamma * w0 as f64;
    GeomQuantities {
        gamma,
        epsilon,
        theta: 0.5 * (scaled - epsilon),
        alpha: 0.5 * (scaled + epsilon),
    }
}

// Horner form of Σ x^i, i = 0..=m.
fn stage_sums(p: f64, m: u32) -> (f64, f64) {
    let two_p = 2.0 * p;
    let mut gamma = 1.0;
    let mut epsilon = 1.0;
    for _ in 0..m {
        gamma = 1.0 + two_p * gamma;
        epsilon = 1.0 + p * epsilon;
    }
    (gamma, epsilon)
}

/// Probability that a transmission from a tagged station collides,
/// `1 − (1 − τ)^(n − 1)`.
pub fn collision_probability(tau: f64, n: u32) -> Result<f64> {
    if !(0.0..=1.0).contains(&tau) {
        return Err(Error::domain("tau", tau, "[0, 1]"));
    }
    if n < 1 {
        return Err(Error::domain("n", n as f64, ">= 1"));
    }
    Ok(busy_by_others(tau, n))
}

pub(crate) fn busy_by_others(tau: f64, n: u32) -> f64 {
    if n <= 1 {
        return 0.0;
    }
    1.0 - (1.0 - tau).powi(n as i32 - 1)
}
