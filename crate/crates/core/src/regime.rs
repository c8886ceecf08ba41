//! Maximum throughput, critical arrival rate and the linear throughput law.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{solve_fixed_point, SolverConfig, TauForm};
use crate::params::{derive_times, PhyMacParams};

/// Default search interval for the maximizing transmission probability.
pub const TAU_SEARCH: (f64, f64) = (1e-6, 0.5);
// Used only when the maximum sits at the upper end of `TAU_SEARCH`.
const TAU_SEARCH_WIDE: (f64, f64) = (0.5, 1.0 - 1e-6);
const TAU_TOLERANCE: f64 = 1e-11;
const VALIDATION_POINTS: usize = 10_000;
const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Unsaturated,
    Saturated,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Regime::Unsaturated => f.write_str("unsaturated"),
            Regime::Saturated => f.write_str("saturated"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Maximum {
    pub s_max: f64,
    pub tau_max: f64,
    /// The maximizer sits on the edge of the search domain (S is monotone there).
    pub at_boundary: bool,
}

/// Operating-point summary for one station population.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegimeReport {
    pub n: u32,
    /// bits/µs
    pub s_max: f64,
    pub tau_max: f64,
    pub at_boundary: bool,
    /// packets/µs per station
    pub lambda_c: f64,
    /// `N·E[PL]`, bits per packet
    pub linear_slope: f64,
}

impl RegimeReport {
    pub fn regime_of(&self, lambda: f64) -> Regime {
        if lambda < self.lambda_c {
            Regime::Unsaturated
        } else {
            Regime::Saturated
        }
    }
}

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
/// Returns `(x, f(x))`.
pub fn golden_section_max<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let mut best = if fc >= fd { (c, fc) } else { (d, fd) };
    for x in [a, b] {
        let fx = f(x);
        if fx > best.1 {
            best = (x, fx);
        }
    }
    best
}

// One step of parabolic interpolation through (x - h, x, x + h); kept only if it improves.
fn parabolic_refine<F: Fn(f64) -> f64>(
    f: &F,
    x: f64,
    fx: f64,
    h: f64,
    lo: f64,
    hi: f64,
) -> (f64, f64) {
    let (xl, xr) = (x - h, x + h);
    if xl <= lo || xr >= hi {
        return (x, fx);
    }
    let (fl, fr) = (f(xl), f(xr));
    let curvature = fl - 2.0 * fx + fr;
    if curvature >= 0.0 {
        return (x, fx);
    }
    let step = 0.5 * h * (fl - fr) / curvature;
    if step.abs() > h {
        return (x, fx);
    }
    let candidate = x + step;
    let fcand = f(candidate);
    if fcand > fx {
        (candidate, fcand)
    } else {
        (x, fx)
    }
}

/// Maximum of the τ-form throughput over the transmission probability.
pub fn max_throughput(n: u32, params: &PhyMacParams, cfg: &SolverConfig) -> Result<Maximum> {
    if n < 1 {
        return Err(Error::domain("n", n as f64, ">= 1"));
    }
    cfg.validate()?;
    let times = derive_times(params)?;
    let form = TauForm::new(n, params, times);
    let f = |tau: f64| form.eval(tau);

    let (mut lo, mut hi) = TAU_SEARCH;
    let (mut tau, mut s) = golden_section_max(f, lo, hi, TAU_TOLERANCE);
    if hi - tau <= 10.0 * TAU_TOLERANCE {
        (lo, hi) = TAU_SEARCH_WIDE;
        (tau, s) = golden_section_max(f, lo, hi, TAU_TOLERANCE);
    }
    let at_boundary = tau - lo <= 10.0 * TAU_TOLERANCE || hi - tau <= 10.0 * TAU_TOLERANCE;
    if !at_boundary {
        (tau, s) = parabolic_refine(&f, tau, s, 1e-4 * tau, lo, hi);
    }
    if !(s.is_finite() && s > 0.0) {
        return Err(Error::Numeric(format!(
            "throughput maximum {s} at tau {tau} for n = {n}"
        )));
    }

    let span = hi - TAU_SEARCH.0;
    for i in 0..VALIDATION_POINTS {
        let probe = TAU_SEARCH.0 + span * (i as f64 + 0.5) / VALIDATION_POINTS as f64;
        let fp = f(probe);
        if fp > s * (1.0 + 1e-12) {
            return Err(Error::Numeric(format!(
                "search missed the maximum for n = {n}: S({probe}) = {fp} > S({tau}) = {s}"
            )));
        }
    }
    Ok(Maximum {
        s_max: s,
        tau_max: tau,
        at_boundary,
    })
}

/// `N·E[PL]·λ`, in bits/µs for `lambda` in packets/µs.
pub fn linear_throughput(lambda: f64, n: u32, params: &PhyMacParams) -> Result<f64> {
    if lambda.is_nan() || lambda < 0.0 {
        return Err(Error::domain("lambda", lambda, ">= 0"));
    }
    Ok(n as f64 * params.payload_bits as f64 * lambda)
}

pub fn critical_lambda(n: u32, params: &PhyMacParams, cfg: &SolverConfig) -> Result<RegimeReport> {
    let max = max_throughput(n, params, cfg)?;
    let linear_slope = n as f64 * params.payload_bits as f64;
    Ok(RegimeReport {
        n,
        s_max: max.s_max,
        tau_max: max.tau_max,
        at_boundary: max.at_boundary,
        lambda_c: max.s_max / linear_slope,
        linear_slope,
    })
}

/// Relative gap between the full model and the linear law at `lambda`,
/// which must lie inside `(0, λ_c)`.
pub fn linearity_error(
    lambda: f64,
    n: u32,
    params: &PhyMacParams,
    cfg: &SolverConfig,
) -> Result<f64> {
    let report = critical_lambda(n, params, cfg)?;
    if !(lambda > 0.0 && lambda < report.lambda_c) {
        return Err(Error::domain("lambda", lambda, "(0, lambda_c)"));
    }
    let model = solve_fixed_point(lambda, n, params, cfg)?.throughput;
    let linear = report.linear_slope * lambda;
    Ok((model - linear).abs() / linear)
}
