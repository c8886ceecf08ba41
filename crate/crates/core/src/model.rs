//! Unsaturated DCF model: per-station fixed point in the transmission
//! probability and the resulting saturation-aware throughput.
//!
//! Once the collision probability, slot durations and the queue quantities
//! are written as functions of τ, the coupled system collapses to the scalar
//! equation `τ = ε(p)·b00(τ)` with
//! `b00 = 1 / (α + (1 − q)/P_I0)`. It is solved by damped iteration with a
//! bisection fallback on `τ − ε·b00(τ)` over `[0, 1]`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{busy_by_others, geom_unchecked, GeomQuantities};
use crate::params::{derive_times, DerivedTimes, PhyMacParams};

// Below this distance from ρ = 1 the queue formula switches to the explicit sum.
const RHO_NEAR_ONE: f64 = 1e-3;
const MAX_BISECTIONS: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolverConfig {
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Weight of the new iterate, in (0, 1].
    pub damping: f64,
    pub fallback_bisection: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            tolerance: 1e-10,
            max_iterations: 100_000,
            damping: 0.5,
            fallback_bisection: true,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::Config(format!(
                "tolerance must be > 0, got {}",
                self.tolerance
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::Config("max_iterations must be >= 1".into()));
        }
        if !(self.damping > 0.0 && self.damping <= 1.0) {
            return Err(Error::Config(format!(
                "damping must be in (0, 1], got {}",
                self.damping
            )));
        }
        Ok(())
    }
}

/// Converged state of one station at a given arrival rate and population.
///
/// Times are µs, `throughput` is bits/µs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixedPointSolution {
    pub tau: f64,
    pub p: f64,
    pub b00: f64,
    pub b_idle: f64,
    pub t_tx: f64,
    pub t_bo: f64,
    pub t_i: f64,
    pub t_a: f64,
    pub t_service: f64,
    /// Offered load `λ·T_S`; infinite for a saturated source.
    pub rho: f64,
    pub q: f64,
    pub p_i0: f64,
    /// Probability that at least one other station transmits in a slot.
    pub p_tx_others: f64,
    pub t_av: f64,
    pub throughput: f64,
    pub residual: f64,
    pub iterations: usize,
    pub geom: GeomQuantities,
    pub converged: bool,
}

impl FixedPointSolution {
    /// Mean slot length from the state occupancies:
    /// `b_I·T_I + (ε·T_TX + θ·T_BO)·b00`.
    pub fn mean_slot_from_states(&self) -> f64 {
        self.b_idle * self.t_i
            + (self.geom.epsilon * self.t_tx + self.geom.theta * self.t_bo) * self.b00
    }

    /// The same mean slot length after eliminating `b_I` and `T_I`.
    pub fn mean_slot_reduced(&self) -> f64 {
        (self.geom.epsilon * self.t_tx + self.geom.theta * self.t_bo) / self.geom.alpha
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlotTimes {
    pub p: f64,
    pub p_tx_others: f64,
    pub t_tx: f64,
    pub t_bo: f64,
}

/// Mean transmission time and mean backoff-slot time seen by a station.
pub fn slot_times_at(
    tau: f64,
    n: u32,
    times: &DerivedTimes,
    params: &PhyMacParams,
) -> Result<SlotTimes> {
    check_tau(tau)?;
    check_n(n)?;
    Ok(slot_times_unchecked(tau, n, times, params))
}

fn slot_times_unchecked(
    tau: f64,
    n: u32,
    times: &DerivedTimes,
    params: &PhyMacParams,
) -> SlotTimes {
    let p = busy_by_others(tau, n);
    // symmetric stations: "some other station transmits" has the same law as p
    let p_tx_others = p;
    let t_tx = (1.0 - p) * times.t_s + p * times.t_c;
    let t_bo = (1.0 - p_tx_others) * params.slot_sigma + p_tx_others * t_tx;
    SlotTimes {
        p,
        p_tx_others,
        t_tx,
        t_bo,
    }
}

/// Access time through the backoff stages and the resulting service time.
pub fn access_and_service_time(
    p: f64,
    t_bo: f64,
    t_tx: f64,
    params: &PhyMacParams,
) -> Result<(f64, f64)> {
    check_probability("p", p)?;
    let g = geom_unchecked(p, params.w0, params.m);
    Ok(access_service_with(&g, t_bo, t_tx, params))
}

fn access_service_with(
    g: &GeomQuantities,
    t_bo: f64,
    t_tx: f64,
    params: &PhyMacParams,
) -> (f64, f64) {
    let t_a = params.w0 as f64 / (2.0 * g.epsilon) * g.gamma * t_bo;
    (t_a, t_a + t_tx)
}

/// Mean sojourn in the idle (empty queue) state, `(ε·T_TX + θ·T_BO)/α`.
pub fn idle_slot_time(p: f64, t_tx: f64, t_bo: f64, params: &PhyMacParams) -> Result<f64> {
    check_probability("p", p)?;
    let g = geom_unchecked(p, params.w0, params.m);
    Ok((g.epsilon * t_tx + g.theta * t_bo) / g.alpha)
}

/// Empty-system probability `π0 = (1 − ρ)/(1 − ρ^(K+1))` of a finite queue
/// with total capacity `k`.
pub fn queue_empty_probability(rho: f64, k: u32) -> Result<f64> {
    if rho.is_nan() || rho < 0.0 {
        return Err(Error::domain("rho", rho, ">= 0"));
    }
    if k < 1 {
        return Err(Error::domain("k", k as f64, ">= 1"));
    }
    Ok(empty_probability(rho, k))
}

fn empty_probability(rho: f64, k: u32) -> f64 {
    if rho.is_infinite() {
        return 0.0;
    }
    if (rho - 1.0).abs() < RHO_NEAR_ONE {
        let mut sum = 1.0;
        for _ in 0..k {
            sum = 1.0 + rho * sum;
        }
        return 1.0 / sum;
    }
    let top = rho.powi(k as i32 + 1);
    if rho < 1.0 {
        (1.0 - rho) / (1.0 - top)
    } else if top.is_infinite() {
        // (ρ − 1)/ρ^(K+1) without overflow
        (1.0 - 1.0 / rho) * rho.powi(-(k as i32))
    } else {
        (rho - 1.0) / (top - 1.0)
    }
}

#[derive(Debug, Clone, Copy)]
enum Traffic {
    Poisson(f64),
    Saturated,
}

struct Context<'a> {
    n: u32,
    params: &'a PhyMacParams,
    times: DerivedTimes,
    traffic: Traffic,
}

impl Context<'_> {
    /// All model quantities at a trial τ, with `tau_next = ε·b00`.
    fn evaluate(&self, tau: f64) -> (FixedPointSolution, f64) {
        let params = self.params;
        let slot = slot_times_unchecked(tau, self.n, &self.times, params);
        let g = geom_unchecked(slot.p, params.w0, params.m);
        let (t_a, t_service) = access_service_with(&g, slot.t_bo, slot.t_tx, params);
        let t_i = (g.epsilon * slot.t_tx + g.theta * slot.t_bo) / g.alpha;

        let (rho, pi0, p_i0) = match self.traffic {
            Traffic::Poisson(lambda) => {
                let rho = lambda * t_service;
                let pi0 = empty_probability(rho, params.queue_capacity_k);
                (rho, pi0, -(-lambda * t_i).exp_m1())
            }
            Traffic::Saturated => (f64::INFINITY, 0.0, 1.0),
        };
        let q = 1.0 - pi0;
        let idle_weight = if pi0 == 0.0 { 0.0 } else { pi0 / p_i0 };
        let b00 = 1.0 / (g.alpha + idle_weight);
        let b_idle = idle_weight * b00;
        let tau_next = g.epsilon * b00;

        let mut sol = FixedPointSolution {
            tau,
            p: slot.p,
            b00,
            b_idle,
            t_tx: slot.t_tx,
            t_bo: slot.t_bo,
            t_i,
            t_a,
            t_service,
            rho,
            q,
            p_i0,
            p_tx_others: slot.p_tx_others,
            t_av: 0.0,
            throughput: 0.0,
            residual: 0.0,
            iterations: 0,
            geom: g,
            converged: false,
        };
        sol.t_av = sol.mean_slot_from_states();
        sol.throughput = chain_throughput(&sol, self.n, params);
        sol.residual = residual(&sol, tau_next, self.n);
        (sol, tau_next)
    }

    fn solve(&self, cfg: &SolverConfig) -> Result<FixedPointSolution> {
        let (_, mut tau) = self.evaluate(0.0);
        let mut iterations = 0;
        let mut last = None;
        while iterations < cfg.max_iterations {
            let (sol, tau_next) = self.evaluate(tau);
            iterations += 1;
            if sol.residual <= cfg.tolerance {
                return Ok(finish(sol, iterations));
            }
            if !tau_next.is_finite() {
                break;
            }
            last = Some(sol);
            tau = (tau + cfg.damping * (tau_next - tau)).clamp(0.0, 1.0);
        }

        if cfg.fallback_bisection {
            let (sol, used) = self.bisect(cfg.tolerance);
            let sol = finish(sol, iterations + used);
            if sol.residual <= cfg.tolerance {
                return Ok(FixedPointSolution {
                    converged: true,
                    ..sol
                });
            }
            return Err(convergence_error(sol));
        }
        let last = last.unwrap_or_else(|| self.evaluate(tau).0);
        Err(convergence_error(finish(last, iterations)))
    }

    // h(τ) = τ − ε·b00(τ) is negative at 0 and positive at 1.
    fn bisect(&self, tolerance: f64) -> (FixedPointSolution, usize) {
        let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
        let mut best = self.evaluate(0.5 * (lo + hi)).0;
        for step in 1..=MAX_BISECTIONS {
            let mid = 0.5 * (lo + hi);
            let (sol, tau_next) = self.evaluate(mid);
            if sol.residual < best.residual {
                best = sol.clone();
            }
            if sol.residual <= tolerance || mid <= lo || mid >= hi {
                return (best, step);
            }
            if mid - tau_next < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (best, MAX_BISECTIONS)
    }
}

fn finish(mut sol: FixedPointSolution, iterations: usize) -> FixedPointSolution {
    sol.iterations = iterations;
    sol.converged = true;
    sol
}

fn convergence_error(mut sol: FixedPointSolution) -> Error {
    sol.converged = false;
    Error::Convergence {
        iterations: sol.iterations,
        residual: sol.residual,
        last: Box::new(sol),
    }
}

// Max mismatch over the transmission-probability equation (relative), the
// collision equation, the normalisation and the idle-state balance.
fn residual(sol: &FixedPointSolution, tau_next: f64, n: u32) -> f64 {
    let rel = |a: f64, b: f64| {
        let scale = a.abs().max(b.abs());
        if scale == 0.0 {
            0.0
        } else {
            (a - b).abs() / scale
        }
    };
    let tau_eq = rel(sol.tau, tau_next);
    let p_eq = (sol.p - busy_by_others(sol.tau, n)).abs();
    let norm_eq = (sol.b00 * sol.geom.alpha + sol.b_idle - 1.0).abs();
    // absolute: 1 − q rounds to zero long before π0 does
    let idle_eq = if sol.p_i0 > 0.0 {
        (sol.b_idle - (1.0 - sol.q) * sol.b00 / sol.p_i0).abs()
    } else {
        0.0
    };
    let tau_val = if tau_eq.is_nan() {
        f64::INFINITY
    } else {
        tau_eq
    };
    tau_val.max(p_eq).max(norm_eq).max(idle_eq)
}

fn chain_throughput(sol: &FixedPointSolution, n: u32, params: &PhyMacParams) -> f64 {
    let p_t = 1.0 - (1.0 - sol.tau).powi(n as i32);
    if p_t == 0.0 {
        return 0.0;
    }
    let p_s = n as f64 * sol.tau * (1.0 - sol.tau).powi(n as i32 - 1) / p_t;
    p_t * p_s * params.payload_bits as f64 / sol.mean_slot_from_states()
}

/// Solves the unsaturated model at per-station Poisson rate `lambda`
/// (packets/µs). `lambda = +∞` pins the queue to non-empty and gives the
/// saturated solution.
pub fn solve_fixed_point(
    lambda: f64,
    n: u32,
    params: &PhyMacParams,
    cfg: &SolverConfig,
) -> Result<FixedPointSolution> {
    if lambda.is_nan() || lambda < 0.0 {
        return Err(Error::domain("lambda", lambda, ">= 0"));
    }
    check_n(n)?;
    cfg.validate()?;
    let times = derive_times(params)?;
    if lambda == 0.0 {
        return Ok(idle_limit(n, params, &times));
    }
    let traffic = if lambda.is_infinite() {
        Traffic::Saturated
    } else {
        Traffic::Poisson(lambda)
    };
    Context {
        n,
        params,
        times,
        traffic,
    }
    .solve(cfg)
}

/// Saturated specialization: `b_I = 0`, `q = 1`, so `τ = ε(p)/α(p)`.
pub fn solve_saturated(
    n: u32,
    params: &PhyMacParams,
    cfg: &SolverConfig,
) -> Result<FixedPointSolution> {
    solve_fixed_point(f64::INFINITY, n, params, cfg)
}

// λ → 0: the station is idle with probability one and never transmits.
fn idle_limit(n: u32, params: &PhyMacParams, times: &DerivedTimes) -> FixedPointSolution {
    let slot = slot_times_unchecked(0.0, n, times, params);
    let g = geom_unchecked(0.0, params.w0, params.m);
    let (t_a, t_service) = access_service_with(&g, slot.t_bo, slot.t_tx, params);
    let t_i = (g.epsilon * slot.t_tx + g.theta * slot.t_bo) / g.alpha;
    FixedPointSolution {
        tau: 0.0,
        p: 0.0,
        b00: 0.0,
        b_idle: 1.0,
        t_tx: slot.t_tx,
        t_bo: slot.t_bo,
        t_i,
        t_a,
        t_service,
        rho: 0.0,
        q: 0.0,
        p_i0: 0.0,
        p_tx_others: 0.0,
        t_av: t_i,
        throughput: 0.0,
        residual: 0.0,
        iterations: 0,
        geom: g,
        converged: true,
    }
}

/// `P_t·P_s·E[PL]/T_av` from a converged solution, in bits/µs.
pub fn throughput(sol: &FixedPointSolution, n: u32, params: &PhyMacParams) -> Result<f64> {
    if !sol.converged {
        return Err(Error::Unconverged {
            residual: sol.residual,
        });
    }
    check_n(n)?;
    Ok(chain_throughput(sol, n, params))
}

/// Throughput written directly as a function of τ:
/// `Nτ(1−τ)^(N−1)·E[PL]·α / (ε·T_TX + θ·T_BO)`.
pub fn throughput_tau_form(tau: f64, n: u32, params: &PhyMacParams) -> Result<f64> {
    check_tau(tau)?;
    check_n(n)?;
    let times = derive_times(params)?;
    Ok(TauForm::new(n, params, times).eval(tau))
}

/// Reusable evaluator of the τ-form throughput for a fixed `(n, params)`.
pub struct TauForm<'a> {
    n: u32,
    params: &'a PhyMacParams,
    times: DerivedTimes,
}

impl<'a> TauForm<'a> {
    pub fn new(n: u32, params: &'a PhyMacParams, times: DerivedTimes) -> Self {
        TauForm { n, params, times }
    }

    pub fn eval(&self, tau: f64) -> f64 {
        let params = self.params;
        let slot = slot_times_unchecked(tau, self.n, &self.times, params);
        let g = geom_unchecked(slot.p, params.w0, params.m);
        let numerator = self.n as f64
            * tau
            * (1.0 - tau).powi(self.n as i32 - 1)
            * params.payload_bits as f64
            * g.alpha;
        if numerator == 0.0 {
            return 0.0;
        }
        numerator / (g.epsilon * slot.t_tx + g.theta * slot.t_bo)
    }
}

fn check_probability(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::domain(name, value, "[0, 1]"))
    }
}

fn check_tau(tau: f64) -> Result<()> {
    check_probability("tau", tau)
}

fn check_n(n: u32) -> Result<()> {
    if n >= 1 {
        Ok(())
    } else {
        Err(Error::domain("n", n as f64, ">= 1"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (PhyMacParams, DerivedTimes) {
        let params = PhyMacParams::dot11g_54();
        let times = derive_times(&params).unwrap();
        (params, times)
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn slot_times_limits() {
        let (params, times) = setup();
        let at_zero = slot_times_at(0.0, 10, &times, &params).unwrap();
        assert_eq!(at_zero.t_tx, times.t_s);
        assert_eq!(at_zero.t_bo, 20.0);

        let certain = slot_times_at(1.0, 2, &times, &params).unwrap();
        assert_eq!(certain.p, 1.0);
        assert_eq!(certain.t_tx, times.t_c);
        assert_eq!(certain.t_bo, times.t_c);
    }

    #[test]
    fn slot_times_mixture() {
        let (params, times) = setup();
        let st = slot_times_at(0.1, 10, &times, &params).unwrap();
        let p = 1.0 - 0.9f64.powi(9);
        assert!((st.p - 0.61258).abs() < 1e-5);
        assert!(rel(st.t_tx, (1.0 - p) * times.t_s + p * times.t_c) < 1e-14);
        assert!(rel(st.t_bo, (1.0 - p) * 20.0 + p * st.t_tx) < 1e-14);
        assert!(slot_times_at(1.2, 10, &times, &params).is_err());
        assert!(slot_times_at(0.2, 0, &times, &params).is_err());
    }

    #[test]
    fn access_time_without_collisions() {
        let (params, times) = setup();
        let (t_a, t_service) = access_and_service_time(0.0, 20.0, times.t_s, &params).unwrap();
        assert_eq!(t_a, 16.0 * 20.0);
        assert_eq!(t_service, 16.0 * 20.0 + times.t_s);
    }

    #[test]
    fn access_time_matches_stage_average() {
        let params = PhyMacParams::dot11g_54();
        let p: f64 = 0.25;
        let t_bo = 25.0;
        let (mut num, mut den) = (0.0, 0.0);
        for i in 0..=5 {
            let w = 32.0 * 2f64.powi(i);
            num += p.powi(i) * w / 2.0 * t_bo;
            den += p.powi(i);
        }
        let (t_a, _) = access_and_service_time(p, t_bo, 700.0, &params).unwrap();
        assert!(rel(t_a, num / den) < 1e-13);
        assert!(rel(t_a, 32.0 / (2.0 * 1.333_007_812_5) * 1.96875 * 25.0) < 1e-13);
    }

    #[test]
    fn idle_time_examples() {
        let (params, times) = setup();
        let t_i = idle_slot_time(0.0, times.t_s, 20.0, &params).unwrap();
        assert!(rel(t_i, (times.t_s + 15.5 * 20.0) / 16.5) < 1e-15);

        let mut small = params.clone();
        small.w0 = 2;
        small.w_max = 2 << small.m;
        let t_i = idle_slot_time(0.0, times.t_s, 20.0, &small).unwrap();
        assert!(rel(t_i, (times.t_s + 0.5 * 20.0) / 1.5) < 1e-15);

        // independent summation of the stage sums at p = 1/4
        let p: f64 = 0.25;
        let gamma: f64 = (0..=5).map(|i| (2.0 * p).powi(i)).sum();
        let eps: f64 = (0..=5).map(|i| p.powi(i)).sum();
        let expected =
            (eps * 713.9 + 0.5 * (gamma * 32.0 - eps) * 25.0) / (0.5 * (gamma * 32.0 + eps));
        assert!(rel(idle_slot_time(p, 713.9, 25.0, &params).unwrap(), expected) < 1e-13);
    }

    #[test]
    fn empty_queue_probability_examples() {
        assert_eq!(queue_empty_probability(0.0, 7).unwrap(), 1.0);
        assert!(rel(queue_empty_probability(1.0, 50).unwrap(), 1.0 / 51.0) < 1e-15);
        assert!(rel(queue_empty_probability(0.5, 2).unwrap(), 0.5 / 0.875) < 1e-15);
        assert_eq!(queue_empty_probability(f64::INFINITY, 3).unwrap(), 0.0);
        assert!(queue_empty_probability(-0.1, 3).is_err());
        assert!(queue_empty_probability(0.3, 0).is_err());
        let huge = queue_empty_probability(1e9, 50).unwrap();
        assert!((0.0..1e-300).contains(&huge));
    }

    #[test]
    fn no_traffic_is_degenerate() {
        let (params, _) = setup();
        let sol = solve_fixed_point(0.0, 10, &params, &SolverConfig::default()).unwrap();
        assert_eq!(sol.tau, 0.0);
        assert_eq!(sol.p, 0.0);
        assert_eq!(sol.throughput, 0.0);
        assert_eq!(throughput(&sol, 10, &params).unwrap(), 0.0);
    }

    #[test]
    fn infinite_rate_equals_saturated() {
        let (params, _) = setup();
        let cfg = SolverConfig::default();
        let sat = solve_saturated(10, &params, &cfg).unwrap();
        assert_eq!(sat.q, 1.0);
        assert_eq!(sat.b_idle, 0.0);
        assert!(rel(sat.tau, sat.geom.epsilon / sat.geom.alpha) <= 1e-10);
        // 1 packet/µs keeps every queue full
        let heavy = solve_fixed_point(1.0, 10, &params, &cfg).unwrap();
        assert!(rel(heavy.tau, sat.tau) < 1e-9);
        assert!(rel(heavy.throughput, sat.throughput) < 1e-9);
    }

    #[test]
    fn single_station_saturated_closed_form() {
        let (params, times) = setup();
        let sat = solve_saturated(1, &params, &SolverConfig::default()).unwrap();
        assert_eq!(sat.p, 0.0);
        assert!(rel(sat.tau, 2.0 / 33.0) < 1e-10);
        let expected = 8200.0 / (times.t_s + 15.5 * 20.0);
        assert!(rel(sat.throughput, expected) < 1e-9);
        assert!((sat.throughput - 8.0).abs() / 8.0 < 0.01);
    }

    #[test]
    fn linear_region_point() {
        let (params, _) = setup();
        let lambda = 50e-6;
        let sol = solve_fixed_point(lambda, 10, &params, &SolverConfig::default()).unwrap();
        let linear = 10.0 * 8200.0 * lambda;
        assert!(
            rel(sol.throughput, linear) < 0.05,
            "{} vs {}",
            sol.throughput,
            linear
        );
        assert!(sol.residual <= 1e-10);
    }

    #[test]
    fn tau_form_limits() {
        let (params, times) = setup();
        assert_eq!(throughput_tau_form(1.0, 2, &params).unwrap(), 0.0);
        assert_eq!(throughput_tau_form(0.0, 10, &params).unwrap(), 0.0);
        let tau = 1e-9;
        let slope = 10.0 * 8200.0 * 16.5 / (times.t_s + 15.5 * 20.0);
        let s = throughput_tau_form(tau, 10, &params).unwrap();
        assert!(rel(s / tau, slope) < 1e-6);
    }

    #[test]
    fn unconverged_solution_is_rejected() {
        let (params, _) = setup();
        let cfg = SolverConfig {
            max_iterations: 1,
            fallback_bisection: false,
            ..SolverConfig::default()
        };
        match solve_fixed_point(100e-6, 10, &params, &cfg) {
            Err(Error::Convergence { last, residual, .. }) => {
                assert!(residual > cfg.tolerance);
                assert!(matches!(
                    throughput(&last, 10, &params),
                    Err(Error::Unconverged { .. })
                ));
            }
            other => panic!("expected convergence error, got {other:?}"),
        }
    }

    #[test]
    fn bisection_rescues_undamped_oscillation() {
        let (params, _) = setup();
        let cfg = SolverConfig {
            damping: 1.0,
            max_iterations: 3,
            ..SolverConfig::default()
        };
        let sol = solve_fixed_point(500e-6, 30, &params, &cfg).unwrap();
        assert!(sol.residual <= cfg.tolerance);
        assert!(sol.iterations > 3);
    }

    #[test]
    fn invalid_inputs() {
        let (params, _) = setup();
        let cfg = SolverConfig::default();
        assert!(solve_fixed_point(-1.0, 10, &params, &cfg).is_err());
        assert!(solve_fixed_point(f64::NAN, 10, &params, &cfg).is_err());
        assert!(solve_fixed_point(1e-4, 0, &params, &cfg).is_err());
        let bad = SolverConfig {
            damping: 0.0,
            ..cfg
        };
        assert!(matches!(
            solve_fixed_point(1e-4, 10, &params, &bad),
            Err(Error::Config(_))
        ));
    }
}
