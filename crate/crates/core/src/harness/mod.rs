//! Experiment orchestration: Table-style summaries, λ sweeps, model vs
//! simulation comparison. Rates cross this boundary in packets/s and Mbit/s.

pub mod cli;

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{solve_fixed_point, SolverConfig};
use crate::params::{PhyMacParams, DOT11G_54};
use crate::regime::{critical_lambda, Regime, RegimeReport};
use crate::sim::{self, SimConfig};
use crate::{per_second_to_per_us, per_us_to_per_second};

/// Number of points in the automatic λ grid.
pub const AUTO_GRID_POINTS: usize = 25;
/// Slack added to the simulation CI, as a fraction of the simulated mean.
pub const COMPARE_SLACK: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LambdaGrid {
    /// Log-spaced over `[0.01·λ_c, 5·λ_c]` for each N.
    Auto,
    /// Absolute rates in packets/s.
    Values(Vec<f64>),
    /// Multiples of each N's critical rate.
    Relative(Vec<f64>),
}

impl LambdaGrid {
    fn resolve(&self, lambda_c: f64) -> Vec<f64> {
        match self {
            LambdaGrid::Auto => {
                let (lo, hi) = ((0.01 * lambda_c).ln(), (5.0 * lambda_c).ln());
                let last = (AUTO_GRID_POINTS - 1) as f64;
                (0..AUTO_GRID_POINTS)
                    .map(|i| (lo + (hi - lo) * i as f64 / last).exp())
                    .collect()
            }
            LambdaGrid::Values(values) => values.iter().map(|&v| per_second_to_per_us(v)).collect(),
            LambdaGrid::Relative(factors) => factors.iter().map(|f| f * lambda_c).collect(),
        }
    }

    fn is_empty(&self) -> bool {
        match self {
            LambdaGrid::Auto => false,
            LambdaGrid::Values(v) | LambdaGrid::Relative(v) => v.is_empty(),
        }
    }

    fn values(&self) -> &[f64] {
        match self {
            LambdaGrid::Auto => &[],
            LambdaGrid::Values(v) | LambdaGrid::Relative(v) => v,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimOverrides {
    pub replications: u32,
    pub seed: u64,
    pub duration_us: f64,
    pub warmup_us: f64,
}

impl Default for SimOverrides {
    fn default() -> Self {
        SimOverrides {
            replications: 10,
            seed: 1,
            duration_us: 5e7,
            warmup_us: 1e6,
        }
    }
}

impl SimOverrides {
    pub fn config(&self, n: u32, lambda: f64, params: &PhyMacParams) -> SimConfig {
        SimConfig {
            n_stations: n,
            lambda_per_station: lambda,
            params: params.clone(),
            sim_duration: self.duration_us,
            warmup: self.warmup_us,
            replications: self.replications,
            base_seed: self.seed,
            retry: sim::RetryPolicy::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSpec {
    /// Built-in profile name or path to a parameter JSON file.
    pub profile: String,
    pub n_list: Vec<u32>,
    pub lambda_grid: LambdaGrid,
    pub with_simulation: bool,
    pub sim: SimOverrides,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            profile: DOT11G_54.to_string(),
            n_list: vec![10, 20, 30],
            lambda_grid: LambdaGrid::Auto,
            with_simulation: false,
            sim: SimOverrides::default(),
        }
    }
}

impl SweepSpec {
    pub fn from_json_str(json: &str) -> Result<Self> {
        Ok(serde_json::from_str(json)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_list.is_empty() {
            return Err(Error::Config("n_list is empty".into()));
        }
        if self.n_list.contains(&0) {
            return Err(Error::Config("n_list entries must be >= 1".into()));
        }
        if self.lambda_grid.is_empty() {
            return Err(Error::Config("lambda grid is empty".into()));
        }
        if self
            .lambda_grid
            .values()
            .iter()
            .any(|v| v.is_nan() || *v < 0.0)
        {
            return Err(Error::Config("lambda grid values must be >= 0".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table1Row {
    pub n: u32,
    pub s_max_mbps: f64,
    pub lambda_c_pkt_s: f64,
    pub tau_max: f64,
}

impl From<&RegimeReport> for Table1Row {
    fn from(report: &RegimeReport) -> Self {
        Table1Row {
            n: report.n,
            s_max_mbps: report.s_max,
            lambda_c_pkt_s: per_us_to_per_second(report.lambda_c),
            tau_max: report.tau_max,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvePoint {
    pub n: u32,
    pub lambda_pkt_s: f64,
    pub s_model_mbps: Option<f64>,
    pub s_linear_mbps: f64,
    /// Horizontal reference at the maximum throughput for this N.
    pub s_max_mbps: f64,
    pub s_sim_mbps: Option<f64>,
    pub sim_ci95_mbps: Option<f64>,
    pub regime: Regime,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareRow {
    pub n: u32,
    pub lambda_pkt_s: f64,
    pub lambda_over_lambda_c: f64,
    pub regime: Regime,
    pub s_model_mbps: f64,
    pub s_sim_mbps: f64,
    pub sim_ci95_mbps: Option<f64>,
    /// (model − sim) / sim
    pub rel_error: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareReport {
    pub rows: Vec<CompareRow>,
}

impl CompareReport {
    /// True when every unsaturated point passes.
    pub fn unsaturated_ok(&self) -> bool {
        self.rows
            .iter()
            .filter(|r| r.regime == Regime::Unsaturated)
            .all(|r| r.pass)
    }
}

/// `|model − sim| ≤ ci95 + slack·sim`; a missing interval counts as zero width.
pub fn inside_inflated_ci(model: f64, sim_mean: f64, ci95: Option<f64>) -> bool {
    (model - sim_mean).abs() <= ci95.unwrap_or(0.0) + COMPARE_SLACK * sim_mean.abs()
}

fn reports(params: &PhyMacParams, n_list: &[u32], cfg: &SolverConfig) -> Result<Vec<RegimeReport>> {
    n_list
        .par_iter()
        .map(|&n| critical_lambda(n, params, cfg))
        .collect()
}

pub fn cmd_table1(params: &PhyMacParams, n_list: &[u32]) -> Result<Vec<Table1Row>> {
    if n_list.is_empty() {
        return Err(Error::Config("n list is empty".into()));
    }
    let cfg = SolverConfig::default();
    Ok(reports(params, n_list, &cfg)?
        .iter()
        .map(Table1Row::from)
        .collect())
}

pub fn cmd_sweep(spec: &SweepSpec) -> Result<Vec<CurvePoint>> {
    spec.validate()?;
    let params = PhyMacParams::resolve(&spec.profile)?;
    let cfg = SolverConfig::default();
    let reports = reports(&params, &spec.n_list, &cfg)?;
    let jobs: Vec<(RegimeReport, f64)> = reports
        .iter()
        .flat_map(|r| {
            spec.lambda_grid
                .resolve(r.lambda_c)
                .into_iter()
                .map(move |l| (*r, l))
        })
        .collect();

    jobs.par_iter()
        .map(|&(report, lambda)| {
            let n = report.n;
            let (s_model, error) = match solve_fixed_point(lambda, n, &params, &cfg) {
                Ok(sol) => (Some(sol.throughput), None),
                Err(e) => (None, Some(e.to_string())),
            };
            let (s_sim, sim_ci95) = if spec.with_simulation {
                let result = sim::run(&spec.sim.config(n, lambda, &params))?;
                (Some(result.mean_throughput), result.ci95_halfwidth)
            } else {
                (None, None)
            };
            Ok(CurvePoint {
                n,
                lambda_pkt_s: per_us_to_per_second(lambda),
                s_model_mbps: s_model,
                s_linear_mbps: report.linear_slope * lambda,
                s_max_mbps: report.s_max,
                s_sim_mbps: s_sim,
                sim_ci95_mbps: sim_ci95,
                regime: report.regime_of(lambda),
                error,
            })
        })
        .collect()
}

pub fn cmd_compare(spec: &SweepSpec) -> Result<CompareReport> {
    spec.validate()?;
    if !spec.with_simulation {
        return Err(Error::Config("compare needs with_simulation = true".into()));
    }
    let params = PhyMacParams::resolve(&spec.profile)?;
    let cfg = SolverConfig::default();
    let reports = reports(&params, &spec.n_list, &cfg)?;
    let jobs: Vec<(RegimeReport, f64)> = reports
        .iter()
        .flat_map(|r| {
            spec.lambda_grid
                .resolve(r.lambda_c)
                .into_iter()
                .map(move |l| (*r, l))
        })
        .collect();

    let rows = jobs
        .par_iter()
        .map(|&(report, lambda)| {
            let model = solve_fixed_point(lambda, report.n, &params, &cfg)?.throughput;
            let sim = sim::run(&spec.sim.config(report.n, lambda, &params))?;
            let mean = sim.mean_throughput;
            Ok(CompareRow {
                n: report.n,
                lambda_pkt_s: per_us_to_per_second(lambda),
                lambda_over_lambda_c: lambda / report.lambda_c,
                regime: report.regime_of(lambda),
                s_model_mbps: model,
                s_sim_mbps: mean,
                sim_ci95_mbps: sim.ci95_halfwidth,
                rel_error: if mean == 0.0 {
                    0.0
                } else {
                    (model - mean) / mean
                },
                pass: inside_inflated_ci(model, mean, sim.ci95_halfwidth),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CompareReport { rows })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimRow {
    pub replication: u32,
    pub seed: u64,
    pub throughput_mbps: f64,
    pub successes: u64,
    pub collisions: u64,
    pub drops: u64,
}

/// Per-replication rows plus the aggregate.
pub fn cmd_sim(cfg: &SimConfig) -> Result<(Vec<SimRow>, sim::SimResult)> {
    let reps = sim::run_all(cfg)?;
    let rows = reps
        .iter()
        .enumerate()
        .map(|(i, r)| SimRow {
            replication: i as u32,
            seed: cfg.base_seed.wrapping_add(i as u64),
            throughput_mbps: r.throughput,
            successes: r.counters.successes,
            collisions: r.counters.collisions,
            drops: r.counters.drops,
        })
        .collect();
    Ok((rows, sim::summarize(&reps)))
}

/// Header row plus one serialized row per record.
pub fn write_csv<T: Serialize, W: Write>(rows: &[T], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}

pub fn csv_string<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    String::from_utf8(buf).map_err(|e| Error::Numeric(e.to_string()))
}
