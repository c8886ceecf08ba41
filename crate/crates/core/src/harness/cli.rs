//! Command-line front end: `table1`, `sweep`, `compare`, `sim`.
//!
//! Exit codes: 0 success, 1 usage/config, 2 numeric failure, 3 comparison
//! failure.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use super::{cmd_compare, cmd_sim, cmd_sweep, cmd_table1, write_csv, LambdaGrid, SweepSpec};
use crate::error::{Error, Result};
use crate::params::PhyMacParams;
use crate::per_second_to_per_us;
use crate::sim::{run_replication_traced, write_trace_csv};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_NUMERIC: u8 = 2;
pub const EXIT_COMPARE: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "dcf",
    version,
    about = "802.11 DCF unsaturated throughput model and simulator"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Maximum throughput and critical arrival rate per station count.
    Table1(CommonArgs),
    /// Model, linear-law and (optionally) simulated throughput over a λ grid.
    Sweep(CommonArgs),
    /// Model against simulation; exits 3 if an unsaturated point disagrees.
    Compare(CommonArgs),
    /// Run the simulator at one (N, λ).
    Sim(CommonArgs),
}

#[derive(Debug, Args, Default)]
pub struct CommonArgs {
    /// Built-in profile name or parameter JSON file.
    #[arg(long)]
    pub profile: Option<String>,
    /// JSON experiment document; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Station counts, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<u32>,
    /// Per-station arrival rate in packets/s (`inf` for saturated sources).
    #[arg(long)]
    pub lambda: Option<f64>,
    /// `auto`, a comma list in packets/s, or `rel:` followed by multiples of λ_c.
    #[arg(long)]
    pub lambda_grid: Option<String>,
    #[arg(long)]
    pub replications: Option<u32>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub duration_us: Option<f64>,
    #[arg(long)]
    pub warmup_us: Option<f64>,
    /// Write CSV here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub with_sim: bool,
    /// `sim` only: event trace CSV of the first replication.
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

pub fn parse_lambda_grid(text: &str) -> Result<LambdaGrid> {
    let text = text.trim();
    if text.eq_ignore_ascii_case("auto") {
        return Ok(LambdaGrid::Auto);
    }
    let (relative, list) = match text.strip_prefix("rel:") {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let values = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .map_err(|_| Error::Config(format!("bad lambda grid value `{s}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(if relative {
        LambdaGrid::Relative(values)
    } else {
        LambdaGrid::Values(values)
    })
}

impl CommonArgs {
    pub fn sweep_spec(&self) -> Result<SweepSpec> {
        let mut spec = match &self.config {
            Some(path) => SweepSpec::from_json_str(&std::fs::read_to_string(path)?)?,
            None => SweepSpec::default(),
        };
        if let Some(profile) = &self.profile {
            spec.profile = profile.clone();
        }
        if !self.n.is_empty() {
            spec.n_list = self.n.clone();
        }
        if let Some(grid) = &self.lambda_grid {
            spec.lambda_grid = parse_lambda_grid(grid)?;
        } else if let Some(lambda) = self.lambda {
            spec.lambda_grid = LambdaGrid::Values(vec![lambda]);
        }
        if let Some(r) = self.replications {
            spec.sim.replications = r;
        }
        if let Some(seed) = self.seed {
            spec.sim.seed = seed;
        }
        if let Some(d) = self.duration_us {
            spec.sim.duration_us = d;
        }
        if let Some(w) = self.warmup_us {
            spec.sim.warmup_us = w;
        }
        spec.with_simulation |= self.with_sim;
        Ok(spec)
    }
}

pub fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Convergence { .. } | Error::Unconverged { .. } | Error::Numeric(_) => EXIT_NUMERIC,
        _ => EXIT_USAGE,
    }
}

fn emit<T: Serialize>(rows: &[T], out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => write_csv(rows, BufWriter::new(File::create(path)?)),
        None => write_csv(rows, io::stdout().lock()),
    }
}

fn fmt_opt(value: Option<f64>) -> String {
    value.map_or_else(|| "-".to_string(), |v| format!("{v:.4}"))
}

/// Runs one parsed command and returns its exit code.
pub fn execute(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Table1(args) => {
            let spec = args.sweep_spec()?;
            let params = PhyMacParams::resolve(&spec.profile)?;
            let rows = cmd_table1(&params, &spec.n_list)?;
            emit(&rows, args.out.as_deref())?;
            if args.out.is_some() {
                println!("{:>4} {:>12} {:>16}", "N", "S_m [Mbps]", "lambda_c [pkt/s]");
                for row in &rows {
                    println!(
                        "{:>4} {:>12.4} {:>16.3}",
                        row.n, row.s_max_mbps, row.lambda_c_pkt_s
                    );
                }
            }
            Ok(EXIT_OK)
        }
        Command::Sweep(args) => {
            let points = cmd_sweep(&args.sweep_spec()?)?;
            emit(&points, args.out.as_deref())?;
            if let Some(path) = &args.out {
                let failed = points.iter().filter(|p| p.error.is_some()).count();
                println!(
                    "{} points written to {} ({failed} solver errors)",
                    points.len(),
                    path.display()
                );
            }
            Ok(EXIT_OK)
        }
        Command::Compare(args) => {
            let mut spec = args.sweep_spec()?;
            spec.with_simulation = true;
            if args.config.is_none() && args.lambda_grid.is_none() && args.lambda.is_none() {
                spec.lambda_grid = LambdaGrid::Relative(vec![0.2, 0.5, 1.5]);
            }
            let report = cmd_compare(&spec)?;
            emit(&report.rows, args.out.as_deref())?;
            if args.out.is_some() {
                for row in &report.rows {
                    println!(
                        "N={:<3} lambda={:>9.3} pkt/s  model={:.4}  sim={:.4} ±{}  {}",
                        row.n,
                        row.lambda_pkt_s,
                        row.s_model_mbps,
                        row.s_sim_mbps,
                        fmt_opt(row.sim_ci95_mbps),
                        if row.pass { "PASS" } else { "FAIL" }
                    );
                }
            }
            Ok(if report.unsaturated_ok() {
                EXIT_OK
            } else {
                EXIT_COMPARE
            })
        }
        Command::Sim(args) => {
            let spec = args.sweep_spec()?;
            let params = PhyMacParams::resolve(&spec.profile)?;
            let n = spec.n_list.first().copied().unwrap_or(10);
            let lambda = match (&args.lambda, &spec.lambda_grid) {
                (Some(l), _) => per_second_to_per_us(*l),
                (None, LambdaGrid::Values(v)) if !v.is_empty() => per_second_to_per_us(v[0]),
                _ => per_second_to_per_us(50.0),
            };
            let cfg = spec.sim.config(n, lambda, &params);
            let (rows, result) = cmd_sim(&cfg)?;
            emit(&rows, args.out.as_deref())?;
            if let Some(path) = &args.trace {
                let rep = run_replication_traced(&cfg, cfg.base_seed)?;
                let events = rep.trace.unwrap_or_default();
                write_trace_csv(&events, BufWriter::new(File::create(path)?))?;
            }
            let mut err = io::stderr().lock();
            writeln!(
                err,
                "N={n} throughput {:.4} Mbps ±{} (95% CI), collision fraction {:.4}",
                result.mean_throughput,
                fmt_opt(result.ci95_halfwidth),
                result.collision_fraction()
            )?;
            Ok(EXIT_OK)
        }
    }
}

/// Entry point for the `dcf` binary.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    match execute(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
