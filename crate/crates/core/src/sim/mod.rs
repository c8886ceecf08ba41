//! Slot-synchronous simulation of N stations running DCF basic access.
//!
//! The channel advances in virtual slots: an empty slot lasts σ, a slot with
//! one transmitter lasts T_s and delivers its head-of-line frame, a slot with
//! two or more lasts T_c and pushes every transmitter to the next backoff
//! stage. By default a frame colliding at stage `m` retries there with no
//! limit; [`RetryPolicy::DiscardAfterLastStage`] drops it instead. Every station in backoff that did
//! not transmit decrements its counter once per virtual slot. Poisson
//! arrivals are generated in continuous time and admitted at slot
//! boundaries; a station that leaves the idle state always draws a stage-0
//! backoff first.

mod station;
mod stats;
mod trace;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub use station::{Mode, RetryPolicy, StationState, StationTally};
pub use stats::{ci95_halfwidth, mean, sample_variance};
pub use trace::{write_trace_csv, EventKind, TraceEvent};

use crate::error::{Error, Result};
use crate::params::{derive_times, PhyMacParams};

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub n_stations: u32,
    /// Packets/µs per station; `f64::INFINITY` keeps every queue backlogged.
    pub lambda_per_station: f64,
    pub params: PhyMacParams,
    /// µs
    pub sim_duration: f64,
    /// µs discarded before measurement starts
    pub warmup: f64,
    pub replications: u32,
    pub base_seed: u64,
    pub retry: RetryPolicy,
}

impl SimConfig {
    pub fn new(n_stations: u32, lambda_per_station: f64, params: PhyMacParams) -> Self {
        SimConfig {
            n_stations,
            lambda_per_station,
            params,
            sim_duration: 5e7,
            warmup: 1e6,
            replications: 10,
            base_seed: 1,
            retry: RetryPolicy::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        if self.n_stations < 1 {
            return Err(Error::Config("n_stations must be >= 1".into()));
        }
        if self.lambda_per_station.is_nan() || self.lambda_per_station < 0.0 {
            return Err(Error::Config(format!(
                "lambda_per_station must be >= 0, got {}",
                self.lambda_per_station
            )));
        }
        if !(self.warmup >= 0.0 && self.sim_duration.is_finite() && self.sim_duration > self.warmup)
        {
            return Err(Error::Config(format!(
                "need sim_duration > warmup >= 0, got {} and {}",
                self.sim_duration, self.warmup
            )));
        }
        if self.replications < 1 {
            return Err(Error::Config("replications must be >= 1".into()));
        }
        Ok(())
    }
}

/// Event counts of one replication. `successes`, `collisions` (collision
/// slots) and the attempt counts cover the measurement window only.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Counters {
    pub successes: u64,
    pub collisions: u64,
    pub drops: u64,
    pub discards: u64,
    pub tx_attempts: u64,
    pub collided_attempts: u64,
    /// µs after warmup
    pub measured_time: f64,
    /// Whole-run per-station totals.
    pub per_station: Vec<StationTally>,
    pub queued_at_end: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Replication {
    /// bits/µs
    pub throughput: f64,
    pub counters: Counters,
    pub trace: Option<Vec<TraceEvent>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimResult {
    /// bits/µs, mean over replications
    pub mean_throughput: f64,
    /// `None` with a single replication.
    pub ci95_halfwidth: Option<f64>,
    pub per_replication: Vec<f64>,
    pub collisions: u64,
    pub successes: u64,
    pub drops: u64,
    pub discards: u64,
    pub tx_attempts: u64,
    pub collided_attempts: u64,
}

impl SimResult {
    /// Fraction of transmission attempts that collided.
    pub fn collision_fraction(&self) -> f64 {
        if self.tx_attempts == 0 {
            0.0
        } else {
            self.collided_attempts as f64 / self.tx_attempts as f64
        }
    }
}

pub fn run_replication(cfg: &SimConfig, seed: u64) -> Result<Replication> {
    simulate(cfg, seed, false)
}

/// Same as [`run_replication`] but also records every event.
pub fn run_replication_traced(cfg: &SimConfig, seed: u64) -> Result<Replication> {
    simulate(cfg, seed, true)
}

/// Replications `base_seed + i` run in parallel and reduce in index order.
pub fn run(cfg: &SimConfig) -> Result<SimResult> {
    Ok(summarize(&run_all(cfg)?))
}

/// Every replication, ordered by index.
pub fn run_all(cfg: &SimConfig) -> Result<Vec<Replication>> {
    cfg.validate()?;
    (0..cfg.replications as u64)
        .into_par_iter()
        .map(|i| run_replication(cfg, cfg.base_seed.wrapping_add(i)))
        .collect()
}

pub fn summarize(reps: &[Replication]) -> SimResult {
    let per_replication: Vec<f64> = reps.iter().map(|r| r.throughput).collect();
    let sum = |f: fn(&Counters) -> u64| reps.iter().map(|r| f(&r.counters)).sum::<u64>();
    SimResult {
        mean_throughput: mean(&per_replication),
        ci95_halfwidth: ci95_halfwidth(&per_replication),
        collisions: sum(|c| c.collisions),
        successes: sum(|c| c.successes),
        drops: sum(|c| c.drops),
        discards: sum(|c| c.discards),
        tx_attempts: sum(|c| c.tx_attempts),
        collided_attempts: sum(|c| c.collided_attempts),
        per_replication,
    }
}

pub fn station_rng(seed: u64, station: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(station as u64);
    rng
}

fn simulate(cfg: &SimConfig, seed: u64, traced: bool) -> Result<Replication> {
    cfg.validate()?;
    let params = &cfg.params;
    let times = derive_times(params)?;
    let sigma = params.slot_sigma;
    let capacity = params.queue_capacity_k as usize;
    let windows: Vec<u32> = (0..=params.m).map(|stage| params.window(stage)).collect();

    let mut stations: Vec<StationState> = (0..cfg.n_stations as usize)
        .map(|id| StationState::new(capacity, cfg.lambda_per_station, station_rng(seed, id)))
        .collect();
    let mut trace = traced.then(Vec::new);
    let mut counters = Counters::default();
    let mut ready = Vec::with_capacity(stations.len());
    let mut t = 0.0_f64;

    while t < cfg.sim_duration {
        for (id, station) in stations.iter_mut().enumerate() {
            station.admit(t, |at, accepted, queue_len| {
                let measured = at >= cfg.warmup;
                if !accepted && measured {
                    counters.drops += 1;
                }
                if let Some(events) = trace.as_mut() {
                    events.push(TraceEvent {
                        time: at,
                        event: if accepted {
                            EventKind::Arrival
                        } else {
                            EventKind::Drop
                        },
                        station_id: id,
                        queue_len,
                    });
                }
            });
            station.wake_if_backlogged(&windows);
        }

        if stations.iter().all(|s| s.mode == Mode::Idle) {
            let next = stations
                .iter()
                .map(StationState::next_arrival)
                .fold(f64::INFINITY, f64::min);
            if !next.is_finite() || next >= cfg.sim_duration {
                // nothing else can happen; run out the clock in empty slots
                let remaining = ((cfg.sim_duration - t) / sigma).ceil().max(1.0);
                t += remaining * sigma;
                break;
            }
            // empty slots until the first slot boundary at or after `next`
            let skipped = ((next - t) / sigma).ceil().max(1.0);
            t += skipped * sigma;
            continue;
        }

        ready.clear();
        ready.extend(
            stations
                .iter()
                .enumerate()
                .filter(|(_, s)| s.ready())
                .map(|(id, _)| id),
        );
        for station in stations
            .iter_mut()
            .filter(|s| s.mode == Mode::Backoff && s.backoff_counter > 0)
        {
            station.backoff_counter -= 1;
        }

        let measured = t >= cfg.warmup;
        let duration = match ready.len() {
            0 => sigma,
            1 => {
                let id = ready[0];
                let station = &mut stations[id];
                station.mode = Mode::Transmitting;
                station.succeed(t + times.t_s, &windows);
                if measured {
                    counters.successes += 1;
                    counters.tx_attempts += 1;
                }
                if let Some(events) = trace.as_mut() {
                    events.push(TraceEvent {
                        time: t,
                        event: EventKind::Success,
                        station_id: id,
                        queue_len: station.queue_len(),
                    });
                }
                times.t_s
            }
            contenders => {
                for &id in &ready {
                    let station = &mut stations[id];
                    station.mode = Mode::Transmitting;
                    if station.collide(t + times.t_c, &windows, cfg.retry) && measured {
                        counters.discards += 1;
                    }
                    if let Some(events) = trace.as_mut() {
                        events.push(TraceEvent {
                            time: t,
                            event: EventKind::Collision,
                            station_id: id,
                            queue_len: station.queue_len(),
                        });
                    }
                }
                if measured {
                    counters.collisions += 1;
                    counters.tx_attempts += contenders as u64;
                    counters.collided_attempts += contenders as u64;
                }
                times.t_c
            }
        };
        t += duration;
        debug_assert!(stations.iter().all(|s| {
            s.backoff_stage <= params.m
                && s.backoff_counter < windows[s.backoff_stage as usize]
                && (s.mode != Mode::Idle || s.queue.is_empty())
                && s.queue.len() <= capacity
        }));
    }

    counters.measured_time = t - cfg.warmup;
    counters.per_station = stations.iter().map(|s| s.tally).collect();
    counters.queued_at_end = stations.iter().map(StationState::queue_len).collect();
    let throughput =
        counters.successes as f64 * params.payload_bits as f64 / counters.measured_time;
    Ok(Replication {
        throughput,
        counters,
        trace,
    })
}
