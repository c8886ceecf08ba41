use std::collections::VecDeque;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp};

/// What happens to a frame that collides at the last backoff stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RetryPolicy {
    /// Retry forever with the stage-`m` window.
    #[default]
    RetainLastStage,
    /// Drop it and start the next frame at stage 0 (`m + 1` attempts in total).
    DiscardAfterLastStage,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Idle,
    Backoff,
    Transmitting,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StationTally {
    pub arrivals: u64,
    /// Rejected on arrival because the queue was full.
    pub drops: u64,
    /// Discarded after colliding at the last backoff stage.
    pub discards: u64,
    pub departures: u64,
}

/// One contending station: a bounded FIFO of arrival timestamps plus its
/// backoff state.
#[derive(Debug)]
pub struct StationState {
    pub queue: VecDeque<f64>,
    pub capacity: usize,
    pub backoff_stage: u32,
    pub backoff_counter: u32,
    pub mode: Mode,
    pub tally: StationTally,
    next_arrival: f64,
    interarrival: Option<Exp<f64>>,
    saturated: bool,
    rng: ChaCha8Rng,
}

impl StationState {
    pub(crate) fn new(capacity: usize, lambda: f64, mut rng: ChaCha8Rng) -> Self {
        let saturated = lambda.is_infinite();
        let interarrival = if saturated || lambda == 0.0 {
            None
        } else {
            Some(Exp::new(lambda).expect("rate checked by SimConfig::validate"))
        };
        let next_arrival = match &interarrival {
            Some(exp) => exp.sample(&mut rng),
            None => f64::INFINITY,
        };
        let mut station = StationState {
            queue: VecDeque::with_capacity(capacity),
            capacity,
            backoff_stage: 0,
            backoff_counter: 0,
            mode: Mode::Idle,
            tally: StationTally::default(),
            next_arrival,
            interarrival,
            saturated,
            rng,
        };
        if saturated {
            for _ in 0..capacity {
                station.queue.push_back(0.0);
                station.tally.arrivals += 1;
            }
        }
        station
    }

    pub fn next_arrival(&self) -> f64 {
        self.next_arrival
    }

    pub fn queue_len(&self) -> usize {
        self.queue.len()
    }

    /// Moves every arrival up to `now` into the queue. Calls `on_event` with
    /// `(arrival_time, accepted)` for each one.
    pub(crate) fn admit(&mut self, now: f64, mut on_event: impl FnMut(f64, bool, usize)) {
        let Some(exp) = self.interarrival else {
            return;
        };
        while self.next_arrival <= now {
            let at = self.next_arrival;
            self.tally.arrivals += 1;
            let accepted = self.queue.len() < self.capacity;
            if accepted {
                self.queue.push_back(at);
            } else {
                self.tally.drops += 1;
            }
            on_event(at, accepted, self.queue.len());
            self.next_arrival = at + exp.sample(&mut self.rng);
        }
    }

    pub(crate) fn wake_if_backlogged(&mut self, windows: &[u32]) {
        if self.mode == Mode::Idle && !self.queue.is_empty() {
            self.enter_stage(0, windows);
        }
    }

    pub(crate) fn enter_stage(&mut self, stage: u32, windows: &[u32]) {
        let last = windows.len() as u32 - 1;
        self.backoff_stage = stage.min(last);
        let window = windows[self.backoff_stage as usize];
        self.backoff_counter = self.rng.gen_range(0..window);
        self.mode = Mode::Backoff;
    }

    pub(crate) fn ready(&self) -> bool {
        self.mode == Mode::Backoff && self.backoff_counter == 0
    }

    /// Head-of-line frame delivered; returns to stage 0 or goes idle.
    pub(crate) fn succeed(&mut self, now: f64, windows: &[u32]) {
        self.tally.departures += 1;
        self.release_head(now, windows);
    }

    /// Returns true when the head-of-line frame was discarded.
    pub(crate) fn collide(&mut self, now: f64, windows: &[u32], retry: RetryPolicy) -> bool {
        let last = windows.len() as u32 - 1;
        if retry == RetryPolicy::DiscardAfterLastStage && self.backoff_stage == last {
            self.tally.discards += 1;
            self.release_head(now, windows);
            return true;
        }
        self.enter_stage(self.backoff_stage + 1, windows);
        false
    }

    fn release_head(&mut self, now: f64, windows: &[u32]) {
        self.queue.pop_front();
        if self.saturated {
            self.queue.push_back(now);
            self.tally.arrivals += 1;
        }
        if self.queue.is_empty() {
            self.mode = Mode::Idle;
            self.backoff_stage = 0;
            self.backoff_counter = 0;
        } else {
            self.enter_stage(0, windows);
        }
    }
}
