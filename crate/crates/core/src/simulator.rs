//! Discrete-event slotted ALOHA with propagation delays.
//!
//! Nodes are placed uniformly in the coverage once per replication and
//! receive Poisson arrivals in continuous time. A packet arriving during slot
//! `m` is sent at the start of slot `m + 1`. Receptions are resolved at the
//! sink with the pairwise collision predicate, checking only slot offsets
//! within the collision span `|dm| <= M`.
//!
//! Replication `r` uses ChaCha8 stream `r` under the key derived from the
//! seed, so results do not depend on thread count.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, VecDeque};

use rand_distr::{Distribution, Exp};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::error::{Error, Result};
use crate::montecarlo::run_rng;
use crate::stmodel::{collides, ScenarioConfig, Transmission};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QueueMode {
    /// Send in slot `m` iff at least one packet arrived in slot `m - 1`;
    /// extra arrivals are merged.
    #[default]
    Gated,
    /// FIFO buffer, one packet per slot while the backlog is non-empty.
    Queued,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub scenario: ScenarioConfig,
    /// Slots `0..num_slots` are simulated; the last `M` slots after that are
    /// added so every counted packet sees all its interferers.
    pub num_slots: u64,
    /// Leading slots excluded from the counters.
    pub warmup_slots: u64,
    pub seed: u64,
    pub queue_mode: QueueMode,
    pub replications: u64,
}

impl SimConfig {
    /// One gated replication; the warmup covers the first `M + 1` slots,
    /// which see no earlier traffic.
    pub fn new(scenario: ScenarioConfig, num_slots: u64, seed: u64) -> Self {
        SimConfig {
            scenario,
            num_slots,
            warmup_slots: scenario.max_interference_slots() as u64 + 1,
            seed,
            queue_mode: QueueMode::Gated,
            replications: 1,
        }
    }

    pub fn with_replications(mut self, r: u64) -> Self {
        self.replications = r;
        self
    }

    pub fn with_warmup(mut self, w: u64) -> Self {
        self.warmup_slots = w;
        self
    }

    pub fn with_queue_mode(mut self, mode: QueueMode) -> Self {
        self.queue_mode = mode;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.scenario.validate()?;
        if self.num_slots <= self.warmup_slots {
            return Err(Error::config(
                "slots",
                format!("num_slots ({}) must exceed warmup_slots ({})", self.num_slots, self.warmup_slots),
            ));
        }
        if self.replications == 0 {
            return Err(Error::config("reps", "must be at least 1"));
        }
        Ok(())
    }

    fn counted_slots(&self) -> u64 {
        self.num_slots - self.warmup_slots
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplicationCounts {
    pub attempts: u64,
    pub successes: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimResult {
    pub attempts: u64,
    pub successes: u64,
    /// Pooled `successes / attempts`; zero when nothing was sent.
    pub success_prob: f64,
    /// Ratio-estimator standard error across replications (binomial for a
    /// single replication).
    pub se: f64,
    /// Half width of the 95% Student-t interval.
    pub ci_half_width: f64,
    /// Attempts per node per counted slot.
    pub attempt_rate: f64,
    /// Counted time per replication.
    pub observed_time: f64,
    /// `successes * t_f` per unit of observed time, averaged over replications.
    pub throughput_measured: f64,
    /// `N * lambda * t_f * P_s` with the measured `P_s`.
    pub throughput_model: f64,
    pub replications: Vec<ReplicationCounts>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Event {
    time: f64,
    kind: EventKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum EventKind {
    // Declared first so a slot boundary is handled before an arrival at the
    // same instant; that arrival then belongs to the new slot.
    SlotStart(u64),
    Arrival(usize),
}

impl Eq for Event {}

impl Ord for Event {
    fn cmp(&self, other: &Self) -> Ordering {
        self.time.total_cmp(&other.time).then(self.kind.cmp(&other.kind))
    }
}

impl PartialOrd for Event {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Transmission trace of one replication, ordered by slot.
pub fn simulate_trace(sim: &SimConfig, replication: u64) -> Vec<Transmission> {
    let cfg = &sim.scenario;
    let n = cfg.nodes as usize;
    let t_slot = cfg.slot_length();
    let last_slot = sim.num_slots + cfg.max_interference_slots() as u64;
    let mut rng = run_rng(sim.seed, replication);

    let distances: Vec<f64> = (0..n).map(|_| cfg.coverage.sample_uniform_point(&mut rng).norm()).collect();
    let gaps = (cfg.arrival_rate > 0.0).then(|| Exp::new(cfg.arrival_rate).expect("positive rate"));

    let mut events = BinaryHeap::new();
    events.push(Reverse(Event { time: 0.0, kind: EventKind::SlotStart(0) }));
    if let Some(exp) = &gaps {
        for node in 0..n {
            events.push(Reverse(Event { time: exp.sample(&mut rng), kind: EventKind::Arrival(node) }));
        }
    }

    // Gated: arrivals seen in the current slot. Queued: backlog.
    let mut pending = vec![0u64; n];
    let mut queues: Vec<VecDeque<f64>> = vec![VecDeque::new(); n];
    let mut trace = Vec::new();

    while let Some(Reverse(ev)) = events.pop() {
        match ev.kind {
            EventKind::SlotStart(m) => {
                for node in 0..n {
                    let send = match sim.queue_mode {
                        QueueMode::Gated => std::mem::take(&mut pending[node]) > 0,
                        QueueMode::Queued => queues[node].pop_front().is_some(),
                    };
                    if send {
                        trace.push(Transmission { node, slot: m as i64, distance: distances[node] });
                    }
                }
                if m < last_slot {
                    events.push(Reverse(Event { time: (m + 1) as f64 * t_slot, kind: EventKind::SlotStart(m + 1) }));
                }
            }
            EventKind::Arrival(node) => {
                match sim.queue_mode {
                    QueueMode::Gated => pending[node] += 1,
                    QueueMode::Queued => queues[node].push_back(ev.time),
                }
                let exp = gaps.as_ref().expect("arrivals need a positive rate");
                let next = ev.time + exp.sample(&mut rng);
                // Packets arriving during the final slot would go out after it.
                if next < last_slot as f64 * t_slot {
                    events.push(Reverse(Event { time: next, kind: EventKind::Arrival(node) }));
                }
            }
        }
    }
    trace
}

/// Success flag per transmission (in input order). Only pairs with slot
/// offset `|dm| <= M` are compared; farther pairs cannot overlap at the sink.
pub fn collision_window_resolve(transmissions: &[Transmission], cfg: &ScenarioConfig) -> Vec<bool> {
    let mut order: Vec<usize> = (0..transmissions.len()).collect();
    order.sort_by_key(|&i| transmissions[i].slot);
    let slots: Vec<i64> = order.iter().map(|&i| transmissions[i].slot).collect();
    let m = cfg.max_interference_slots();

    let mut ok = vec![true; transmissions.len()];
    for (pos, &i) in order.iter().enumerate() {
        let a = &transmissions[i];
        let lo = slots.partition_point(|&s| s < a.slot - m);
        let hi = slots.partition_point(|&s| s <= a.slot + m);
        ok[i] = (lo..hi).all(|q| q == pos || !collides(a, &transmissions[order[q]], cfg));
    }
    ok
}

/// Reference resolution comparing every pair in the trace.
pub fn brute_force_resolve(transmissions: &[Transmission], cfg: &ScenarioConfig) -> Vec<bool> {
    (0..transmissions.len())
        .map(|i| {
            transmissions
                .iter()
                .enumerate()
                .all(|(j, b)| j == i || !collides(&transmissions[i], b, cfg))
        })
        .collect()
}

fn run_replication(sim: &SimConfig, replication: u64) -> ReplicationCounts {
    let trace = simulate_trace(sim, replication);
    let flags = collision_window_resolve(&trace, &sim.scenario);
    let counted = sim.warmup_slots as i64..sim.num_slots as i64;
    let mut counts = ReplicationCounts { attempts: 0, successes: 0 };
    for (tx, ok) in trace.iter().zip(flags) {
        if counted.contains(&tx.slot) {
            counts.attempts += 1;
            counts.successes += ok as u64;
        }
    }
    counts
}

pub fn run(sim: &SimConfig) -> Result<SimResult> {
    sim.validate()?;
    let reps: Vec<ReplicationCounts> = (0..sim.replications).into_par_iter().map(|r| run_replication(sim, r)).collect();
    Ok(summarize(sim, reps))
}

fn summarize(sim: &SimConfig, reps: Vec<ReplicationCounts>) -> SimResult {
    let cfg = &sim.scenario;
    let attempts: u64 = reps.iter().map(|r| r.attempts).sum();
    let successes: u64 = reps.iter().map(|r| r.successes).sum();
    let p = if attempts > 0 { successes as f64 / attempts as f64 } else { 0.0 };
    let n = reps.len() as f64;

    let se = if attempts == 0 {
        0.0
    } else if reps.len() == 1 {
        (p * (1.0 - p) / attempts as f64).sqrt()
    } else {
        let mean_attempts = attempts as f64 / n;
        let ss: f64 = reps.iter().map(|r| (r.successes as f64 - p * r.attempts as f64).powi(2)).sum();
        (ss / (n * (n - 1.0))).sqrt() / mean_attempts
    };
    let quantile = if reps.len() > 1 {
        StudentsT::new(0.0, 1.0, n - 1.0).expect("valid dof").inverse_cdf(0.975)
    } else {
        1.959_963_984_540_054
    };

    let observed_time = sim.counted_slots() as f64 * cfg.slot_length();
    let throughput_measured = successes as f64 * cfg.packet_duration / (observed_time * n);
    SimResult {
        attempts,
        successes,
        success_prob: p,
        se,
        ci_half_width: quantile * se,
        attempt_rate: attempts as f64 / (n * cfg.nodes as f64 * sim.counted_slots() as f64),
        observed_time,
        throughput_measured,
        throughput_model: cfg.nodes as f64 * cfg.arrival_rate * cfg.packet_duration * p,
        replications: reps,
    }
}
