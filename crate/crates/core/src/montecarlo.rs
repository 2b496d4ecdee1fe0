//! Seeded geometric estimator for the per-segment probabilities.
//!
//! Each run places a tagged sender and one interferer uniformly in the
//! coverage, classifies the sender into its distance segment and records
//! which IRs and DIRs contain the interferer. Success is scored by letting
//! the interferer send in every offset slot independently with probability
//! `p_t` and applying the collision predicate.
//!
//! Run `i` draws from ChaCha8 stream `i` under the key derived from the
//! seed, so results do not depend on how runs are split across threads.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytics::transmit_prob;
use crate::error::{Error, Result};
use crate::stmodel::{collides, segments, ScenarioConfig, Segmentation, Transmission};

const CHUNK: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum McMode {
    /// Tagged sender plus one interferer.
    TableEstimate,
    /// Tagged sender plus `N - 1` interferers.
    GeneralPs,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McConfig {
    pub scenario: ScenarioConfig,
    pub runs: u64,
    pub seed: u64,
    pub mode: McMode,
}

impl McConfig {
    pub fn table(scenario: ScenarioConfig, runs: u64, seed: u64) -> Self {
        McConfig { scenario: scenario.with_nodes(2), runs, seed, mode: McMode::TableEstimate }
    }

    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(Error::config("runs", "must be at least 1"));
        }
        self.scenario.validate()
    }
}

/// RNG for run `index` under `seed`.
pub fn run_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A sampled proportion with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Proportion {
    pub hits: u64,
    pub trials: u64,
    pub value: f64,
    pub se: f64,
}

impl Proportion {
    /// `None` when there were no trials.
    pub fn new(hits: u64, trials: u64) -> Option<Self> {
        (trials > 0).then(|| {
            let p = hits as f64 / trials as f64;
            Proportion { hits, trials, value: p, se: (p * (1.0 - p) / trials as f64).sqrt() }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentEstimate {
    pub k: usize,
    pub d_lo: f64,
    pub d_hi: f64,
    pub slots: Vec<i64>,
    /// Sender lands in this segment.
    pub p_k: Proportion,
    pub p_z: BTreeMap<i64, Proportion>,
    /// Mean number of IRs holding the interferer, with its standard error.
    pub p_z_total: Option<(f64, f64)>,
    pub p_o: BTreeMap<i64, Proportion>,
    pub p_o_total: Option<(f64, f64)>,
    pub p_s: Option<Proportion>,
    /// Interferer outside every IR.
    pub collision_free: Option<Proportion>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub runs: u64,
    pub seed: u64,
    pub transmit_prob: f64,
    pub segments: Vec<SegmentEstimate>,
    pub p_s: Proportion,
}

#[derive(Debug, Clone, Default)]
struct SegmentCounts {
    senders: u64,
    z_hits: Vec<u64>,
    z_count_sum: u64,
    z_count_sq: u64,
    o_hits: Vec<u64>,
    o_count_sum: u64,
    o_count_sq: u64,
    successes: u64,
    free: u64,
}

#[derive(Debug, Clone)]
struct Counts {
    per_segment: Vec<SegmentCounts>,
    successes: u64,
}

impl Counts {
    fn new(k: usize, m: i64) -> Self {
        let width = (2 * m + 1) as usize;
        let seg = SegmentCounts { z_hits: vec![0; width], o_hits: vec![0; width], ..Default::default() };
        Counts { per_segment: vec![seg; k], successes: 0 }
    }

    fn merge(mut self, other: Counts) -> Counts {
        for (a, b) in self.per_segment.iter_mut().zip(other.per_segment) {
            a.senders += b.senders;
            a.z_count_sum += b.z_count_sum;
            a.z_count_sq += b.z_count_sq;
            a.o_count_sum += b.o_count_sum;
            a.o_count_sq += b.o_count_sq;
            a.successes += b.successes;
            a.free += b.free;
            a.z_hits.iter_mut().zip(b.z_hits).for_each(|(x, y)| *x += y);
            a.o_hits.iter_mut().zip(b.o_hits).for_each(|(x, y)| *x += y);
        }
        self.successes += other.successes;
        self
    }
}

fn mean_and_se(sum: u64, sq: u64, n: u64) -> Option<(f64, f64)> {
    if n == 0 {
        return None;
    }
    let nf = n as f64;
    let mean = sum as f64 / nf;
    let var = if n > 1 { ((sq as f64 - nf * mean * mean) / (nf - 1.0)).max(0.0) } else { 0.0 };
    Some((mean, (var / nf).sqrt()))
}

fn simulate_run(cfg: &ScenarioConfig, seg: &Segmentation, pt: f64, rng: &mut ChaCha8Rng, counts: &mut Counts) {
    let m = seg.max_slots;
    let cov = cfg.coverage;
    let sender = cov.sample_uniform_point(rng).norm();
    let k = seg.locate(sender).expect("sampled point lies inside the coverage");
    let tagged = Transmission { node: 0, slot: 0, distance: sender };
    let interferers = cfg.nodes.saturating_sub(1) as usize;
    let c = &mut counts.per_segment[k];
    c.senders += 1;

    let mut ok = true;
    for node in 1..=interferers {
        let d = cov.sample_uniform_point(rng).norm();
        // An interferer sending `dm` slots before the tagged packet.
        let hit = |dm: i64| collides(&tagged, &Transmission { node, slot: -dm, distance: d }, cfg);
        let in_ir: Vec<bool> = (-m..=m).map(hit).collect();
        // One Bernoulli draw per offset slot, in fixed order.
        for &active in &in_ir {
            let sends = rng.random::<f64>() < pt;
            if sends && active {
                ok = false;
            }
        }
        if node == 1 {
            let z = in_ir.iter().filter(|&&b| b).count() as u64;
            c.z_count_sum += z;
            c.z_count_sq += z * z;
            if z == 0 {
                c.free += 1;
            }
            let mut o = 0u64;
            for (i, hit) in in_ir.iter().enumerate() {
                if *hit {
                    c.z_hits[i] += 1;
                    if in_ir.get(i + 1).copied().unwrap_or(false) {
                        c.o_hits[i] += 1;
                        o += 1;
                    }
                }
            }
            c.o_count_sum += o;
            c.o_count_sq += o * o;
        }
    }
    if ok {
        c.successes += 1;
        counts.successes += 1;
    }
}

fn run_all(mc: &McConfig) -> Result<(Segmentation, f64, Counts)> {
    mc.validate()?;
    let cfg = mc.scenario;
    let seg = segments(&cfg);
    let pt = transmit_prob(cfg.arrival_rate, cfg.slot_length());
    let chunks = mc.runs.div_ceil(CHUNK);
    let counts = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut counts = Counts::new(seg.len(), seg.max_slots);
            for run in c * CHUNK..((c + 1) * CHUNK).min(mc.runs) {
                let mut rng = run_rng(mc.seed, run);
                simulate_run(&cfg, &seg, pt, &mut rng, &mut counts);
            }
            counts
        })
        .reduce(|| Counts::new(seg.len(), seg.max_slots), Counts::merge);
    Ok((seg, pt, counts))
}

/// Per-segment estimates from two-node placements.
pub fn estimate_table(mc: &McConfig) -> Result<McEstimate> {
    let mc = McConfig { scenario: mc.scenario.with_nodes(2), mode: McMode::TableEstimate, ..*mc };
    let (seg, pt, counts) = run_all(&mc)?;
    let m = seg.max_slots;
    let segments = seg
        .segments
        .iter()
        .zip(&counts.per_segment)
        .map(|(s, c)| {
            let n = c.senders;
            let idx = |dm: i64| (dm + m) as usize;
            let mut p_z = BTreeMap::new();
            let mut p_o = BTreeMap::new();
            for &dm in &s.slots {
                if let Some(p) = Proportion::new(c.z_hits[idx(dm)], n) {
                    p_z.insert(dm, p);
                }
                if s.slots.contains(&(dm + 1)) {
                    if let Some(p) = Proportion::new(c.o_hits[idx(dm)], n) {
                        p_o.insert(dm, p);
                    }
                }
            }
            SegmentEstimate {
                k: s.index,
                d_lo: s.interval.lo,
                d_hi: s.interval.hi,
                slots: s.slots.clone(),
                p_k: Proportion::new(n, mc.runs).expect("runs >= 1"),
                p_z,
                p_z_total: mean_and_se(c.z_count_sum, c.z_count_sq, n),
                p_o,
                p_o_total: mean_and_se(c.o_count_sum, c.o_count_sq, n),
                p_s: Proportion::new(c.successes, n),
                collision_free: Proportion::new(c.free, n),
            }
        })
        .collect();
    Ok(McEstimate {
        runs: mc.runs,
        seed: mc.seed,
        transmit_prob: pt,
        segments,
        p_s: Proportion::new(counts.successes, mc.runs).expect("runs >= 1"),
    })
}

/// Success probability of a tagged sender against `N - 1` interferers.
pub fn estimate_success_prob(mc: &McConfig) -> Result<Proportion> {
    let mc = McConfig { mode: McMode::GeneralPs, ..*mc };
    let (_, _, counts) = run_all(&mc)?;
    Ok(Proportion::new(counts.successes, mc.runs).expect("runs >= 1"))
}
