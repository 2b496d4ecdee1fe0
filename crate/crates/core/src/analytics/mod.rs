//! Closed-form success probability and throughput of slotted ALOHA under
//! space-time coupled collisions.
//!
//! For a tagged sender in distance segment `D_k` the interferer-position
//! probabilities are conditional expectations over `D_k` of IR/DIR areas
//! divided by the coverage area, weighted either by the link-distance
//! density or by the true radial density of a uniform deployment
//! ([`WeightingMode`]).

mod sweep;

pub use sweep::{optimal_guard, psi_grid, sweep, Grid, GuardOptimum, PsiPoint, SweepCurve, SweepParam, SweepPoint};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::integrate_pieces;
use crate::stmodel::{self, interval_area, kink_points, ScenarioConfig, Segment, Segmentation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightingMode {
    /// Link-distance density of the coverage shape.
    #[default]
    LinkPdf,
    /// Sink-distance density of a uniformly placed sender.
    Radial,
}

impl WeightingMode {
    pub fn other(self) -> Self {
        match self {
            WeightingMode::LinkPdf => WeightingMode::Radial,
            WeightingMode::Radial => WeightingMode::LinkPdf,
        }
    }

    fn weight(self, cfg: &ScenarioConfig, d: f64) -> f64 {
        match self {
            WeightingMode::LinkPdf => cfg.coverage.link_pdf(d),
            WeightingMode::Radial => cfg.coverage.radial_pdf_unchecked(d),
        }
    }
}

/// Which closed form applies: gaps between IRs (`t_slot > 2 t_f`) or
/// overlapping consecutive IRs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CollisionCase {
    CollisionFree,
    DeepInterference,
}

impl CollisionCase {
    pub fn of(cfg: &ScenarioConfig) -> Self {
        if cfg.has_collision_free_regions() {
            CollisionCase::CollisionFree
        } else {
            CollisionCase::DeepInterference
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentResult {
    pub k: usize,
    pub d_lo: f64,
    pub d_hi: f64,
    pub slots: Vec<i64>,
    /// Probability that a sender lies in this segment.
    pub p_k: f64,
    /// Interferer-in-IR probability per slot offset.
    pub p_z: BTreeMap<i64, f64>,
    pub p_z_total: f64,
    /// Interferer-in-DIR probability keyed by the lower offset of the pair.
    pub p_o: BTreeMap<i64, f64>,
    pub p_o_total: f64,
    pub p_s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyticResult {
    pub weighting: WeightingMode,
    pub case: CollisionCase,
    pub slot_length: f64,
    pub max_slots: i64,
    pub transmit_prob: f64,
    pub segments: Vec<SegmentResult>,
    pub success_prob: f64,
    pub throughput: f64,
}

/// Per-slot sending probability of a gated Poisson source.
pub fn transmit_prob(lambda: f64, t_slot: f64) -> f64 {
    -(-lambda * t_slot).exp_m1()
}

/// Fraction of the coverage area in segment `seg`.
pub fn segment_prob(cfg: &ScenarioConfig, seg: &Segment) -> f64 {
    interval_area(&cfg.coverage, Some(seg.interval)) / cfg.coverage.area()
}

struct SegmentWeights<'a> {
    cfg: &'a ScenarioConfig,
    mode: WeightingMode,
    lo: f64,
    hi: f64,
    splits: Vec<f64>,
    mass: f64,
}

impl<'a> SegmentWeights<'a> {
    fn new(cfg: &'a ScenarioConfig, seg: &Segment, mode: WeightingMode, splits: &[f64]) -> Result<Self> {
        let (lo, hi) = (seg.interval.lo, seg.interval.hi);
        let mut splits: Vec<f64> = splits.iter().copied().filter(|&x| x > lo && x < hi).collect();
        if cfg.coverage.radius() > lo && cfg.coverage.radius() < hi {
            splits.push(cfg.coverage.radius());
        }
        let w = |d: f64| mode.weight(cfg, d);
        let scale = (hi - lo) * [lo, 0.5 * (lo + hi), hi].iter().map(|&d| w(d)).fold(0.0, f64::max);
        let mass = if scale > 0.0 {
            integrate_pieces(w, lo, hi, &splits, 1e-12 * scale)?
        } else {
            0.0
        };
        Ok(SegmentWeights { cfg, mode, lo, hi, splits, mass })
    }

    /// Weighted mean over the segment of `area(d) / A`.
    fn mean_fraction<F: Fn(f64) -> f64>(&self, area: F) -> Result<f64> {
        let total = self.cfg.coverage.area();
        if self.mass <= 0.0 {
            return Ok(area(0.5 * (self.lo + self.hi)) / total);
        }
        let integrand = |d: f64| self.mode.weight(self.cfg, d) * area(d) / total;
        let v = integrate_pieces(integrand, self.lo, self.hi, &self.splits, 1e-11 * self.mass)?;
        Ok((v / self.mass).clamp(0.0, 1.0))
    }
}

/// Per-offset probabilities that an interferer sits in an IR of a sender in `seg`.
pub fn prob_in_irs(cfg: &ScenarioConfig, seg: &Segment, mode: WeightingMode) -> Result<(BTreeMap<i64, f64>, f64)> {
    let weights = SegmentWeights::new(cfg, seg, mode, &kink_points(cfg))?;
    ir_probs(&weights, seg)
}

/// Per-pair probabilities that an interferer sits in a DIR of a sender in `seg`.
pub fn prob_in_dirs(cfg: &ScenarioConfig, seg: &Segment, mode: WeightingMode) -> Result<(BTreeMap<i64, f64>, f64)> {
    let weights = SegmentWeights::new(cfg, seg, mode, &kink_points(cfg))?;
    dir_probs(&weights, seg)
}

fn ir_probs(w: &SegmentWeights, seg: &Segment) -> Result<(BTreeMap<i64, f64>, f64)> {
    let cfg = w.cfg;
    let mut map = BTreeMap::new();
    for &dm in &seg.slots {
        let p = w.mean_fraction(|d| interval_area(&cfg.coverage, stmodel::ir_unchecked(cfg, d, dm)))?;
        map.insert(dm, p);
    }
    let total = map.values().fold(0.0, |acc, p| acc + p);
    Ok((map, total))
}

fn dir_probs(w: &SegmentWeights, seg: &Segment) -> Result<(BTreeMap<i64, f64>, f64)> {
    let cfg = w.cfg;
    let mut map = BTreeMap::new();
    for pair in seg.slots.windows(2).filter(|p| p[1] == p[0] + 1) {
        let dm = pair[0];
        let p = if cfg.has_collision_free_regions() {
            0.0
        } else {
            w.mean_fraction(|d| interval_area(&cfg.coverage, stmodel::dir_unchecked(cfg, d, dm)))?
        };
        map.insert(dm, p);
    }
    let total = map.values().fold(0.0, |acc, p| acc + p);
    Ok((map, total))
}

/// Conditional non-collision probability of a sender, given the IR and DIR
/// totals of its segment.
pub fn success_prob_segment(cfg: &ScenarioConfig, p_z: f64, p_o: f64) -> f64 {
    let n = cfg.nodes.saturating_sub(1) as i32;
    let pt = transmit_prob(cfg.arrival_rate, cfg.slot_length());
    let per_node = match CollisionCase::of(cfg) {
        CollisionCase::CollisionFree => 1.0 - pt * p_z,
        // Two silent slots in a DIR: (1 - p_c) == (1 - p_t)^2.
        CollisionCase::DeepInterference => (1.0 - pt) * (1.0 - p_o + (1.0 - pt) * p_o),
    };
    per_node.clamp(0.0, 1.0).powi(n)
}

/// Full per-segment breakdown plus aggregate success probability and throughput.
pub fn analyze(cfg: &ScenarioConfig, mode: WeightingMode) -> Result<AnalyticResult> {
    cfg.validate()?;
    let seg = stmodel::segments(cfg);
    analyze_segments(cfg, &seg, mode)
}

fn analyze_segments(cfg: &ScenarioConfig, seg: &Segmentation, mode: WeightingMode) -> Result<AnalyticResult> {
    let kinks = kink_points(cfg);
    let mut segments = Vec::with_capacity(seg.len());
    for s in &seg.segments {
        let w = SegmentWeights::new(cfg, s, mode, &kinks)?;
        let (p_z, p_z_total) = ir_probs(&w, s)?;
        let (p_o, p_o_total) = dir_probs(&w, s)?;
        segments.push(SegmentResult {
            k: s.index,
            d_lo: s.interval.lo,
            d_hi: s.interval.hi,
            slots: s.slots.clone(),
            p_k: segment_prob(cfg, s),
            p_s: success_prob_segment(cfg, p_z_total, p_o_total),
            p_z,
            p_z_total,
            p_o,
            p_o_total,
        });
    }
    // Area fractions can sum to 1 + ulp.
    let success_prob = segments.iter().map(|s| s.p_k * s.p_s).sum::<f64>().clamp(0.0, 1.0);
    Ok(AnalyticResult {
        weighting: mode,
        case: CollisionCase::of(cfg),
        slot_length: cfg.slot_length(),
        max_slots: seg.max_slots,
        transmit_prob: transmit_prob(cfg.arrival_rate, cfg.slot_length()),
        throughput: throughput_from(cfg, success_prob),
        success_prob,
        segments,
    })
}

pub fn throughput_from(cfg: &ScenarioConfig, success_prob: f64) -> f64 {
    cfg.nodes as f64 * cfg.arrival_rate * cfg.packet_duration * success_prob
}

pub fn success_prob(cfg: &ScenarioConfig, mode: WeightingMode) -> Result<f64> {
    Ok(analyze(cfg, mode)?.success_prob)
}

pub fn throughput(cfg: &ScenarioConfig, mode: WeightingMode) -> Result<f64> {
    Ok(analyze(cfg, mode)?.throughput)
}

/// Margin by which a guard of `a` beats `t_slot = 2 t_f`; positive values
/// mean the shorter slot wins.
pub fn psi(cfg: &ScenarioConfig, a: f64, mode: WeightingMode) -> Result<f64> {
    let tf = cfg.packet_duration;
    if !(a > 0.0 && a < tf) {
        return Err(Error::domain("guard interval", a, 0.0, tf));
    }
    let at = cfg.with_guard(a);
    let seg = stmodel::segments(&at);
    let kinks = kink_points(&at);
    let mut dir_mass = 0.0;
    for s in &seg.segments {
        let w = SegmentWeights::new(&at, s, mode, &kinks)?;
        dir_mass += segment_prob(&at, s) * dir_probs(&w, s)?.1;
    }
    Ok((tf - a) / (tf + a) - dir_mass)
}
