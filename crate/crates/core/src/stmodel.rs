//! Space-time collision geometry for a slotted channel with a single sink.
//!
//! A tagged sender at sink distance `d` transmits in slot 0. Another node
//! sending `dm` slots earlier (`t_tagged - t_other = dm * t_slot`) collides
//! with it iff its sink distance lies in the interference region (IR)
//! `[d + v(dm t_slot - t_f), d + v(dm t_slot + t_f))`, clipped to the
//! coverage. Collision-free regions (CFR) are the gaps between IRs; deep
//! interference regions (DIR) are the overlaps of IRs of consecutive slots.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Coverage, Shape};

/// Physical and protocol parameters of one scenario. Times in seconds,
/// lengths in metres; normalized units follow from `speed = 1, R = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    /// Packet duration `t_f`.
    pub packet_duration: f64,
    /// Guard coefficient; the guard interval is `beta * tau`.
    pub beta: f64,
    /// Sound speed `v`.
    pub speed: f64,
    pub coverage: Coverage,
    /// Poisson packet arrival rate per node.
    pub arrival_rate: f64,
    /// Number of sensor nodes.
    pub nodes: u32,
}

impl ScenarioConfig {
    pub fn new(
        packet_duration: f64,
        beta: f64,
        speed: f64,
        coverage: Coverage,
        arrival_rate: f64,
        nodes: u32,
    ) -> Result<Self> {
        let cfg = ScenarioConfig { packet_duration, beta, speed, coverage, arrival_rate, nodes };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Unit speed and unit radius, so `tau = 1` and lengths are in units of `R`.
    pub fn normalized(packet_duration: f64, beta: f64, alpha: f64) -> Result<Self> {
        Self::new(packet_duration, beta, 1.0, Coverage::from_alpha(1.0, alpha)?, 0.0, 2)
    }

    pub fn validate(&self) -> Result<()> {
        let pos = |field: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::config(field, format!("must be positive and finite, got {v}")))
            }
        };
        pos("t_f", self.packet_duration)?;
        pos("v", self.speed)?;
        if !(self.beta >= 0.0 && self.beta.is_finite()) {
            return Err(Error::config("beta", format!("must be >= 0, got {}", self.beta)));
        }
        if !(self.arrival_rate >= 0.0 && self.arrival_rate.is_finite()) {
            return Err(Error::config("lambda", format!("must be >= 0, got {}", self.arrival_rate)));
        }
        if self.nodes < 1 {
            return Err(Error::config("n_nodes", "must be at least 1"));
        }
        Ok(())
    }

    pub fn with_beta(mut self, beta: f64) -> Self {
        self.beta = beta;
        self
    }

    /// Sets the guard interval directly (`beta = guard / tau`).
    pub fn with_guard(mut self, guard: f64) -> Self {
        self.beta = guard / self.tau();
        self
    }

    pub fn with_packet_duration(mut self, t_f: f64) -> Self {
        self.packet_duration = t_f;
        self
    }

    pub fn with_arrival_rate(mut self, lambda: f64) -> Self {
        self.arrival_rate = lambda;
        self
    }

    pub fn with_nodes(mut self, n: u32) -> Self {
        self.nodes = n;
        self
    }

    pub fn with_coverage(mut self, coverage: Coverage) -> Self {
        self.coverage = coverage;
        self
    }

    /// Horizontal maximum propagation delay `R / v`.
    pub fn tau(&self) -> f64 {
        self.coverage.radius() / self.speed
    }

    /// Maximum propagation delay over the whole coverage.
    pub fn max_delay(&self) -> f64 {
        self.coverage.max_range() / self.speed
    }

    pub fn guard(&self) -> f64 {
        self.beta * self.tau()
    }

    pub fn slot_length(&self) -> f64 {
        self.packet_duration + self.guard()
    }

    /// Outer coverage distance (`alpha * R`).
    pub fn range(&self) -> f64 {
        self.coverage.max_range()
    }

    /// Largest slot offset `M` that can still collide; collisions span at
    /// most `2M + 1` slots.
    pub fn max_interference_slots(&self) -> i64 {
        let ratio = (self.max_delay() + self.packet_duration) / self.slot_length();
        // Exact integer ratios land on the boundary; strip round-off first.
        let snapped = ratio - 1e-12 * ratio.max(1.0);
        (snapped.ceil() as i64 - 1).max(0)
    }

    /// Slots `t_slot > 2 t_f` leave collision-free gaps between IRs.
    pub fn has_collision_free_regions(&self) -> bool {
        self.slot_length() > 2.0 * self.packet_duration
    }

    fn length_tolerance(&self) -> f64 {
        1e-12 * self.range()
    }
}

/// Free-function form of [`ScenarioConfig::slot_length`].
pub fn slot_length(cfg: &ScenarioConfig) -> f64 {
    cfg.slot_length()
}

/// Free-function form of [`ScenarioConfig::max_interference_slots`].
pub fn max_interference_slots(cfg: &ScenarioConfig) -> i64 {
    cfg.max_interference_slots()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Transmission {
    pub node: usize,
    pub slot: i64,
    /// Sender-to-sink distance.
    pub distance: f64,
}

impl Transmission {
    pub fn send_time(&self, cfg: &ScenarioConfig) -> f64 {
        self.slot as f64 * cfg.slot_length()
    }
}

/// True iff the two receptions overlap at the sink. An offset of exactly
/// `t_f` does not collide.
pub fn collides(a: &Transmission, b: &Transmission, cfg: &ScenarioConfig) -> bool {
    let offset = (a.slot - b.slot) as f64 * cfg.slot_length() + (a.distance - b.distance) / cfg.speed;
    offset.abs() < cfg.packet_duration
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        Interval { lo, hi }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (hi > lo).then_some(Interval { lo, hi })
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IrShape {
    Circle,
    Annulus,
    FullCover,
    Empty,
}

fn check_distance(cfg: &ScenarioConfig, d: f64) -> Result<()> {
    let hi = cfg.range();
    if d.is_nan() || d < 0.0 || d > hi * (1.0 + 1e-12) {
        return Err(Error::domain("sender distance", d, 0.0, hi));
    }
    Ok(())
}

/// Unclipped IR of a sender at `d` for slot offset `dm`.
pub fn raw_ir(cfg: &ScenarioConfig, d: f64, dm: i64) -> Interval {
    let centre = d + cfg.speed * dm as f64 * cfg.slot_length();
    let half = cfg.speed * cfg.packet_duration;
    Interval { lo: centre - half, hi: centre + half }
}

fn clip(cfg: &ScenarioConfig, iv: Interval) -> Option<Interval> {
    let lo = iv.lo.max(0.0);
    let hi = iv.hi.min(cfg.range());
    (hi - lo > cfg.length_tolerance()).then_some(Interval { lo, hi })
}

pub(crate) fn ir_unchecked(cfg: &ScenarioConfig, d: f64, dm: i64) -> Option<Interval> {
    clip(cfg, raw_ir(cfg, d, dm))
}

pub(crate) fn dir_unchecked(cfg: &ScenarioConfig, d: f64, dm: i64) -> Option<Interval> {
    let a = raw_ir(cfg, d, dm + 1);
    let b = raw_ir(cfg, d, dm);
    clip(cfg, Interval { lo: a.lo, hi: b.hi })
}

/// Interference region for slot offset `dm`, clipped to the coverage;
/// `None` when it misses the coverage.
pub fn ir_interval(cfg: &ScenarioConfig, d: f64, dm: i64) -> Result<Option<Interval>> {
    check_distance(cfg, d)?;
    Ok(ir_unchecked(cfg, d, dm))
}

pub fn classify_ir(interval: Option<Interval>, cov: &Coverage) -> IrShape {
    match interval {
        None => IrShape::Empty,
        Some(iv) => {
            let at_sink = iv.lo <= 0.0;
            let to_edge = iv.hi >= cov.max_range() * (1.0 - 1e-12);
            match (at_sink, to_edge) {
                (true, true) => IrShape::FullCover,
                (true, false) => IrShape::Circle,
                _ => IrShape::Annulus,
            }
        }
    }
}

/// Segment boundaries: distances where some IR endpoint crosses the sink or
/// the coverage edge. With `M = 0` only offset 0 matters and the whole
/// coverage is one segment.
pub fn segment_breakpoints(cfg: &ScenarioConfig) -> Vec<f64> {
    if cfg.max_interference_slots() == 0 {
        return vec![0.0, cfg.range()];
    }
    crossing_points(cfg)
}

fn crossing_points(cfg: &ScenarioConfig) -> Vec<f64> {
    let m = cfg.max_interference_slots();
    let range = cfg.range();
    let tol = cfg.length_tolerance();
    let v = cfg.speed;
    let (ts, tf) = (cfg.slot_length(), cfg.packet_duration);
    let mut pts = vec![0.0, range];
    for dm in -m..=m {
        let shift = v * dm as f64 * ts;
        for x in [-shift - v * tf, -shift + v * tf, range - shift - v * tf, range - shift + v * tf] {
            if x > tol && x < range - tol {
                pts.push(x);
            }
        }
    }
    sort_dedup(pts, tol)
}

fn sort_dedup(mut pts: Vec<f64>, tol: f64) -> Vec<f64> {
    pts.sort_by(f64::total_cmp);
    pts.dedup_by(|x, y| (*x - *y).abs() <= tol);
    pts
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    /// 1-based segment index `k`.
    pub index: usize,
    pub interval: Interval,
    /// Slot offsets whose IR is non-empty for senders in this segment.
    pub slots: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Segmentation {
    pub max_slots: i64,
    pub breakpoints: Vec<f64>,
    pub segments: Vec<Segment>,
}

impl Segmentation {
    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    /// Index into `segments` of the segment holding `d`. Segments are
    /// closed-open except the last.
    pub fn locate(&self, d: f64) -> Option<usize> {
        let last = *self.breakpoints.last()?;
        if d < 0.0 || d > last {
            return None;
        }
        let pos = self.breakpoints.partition_point(|&x| x <= d);
        Some(pos.saturating_sub(1).min(self.segments.len() - 1))
    }
}

pub fn valid_slots(cfg: &ScenarioConfig, d: f64) -> Vec<i64> {
    let m = cfg.max_interference_slots();
    (-m..=m).filter(|&dm| ir_unchecked(cfg, d, dm).is_some()).collect()
}

pub fn segments(cfg: &ScenarioConfig) -> Segmentation {
    let breakpoints = segment_breakpoints(cfg);
    let segments = breakpoints
        .windows(2)
        .enumerate()
        .map(|(i, w)| {
            let interval = Interval::new(w[0], w[1]);
            Segment { index: i + 1, interval, slots: valid_slots(cfg, interval.midpoint()) }
        })
        .collect();
    Segmentation { max_slots: cfg.max_interference_slots(), breakpoints, segments }
}

/// Collision-free regions: the coverage minus every IR of the sender at `d`.
pub fn cfr_set(cfg: &ScenarioConfig, d: f64) -> Result<Vec<Interval>> {
    check_distance(cfg, d)?;
    Ok(cfr_unchecked(cfg, d))
}

pub(crate) fn cfr_unchecked(cfg: &ScenarioConfig, d: f64) -> Vec<Interval> {
    let m = cfg.max_interference_slots();
    let mut irs: Vec<Interval> = (-m..=m).filter_map(|dm| ir_unchecked(cfg, d, dm)).collect();
    irs.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    let tol = cfg.length_tolerance();
    let mut out = Vec::new();
    let mut cursor = 0.0;
    for iv in irs {
        if iv.lo - cursor > tol {
            out.push(Interval::new(cursor, iv.lo));
        }
        cursor = cursor.max(iv.hi);
    }
    if cfg.range() - cursor > tol {
        out.push(Interval::new(cursor, cfg.range()));
    }
    out
}

/// Overlap of the IRs of each consecutive offset pair `(dm, dm + 1)` within
/// `[-M, M]`, keyed by the lower offset.
pub fn dir_intervals(cfg: &ScenarioConfig, d: f64) -> Result<Vec<(i64, Option<Interval>)>> {
    check_distance(cfg, d)?;
    let m = cfg.max_interference_slots();
    Ok((-m..m).map(|dm| (dm, dir_unchecked(cfg, d, dm))).collect())
}

pub(crate) fn interval_area(cov: &Coverage, iv: Option<Interval>) -> f64 {
    iv.map_or(0.0, |iv| cov.annulus_area_unchecked(iv.lo, iv.hi))
}

/// Coverage area of the IR for offset `dm`.
pub fn ir_area(cfg: &ScenarioConfig, d: f64, dm: i64) -> Result<f64> {
    Ok(interval_area(&cfg.coverage, ir_interval(cfg, d, dm)?))
}

/// Coverage area of the DIR between offsets `dm` and `dm + 1`.
pub fn dir_area(cfg: &ScenarioConfig, d: f64, dm: i64) -> Result<f64> {
    check_distance(cfg, d)?;
    Ok(interval_area(&cfg.coverage, dir_unchecked(cfg, d, dm)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IrEntry {
    pub offset: i64,
    pub interval: Option<Interval>,
    pub shape: IrShape,
    pub area: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirEntry {
    /// Lower offset of the consecutive pair.
    pub offset: i64,
    pub interval: Option<Interval>,
    pub area: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionReport {
    pub distance: f64,
    pub irs: Vec<IrEntry>,
    pub dirs: Vec<DirEntry>,
    pub cfr: Vec<Interval>,
    pub cfr_area: f64,
}

pub fn region_report(cfg: &ScenarioConfig, d: f64) -> Result<RegionReport> {
    check_distance(cfg, d)?;
    let cov = cfg.coverage;
    let irs = valid_slots(cfg, d)
        .into_iter()
        .map(|dm| {
            let interval = ir_unchecked(cfg, d, dm);
            IrEntry { offset: dm, interval, shape: classify_ir(interval, &cov), area: interval_area(&cov, interval) }
        })
        .collect();
    let dirs = dir_intervals(cfg, d)?
        .into_iter()
        .map(|(dm, interval)| DirEntry { offset: dm, interval, area: interval_area(&cov, interval) })
        .collect();
    let cfr = cfr_unchecked(cfg, d);
    let cfr_area = cfr.iter().map(|iv| interval_area(&cov, Some(*iv))).fold(0.0, |acc, a| acc + a);
    Ok(RegionReport { distance: d, irs, dirs, cfr, cfr_area })
}

/// Abscissae where an IR or DIR endpoint crosses one of the coverage's
/// area-function kinks (sink, `R`, outer edge). Quadrature splits here.
pub(crate) fn kink_points(cfg: &ScenarioConfig) -> Vec<f64> {
    let mut pts = crossing_points(cfg);
    if cfg.coverage.shape() == Shape::Ellipse {
        let m = cfg.max_interference_slots();
        let v = cfg.speed;
        let big_r = cfg.coverage.radius();
        pts.push(big_r);
        for dm in -m..=m {
            let shift = v * dm as f64 * cfg.slot_length();
            for x in [big_r - shift - v * cfg.packet_duration, big_r - shift + v * cfg.packet_duration] {
                if x > 0.0 && x < cfg.range() {
                    pts.push(x);
                }
            }
        }
    }
    sort_dedup(pts, cfg.length_tolerance())
}
