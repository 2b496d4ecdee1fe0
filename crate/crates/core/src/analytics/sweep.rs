use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{analyze, psi, WeightingMode};
use crate::error::{Error, Result};
use crate::stmodel::ScenarioConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParam {
    Beta,
    PacketDuration,
    Nodes,
    ArrivalRate,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::Beta => "beta",
            SweepParam::PacketDuration => "t_f",
            SweepParam::Nodes => "n_nodes",
            SweepParam::ArrivalRate => "lambda",
        }
    }

    /// Copy of `cfg` with this parameter set to `value`.
    pub fn apply(self, cfg: &ScenarioConfig, value: f64) -> Result<ScenarioConfig> {
        let out = match self {
            SweepParam::Beta => cfg.with_beta(value),
            SweepParam::PacketDuration => cfg.with_packet_duration(value),
            SweepParam::ArrivalRate => cfg.with_arrival_rate(value),
            SweepParam::Nodes => {
                if value.fract() != 0.0 || value < 1.0 || value > u32::MAX as f64 {
                    return Err(Error::config("n_nodes", format!("sweep value {value} is not a positive integer")));
                }
                cfg.with_nodes(value as u32)
            }
        };
        out.validate()?;
        Ok(out)
    }
}

/// Evenly spaced inclusive grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub from: f64,
    pub to: f64,
    pub steps: usize,
}

impl Grid {
    pub fn new(from: f64, to: f64, steps: usize) -> Result<Self> {
        if steps == 0 {
            return Err(Error::config("steps", "grid needs at least one point"));
        }
        if !(from.is_finite() && to.is_finite()) || to < from {
            return Err(Error::config("from/to", format!("invalid range [{from}, {to}]")));
        }
        if steps == 1 && from != to {
            return Err(Error::config("steps", "a one-point grid needs from == to"));
        }
        Ok(Grid { from, to, steps })
    }

    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.from];
        }
        let h = (self.to - self.from) / (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| if i + 1 == self.steps { self.to } else { self.from + h * i as f64 })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub value: f64,
    pub success_prob: f64,
    pub throughput: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepCurve {
    pub param: SweepParam,
    pub weighting: WeightingMode,
    pub points: Vec<SweepPoint>,
    /// Index into `points` of the largest success probability.
    pub argmax_success: usize,
    pub argmax_throughput: usize,
}

fn argmax(values: impl Iterator<Item = f64>) -> usize {
    values
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |best, (i, v)| if v > best.1 { (i, v) } else { best })
        .0
}

/// Evaluates the closed form along `values`; points are evaluated in
/// parallel and returned in grid order.
pub fn sweep(cfg: &ScenarioConfig, param: SweepParam, values: &[f64], mode: WeightingMode) -> Result<SweepCurve> {
    if values.is_empty() {
        return Err(Error::config("grid", "sweep grid is empty"));
    }
    let points = values
        .par_iter()
        .map(|&value| {
            let r = analyze(&param.apply(cfg, value)?, mode)?;
            Ok(SweepPoint { value, success_prob: r.success_prob, throughput: r.throughput })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepCurve {
        param,
        weighting: mode,
        argmax_success: argmax(points.iter().map(|p| p.success_prob)),
        argmax_throughput: argmax(points.iter().map(|p| p.throughput)),
        points,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GuardOptimum {
    pub guard: f64,
    pub beta: f64,
    pub success_prob: f64,
    pub throughput: f64,
    /// Success probability with no guard.
    pub success_at_zero: f64,
    /// Success probability with a guard of one packet duration.
    pub success_at_packet: f64,
}

impl GuardOptimum {
    pub fn improvement(&self) -> f64 {
        self.success_prob - self.success_at_zero.max(self.success_at_packet)
    }
}

const GUARD_GRID: usize = 24;
const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Best guard interval in `(0, t_f)`: a grid scan followed by golden-section
/// refinement around the best grid point, to `1e-4 * t_f`.
pub fn optimal_guard(cfg: &ScenarioConfig, mode: WeightingMode) -> Result<GuardOptimum> {
    let tf = cfg.packet_duration;
    let ps = |g: f64| -> Result<f64> { Ok(analyze(&cfg.with_guard(g), mode)?.success_prob) };

    let grid: Vec<f64> = (0..=GUARD_GRID + 1).map(|i| tf * i as f64 / (GUARD_GRID + 1) as f64).collect();
    let values = grid.par_iter().map(|&g| ps(g)).collect::<Result<Vec<_>>>()?;
    let (success_at_zero, success_at_packet) = (values[0], values[GUARD_GRID + 1]);
    let best = 1 + argmax(values[1..=GUARD_GRID].iter().copied());

    let (mut lo, mut hi) = (grid[best - 1], grid[best + 1]);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let (mut f1, mut f2) = (ps(x1)?, ps(x2)?);
    while hi - lo > 1e-4 * tf {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = ps(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = ps(x2)?;
        }
    }
    let mut guard = 0.5 * (lo + hi);
    let mut success = ps(guard)?;
    if values[best] > success {
        guard = grid[best];
        success = values[best];
    }
    let at = cfg.with_guard(guard);
    Ok(GuardOptimum {
        guard,
        beta: at.beta,
        success_prob: success,
        throughput: super::throughput_from(&at, success),
        success_at_zero,
        success_at_packet,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PsiPoint {
    pub packet_duration: f64,
    pub guard: f64,
    pub psi: f64,
}

/// Evaluates `psi` over packet durations `t_f` and guard fractions `a / t_f`.
pub fn psi_grid(
    cfg: &ScenarioConfig,
    packet_durations: &[f64],
    guard_fractions: &[f64],
    mode: WeightingMode,
) -> Result<Vec<PsiPoint>> {
    let jobs: Vec<(f64, f64)> = packet_durations
        .iter()
        .flat_map(|&tf| guard_fractions.iter().map(move |&f| (tf, f * tf)))
        .collect();
    jobs.par_iter()
        .map(|&(tf, a)| {
            let at = cfg.with_packet_duration(tf);
            Ok(PsiPoint { packet_duration: tf, guard: a, psi: psi(&at, a, mode)? })
        })
        .collect()
}
