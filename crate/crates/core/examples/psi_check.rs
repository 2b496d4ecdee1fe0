//! Sign of the guard-benefit margin `psi(t_f, a)` over a grid of packet
//! durations and guard intervals.
//!
//!     cargo run --release --example psi_check

use stcmac::analytics::psi_grid;
use stcmac::{ScenarioConfig, WeightingMode};

fn main() -> stcmac::Result<()> {
    let tfs: Vec<f64> = (1..=10).map(|i| i as f64 / 10.0).collect();
    let fractions: Vec<f64> = (1..=19).map(|i| i as f64 * 0.05).collect();
    for alpha in [1.0, 1.5] {
        for mode in [WeightingMode::LinkPdf, WeightingMode::Radial] {
            let cfg = ScenarioConfig::normalized(0.5, 0.0, alpha)?;
            let grid = psi_grid(&cfg, &tfs, &fractions, mode)?;
            let worst = grid.iter().min_by(|a, b| a.psi.total_cmp(&b.psi)).expect("non-empty grid");
            let negative = grid.iter().filter(|p| p.psi <= 0.0).count();
            println!(
                "alpha = {alpha}, {mode:?}: min psi = {:+.3e} at t_f = {}, a = {:.3}; {negative} of {} points <= 0",
                worst.psi,
                worst.packet_duration,
                worst.guard,
                grid.len()
            );
        }
    }
    Ok(())
}
