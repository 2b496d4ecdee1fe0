//! Best guard interval between no guard and a guard of one packet duration.
//!
//!     cargo run --release --example guard_optimum

use stcmac::analytics::optimal_guard;
use stcmac::geometry::Coverage;
use stcmac::{ScenarioConfig, WeightingMode};

fn main() -> stcmac::Result<()> {
    println!("{:>5} {:>5} {:>8} {:>8} {:>8} {:>8}", "alpha", "t_f", "guard", "P_s*", "P_s(0)", "gain");
    for alpha in [1.0, 1.5] {
        for tf in [0.3, 0.6, 0.9] {
            let cfg = ScenarioConfig::new(tf, 0.0, 1500.0, Coverage::from_alpha(1500.0, alpha)?, 0.1, 10)?;
            let opt = optimal_guard(&cfg, WeightingMode::LinkPdf)?;
            println!(
                "{alpha:>5} {tf:>5} {:>8.4} {:>8.4} {:>8.4} {:>8.4}",
                opt.guard,
                opt.success_prob,
                opt.success_at_zero,
                opt.improvement()
            );
        }
    }
    Ok(())
}
