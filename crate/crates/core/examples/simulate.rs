//! Discrete-event slotted ALOHA against the closed form.
//!
//!     cargo run --release --example simulate -- [replications]
//!
//! SI units: `v = 1500 m/s`, `R = 1500 m` (so `tau = 1 s`), `t_f = 0.9 s`,
//! `beta = 0.6`, ten nodes at `lambda = 0.1 /s`.

use stcmac::geometry::Coverage;
use stcmac::simulator::{run, QueueMode, SimConfig};
use stcmac::{analyze, ScenarioConfig, WeightingMode};

fn main() -> stcmac::Result<()> {
    let reps: u64 = std::env::args().nth(1).map_or(300, |s| s.parse().expect("replications"));
    for alpha in [1.0, 1.5] {
        let cfg = ScenarioConfig::new(0.9, 0.6, 1500.0, Coverage::from_alpha(1500.0, alpha)?, 0.1, 10)?;
        let theory = analyze(&cfg, WeightingMode::LinkPdf)?;
        println!("alpha = {alpha}: closed form P_s = {:.4}, T = {:.4}", theory.success_prob, theory.throughput);
        for mode in [QueueMode::Gated, QueueMode::Queued] {
            let r = run(&SimConfig::new(cfg, 2000, 1).with_replications(reps).with_queue_mode(mode))?;
            println!(
                "  {mode:?}: P_s = {:.4} +- {:.4}, attempts/slot/node = {:.4}, T model = {:.4}, T measured = {:.4}",
                r.success_prob, r.ci_half_width, r.attempt_rate, r.throughput_model, r.throughput_measured
            );
        }
    }
    Ok(())
}
