//! Geometric Monte Carlo estimate next to the closed form.
//!
//!     cargo run --release --example monte_carlo_tables -- [runs] [seed]

use stcmac::montecarlo::{estimate_table, McConfig};
use stcmac::{analyze, ScenarioConfig, WeightingMode};

fn main() -> stcmac::Result<()> {
    let mut args = std::env::args().skip(1);
    let runs: u64 = args.next().map_or(100_000, |s| s.parse().expect("runs"));
    let seed: u64 = args.next().map_or(42, |s| s.parse().expect("seed"));

    for tf in [0.1, 0.7] {
        let cfg = ScenarioConfig::normalized(tf, 0.4, 1.0)?.with_arrival_rate(0.5).with_nodes(2);
        let est = estimate_table(&McConfig::table(cfg, runs, seed))?;
        let theory = analyze(&cfg, WeightingMode::LinkPdf)?;
        println!("t_f = {tf}, {runs} runs, seed {seed}");
        println!("  {:>3} {:>18} {:>26} {:>26}", "k", "P_k theo/sim", "P_z,k theo/sim", "P_s,k theo/sim (se)");
        for (t, e) in theory.segments.iter().zip(&est.segments) {
            let pz = e.p_z_total.map_or("-".into(), |(m, _)| format!("{m:.4}"));
            let ps = e.p_s.map_or("-".into(), |p| format!("{:.4} ({:.4})", p.value, p.se));
            println!(
                "  {:>3} {:>8.4} / {:<8.4} {:>12.4} / {:<10} {:>8.4} / {ps}",
                t.k, t.p_k, e.p_k.value, t.p_z_total, pz, t.p_s
            );
        }
        println!("  P_s: theory {:.4}, sampled {:.4} +- {:.4}\n", theory.success_prob, est.p_s.value, est.p_s.se);
    }
    Ok(())
}

