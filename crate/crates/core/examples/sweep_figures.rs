//! Closed-form curves behind the throughput and success-probability figures,
//! printed as CSV blocks.
//!
//!     cargo run --release --example sweep_figures

use stcmac::analytics::{sweep, SweepCurve, SweepParam};
use stcmac::geometry::Coverage;
use stcmac::{ScenarioConfig, WeightingMode};

fn scenario(tf: f64, beta: f64, alpha: f64) -> stcmac::Result<ScenarioConfig> {
    ScenarioConfig::new(tf, beta, 1500.0, Coverage::from_alpha(1500.0, alpha)?, 0.1, 10)
}

fn print(title: &str, curve: &SweepCurve) {
    println!("# {title} (peak T at {} = {})", curve.param.name(), curve.points[curve.argmax_throughput].value);
    println!("{},P_s,T", curve.param.name());
    for p in &curve.points {
        println!("{},{:.6},{:.6}", p.value, p.success_prob, p.throughput);
    }
    println!();
}

fn main() -> stcmac::Result<()> {
    let mode = WeightingMode::LinkPdf;
    let tfs: Vec<f64> = (1..=40).map(|i| i as f64 * 0.05).collect();
    for (beta, alpha) in [(0.6, 1.0), (0.6, 1.5), (1.5, 1.5)] {
        let c = sweep(&scenario(0.9, beta, alpha)?, SweepParam::PacketDuration, &tfs, mode)?;
        print(&format!("packet duration, beta = {beta}, alpha = {alpha}"), &c);
    }

    let betas: Vec<f64> = (0..=30).map(|i| i as f64 * 0.05).collect();
    let c = sweep(&scenario(0.9, 0.0, 1.0)?, SweepParam::Beta, &betas, mode)?;
    print("guard coefficient, t_f = 0.9 s", &c);

    let ns: Vec<f64> = (1..=20).map(f64::from).collect();
    for beta in [0.6, 0.9, 1.2] {
        print(&format!("nodes, beta = {beta}"), &sweep(&scenario(0.9, beta, 1.0)?, SweepParam::Nodes, &ns, mode)?);
    }

    let lambdas: Vec<f64> = (1..=40).map(|i| i as f64 * 0.005).collect();
    print("arrival rate, beta = 0.6", &sweep(&scenario(0.9, 0.6, 1.0)?, SweepParam::ArrivalRate, &lambdas, mode)?);
    Ok(())
}
