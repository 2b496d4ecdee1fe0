//! Closed-form per-segment tables for the two validation scenarios.
//!
//!     cargo run --example analyze_tables
//!
//! Both use `beta = 0.4`, `lambda = 0.5`, two nodes, normalized units; the
//! first has `t_f = 0.1` (collision-free gaps), the second `t_f = 0.7`
//! (deep interference).

use stcmac::{analyze, AnalyticResult, ScenarioConfig, WeightingMode};

fn print_table(title: &str, r: &AnalyticResult) {
    println!("{title}: M = {}, K = {}, p_t = {:.4}", r.max_slots, r.segments.len(), r.transmit_prob);
    let row = |name: String, f: &dyn Fn(usize) -> Option<f64>| {
        let cells: Vec<String> = (0..r.segments.len())
            .map(|i| f(i).map_or("      -".into(), |v| format!("{v:7.4}")))
            .collect();
        println!("  {name:<12}{}", cells.join(" "));
    };
    row("D_k".into(), &|i| Some(r.segments[i].d_hi));
    row("P_k".into(), &|i| Some(r.segments[i].p_k));
    for dm in -r.max_slots..=r.max_slots {
        row(format!("p_z[{dm:+}]"), &|i| r.segments[i].p_z.get(&dm).copied());
    }
    for dm in -r.max_slots..r.max_slots {
        if r.segments.iter().any(|s| s.p_o.get(&dm).is_some_and(|&p| p > 0.0)) {
            row(format!("p_o[{dm:+},{:+}]", dm + 1), &|i| r.segments[i].p_o.get(&dm).copied());
        }
    }
    row("P_s,k".into(), &|i| Some(r.segments[i].p_s));
    println!("  P_s = {:.4}, T = {:.4}\n", r.success_prob, r.throughput);
}

fn main() -> stcmac::Result<()> {
    for (title, tf) in [("collision-free case", 0.1), ("deep-interference case", 0.7)] {
        let cfg = ScenarioConfig::normalized(tf, 0.4, 1.0)?.with_arrival_rate(0.5).with_nodes(2);
        print_table(title, &analyze(&cfg, WeightingMode::LinkPdf)?);
    }
    Ok(())
}
