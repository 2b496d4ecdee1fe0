//! Interference, collision-free and deep-interference regions of one sender.
//!
//!     cargo run --example regions -- [distance] [t_f] [beta] [alpha]
//!
//! Normalized units (`v = 1`, `R = 1`). Defaults reproduce the second
//! validation scenario with the sender at `d = 0.5`.

use stcmac::stmodel::{region_report, segments};
use stcmac::ScenarioConfig;

fn arg(i: usize, default: f64) -> f64 {
    std::env::args().nth(i).map_or(default, |s| s.parse().expect("numeric argument"))
}

fn main() -> stcmac::Result<()> {
    let (d, tf, beta, alpha) = (arg(1, 0.5), arg(2, 0.7), arg(3, 0.4), arg(4, 1.0));
    let cfg = ScenarioConfig::normalized(tf, beta, alpha)?;
    println!("t_slot = {:.3}, M = {}, collision-free case: {}", cfg.slot_length(), cfg.max_interference_slots(), cfg.has_collision_free_regions());

    let seg = segments(&cfg);
    println!("\nsegments:");
    for s in &seg.segments {
        println!("  D{} = [{:.3}, {:.3}]  C = {:?}", s.index, s.interval.lo, s.interval.hi, s.slots);
    }

    let report = region_report(&cfg, d)?;
    println!("\nsender at d = {d}:");
    for ir in &report.irs {
        match ir.interval {
            Some(iv) => println!("  IR[{:+}] = [{:.3}, {:.3}]  {:?}, area {:.4}", ir.offset, iv.lo, iv.hi, ir.shape, ir.area),
            None => println!("  IR[{:+}] empty", ir.offset),
        }
    }
    for (dir, iv) in report.dirs.iter().filter_map(|x| x.interval.map(|iv| (x, iv))) {
        println!("  DIR[{:+},{:+}] = [{:.3}, {:.3}], area {:.4}", dir.offset, dir.offset + 1, iv.lo, iv.hi, dir.area);
    }
    let cfr: Vec<String> = report.cfr.iter().map(|iv| format!("[{:.3}, {:.3}]", iv.lo, iv.hi)).collect();
    println!("  CFR = {} (area {:.4})", if cfr.is_empty() { "empty".into() } else { cfr.join(" u ") }, report.cfr_area);
    Ok(())
}
