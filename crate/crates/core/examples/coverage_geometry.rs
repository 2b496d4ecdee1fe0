//! Coverage areas and distance densities for the disk and the ellipse.
//!
//!     cargo run --example coverage_geometry

use stcmac::geometry::Coverage;

fn main() -> stcmac::Result<()> {
    for cov in [Coverage::disk(1.0)?, Coverage::ellipse(1.0, 1.5)?] {
        println!("{:?}: area {:.4}, max range {}", cov.shape(), cov.area(), cov.max_range());
        println!("  {:>5} {:>10} {:>10} {:>10}", "r", "area<=r", "radial pdf", "link pdf");
        for i in 0..=6 {
            let r = cov.max_range() * i as f64 / 6.0;
            println!(
                "  {r:>5.2} {:>10.4} {:>10.4} {:>10.4}",
                cov.covered_area_within_radius(r)?,
                cov.radial_pdf(r)?,
                cov.link_pdf(r)
            );
        }
    }
    Ok(())
}
