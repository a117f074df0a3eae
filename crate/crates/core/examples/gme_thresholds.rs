//! GME certification thresholds and bound coefficients for several (N, d).

use multiconc::bounds::{bound_coefficients, gme_threshold};
use multiconc::density::PartitionContext;

fn main() -> multiconc::Result<()> {
    for n in 3..=6 {
        for d in 2..=4 {
            let ctx = PartitionContext::with_limit(n, d, usize::MAX >> 1)?;
            let coeffs = bound_coefficients(ctx)?;
            let levels: Vec<String> = (2..=n).map(|l| format!("{:.4}", coeffs.level(l))).collect();
            println!(
                "N={n} d={d}  threshold {:.6}  C {:.4}  C_l [{}]",
                gme_threshold(ctx)?,
                coeffs.constant_c,
                levels.join(", ")
            );
        }
    }
    Ok(())
}
