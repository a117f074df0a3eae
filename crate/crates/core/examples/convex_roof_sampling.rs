//! Sampling upper estimates of the convex roof against the lower bound.

use multiconc::bounds::{analyze, AnalysisOptions};
use multiconc::roof::{convex_roof_upper_estimate, random_decomposition, spectral_factor};
use multiconc::states::{ghz3_with_noise, seeded_rng};

fn main() -> multiconc::Result<()> {
    let rho = ghz3_with_noise(0.1)?;
    let lower = analyze(&rho, &AnalysisOptions::default())?.concurrence_lower;
    println!("lower bound: {lower:.6}");
    for n in [1, 10, 100, 1000] {
        println!(
            "{n:>5} samples: estimate {:.6}",
            convex_roof_upper_estimate(&rho, n, 7)?
        );
    }

    let mut rng = seeded_rng(1);
    let dec = random_decomposition(rho.ctx(), &spectral_factor(&rho)?, 2, &mut rng)?;
    println!(
        "one decomposition: {} members, average concurrence {:.6}, reconstruction error {:.1e}",
        dec.weights().len(),
        dec.average_concurrence(),
        dec.reconstruct().max_abs_diff(rho.matrix())
    );
    Ok(())
}
