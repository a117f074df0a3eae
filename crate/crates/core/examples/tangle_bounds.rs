//! Lower and upper tangle bounds on pure and mixed states.

use multiconc::bounds::{analyze, AnalysisOptions};
use multiconc::density::PartitionContext;
use multiconc::states::{haar_random_pure, random_mixed};

fn main() -> multiconc::Result<()> {
    let ctx = PartitionContext::new(3, 2)?;
    let opts = AnalysisOptions::default();
    println!("{:<10} {:>4}  {:>10}  {:>10}", "state", "rank", "lower", "upper");
    for seed in 0..3 {
        let r = analyze(&haar_random_pure(ctx, seed), &opts)?;
        println!(
            "{:<10} {:>4}  {:>10.6}  {:>10.6}",
            format!("pure #{seed}"),
            1,
            r.tangle_lower,
            r.tangle_upper
        );
    }
    for rank in 2..=5 {
        let r = analyze(&random_mixed(ctx, rank, 100 + rank as u64)?, &opts)?;
        println!(
            "{:<10} {:>4}  {:>10.6}  {:>10.6}  (raw lower {:.6})",
            "mixed", rank, r.tangle_lower, r.tangle_upper, r.tangle_lower_raw
        );
    }
    Ok(())
}
