//! Correlation tensors of a W state and reconstruction from them.

use multiconc::density::{DensityMatrix, PartitionContext};
use multiconc::generators::su_generators;
use multiconc::states::w_ket;
use multiconc::tensors::{all_tensors, purity_from_tensors, reconstruct};

fn main() -> multiconc::Result<()> {
    let ctx = PartitionContext::new(3, 2)?;
    let rho = DensityMatrix::from_ket(&w_ket(ctx), ctx)?;
    let basis = su_generators(2)?;
    println!(
        "su(2) basis: {} generators, Gram deviation {:.1e}",
        basis.len(),
        basis.gram_deviation()
    );

    let ts = all_tensors(&rho, &basis)?;
    for t in ts.sectors() {
        println!(
            "sector {:<9} shape {:?}  |T|^2 = {:.6}",
            t.subset().to_string(),
            t.shape(),
            t.norm_sq()
        );
    }
    println!("level sums: {:?}", ts.level_norm_sums());
    println!("purity from tensors: {:.12}", purity_from_tensors(&ts));
    let back = reconstruct(&ts, &basis)?;
    println!("reconstruction error: {:.2e}", back.max_abs_diff(rho.matrix()));
    Ok(())
}
