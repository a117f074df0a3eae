//! Pure-state concurrence from reduced purities and from tensor norms.

use multiconc::bounds::{
    bound_coefficients, pure_concurrence_paired, pure_concurrence_purity, pure_concurrence_tensor,
};
use multiconc::density::{DensityMatrix, PartitionContext};
use multiconc::generators::su_generators;
use multiconc::states::{ghz, haar_random_pure, w_ket};
use multiconc::tensors::all_tensors;

fn report(label: &str, psi: &DensityMatrix) -> multiconc::Result<()> {
    let ctx = psi.ctx();
    let ts = all_tensors(psi, &su_generators(ctx.local_dim())?)?;
    let by_purity = pure_concurrence_purity(psi)?;
    let by_tensor = pure_concurrence_tensor(&ts, &bound_coefficients(ctx)?)?;
    let paired = pure_concurrence_paired(psi)?;
    println!("{label:<22} purities {by_purity:.10}  tensors {by_tensor:.10}  paired {paired:.10}");
    Ok(())
}

fn main() -> multiconc::Result<()> {
    let c3 = PartitionContext::new(3, 2)?;
    report("GHZ, 3 qubits", &ghz(c3))?;
    report("W, 3 qubits", &DensityMatrix::from_ket(&w_ket(c3), c3)?)?;
    report("GHZ, 3 qutrits", &ghz(PartitionContext::new(3, 3)?))?;
    for seed in 0..3 {
        report(
            &format!("Haar 4 qubits #{seed}"),
            &haar_random_pure(PartitionContext::new(4, 2)?, seed),
        )?;
    }
    Ok(())
}
