//! Sampling upper estimate of the mixed-state concurrence.
//!
//! Every ensemble decomposition of `ρ = B B^†` with `B = [sqrt(λ_k) e_k]` is of
//! the form `A = B V^†` for an isometry `V` (`V^† V = I`). Drawing `V` Haar at
//! random for ensemble sizes `rank..=rank + 2` and keeping the smallest
//! average pure-state concurrence gives an upper estimate of the convex roof.

use num_complex::Complex64;
use rand::Rng;

use crate::density::{DensityMatrix, PartitionContext, SubsetMask};
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, ZERO};
use crate::states::{haar_isometry, seeded_rng};

/// Eigenvalues at or below this are dropped from the spectral factor.
const RANK_CUTOFF: f64 = 1e-12;

/// A decomposition `ρ = Σ_i p_i |ψ_i><ψ_i|` with normalized kets.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleDecomposition {
    ctx: PartitionContext,
    weights: Vec<f64>,
    kets: Vec<Vec<Complex64>>,
}

impl EnsembleDecomposition {
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn kets(&self) -> &[Vec<Complex64>] {
        &self.kets
    }

    pub fn members(&self) -> Vec<DensityMatrix> {
        self.kets
            .iter()
            .map(|k| DensityMatrix::from_ket(k, self.ctx).expect("normalized member"))
            .collect()
    }

    /// `Σ_i p_i |ψ_i><ψ_i|`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let dim = self.ctx.dim();
        let mut acc = ComplexMatrix::zeros(dim, dim);
        for (p, k) in self.weights.iter().zip(&self.kets) {
            acc = acc.add(&ComplexMatrix::outer(k).scale_real(*p)).expect("same shape");
        }
        acc
    }

    /// `Σ_i p_i C_N(ψ_i)`.
    pub fn average_concurrence(&self) -> f64 {
        self.weights
            .iter()
            .zip(&self.kets)
            .map(|(p, k)| p * ket_concurrence(k, self.ctx))
            .sum()
    }
}

/// `[sqrt(λ_k) e_k]` over eigenvalues above the rank cutoff.
pub fn spectral_factor(rho: &DensityMatrix) -> Result<ComplexMatrix> {
    let (values, vectors) = rho.matrix().hermitian_eigen()?;
    let keep: Vec<usize> = (0..values.len()).filter(|&k| values[k] > RANK_CUTOFF).collect();
    if keep.is_empty() {
        return Err(Error::Numerical("state has no eigenvalue above the rank cutoff".into()));
    }
    let dim = rho.ctx().dim();
    Ok(ComplexMatrix::from_fn(dim, keep.len(), |i, j| {
        vectors[(i, keep[j])] * values[keep[j]].sqrt()
    }))
}

/// The decomposition induced by the isometry `v` (`v^† v = I`), i.e. the
/// columns of `factor · v^†`.
pub fn decomposition_from_isometry(
    ctx: PartitionContext,
    factor: &ComplexMatrix,
    v: &ComplexMatrix,
) -> Result<EnsembleDecomposition> {
    let a = factor.matmul(&v.dagger())?;
    let mut weights = Vec::with_capacity(a.cols());
    let mut kets = Vec::with_capacity(a.cols());
    for j in 0..a.cols() {
        let col = a.column(j);
        let p: f64 = col.iter().map(Complex64::norm_sqr).sum();
        if p <= 0.0 {
            continue;
        }
        let norm = p.sqrt();
        weights.push(p);
        kets.push(col.into_iter().map(|z| z / norm).collect());
    }
    Ok(EnsembleDecomposition { ctx, weights, kets })
}

/// Haar-random decomposition with `rank + extra` members.
pub fn random_decomposition<R: Rng + ?Sized>(
    ctx: PartitionContext,
    factor: &ComplexMatrix,
    extra: usize,
    rng: &mut R,
) -> Result<EnsembleDecomposition> {
    let rank = factor.cols();
    let v = haar_isometry(rank + extra, rank, rng);
    decomposition_from_isometry(ctx, factor, &v)
}

/// Minimum over `n_samples` random decompositions of the average pure-state
/// concurrence. Deterministic in `(rho, n_samples, seed)`; for a fixed seed
/// the value is nonincreasing in `n_samples`.
pub fn convex_roof_upper_estimate(rho: &DensityMatrix, n_samples: usize, seed: u64) -> Result<f64> {
    if n_samples == 0 {
        return Err(Error::InvalidParameter("n_samples must be positive".into()));
    }
    let ctx = rho.ctx();
    let factor = spectral_factor(rho)?;
    let mut rng = seeded_rng(seed);
    let mut best = f64::INFINITY;
    for _ in 0..n_samples {
        let extra = rng.random_range(0..=2usize);
        let dec = random_decomposition(ctx, &factor, extra, &mut rng)?;
        best = best.min(dec.average_concurrence());
    }
    Ok(best)
}

/// Pure-state concurrence `2^(1-N/2) sqrt((2^N - 2) - Σ_α Tr ρ_α²)` of a
/// normalized ket, with each reduced purity computed as `‖M M^†‖²` for the
/// ket reshaped across the cut.
pub fn ket_concurrence(ket: &[Complex64], ctx: PartitionContext) -> f64 {
    let n = ctx.n_parties();
    let d = ctx.local_dim();
    let sum: f64 = SubsetMask::all_proper(n)
        .map(|s| {
            let kept = d.pow(s.len() as u32);
            let traced = ctx.dim() / kept;
            let mut m = vec![ZERO; ctx.dim()];
            for (i, amp) in ket.iter().enumerate() {
                let (mut k, mut t) = (0usize, 0usize);
                for p in 1..=n {
                    let digit = ctx.digit(i, p);
                    if s.contains(p) {
                        k = k * d + digit;
                    } else {
                        t = t * d + digit;
                    }
                }
                m[k * traced + t] = *amp;
            }
            let mut p = 0.0;
            for a in 0..kept {
                for b in 0..kept {
                    let z: Complex64 = (0..traced).map(|t| m[a * traced + t] * m[b * traced + t].conj()).sum();
                    p += z.norm_sqr();
                }
            }
            p
        })
        .sum();
    let r = (2f64.powi(n as i32) - 2.0) - sum;
    2f64.powf(1.0 - n as f64 / 2.0) * r.max(0.0).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::pure_concurrence_purity;
    use crate::density::validate_density;
    use crate::states::{ghz, haar_random_ket, haar_random_pure, random_mixed};

    fn ctx(n: usize, d: usize) -> PartitionContext {
        PartitionContext::new(n, d).unwrap()
    }

    #[test]
    fn ket_concurrence_matches_density_form() {
        for (n, d) in [(2, 2), (3, 2), (2, 3), (4, 2)] {
            let c = ctx(n, d);
            for seed in 0..5 {
                let k = haar_random_ket(c, seed);
                let rho = DensityMatrix::from_ket(&k, c).unwrap();
                assert!((ket_concurrence(&k, c) - pure_concurrence_purity(&rho).unwrap()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn pure_state_estimate_is_exact() {
        let g = ghz(ctx(3, 2));
        let est = convex_roof_upper_estimate(&g, 10, 4).unwrap();
        assert!((est - 1.5f64.sqrt()).abs() < 1e-10);
        let psi = haar_random_pure(ctx(3, 2), 11);
        let est = convex_roof_upper_estimate(&psi, 5, 1).unwrap();
        assert!((est - pure_concurrence_purity(&psi).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn decompositions_reconstruct_state() {
        let rho = random_mixed(ctx(3, 2), 4, 2).unwrap();
        let factor = spectral_factor(&rho).unwrap();
        assert_eq!(factor.cols(), 4);
        let mut rng = seeded_rng(3);
        for extra in 0..=2 {
            let dec = random_decomposition(rho.ctx(), &factor, extra, &mut rng).unwrap();
            assert!((dec.weights().iter().sum::<f64>() - 1.0).abs() < 1e-12);
            assert!(dec.reconstruct().max_abs_diff(rho.matrix()) < 1e-9);
            assert_eq!(dec.members().len(), 4 + extra);
        }
    }

    #[test]
    fn estimate_is_monotone_in_samples() {
        let c = ctx(3, 2);
        let mut diag = [0.0; 8];
        diag[0] = 0.5;
        diag[7] = 0.5;
        let sep = validate_density(ComplexMatrix::from_real_diagonal(&diag), c).unwrap();
        let mut prev = f64::INFINITY;
        for n in 1..=20 {
            let est = convex_roof_upper_estimate(&sep, n, 99).unwrap();
            assert!(est >= 0.0);
            assert!(est <= prev);
            prev = est;
        }
    }

    #[test]
    fn estimate_is_deterministic() {
        let rho = random_mixed(ctx(3, 2), 3, 8).unwrap();
        assert_eq!(
            convex_roof_upper_estimate(&rho, 30, 5).unwrap(),
            convex_roof_upper_estimate(&rho, 30, 5).unwrap()
        );
        assert!(convex_roof_upper_estimate(&rho, 0, 5).is_err());
    }
}
