//! Concurrence and tangle bounds from correlation-tensor norms.
//!
//! With `L_l = Σ_{|S|=l} ‖T^S‖²`, the pure-state concurrence satisfies
//!
//! ```text
//! 2^(N-2) C_N² = -C + Σ_{l=2}^{N} C_l L_l
//! C   = -2^N + (d+1)^N / d^N + (d^N - 1)(d+1)^(N-1) / d^N
//! C_l = 2^l / d^(N+l) [(d+1)^(N-1) - (d+1)^(N-l)]
//! ```
//!
//! Evaluated on a mixed state, the same combination gives the headline lower
//! bound on concurrence, and `2^(2-N)` times the radicand gives the tangle
//! lower bound. The tangle upper bound comes from reduced-state purities
//! computed by direct partial traces, independently of the tensors.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::density::{partial_trace, purity, DensityMatrix, PartitionContext, SubsetMask};
use crate::error::{Error, Result};
use crate::generators::su_generators;
use crate::tensors::{all_tensors_with, CorrelationTensorSet, SectorExport};
use crate::tolerances::Tolerances;

/// Format version of [`BoundsReport`] JSON.
pub const SCHEMA_VERSION: u32 = 1;

/// Largest party count for which binomial coefficients are evaluated.
pub const MAX_BINOMIAL_PARTIES: usize = 20;

/// The constant `C` and per-level weights `C_l` for a given `(N, d)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCoefficients {
    #[serde(skip)]
    ctx: PartitionContext,
    pub constant_c: f64,
    pub per_level: BTreeMap<usize, f64>,
}

impl BoundCoefficients {
    pub fn ctx(&self) -> PartitionContext {
        self.ctx
    }

    /// `C_l`, zero outside `2..=N`.
    pub fn level(&self, l: usize) -> f64 {
        self.per_level.get(&l).copied().unwrap_or(0.0)
    }

    /// `Σ_l C_l L_l` for the given tensor set.
    pub fn weighted_norms(&self, ts: &CorrelationTensorSet) -> f64 {
        ts.level_norm_sums()
            .iter()
            .enumerate()
            .map(|(l, sum)| self.level(l) * sum)
            .sum()
    }

    /// `Σ_l C_l L_l - C`, which equals `2^(N-2) C_N²` on pure states.
    pub fn radicand(&self, ts: &CorrelationTensorSet) -> f64 {
        self.weighted_norms(ts) - self.constant_c
    }

    fn check(&self, ts: &CorrelationTensorSet) -> Result<()> {
        if ts.ctx().n_parties() != self.ctx.n_parties() || ts.ctx().local_dim() != self.ctx.local_dim() {
            return Err(Error::InvalidParameter(
                "tensor set and coefficients belong to different partitions".into(),
            ));
        }
        Ok(())
    }
}

pub fn bound_coefficients(ctx: PartitionContext) -> Result<BoundCoefficients> {
    let n = ctx.n_parties() as i32;
    if n < 2 {
        return Err(Error::InvalidContext("bounds need at least two parties".into()));
    }
    let d = ctx.local_dim() as f64;
    let dn = d.powi(n);
    let constant_c = -(2f64.powi(n)) + (d + 1.0).powi(n) / dn + (dn - 1.0) * (d + 1.0).powi(n - 1) / dn;
    let per_level = (2..=n)
        .map(|l| {
            let c = 2f64.powi(l) / d.powi(n + l) * ((d + 1.0).powi(n - 1) - (d + 1.0).powi(n - l));
            (l as usize, c)
        })
        .collect();
    Ok(BoundCoefficients {
        ctx,
        constant_c,
        per_level,
    })
}

fn prefactor(n: usize) -> f64 {
    2f64.powf(1.0 - n as f64 / 2.0)
}

fn require_pure(psi: &DensityMatrix, tol: &Tolerances) -> Result<()> {
    let p = purity(psi);
    if (p - 1.0).abs() > tol.purity {
        return Err(Error::NotPure { purity: p });
    }
    Ok(())
}

fn flush_zero(r: f64, tol: &Tolerances) -> f64 {
    if r.abs() <= tol.radicand_clamp {
        0.0
    } else {
        r
    }
}

fn clamp_radicand(r: f64, tol: &Tolerances) -> Result<f64> {
    if r < -tol.radicand_reject {
        return Err(Error::NegativeRadicand { radicand: r });
    }
    Ok(r.max(0.0))
}

/// `Σ_α Tr ρ_α²` over all `2^N - 2` proper nonempty reductions, by partial trace.
pub fn sum_reduced_purities(rho: &DensityMatrix) -> f64 {
    SubsetMask::all_proper(rho.ctx().n_parties())
        .map(|s| purity(&partial_trace(rho, s).expect("proper subset")))
        .sum()
}

/// Pure-state concurrence from reduced purities,
/// `2^(1-N/2) sqrt((2^N - 2) - Σ_α Tr ρ_α²)`.
pub fn pure_concurrence_purity(psi: &DensityMatrix) -> Result<f64> {
    pure_concurrence_purity_with(psi, &Tolerances::default())
}

pub fn pure_concurrence_purity_with(psi: &DensityMatrix, tol: &Tolerances) -> Result<f64> {
    require_pure(psi, tol)?;
    let n = psi.ctx().n_parties();
    let r = (2f64.powi(n as i32) - 2.0) - sum_reduced_purities(psi);
    Ok(prefactor(n) * clamp_radicand(r, tol)?.sqrt())
}

/// Same quantity using one representative of each complementary pair
/// (the subsets that exclude party `N`), doubled.
pub fn pure_concurrence_paired(psi: &DensityMatrix) -> Result<f64> {
    let tol = Tolerances::default();
    require_pure(psi, &tol)?;
    let n = psi.ctx().n_parties();
    let half: f64 = (1..(1u64 << (n - 1)))
        .map(|bits| {
            let s = SubsetMask::new(bits, n).expect("nonempty mask below 2^(N-1)");
            purity(&partial_trace(psi, s).expect("proper subset"))
        })
        .sum();
    let r = (2f64.powi(n as i32) - 2.0) - 2.0 * half;
    Ok(prefactor(n) * clamp_radicand(r, &tol)?.sqrt())
}

/// Pure-state concurrence from tensor norms, `2^(1-N/2) sqrt(Σ C_l L_l - C)`.
pub fn pure_concurrence_tensor(ts: &CorrelationTensorSet, coeffs: &BoundCoefficients) -> Result<f64> {
    pure_concurrence_tensor_with(ts, coeffs, &Tolerances::default())
}

pub fn pure_concurrence_tensor_with(
    ts: &CorrelationTensorSet,
    coeffs: &BoundCoefficients,
    tol: &Tolerances,
) -> Result<f64> {
    coeffs.check(ts)?;
    let r = coeffs.radicand(ts);
    Ok(prefactor(ts.ctx().n_parties()) * clamp_radicand(r, tol)?.sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LowerBound {
    pub clamped: f64,
    pub raw: f64,
}

/// Lower bound on the mixed-state concurrence:
/// `raw = 2^(1-N/2) sgn(R) sqrt(|R|)` with `R = Σ C_l L_l - C`.
///
/// Exact on pure states; negative values carry no information and are
/// clamped to zero in `clamped`.
pub fn concurrence_lower_bound(ts: &CorrelationTensorSet, coeffs: &BoundCoefficients) -> Result<LowerBound> {
    concurrence_lower_bound_with(ts, coeffs, &Tolerances::default())
}

/// As [`concurrence_lower_bound`]; radicands within `radicand_clamp` of zero
/// are treated as exactly zero so separable pure states do not report noise.
pub fn concurrence_lower_bound_with(
    ts: &CorrelationTensorSet,
    coeffs: &BoundCoefficients,
    tol: &Tolerances,
) -> Result<LowerBound> {
    coeffs.check(ts)?;
    let r = flush_zero(coeffs.radicand(ts), tol);
    let raw = prefactor(ts.ctx().n_parties()) * r.signum() * r.abs().sqrt();
    Ok(LowerBound {
        clamped: raw.max(0.0),
        raw,
    })
}

/// The weaker split form `2^(1-N/2) [sqrt(Σ C_l L_l) - sqrt(C)]`, which follows
/// from `sqrt(a - b) >= sqrt(a) - sqrt(b)` applied term by term.
pub fn concurrence_lower_bound_split(ts: &CorrelationTensorSet, coeffs: &BoundCoefficients) -> Result<f64> {
    coeffs.check(ts)?;
    let n = ts.ctx().n_parties();
    Ok(prefactor(n) * (coeffs.weighted_norms(ts).sqrt() - coeffs.constant_c.max(0.0).sqrt()))
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Concurrence value above which a state is genuinely multipartite entangled.
pub fn gme_threshold(ctx: PartitionContext) -> Result<f64> {
    let n = ctx.n_parties();
    if n < 3 {
        return Err(Error::InvalidContext(
            "genuine multipartite entanglement needs at least three parties".into(),
        ));
    }
    if n > MAX_BINOMIAL_PARTIES {
        return Err(Error::InvalidContext(format!(
            "{n} parties exceed the binomial guard of {MAX_BINOMIAL_PARTIES}"
        )));
    }
    let d = ctx.local_dim() as f64;
    let mut r = 2f64.powi(n as i32) - 4.0 + 2.0 / d;
    let upper = if n % 2 == 1 { (n - 1) / 2 } else { n / 2 - 1 };
    for k in 1..=upper {
        r -= 2.0 * binomial(n, k) as f64 / d.powi(k as i32);
    }
    if n.is_multiple_of(2) {
        r -= binomial(n, n / 2) as f64 / d.powi((n / 2) as i32);
    }
    Ok(prefactor(n) * r.max(0.0).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TangleBounds {
    pub lower_raw: f64,
    pub lower: f64,
    pub upper: f64,
}

/// Lower bound `2^(2-N)(Σ C_l L_l - C)` and upper bound
/// `2^(2-N)(2^N - 2 - Σ_α Tr ρ_α²)` on the tangle.
pub fn tangle_bounds(
    ts: &CorrelationTensorSet,
    coeffs: &BoundCoefficients,
    reduced_purity_sum: f64,
) -> Result<TangleBounds> {
    tangle_bounds_with(ts, coeffs, reduced_purity_sum, &Tolerances::default())
}

pub fn tangle_bounds_with(
    ts: &CorrelationTensorSet,
    coeffs: &BoundCoefficients,
    reduced_purity_sum: f64,
    tol: &Tolerances,
) -> Result<TangleBounds> {
    coeffs.check(ts)?;
    let n = ts.ctx().n_parties() as i32;
    let scale = 2f64.powi(2 - n);
    let lower_raw = scale * flush_zero(coeffs.radicand(ts), tol);
    Ok(TangleBounds {
        lower_raw,
        lower: lower_raw.max(0.0),
        upper: scale * (2f64.powi(n) - 2.0 - reduced_purity_sum),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Inconclusive,
    Entangled,
    GenuineMultipartiteEntangled,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Inconclusive => "inconclusive",
            Verdict::Entangled => "entangled",
            Verdict::GenuineMultipartiteEntangled => "genuine-multipartite-entangled",
        }
    }
}

/// GME when the clamped bound strictly exceeds the threshold, entangled when
/// it is strictly positive, inconclusive otherwise. `gme_threshold` is `None`
/// for two parties.
pub fn detect(concurrence_lower: f64, gme_threshold: Option<f64>) -> Verdict {
    match gme_threshold {
        Some(t) if concurrence_lower > t => Verdict::GenuineMultipartiteEntangled,
        _ if concurrence_lower > 0.0 => Verdict::Entangled,
        _ => Verdict::Inconclusive,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClampFlags {
    pub concurrence_lower: bool,
    pub tangle_lower: bool,
}

/// Sampling estimate attached to a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoofEstimate {
    pub value: f64,
    pub samples: usize,
    pub seed: u64,
    pub rng: String,
}

/// Every quantity computed for one state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub schema_version: u32,
    pub n_parties: usize,
    pub local_dim: usize,
    pub concurrence_lower: f64,
    pub concurrence_lower_raw: f64,
    pub concurrence_lower_split_raw: f64,
    pub gme_threshold: Option<f64>,
    pub tangle_lower: f64,
    pub tangle_lower_raw: f64,
    pub tangle_upper: f64,
    pub verdict: Verdict,
    pub sum_reduced_purities: f64,
    pub purity: f64,
    pub coefficients: BoundCoefficients,
    pub level_norm_sums: Vec<f64>,
    pub clamped: ClampFlags,
    pub tolerances: Tolerances,
    pub concurrence_upper_estimate: Option<RoofEstimate>,
    pub tensors: Option<Vec<SectorExport>>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnalysisOptions {
    /// Decompositions sampled for the convex-roof estimate; 0 skips it.
    pub samples_for_roof: usize,
    pub seed: u64,
    pub emit_tensors: bool,
    pub tolerances: Tolerances,
}

/// Computes the full [`BoundsReport`] for `rho`.
pub fn analyze(rho: &DensityMatrix, opts: &AnalysisOptions) -> Result<BoundsReport> {
    opts.tolerances.validate()?;
    let ctx = rho.ctx();
    let basis = su_generators(ctx.local_dim())?;
    let ts = all_tensors_with(rho, &basis, &opts.tolerances)?;
    let coeffs = bound_coefficients(ctx)?;
    let lower = concurrence_lower_bound_with(&ts, &coeffs, &opts.tolerances)?;
    let split = concurrence_lower_bound_split(&ts, &coeffs)?;
    let threshold = if ctx.n_parties() >= 3 {
        Some(gme_threshold(ctx)?)
    } else {
        None
    };
    let reduced = sum_reduced_purities(rho);
    let tangle = tangle_bounds_with(&ts, &coeffs, reduced, &opts.tolerances)?;
    let roof = if opts.samples_for_roof > 0 {
        let value = crate::roof::convex_roof_upper_estimate(rho, opts.samples_for_roof, opts.seed)?;
        Some(RoofEstimate {
            value,
            samples: opts.samples_for_roof,
            seed: opts.seed,
            rng: crate::states::RNG_ALGORITHM.to_string(),
        })
    } else {
        None
    };
    Ok(BoundsReport {
        schema_version: SCHEMA_VERSION,
        n_parties: ctx.n_parties(),
        local_dim: ctx.local_dim(),
        concurrence_lower: lower.clamped,
        concurrence_lower_raw: lower.raw,
        concurrence_lower_split_raw: split,
        gme_threshold: threshold,
        tangle_lower: tangle.lower,
        tangle_lower_raw: tangle.lower_raw,
        tangle_upper: tangle.upper,
        verdict: detect(lower.clamped, threshold),
        sum_reduced_purities: reduced,
        purity: purity(rho),
        level_norm_sums: ts.level_norm_sums(),
        coefficients: coeffs,
        clamped: ClampFlags {
            concurrence_lower: lower.raw < 0.0,
            tangle_lower: tangle.lower_raw < 0.0,
        },
        tolerances: opts.tolerances,
        concurrence_upper_estimate: roof,
        tensors: opts.emit_tensors.then(|| ts.export()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{ghz, ghz3_with_noise, haar_random_pure, w_ket};
    use crate::tensors::all_tensors;

    fn ctx(n: usize, d: usize) -> PartitionContext {
        PartitionContext::new(n, d).unwrap()
    }

    fn tensors(rho: &DensityMatrix) -> CorrelationTensorSet {
        all_tensors(rho, &su_generators(rho.ctx().local_dim()).unwrap()).unwrap()
    }

    #[test]
    fn three_qubit_coefficients() {
        let c = bound_coefficients(ctx(3, 2)).unwrap();
        assert!((c.constant_c - 3.25).abs() < 1e-14);
        assert!((c.level(2) - 0.75).abs() < 1e-14);
        assert!((c.level(3) - 1.0).abs() < 1e-14);
        assert_eq!(c.level(1), 0.0);
    }

    #[test]
    fn coefficients_nonnegative() {
        for n in 2..=6 {
            for d in 2..=5 {
                let Ok(c) = PartitionContext::with_limit(n, d, usize::MAX >> 1) else {
                    continue;
                };
                let coeffs = bound_coefficients(c).unwrap();
                assert!(coeffs.per_level.values().all(|&v| v >= 0.0), "N={n} d={d}");
            }
        }
        assert!(bound_coefficients(ctx(1, 2)).is_err());
    }

    #[test]
    fn bell_concurrence_is_one() {
        let bell = ghz(ctx(2, 2));
        assert!((pure_concurrence_purity(&bell).unwrap() - 1.0).abs() < 1e-14);
        let ts = tensors(&bell);
        let coeffs = bound_coefficients(ctx(2, 2)).unwrap();
        assert!((pure_concurrence_tensor(&ts, &coeffs).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ghz_concurrence_both_forms() {
        let g = ghz(ctx(3, 2));
        let expected = 1.5f64.sqrt();
        assert!((pure_concurrence_purity(&g).unwrap() - expected).abs() < 1e-14);
        assert!((pure_concurrence_paired(&g).unwrap() - expected).abs() < 1e-14);
        let ts = tensors(&g);
        let coeffs = bound_coefficients(ctx(3, 2)).unwrap();
        assert!((coeffs.radicand(&ts) - 3.0).abs() < 1e-12);
        assert!((pure_concurrence_tensor(&ts, &coeffs).unwrap() - expected).abs() < 1e-12);
        let lb = concurrence_lower_bound(&ts, &coeffs).unwrap();
        assert!((lb.raw - expected).abs() < 1e-12);
    }

    #[test]
    fn w_state_concurrence() {
        let c = ctx(3, 2);
        let w = DensityMatrix::from_ket(&w_ket(c), c).unwrap();
        let expected = (4.0f64 / 3.0).sqrt();
        assert!((pure_concurrence_purity(&w).unwrap() - expected).abs() < 1e-14);
        let ts = tensors(&w);
        let coeffs = bound_coefficients(c).unwrap();
        assert!((pure_concurrence_tensor(&ts, &coeffs).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn product_state_concurrence_is_zero() {
        let c = ctx(3, 3);
        let mut v = vec![num_complex::Complex64::new(0.0, 0.0); 27];
        v[5] = num_complex::Complex64::new(1.0, 0.0);
        let p = DensityMatrix::from_ket(&v, c).unwrap();
        assert!(pure_concurrence_purity(&p).unwrap() < 1e-12);
        let ts = tensors(&p);
        assert!(pure_concurrence_tensor(&ts, &bound_coefficients(c).unwrap()).unwrap() < 1e-6);
    }

    #[test]
    fn pure_forms_reject_mixed_input() {
        let mm = DensityMatrix::maximally_mixed(ctx(3, 2));
        assert!(matches!(pure_concurrence_purity(&mm), Err(Error::NotPure { .. })));
        let ts = tensors(&mm);
        assert!(matches!(
            pure_concurrence_tensor(&ts, &bound_coefficients(ctx(3, 2)).unwrap()),
            Err(Error::NegativeRadicand { .. })
        ));
    }

    #[test]
    fn maximally_mixed_bounds() {
        let c = ctx(3, 2);
        let mm = DensityMatrix::maximally_mixed(c);
        let ts = tensors(&mm);
        let coeffs = bound_coefficients(c).unwrap();
        let lb = concurrence_lower_bound(&ts, &coeffs).unwrap();
        assert!((lb.raw + 2f64.powf(-0.5) * 3.25f64.sqrt()).abs() < 1e-12);
        assert_eq!(lb.clamped, 0.0);
        let tb = tangle_bounds(&ts, &coeffs, sum_reduced_purities(&mm)).unwrap();
        assert!((tb.lower_raw + 0.5 * 3.25).abs() < 1e-12);
        assert_eq!(tb.lower, 0.0);
        // 2^-1 (6 - 3/2 - 3/4) with singles 1/2 and pairs 1/4.
        assert!((tb.upper - 0.5 * (6.0 - 1.5 - 0.75)).abs() < 1e-12);
    }

    #[test]
    fn ghz_noise_closed_form() {
        let coeffs = bound_coefficients(ctx(3, 2)).unwrap();
        for x in [0.0, 0.05, 0.1, 0.2, 0.25] {
            let ts = tensors(&ghz3_with_noise(x).unwrap());
            let lb = concurrence_lower_bound(&ts, &coeffs).unwrap();
            let closed = 0.5 * (6.0 - 25.0 * x + 12.5 * x * x).sqrt();
            assert!((lb.raw - closed).abs() < 1e-12, "x={x}");
        }
    }

    #[test]
    fn split_form_is_weaker() {
        let coeffs = bound_coefficients(ctx(3, 2)).unwrap();
        for x in [0.0, 0.1, 0.2, 0.3, 0.6] {
            let ts = tensors(&ghz3_with_noise(x).unwrap());
            let lb = concurrence_lower_bound(&ts, &coeffs).unwrap();
            let split = concurrence_lower_bound_split(&ts, &coeffs).unwrap();
            assert!(split.max(0.0) <= lb.clamped + 1e-12, "x={x}");
        }
    }

    #[test]
    fn gme_threshold_values() {
        assert!((gme_threshold(ctx(3, 2)).unwrap() - 1.0).abs() < 1e-12);
        for d in [2usize, 3, 4] {
            let expected = (2.0 - 2.0 / d as f64).sqrt();
            assert!((gme_threshold(ctx(3, d)).unwrap() - expected).abs() < 1e-12);
        }
        assert!((gme_threshold(ctx(4, 2)).unwrap() - 0.5 * 7.5f64.sqrt()).abs() < 1e-12);
        assert!(gme_threshold(ctx(2, 2)).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(20, 10), 184_756);
        assert_eq!(binomial(5, 0), 1);
    }

    #[test]
    fn tangle_exact_on_pure_ghz() {
        let g = ghz(ctx(3, 2));
        let ts = tensors(&g);
        let tb = tangle_bounds(&ts, &bound_coefficients(ctx(3, 2)).unwrap(), sum_reduced_purities(&g)).unwrap();
        assert!((tb.lower - 1.5).abs() < 1e-12);
        assert!((tb.upper - 1.5).abs() < 1e-12);
    }

    #[test]
    fn tangle_noisy_ghz_direct_evaluation() {
        let x = 0.1;
        let rho = ghz3_with_noise(x).unwrap();
        let ts = tensors(&rho);
        let tb = tangle_bounds(&ts, &bound_coefficients(ctx(3, 2)).unwrap(), sum_reduced_purities(&rho)).unwrap();
        // Pair sectors scale by (1-x)^2, the full sector by (1-x)^2 as well.
        let expected = 0.5 * (0.75 * 3.0 * (1.0 - x) * (1.0 - x) + 4.0 * (1.0 - x) * (1.0 - x) - 3.25);
        assert!((tb.lower_raw - expected).abs() < 1e-12);
        assert!(tb.lower <= tb.upper + 1e-12);
    }

    #[test]
    fn detect_rules() {
        assert_eq!(detect(1.1, Some(1.0)), Verdict::GenuineMultipartiteEntangled);
        assert_eq!(detect(1.0, Some(1.0)), Verdict::Entangled);
        assert_eq!(detect(0.3, Some(1.0)), Verdict::Entangled);
        assert_eq!(detect(0.0, Some(1.0)), Verdict::Inconclusive);
        assert_eq!(detect(0.9, None), Verdict::Entangled);
    }

    #[test]
    fn report_for_noisy_ghz() {
        let report = analyze(&ghz3_with_noise(0.05).unwrap(), &AnalysisOptions::default()).unwrap();
        assert_eq!(report.verdict, Verdict::GenuineMultipartiteEntangled);
        assert!(report.tensors.is_none());
        assert!(report.concurrence_upper_estimate.is_none());
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["verdict"], "genuine-multipartite-entangled");
        assert_eq!(json["schema_version"], SCHEMA_VERSION);
    }

    #[test]
    fn report_for_bell_has_no_threshold() {
        let report = analyze(&ghz(ctx(2, 2)), &AnalysisOptions::default()).unwrap();
        assert!(report.gme_threshold.is_none());
        assert_eq!(report.verdict, Verdict::Entangled);
    }

    #[test]
    fn report_rejects_bad_tolerances() {
        let opts = AnalysisOptions {
            tolerances: Tolerances {
                trace: 1.0,
                ..Tolerances::default()
            },
            ..AnalysisOptions::default()
        };
        assert!(analyze(&ghz(ctx(3, 2)), &opts).is_err());
    }

    #[test]
    fn haar_pure_forms_agree() {
        for seed in 0..5 {
            let psi = haar_random_pure(ctx(3, 3), seed);
            let ts = tensors(&psi);
            let a = pure_concurrence_purity(&psi).unwrap();
            let b = pure_concurrence_tensor(&ts, &bound_coefficients(ctx(3, 3)).unwrap()).unwrap();
            let c = pure_concurrence_paired(&psi).unwrap();
            assert!((a - b).abs() < 1e-10);
            assert!((a - c).abs() < 1e-10);
        }
    }
}
