//! End-to-end self checks over seeded random ensembles.
//!
//! Each suite records its worst residual against a fixed tolerance. The whole
//! run is a deterministic function of [`VerifyConfig`].

use serde::Serialize;

use crate::bounds::{
    analyze, bound_coefficients, concurrence_lower_bound, pure_concurrence_purity, pure_concurrence_tensor,
    sum_reduced_purities, tangle_bounds, AnalysisOptions, SCHEMA_VERSION,
};
use crate::density::{
    apply_local_unitaries, partial_trace, purity, validate_density, DensityMatrix, PartitionContext, SubsetMask,
};
use crate::error::{Error, Result};
use crate::generators::su_generators;
use crate::matrix::ComplexMatrix;
use crate::roof::convex_roof_upper_estimate;
use crate::states::{haar_random_pure, random_local_unitaries, random_mixed, seeded_rng, RNG_ALGORITHM};
use crate::tensors::{all_tensors, purity_from_tensors, reduced_purity_from_tensors, single_site_norm_identity};
use num_complex::Complex64;
use rand::Rng;

pub const EQUIVALENCE_TOL: f64 = 1e-8;
pub const PURITY_IDENTITY_TOL: f64 = 1e-10;
pub const TANGLE_TOL: f64 = 1e-9;
pub const INVARIANCE_TOL: f64 = 1e-9;
pub const SANDWICH_TOL: f64 = 1e-9;
pub const SINGLE_SITE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub ns: Vec<usize>,
    pub ds: Vec<usize>,
    pub n_random: usize,
    pub seed: u64,
    /// Decompositions per state for the convex-roof sandwich.
    pub roof_samples: usize,
    /// Adds a non-Hermitian perturbation of this size to one generated state.
    pub perturbation: Option<f64>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            ns: vec![2, 3],
            ds: vec![2],
            n_random: 50,
            seed: 0,
            roof_samples: 20,
            perturbation: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifySummary {
    pub schema_version: u32,
    pub seed: u64,
    pub rng: String,
    pub ns: Vec<usize>,
    pub ds: Vec<usize>,
    pub n_random: usize,
    pub passed: bool,
    pub suites: Vec<SuiteResult>,
}

struct Suite {
    name: &'static str,
    tolerance: f64,
    cases: usize,
    max_residual: f64,
    failure: Option<String>,
}

impl Suite {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self {
            name,
            tolerance,
            cases: 0,
            max_residual: 0.0,
            failure: None,
        }
    }

    fn record(&mut self, residual: f64, label: impl FnOnce() -> String) {
        self.cases += 1;
        let residual = if residual.is_nan() { f64::INFINITY } else { residual };
        if residual > self.max_residual {
            self.max_residual = residual;
        }
        if residual > self.tolerance && self.failure.is_none() {
            self.failure = Some(format!("{} (residual {residual:e})", label()));
        }
    }

    fn fail(&mut self, message: String) {
        self.cases += 1;
        self.max_residual = f64::INFINITY;
        self.failure.get_or_insert(message);
    }

    fn finish(self) -> SuiteResult {
        SuiteResult {
            name: self.name.to_string(),
            passed: self.failure.is_none(),
            cases: self.cases,
            max_residual: self.max_residual,
            tolerance: self.tolerance,
            failure: self.failure,
        }
    }
}

/// SplitMix64 finalizer, used to derive independent per-case seeds.
pub fn derive_seed(base: u64, parts: &[u64]) -> u64 {
    let mut z = base;
    for &p in parts {
        z = z.wrapping_add(p).wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
    }
    z
}

fn report_numbers(rho: &DensityMatrix) -> Result<[f64; 5]> {
    let r = analyze(rho, &AnalysisOptions::default())?;
    Ok([
        r.concurrence_lower_raw,
        r.concurrence_lower_split_raw,
        r.tangle_lower_raw,
        r.tangle_upper,
        r.gme_threshold.unwrap_or(0.0),
    ])
}

fn contexts(cfg: &VerifyConfig) -> Result<Vec<PartitionContext>> {
    let mut out = Vec::new();
    for &n in &cfg.ns {
        for &d in &cfg.ds {
            if n < 2 {
                return Err(Error::InvalidParameter(format!("verification needs N >= 2, got {n}")));
            }
            out.push(PartitionContext::new(n, d)?);
        }
    }
    if out.is_empty() {
        return Err(Error::InvalidParameter("no (N, d) pairs to verify".into()));
    }
    Ok(out)
}

/// Runs every suite. Only configuration errors are returned as `Err`;
/// numerical failures are reported inside the summary.
pub fn run_verification(cfg: &VerifyConfig) -> Result<VerifySummary> {
    let ctxs = contexts(cfg)?;
    let mut validation = Suite::new("state-validation", 0.0);
    let mut equivalence = Suite::new("pure-formula-equivalence", EQUIVALENCE_TOL);
    let mut single_site = Suite::new("single-site-norm-identity", SINGLE_SITE_TOL);
    let mut purity_ids = Suite::new("purity-identities", PURITY_IDENTITY_TOL);
    let mut tangle = Suite::new("tangle-sandwich", TANGLE_TOL);
    let mut invariance = Suite::new("local-unitary-invariance", INVARIANCE_TOL);
    let mut sandwich = Suite::new("concurrence-sandwich", SANDWICH_TOL);

    for ctx in &ctxs {
        let (n, d) = (ctx.n_parties(), ctx.local_dim());
        let basis = su_generators(d)?;
        let coeffs = bound_coefficients(*ctx)?;
        let tag = [n as u64, d as u64];
        let mut rank_rng = seeded_rng(derive_seed(cfg.seed, &[0, tag[0], tag[1]]));

        for i in 0..cfg.n_random {
            let label = |what: &str| format!("{what} N={n} d={d} sample {i}");

            // Pure states.
            let psi = haar_random_pure(*ctx, derive_seed(cfg.seed, &[1, tag[0], tag[1], i as u64]));
            let ts = all_tensors(&psi, &basis)?;
            match (pure_concurrence_purity(&psi), pure_concurrence_tensor(&ts, &coeffs)) {
                (Ok(a), Ok(b)) => {
                    equivalence.record((a - b).abs(), || label("pure"));
                    let tb = tangle_bounds(&ts, &coeffs, sum_reduced_purities(&psi))?;
                    let residual = (tb.lower - tb.upper).abs().max((tb.lower - a * a).abs());
                    tangle.record(residual, || label("pure tangle"));
                }
                (Err(e), _) | (_, Err(e)) => equivalence.fail(format!("{}: {e}", label("pure"))),
            }
            let (lhs, rhs) = single_site_norm_identity(&ts);
            single_site.record((lhs - rhs).abs(), || label("pure"));

            // Mixed states.
            let rank = rank_rng.random_range(1..=ctx.dim());
            let mut rho = random_mixed(*ctx, rank, derive_seed(cfg.seed, &[2, tag[0], tag[1], i as u64]))?;
            if i == 0 {
                if let Some(eps) = cfg.perturbation {
                    match validate_density(perturb_non_hermitian(rho.matrix(), eps), *ctx) {
                        Ok(v) => rho = v,
                        Err(e) => {
                            validation.fail(format!("{}: {} ({e})", label("perturbed"), e.kind()));
                            continue;
                        }
                    }
                }
            }
            if let Err(e) = validate_density(rho.matrix().clone(), *ctx) {
                validation.fail(format!("{}: {e}", label("mixed")));
                continue;
            }
            validation.record(0.0, || label("mixed"));

            let ts = all_tensors(&rho, &basis)?;
            let mut residual = (purity_from_tensors(&ts) - purity(&rho)).abs();
            for s in SubsetMask::all_proper(n) {
                let direct = purity(&partial_trace(&rho, s)?);
                residual = residual.max((reduced_purity_from_tensors(&ts, s) - direct).abs());
            }
            purity_ids.record(residual, || label("mixed"));

            let tb = tangle_bounds(&ts, &coeffs, sum_reduced_purities(&rho))?;
            tangle.record((tb.lower - tb.upper).max(0.0), || label("mixed tangle"));

            // Local-unitary invariance of sector norms and report values.
            let us = random_local_unitaries(*ctx, derive_seed(cfg.seed, &[3, tag[0], tag[1], i as u64]));
            let rotated = apply_local_unitaries(&rho, &us)?;
            let ts_rot = all_tensors(&rotated, &basis)?;
            let mut residual = 0.0f64;
            for s in SubsetMask::all_nonempty(n) {
                residual = residual.max((ts.norm_sq(s).sqrt() - ts_rot.norm_sq(s).sqrt()).abs());
            }
            for (a, b) in report_numbers(&rho)?.iter().zip(report_numbers(&rotated)?) {
                residual = residual.max((a - b).abs());
            }
            invariance.record(residual, || label("mixed"));

            // Lower bound below the sampled convex roof, on low-rank states.
            if cfg.roof_samples > 0 {
                let low = random_mixed(*ctx, rank.min(4), derive_seed(cfg.seed, &[4, tag[0], tag[1], i as u64]))?;
                let lb = concurrence_lower_bound(&all_tensors(&low, &basis)?, &coeffs)?;
                let est = convex_roof_upper_estimate(
                    &low,
                    cfg.roof_samples,
                    derive_seed(cfg.seed, &[5, tag[0], tag[1], i as u64]),
                )?;
                sandwich.record((lb.clamped - est).max(0.0), || label("low-rank"));
            }
        }
    }

    let suites: Vec<SuiteResult> = [
        validation,
        equivalence,
        single_site,
        purity_ids,
        tangle,
        invariance,
        sandwich,
    ]
    .into_iter()
    .map(Suite::finish)
    .collect();
    Ok(VerifySummary {
        schema_version: SCHEMA_VERSION,
        seed: cfg.seed,
        rng: RNG_ALGORITHM.to_string(),
        ns: cfg.ns.clone(),
        ds: cfg.ds.clone(),
        n_random: cfg.n_random,
        passed: suites.iter().all(|s| s.passed),
        suites,
    })
}

/// Adds `eps` to one off-diagonal entry only, breaking Hermiticity.
pub fn perturb_non_hermitian(m: &ComplexMatrix, eps: f64) -> ComplexMatrix {
    let mut out = m.clone();
    out[(0, 1)] += Complex64::new(eps, 0.0);
    out
}
