//! Named states, the white-noise GHZ family, seeded random ensembles and
//! threshold bisection over one-parameter families.
//!
//! Random draws use ChaCha20 seeded from a single `u64`, so every random state
//! is a pure function of its seed.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::density::{validate_density_with, DensityMatrix, PartitionContext};
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, ONE, ZERO};
use crate::tolerances::Tolerances;

/// Name of the generator behind every seeded draw, echoed in reports.
pub const RNG_ALGORITHM: &str = "ChaCha20";

/// Bisection iteration cap.
pub const MAX_BISECTION_STEPS: usize = 60;

pub fn seeded_rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

pub(crate) fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Matrix with i.i.d. standard complex Gaussian entries.
pub fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

/// Haar-distributed `rows x cols` isometry (`rows >= cols`, orthonormal columns).
pub fn haar_isometry<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    debug_assert!(rows >= cols);
    let (q, r) = ginibre(rows, cols, rng).qr();
    // Fix the column phases so the distribution is exactly Haar.
    let mut q = q;
    for j in 0..cols {
        let rjj = r[(j, j)];
        let phase = if rjj.norm() > 0.0 { rjj / rjj.norm() } else { ONE };
        for i in 0..rows {
            q[(i, j)] *= phase;
        }
    }
    q
}

pub fn haar_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> ComplexMatrix {
    haar_isometry(d, d, rng)
}

/// One Haar-random `d x d` unitary per party.
pub fn random_local_unitaries(ctx: PartitionContext, seed: u64) -> Vec<ComplexMatrix> {
    let mut rng = seeded_rng(seed);
    (0..ctx.n_parties())
        .map(|_| haar_unitary(ctx.local_dim(), &mut rng))
        .collect()
}

/// Normalized vector of i.i.d. complex Gaussians (Haar-distributed ket).
pub fn haar_random_ket(ctx: PartitionContext, seed: u64) -> Vec<Complex64> {
    let mut rng = seeded_rng(seed);
    let v: Vec<Complex64> = (0..ctx.dim()).map(|_| complex_gaussian(&mut rng)).collect();
    let norm = v.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

pub fn haar_random_pure(ctx: PartitionContext, seed: u64) -> DensityMatrix {
    DensityMatrix::from_ket(&haar_random_ket(ctx, seed), ctx).expect("nonzero Gaussian vector")
}

/// `G G^† / Tr(G G^†)` for a `d^N x rank` Ginibre matrix `G`.
pub fn random_mixed(ctx: PartitionContext, rank: usize, seed: u64) -> Result<DensityMatrix> {
    if rank == 0 || rank > ctx.dim() {
        return Err(Error::InvalidParameter(format!(
            "rank {rank} outside 1..={}",
            ctx.dim()
        )));
    }
    let mut rng = seeded_rng(seed);
    let g = ginibre(ctx.dim(), rank, &mut rng);
    let gg = g.matmul(&g.dagger())?;
    let tr = gg.trace().re;
    let mut m = gg.scale_real(1.0 / tr);
    // Exact Hermitian symmetry.
    for i in 0..ctx.dim() {
        m[(i, i)].im = 0.0;
        for j in 0..i {
            m[(i, j)] = m[(j, i)].conj();
        }
    }
    Ok(DensityMatrix::new_unchecked(ctx, m))
}

/// `Σ_k |k...k> / sqrt(d)`; for qubits `(|0...0> + |1...1>)/sqrt(2)`.
pub fn ghz_ket(ctx: PartitionContext) -> Vec<Complex64> {
    let d = ctx.local_dim();
    let amp = Complex64::new(1.0 / (d as f64).sqrt(), 0.0);
    let mut v = vec![ZERO; ctx.dim()];
    // |k...k> sits at k * (1 + d + ... + d^(N-1)).
    let stride = (ctx.dim() - 1) / (d - 1);
    for k in 0..d {
        v[k * stride] = amp;
    }
    v
}

/// `(|10...0> + |01...0> + ... + |0...01>)/sqrt(N)`.
pub fn w_ket(ctx: PartitionContext) -> Vec<Complex64> {
    let n = ctx.n_parties();
    let d = ctx.local_dim();
    let amp = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
    let mut v = vec![ZERO; ctx.dim()];
    for p in 1..=n {
        v[d.pow((n - p) as u32)] = amp;
    }
    v
}

pub fn ghz(ctx: PartitionContext) -> DensityMatrix {
    DensityMatrix::from_ket(&ghz_ket(ctx), ctx).expect("GHZ ket is normalized")
}

/// `x I / d^N + (1 - x) |GHZ><GHZ|`, with `x` the noise weight.
pub fn ghz_with_noise(ctx: PartitionContext, x: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::InvalidParameter(format!("noise weight x = {x} outside [0, 1]")));
    }
    let pure = ghz(ctx).into_matrix().scale_real(1.0 - x);
    let noise = ComplexMatrix::identity(ctx.dim()).scale_real(x / ctx.dim() as f64);
    Ok(DensityMatrix::new_unchecked(ctx, pure.add(&noise)?))
}

/// The three-qubit family `x I/8 + (1 - x)|GHZ><GHZ|`.
pub fn ghz3_with_noise(x: f64) -> Result<DensityMatrix> {
    ghz_with_noise(PartitionContext::new(3, 2)?, x)
}

/// Tensor product of local kets; one ket is repeated for every party.
pub fn product_state(ctx: PartitionContext, locals: &[Vec<Complex64>]) -> Result<DensityMatrix> {
    let n = ctx.n_parties();
    if locals.is_empty() || (locals.len() != 1 && locals.len() != n) {
        return Err(Error::InvalidParameter(format!(
            "expected 1 or {n} local kets, got {}",
            locals.len()
        )));
    }
    let mut ket = vec![ONE];
    for p in 0..n {
        let local = &locals[if locals.len() == 1 { 0 } else { p }];
        if local.len() != ctx.local_dim() {
            return Err(Error::DimensionMismatch {
                expected: ctx.local_dim(),
                got: local.len(),
            });
        }
        let norm = local.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidParameter("local ket has zero or non-finite norm".into()));
        }
        ket = ket
            .iter()
            .flat_map(|a| local.iter().map(move |b| a * b / norm))
            .collect();
    }
    DensityMatrix::from_ket(&ket, ctx)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StateKind {
    Ghz,
    W,
    Bell,
    Product,
    GhzNoise,
    GhzNoiseGeneral,
    MaximallyMixed,
    Dense,
    RandomPure,
    RandomMixed,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateParams {
    /// Noise weight for the GHZ-noise kinds.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    /// Rank for `random_mixed`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    /// Local kets for `product` as `[re, im]` pairs; one entry is repeated.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub locals: Option<Vec<Vec<[f64; 2]>>>,
}

/// Declarative description of a state, as read from JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateSpec {
    pub kind: StateKind,
    #[serde(default = "default_parties")]
    pub n_parties: usize,
    #[serde(default = "default_dim")]
    pub local_dim: usize,
    #[serde(default)]
    pub params: StateParams,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Row-major `[re, im]` entries for `dense`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<[f64; 2]>>>,
}

fn default_parties() -> usize {
    3
}

fn default_dim() -> usize {
    2
}

impl StateSpec {
    pub fn new(kind: StateKind, n_parties: usize, local_dim: usize) -> Self {
        Self {
            kind,
            n_parties,
            local_dim,
            params: StateParams::default(),
            seed: None,
            matrix: None,
        }
    }

    pub fn with_x(mut self, x: f64) -> Self {
        self.params.x = Some(x);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_rank(mut self, rank: usize) -> Self {
        self.params.rank = Some(rank);
        self
    }

    /// Dense spec carrying `rho` verbatim.
    pub fn dense(rho: &DensityMatrix) -> Self {
        let ctx = rho.ctx();
        let matrix = rho
            .matrix()
            .to_rows()
            .into_iter()
            .map(|row| row.into_iter().map(|z| [z.re, z.im]).collect())
            .collect();
        Self {
            matrix: Some(matrix),
            ..Self::new(StateKind::Dense, ctx.n_parties(), ctx.local_dim())
        }
    }

    pub fn ctx(&self) -> Result<PartitionContext> {
        PartitionContext::new(self.n_parties, self.local_dim)
    }

    fn noise(&self) -> Result<f64> {
        self.params
            .x
            .ok_or_else(|| Error::InvalidParameter(format!("{:?} requires params.x", self.kind)))
    }
}

fn to_complex(pairs: &[[f64; 2]]) -> Vec<Complex64> {
    pairs.iter().map(|&[re, im]| Complex64::new(re, im)).collect()
}

pub fn make_state(spec: &StateSpec) -> Result<DensityMatrix> {
    make_state_with(spec, &Tolerances::default())
}

/// Builds the state described by `spec` and validates it.
pub fn make_state_with(spec: &StateSpec, tol: &Tolerances) -> Result<DensityMatrix> {
    let ctx = spec.ctx()?;
    let seed = spec.seed.unwrap_or(0);
    let rho = match spec.kind {
        StateKind::Ghz => ghz(ctx),
        StateKind::W => DensityMatrix::from_ket(&w_ket(ctx), ctx)?,
        StateKind::Bell => {
            if ctx.n_parties() != 2 {
                return Err(Error::InvalidParameter("bell requires n_parties = 2".into()));
            }
            ghz(ctx)
        }
        StateKind::Product => {
            let locals = match &spec.params.locals {
                Some(l) => l.iter().map(|k| to_complex(k)).collect(),
                None => {
                    let mut zero = vec![ZERO; ctx.local_dim()];
                    zero[0] = ONE;
                    vec![zero]
                }
            };
            product_state(ctx, &locals)?
        }
        StateKind::GhzNoise => {
            if (ctx.n_parties(), ctx.local_dim()) != (3, 2) {
                return Err(Error::InvalidParameter(
                    "ghz_noise is the three-qubit family; use ghz_noise_general for other (N, d)".into(),
                ));
            }
            ghz_with_noise(ctx, spec.noise()?)?
        }
        StateKind::GhzNoiseGeneral => ghz_with_noise(ctx, spec.noise()?)?,
        StateKind::MaximallyMixed => DensityMatrix::maximally_mixed(ctx),
        StateKind::RandomPure => haar_random_pure(ctx, seed),
        StateKind::RandomMixed => random_mixed(ctx, spec.params.rank.unwrap_or(ctx.dim()), seed)?,
        StateKind::Dense => {
            let rows = spec
                .matrix
                .as_ref()
                .ok_or_else(|| Error::InvalidParameter("dense requires matrix".into()))?;
            let rows: Vec<Vec<Complex64>> = rows.iter().map(|r| to_complex(r)).collect();
            let m = ComplexMatrix::from_rows(&rows)?;
            return validate_density_with(m, ctx, tol);
        }
    };
    validate_density_with(rho.into_matrix(), ctx, tol)
}

/// Outcome of a bisection over `x ∈ [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanResult {
    /// Estimated crossing; `1.0` when the predicate never turns false.
    pub crossing_x: f64,
    /// False when the predicate holds at both endpoints.
    pub bracketed: bool,
    pub iterations: usize,
}

/// Locates where `predicate` switches from true to false on `[0, 1]` by
/// bisection, to within `tol`. Assumes a single monotone crossing.
pub fn threshold_scan<F>(mut predicate: F, tol: f64) -> Result<ScanResult>
where
    F: FnMut(f64) -> Result<bool>,
{
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "scan tolerance {tol} must be positive"
        )));
    }
    if !predicate(0.0)? {
        return Err(Error::NoCrossing("predicate is false at x = 0".into()));
    }
    if predicate(1.0)? {
        return Ok(ScanResult {
            crossing_x: 1.0,
            bracketed: false,
            iterations: 0,
        });
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut iterations = 0;
    while hi - lo > tol && iterations < MAX_BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if predicate(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    Ok(ScanResult {
        crossing_x: 0.5 * (lo + hi),
        bracketed: true,
        iterations,
    })
}
