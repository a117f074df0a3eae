//! Party structure, subset masks and validated density matrices.
//!
//! Party 1 is the most significant tensor factor: for a basis index `i` of the
//! full `d^N` space, the digit of party `p` is `(i / d^(N-p)) % d`.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, DEFAULT_DIM_LIMIT, ZERO};
use crate::tolerances::Tolerances;

/// Number of parties `N` and the common local dimension `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartitionContext {
    n_parties: usize,
    local_dim: usize,
    #[serde(skip, default = "default_limit")]
    dim_limit: usize,
}

fn default_limit() -> usize {
    DEFAULT_DIM_LIMIT
}

impl PartitionContext {
    pub fn new(n_parties: usize, local_dim: usize) -> Result<Self> {
        Self::with_limit(n_parties, local_dim, DEFAULT_DIM_LIMIT)
    }

    /// Like [`PartitionContext::new`] with a custom cap on `d^N`.
    pub fn with_limit(n_parties: usize, local_dim: usize, dim_limit: usize) -> Result<Self> {
        if n_parties == 0 {
            return Err(Error::InvalidContext("at least one party is required".into()));
        }
        if n_parties > 63 {
            return Err(Error::InvalidContext(format!(
                "{n_parties} parties exceed the 63-party mask width"
            )));
        }
        if local_dim < 2 {
            return Err(Error::InvalidContext(format!("local dimension {local_dim} < 2")));
        }
        let dim = u32::try_from(n_parties)
            .ok()
            .and_then(|n| local_dim.checked_pow(n))
            .ok_or(Error::DimensionLimit {
                dim: usize::MAX,
                limit: dim_limit,
            })?;
        if dim > dim_limit {
            return Err(Error::DimensionLimit { dim, limit: dim_limit });
        }
        Ok(Self {
            n_parties,
            local_dim,
            dim_limit,
        })
    }

    pub fn n_parties(&self) -> usize {
        self.n_parties
    }

    pub fn local_dim(&self) -> usize {
        self.local_dim
    }

    pub fn dim_limit(&self) -> usize {
        self.dim_limit
    }

    /// Total Hilbert space dimension `d^N`.
    pub fn dim(&self) -> usize {
        self.local_dim.pow(self.n_parties as u32)
    }

    /// Context for a subsystem of `k` parties with the same local dimension.
    pub fn sub(&self, k: usize) -> Result<Self> {
        Self::with_limit(k, self.local_dim, self.dim_limit)
    }

    pub(crate) fn digit(&self, index: usize, party: usize) -> usize {
        (index / self.local_dim.pow((self.n_parties - party) as u32)) % self.local_dim
    }
}

/// A nonempty set of parties; bit `p-1` is set when party `p` belongs to it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetMask {
    bits: u64,
    n_parties: usize,
}

impl SubsetMask {
    pub fn new(bits: u64, n_parties: usize) -> Result<Self> {
        if n_parties == 0 || n_parties > 63 || bits == 0 || bits >= (1u64 << n_parties) {
            return Err(Error::InvalidSubset { bits, n_parties });
        }
        Ok(Self { bits, n_parties })
    }

    /// Mask from 1-based party labels.
    pub fn from_parties(parties: &[usize], n_parties: usize) -> Result<Self> {
        let mut bits = 0u64;
        for &p in parties {
            if p == 0 || p > n_parties {
                return Err(Error::IndexOutOfRange {
                    what: "party",
                    index: p,
                    limit: n_parties,
                });
            }
            bits |= 1 << (p - 1);
        }
        Self::new(bits, n_parties)
    }

    pub fn full(n_parties: usize) -> Result<Self> {
        Self::new((1u64 << n_parties) - 1, n_parties)
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn n_parties(&self) -> usize {
        self.n_parties
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_full(&self) -> bool {
        self.bits == (1u64 << self.n_parties) - 1
    }

    pub fn contains(&self, party: usize) -> bool {
        party >= 1 && party <= self.n_parties && self.bits & (1 << (party - 1)) != 0
    }

    /// Sorted 1-based party labels.
    pub fn parties(&self) -> Vec<usize> {
        (1..=self.n_parties).filter(|&p| self.contains(p)).collect()
    }

    /// The complementary subset, `None` for the full set.
    pub fn complement(&self) -> Option<Self> {
        let bits = !self.bits & ((1u64 << self.n_parties) - 1);
        Self::new(bits, self.n_parties).ok()
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.bits & !other.bits == 0
    }

    /// All `2^N - 1` nonempty subsets, by increasing mask value.
    pub fn all_nonempty(n_parties: usize) -> impl Iterator<Item = SubsetMask> {
        (1..(1u64 << n_parties)).map(move |bits| SubsetMask { bits, n_parties })
    }

    /// All `2^N - 2` nonempty proper subsets, by increasing mask value.
    pub fn all_proper(n_parties: usize) -> impl Iterator<Item = SubsetMask> {
        (1..(1u64 << n_parties) - 1).map(move |bits| SubsetMask { bits, n_parties })
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.parties().iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", labels.join(","))
    }
}

/// A Hermitian, unit-trace, positive semidefinite `d^N x d^N` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    ctx: PartitionContext,
    mat: ComplexMatrix,
}

impl DensityMatrix {
    pub(crate) fn new_unchecked(ctx: PartitionContext, mat: ComplexMatrix) -> Self {
        debug_assert_eq!(mat.rows(), ctx.dim());
        Self { ctx, mat }
    }

    /// Normalizes `ket` and returns its projector.
    pub fn from_ket(ket: &[Complex64], ctx: PartitionContext) -> Result<Self> {
        if ket.len() != ctx.dim() {
            return Err(Error::DimensionMismatch {
                expected: ctx.dim(),
                got: ket.len(),
            });
        }
        let norm = ket.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidParameter("ket has zero or non-finite norm".into()));
        }
        let v: Vec<Complex64> = ket.iter().map(|z| z / norm).collect();
        Ok(Self::new_unchecked(ctx, ComplexMatrix::outer(&v)))
    }

    /// The maximally mixed state `I / d^N`.
    pub fn maximally_mixed(ctx: PartitionContext) -> Self {
        let dim = ctx.dim();
        Self::new_unchecked(ctx, ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64))
    }

    pub fn ctx(&self) -> PartitionContext {
        self.ctx
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    /// `Tr rho^2`.
    pub fn purity(&self) -> f64 {
        purity(self)
    }
}

/// Validates `m` as a density matrix for `ctx` with default tolerances.
pub fn validate_density(m: ComplexMatrix, ctx: PartitionContext) -> Result<DensityMatrix> {
    validate_density_with(m, ctx, &Tolerances::default())
}

/// Validates `m`, reporting the first violated invariant and its size.
pub fn validate_density_with(m: ComplexMatrix, ctx: PartitionContext, tol: &Tolerances) -> Result<DensityMatrix> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if m.rows() != ctx.dim() {
        return Err(Error::DimensionMismatch {
            expected: ctx.dim(),
            got: m.rows(),
        });
    }
    if m.as_slice().iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::InvalidParameter("matrix has non-finite entries".into()));
    }
    let deviation = m.max_hermitian_deviation();
    if deviation > tol.hermitian {
        return Err(Error::NotHermitian { deviation });
    }
    let trace = m.trace().re;
    if (trace - 1.0).abs() > tol.trace {
        return Err(Error::InvalidTrace {
            trace,
            deviation: (trace - 1.0).abs(),
        });
    }
    let min_eigenvalue = m.hermitian_eigenvalues()?.first().copied().unwrap_or(0.0);
    if min_eigenvalue < -tol.eigenvalue {
        return Err(Error::NegativeEigenvalue { min_eigenvalue });
    }
    Ok(DensityMatrix { ctx, mat: m })
}

/// Reduced state on the parties in `keep`; the kept parties retain their
/// relative order.
pub fn partial_trace(rho: &DensityMatrix, keep: SubsetMask) -> Result<DensityMatrix> {
    let ctx = rho.ctx;
    if keep.n_parties() != ctx.n_parties() {
        return Err(Error::InvalidSubset {
            bits: keep.bits(),
            n_parties: ctx.n_parties(),
        });
    }
    if keep.is_full() {
        return Err(Error::InvalidSubset {
            bits: keep.bits(),
            n_parties: ctx.n_parties(),
        });
    }
    let sub_ctx = ctx.sub(keep.len())?;
    let mat = reduce(&rho.mat, &ctx, &keep);
    Ok(DensityMatrix::new_unchecked(sub_ctx, mat))
}

/// Index table `idx[kept][traced]` giving the full-space basis index.
fn split_indices(ctx: &PartitionContext, keep: &SubsetMask) -> Vec<Vec<usize>> {
    let d = ctx.local_dim();
    let kept = keep.len();
    let kept_dim = d.pow(kept as u32);
    let traced_dim = ctx.dim() / kept_dim;
    let mut table = vec![vec![0usize; traced_dim]; kept_dim];
    for i in 0..ctx.dim() {
        let (mut k, mut t) = (0usize, 0usize);
        for p in 1..=ctx.n_parties() {
            let digit = ctx.digit(i, p);
            if keep.contains(p) {
                k = k * d + digit;
            } else {
                t = t * d + digit;
            }
        }
        table[k][t] = i;
    }
    table
}

pub(crate) fn reduce(mat: &ComplexMatrix, ctx: &PartitionContext, keep: &SubsetMask) -> ComplexMatrix {
    let table = split_indices(ctx, keep);
    let n = table.len();
    ComplexMatrix::from_fn(n, n, |a, b| {
        table[a]
            .iter()
            .zip(&table[b])
            .fold(ZERO, |acc, (&i, &j)| acc + mat[(i, j)])
    })
}

/// `Tr rho^2`, computed as the squared Hilbert-Schmidt norm of a Hermitian matrix.
pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.mat
        .trace_of_product(&rho.mat)
        .expect("density matrices are square")
        .re
}

/// Reorders parties: new party `q` is old party `order[q-1]`.
pub fn permute_parties(rho: &DensityMatrix, order: &[usize]) -> Result<DensityMatrix> {
    let ctx = rho.ctx;
    let n = ctx.n_parties();
    let mut seen = vec![false; n + 1];
    if order.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: order.len(),
        });
    }
    for &p in order {
        if p == 0 || p > n || seen[p] {
            return Err(Error::InvalidParameter(format!(
                "{order:?} is not a permutation of 1..={n}"
            )));
        }
        seen[p] = true;
    }
    let d = ctx.local_dim();
    let map: Vec<usize> = (0..ctx.dim())
        .map(|i| order.iter().fold(0, |acc, &old| acc * d + ctx.digit(i, old)))
        .collect();
    let mut out = ComplexMatrix::zeros(ctx.dim(), ctx.dim());
    for i in 0..ctx.dim() {
        for j in 0..ctx.dim() {
            out[(map[i], map[j])] = rho.mat[(i, j)];
        }
    }
    Ok(DensityMatrix::new_unchecked(ctx, out))
}

/// Applies `U_1 ⊗ ... ⊗ U_N` by conjugation. Each `U_p` must be a `d x d` unitary.
pub fn apply_local_unitaries(rho: &DensityMatrix, unitaries: &[ComplexMatrix]) -> Result<DensityMatrix> {
    let ctx = rho.ctx;
    if unitaries.len() != ctx.n_parties() {
        return Err(Error::DimensionMismatch {
            expected: ctx.n_parties(),
            got: unitaries.len(),
        });
    }
    let mut total = ComplexMatrix::identity(1);
    for u in unitaries {
        if u.rows() != ctx.local_dim() || !u.is_square() {
            return Err(Error::DimensionMismatch {
                expected: ctx.local_dim(),
                got: u.rows(),
            });
        }
        total = crate::matrix::kron_with_limit(&total, u, ctx.dim_limit())?;
    }
    let mat = total.matmul(&rho.mat)?.matmul(&total.dagger())?;
    Ok(DensityMatrix::new_unchecked(ctx, mat))
}
