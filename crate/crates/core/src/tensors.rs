//! Correlation tensors of the generalized Bloch representation.
//!
//! For a subset `S = {μ1 < ... < μM}` of parties the tensor entries are
//!
//! ```text
//! T^S[α1..αM] = (d/2)^M Tr[ρ λ_α1^{μ1} ... λ_αM^{μM}]
//! ```
//!
//! so that `ρ = d^-N (I + Σ_S Σ_α T^S[α] λ_α1^{μ1} ... λ_αM^{μM})`.
//! Entries are stored row-major in `(α1, ..., αM)` with the generator order of
//! [`GeneratorBasis`].
//!
//! The traces are evaluated by contracting one party at a time against either
//! the identity or a generator, which equals the trace against the
//! materialized operator string ([`correlation_entry`]) but never builds a
//! `d^N x d^N` operator.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::density::{DensityMatrix, PartitionContext, SubsetMask};
use crate::error::{Error, Result};
use crate::generators::{operator_string, GeneratorBasis};
use crate::matrix::{ComplexMatrix, ZERO};
use crate::tolerances::Tolerances;

/// One sector `T^S` of the correlation tensor set.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationTensor {
    subset: SubsetMask,
    shape: Vec<usize>,
    entries: Vec<f64>,
    norm_sq: f64,
}

impl CorrelationTensor {
    pub fn subset(&self) -> SubsetMask {
        self.subset
    }

    /// `[d^2 - 1; |S|]`.
    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Squared Hilbert-Schmidt norm `‖T^S‖²`.
    pub fn norm_sq(&self) -> f64 {
        self.norm_sq
    }

    /// Entry at a multi-index `(α1, ..., αM)`.
    pub fn get(&self, index: &[usize]) -> Option<f64> {
        if index.len() != self.shape.len() {
            return None;
        }
        let mut flat = 0;
        for (&i, &n) in index.iter().zip(&self.shape) {
            if i >= n {
                return None;
            }
            flat = flat * n + i;
        }
        self.entries.get(flat).copied()
    }
}

/// JSON form of one sector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectorExport {
    pub subset: Vec<usize>,
    pub shape: Vec<usize>,
    pub entries: Vec<f64>,
    pub norm_sq: f64,
}

/// All `2^N - 1` sectors of a state, keyed by subset in increasing mask order.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationTensorSet {
    ctx: PartitionContext,
    sectors: BTreeMap<SubsetMask, CorrelationTensor>,
}

impl CorrelationTensorSet {
    pub fn ctx(&self) -> PartitionContext {
        self.ctx
    }

    pub fn sector(&self, subset: SubsetMask) -> Option<&CorrelationTensor> {
        self.sectors.get(&subset)
    }

    pub fn sectors(&self) -> impl Iterator<Item = &CorrelationTensor> {
        self.sectors.values()
    }

    pub fn norm_sq(&self, subset: SubsetMask) -> f64 {
        self.sectors.get(&subset).map_or(0.0, CorrelationTensor::norm_sq)
    }

    /// `Σ_{|S| = l} ‖T^S‖²` for `l = 0..=N` (index 0 is always zero).
    pub fn level_norm_sums(&self) -> Vec<f64> {
        let mut sums = vec![0.0; self.ctx.n_parties() + 1];
        for t in self.sectors.values() {
            sums[t.subset.len()] += t.norm_sq;
        }
        sums
    }

    pub fn export(&self) -> Vec<SectorExport> {
        self.sectors
            .values()
            .map(|t| SectorExport {
                subset: t.subset.parties(),
                shape: t.shape.clone(),
                entries: t.entries.clone(),
                norm_sq: t.norm_sq,
            })
            .collect()
    }
}

/// `Σ_{i,j} op[j][i] m[(i, r), (j, s)]`: traces out the most significant
/// factor of `m` against `op` (identity when `None`).
fn contract_leading(m: &ComplexMatrix, d: usize, op: Option<&ComplexMatrix>) -> ComplexMatrix {
    let rest = m.rows() / d;
    let mut out = ComplexMatrix::zeros(rest, rest);
    for i in 0..d {
        for j in 0..d {
            let w = match op {
                Some(op) => op[(j, i)],
                None if i == j => Complex64::new(1.0, 0.0),
                None => continue,
            };
            if w == ZERO {
                continue;
            }
            for r in 0..rest {
                for s in 0..rest {
                    out[(r, s)] += w * m[(i * rest + r, j * rest + s)];
                }
            }
        }
    }
    out
}

fn collect_traces(
    m: &ComplexMatrix,
    party: usize,
    subset: &SubsetMask,
    basis: &GeneratorBasis,
    d: usize,
    out: &mut Vec<Complex64>,
) {
    if party > subset.n_parties() {
        out.push(m[(0, 0)]);
        return;
    }
    if subset.contains(party) {
        for g in basis.generators() {
            let next = contract_leading(m, d, Some(g));
            collect_traces(&next, party + 1, subset, basis, d, out);
        }
    } else {
        let next = contract_leading(m, d, None);
        collect_traces(&next, party + 1, subset, basis, d, out);
    }
}

fn check_inputs(rho: &DensityMatrix, subset: &SubsetMask, basis: &GeneratorBasis) -> Result<()> {
    let ctx = rho.ctx();
    if basis.local_dim() != ctx.local_dim() {
        return Err(Error::DimensionMismatch {
            expected: ctx.local_dim(),
            got: basis.local_dim(),
        });
    }
    if subset.n_parties() != ctx.n_parties() {
        return Err(Error::InvalidSubset {
            bits: subset.bits(),
            n_parties: ctx.n_parties(),
        });
    }
    Ok(())
}

/// Computes `T^S` with default tolerances.
pub fn correlation_tensor(
    rho: &DensityMatrix,
    subset: SubsetMask,
    basis: &GeneratorBasis,
) -> Result<CorrelationTensor> {
    correlation_tensor_with(rho, subset, basis, &Tolerances::default())
}

pub fn correlation_tensor_with(
    rho: &DensityMatrix,
    subset: SubsetMask,
    basis: &GeneratorBasis,
    tol: &Tolerances,
) -> Result<CorrelationTensor> {
    check_inputs(rho, &subset, basis)?;
    let d = rho.ctx().local_dim();
    let m = subset.len();
    let scale = (d as f64 / 2.0).powi(m as i32);
    let mut traces = Vec::with_capacity(basis.len().pow(m as u32));
    collect_traces(rho.matrix(), 1, &subset, basis, d, &mut traces);
    let mut entries = Vec::with_capacity(traces.len());
    for t in traces {
        let z = t * scale;
        if z.im.abs() > tol.imaginary_residue {
            return Err(Error::ImaginaryResidue { residue: z.im.abs() });
        }
        entries.push(z.re);
    }
    let norm_sq = entries.iter().map(|v| v * v).sum();
    Ok(CorrelationTensor {
        subset,
        shape: vec![basis.len(); m],
        entries,
        norm_sq,
    })
}

/// One tensor entry evaluated as `(d/2)^M Tr[ρ O]` with the operator string
/// `O` materialized on the full space. Slow; used as a cross-check.
pub fn correlation_entry(
    rho: &DensityMatrix,
    subset: SubsetMask,
    index: &[usize],
    basis: &GeneratorBasis,
) -> Result<Complex64> {
    check_inputs(rho, &subset, basis)?;
    let parties = subset.parties();
    if index.len() != parties.len() {
        return Err(Error::DimensionMismatch {
            expected: parties.len(),
            got: index.len(),
        });
    }
    let assignments: Vec<(usize, usize)> = parties.iter().copied().zip(index.iter().copied()).collect();
    let op = operator_string(basis, &assignments, &rho.ctx())?;
    let scale = (rho.ctx().local_dim() as f64 / 2.0).powi(parties.len() as i32);
    Ok(rho.matrix().trace_of_product(&op)? * scale)
}

pub fn all_tensors(rho: &DensityMatrix, basis: &GeneratorBasis) -> Result<CorrelationTensorSet> {
    all_tensors_with(rho, basis, &Tolerances::default())
}

pub fn all_tensors_with(rho: &DensityMatrix, basis: &GeneratorBasis, tol: &Tolerances) -> Result<CorrelationTensorSet> {
    let ctx = rho.ctx();
    let sectors = SubsetMask::all_nonempty(ctx.n_parties())
        .map(|s| correlation_tensor_with(rho, s, basis, tol).map(|t| (s, t)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(CorrelationTensorSet { ctx, sectors })
}

/// Resums the Bloch expansion `d^-N (I + Σ_S Σ_α T^S[α] λ-string)`.
pub fn reconstruct(ts: &CorrelationTensorSet, basis: &GeneratorBasis) -> Result<ComplexMatrix> {
    let ctx = ts.ctx;
    let dim = ctx.dim();
    let mut acc = ComplexMatrix::identity(dim);
    for t in ts.sectors() {
        let parties = t.subset.parties();
        let mut index = vec![0usize; parties.len()];
        for &value in &t.entries {
            if value != 0.0 {
                let assignments: Vec<(usize, usize)> = parties.iter().copied().zip(index.iter().copied()).collect();
                let op = operator_string(basis, &assignments, &ctx)?;
                acc = acc.add(&op.scale_real(value))?;
            }
            for slot in index.iter_mut().rev() {
                *slot += 1;
                if *slot < basis.len() {
                    break;
                }
                *slot = 0;
            }
        }
    }
    Ok(acc.scale_real(1.0 / dim as f64))
}

/// `Tr ρ² = d^-2N (d^N + Σ_M 2^M d^(N-M) Σ_{|S|=M} ‖T^S‖²)`.
pub fn purity_from_tensors(ts: &CorrelationTensorSet) -> f64 {
    let n = ts.ctx.n_parties() as i32;
    let d = ts.ctx.local_dim() as f64;
    let levels = ts.level_norm_sums();
    let mut acc = d.powi(n);
    for (m, sum) in levels.iter().enumerate().skip(1) {
        acc += 2f64.powi(m as i32) * d.powi(n - m as i32) * sum;
    }
    acc / d.powi(2 * n)
}

/// Purity of the reduced state on `subset` from the sectors contained in it:
/// `d^-2M (d^M + Σ_{R ⊆ S} 2^|R| d^(M-|R|) ‖T^R‖²)`.
pub fn reduced_purity_from_tensors(ts: &CorrelationTensorSet, subset: SubsetMask) -> f64 {
    let m = subset.len() as i32;
    let d = ts.ctx.local_dim() as f64;
    let mut acc = d.powi(m);
    for t in ts.sectors() {
        if t.subset.is_subset_of(&subset) {
            let r = t.subset.len() as i32;
            acc += 2f64.powi(r) * d.powi(m - r) * t.norm_sq;
        }
    }
    acc / d.powi(2 * m)
}

/// Both sides of the single-site norm relation that holds when `Tr ρ² = 1`:
/// `lhs = Σ_k ‖T^{k}‖²`,
/// `rhs = (d^2N - d^N)/(2 d^(N-1)) - Σ_{l≥2} 2^l d^(N-l)/(2 d^(N-1)) Σ_{|S|=l} ‖T^S‖²`.
pub fn single_site_norm_identity(ts: &CorrelationTensorSet) -> (f64, f64) {
    let n = ts.ctx.n_parties() as i32;
    let d = ts.ctx.local_dim() as f64;
    let levels = ts.level_norm_sums();
    let denom = 2.0 * d.powi(n - 1);
    let mut rhs = (d.powi(2 * n) - d.powi(n)) / denom;
    for (l, sum) in levels.iter().enumerate().skip(2) {
        rhs -= 2f64.powi(l as i32) * d.powi(n - l as i32) / denom * sum;
    }
    (levels[1], rhs)
}
