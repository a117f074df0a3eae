//! Generalized Gell-Mann matrices and their embeddings into N-party operators.
//!
//! The `d^2 - 1` generators are ordered as: symmetric off-diagonal pairs
//! `(j, k)` with `j < k` in lexicographic order, then the antisymmetric pairs in
//! the same order, then the diagonal generators by increasing rank. All are
//! normalized to `Tr[λ_a λ_b] = 2 δ_ab`, so for `d = 2` the list is
//! `σx, σy, σz`.

use num_complex::Complex64;

use crate::density::PartitionContext;
use crate::error::{Error, Result};
use crate::matrix::{kron_with_limit, ComplexMatrix, ONE, ZERO};

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorBasis {
    local_dim: usize,
    generators: Vec<ComplexMatrix>,
}

impl GeneratorBasis {
    /// Wraps a caller-provided generator list after checking it is a complete
    /// Hermitian, traceless set with `Tr[λ_a λ_b] = 2 δ_ab`.
    pub fn from_matrices(local_dim: usize, generators: Vec<ComplexMatrix>) -> Result<Self> {
        if local_dim < 2 {
            return Err(Error::InvalidContext(format!("local dimension {local_dim} < 2")));
        }
        let count = local_dim * local_dim - 1;
        if generators.len() != count {
            return Err(Error::DimensionMismatch {
                expected: count,
                got: generators.len(),
            });
        }
        for g in &generators {
            if g.rows() != local_dim || !g.is_square() {
                return Err(Error::DimensionMismatch {
                    expected: local_dim,
                    got: g.rows(),
                });
            }
            let deviation = g.max_hermitian_deviation();
            if deviation > 1e-12 {
                return Err(Error::NotHermitian { deviation });
            }
            if g.trace().norm() > 1e-12 {
                return Err(Error::InvalidParameter("generator is not traceless".into()));
            }
        }
        let basis = Self { local_dim, generators };
        let gram = basis.gram_deviation();
        if gram > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "generators are not orthonormal under Tr[a b]/2 (deviation {gram:e})"
            )));
        }
        Ok(basis)
    }

    pub fn local_dim(&self) -> usize {
        self.local_dim
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[ComplexMatrix] {
        &self.generators
    }

    pub fn get(&self, index: usize) -> Result<&ComplexMatrix> {
        self.generators.get(index).ok_or(Error::IndexOutOfRange {
            what: "generator",
            index,
            limit: self.generators.len(),
        })
    }

    /// Largest entry of `|Tr[λ_a λ_b]/2 - δ_ab|`.
    pub fn gram_deviation(&self) -> f64 {
        let mut worst = 0.0f64;
        for (a, ga) in self.generators.iter().enumerate() {
            for (b, gb) in self.generators.iter().enumerate() {
                let t = ga.trace_of_product(gb).expect("square generators") * 0.5;
                let target = if a == b { ONE } else { ZERO };
                worst = worst.max((t - target).norm());
            }
        }
        worst
    }
}

/// Builds the generalized Gell-Mann basis of `su(d)`.
pub fn su_generators(d: usize) -> Result<GeneratorBasis> {
    if d < 2 {
        return Err(Error::InvalidContext(format!("local dimension {d} < 2")));
    }
    let mut generators = Vec::with_capacity(d * d - 1);
    for j in 0..d {
        for k in j + 1..d {
            let mut m = ComplexMatrix::zeros(d, d);
            m[(j, k)] = ONE;
            m[(k, j)] = ONE;
            generators.push(m);
        }
    }
    for j in 0..d {
        for k in j + 1..d {
            let mut m = ComplexMatrix::zeros(d, d);
            m[(j, k)] = Complex64::new(0.0, -1.0);
            m[(k, j)] = Complex64::new(0.0, 1.0);
            generators.push(m);
        }
    }
    for rank in 1..d {
        let scale = (2.0 / (rank * (rank + 1)) as f64).sqrt();
        let mut m = ComplexMatrix::zeros(d, d);
        for j in 0..rank {
            m[(j, j)] = Complex64::new(scale, 0.0);
        }
        m[(rank, rank)] = Complex64::new(-(rank as f64) * scale, 0.0);
        generators.push(m);
    }
    Ok(GeneratorBasis {
        local_dim: d,
        generators,
    })
}

/// `I ⊗ ... ⊗ λ_gen_index ⊗ ... ⊗ I` with the generator at 1-based `position`.
pub fn embed(
    basis: &GeneratorBasis,
    gen_index: usize,
    position: usize,
    ctx: &PartitionContext,
) -> Result<ComplexMatrix> {
    operator_string(basis, &[(position, gen_index)], ctx)
}

/// Product of embedded generators for `(position, gen_index)` assignments,
/// i.e. the tensor product with `λ` at assigned positions and `I` elsewhere.
pub fn operator_string(
    basis: &GeneratorBasis,
    assignments: &[(usize, usize)],
    ctx: &PartitionContext,
) -> Result<ComplexMatrix> {
    if basis.local_dim() != ctx.local_dim() {
        return Err(Error::DimensionMismatch {
            expected: ctx.local_dim(),
            got: basis.local_dim(),
        });
    }
    if assignments.is_empty() {
        return Err(Error::EmptyAssignment);
    }
    let n = ctx.n_parties();
    let mut slots: Vec<Option<usize>> = vec![None; n + 1];
    for &(position, gen_index) in assignments {
        if position == 0 || position > n {
            return Err(Error::IndexOutOfRange {
                what: "position",
                index: position,
                limit: n,
            });
        }
        if gen_index >= basis.len() {
            return Err(Error::IndexOutOfRange {
                what: "generator",
                index: gen_index,
                limit: basis.len(),
            });
        }
        if slots[position].replace(gen_index).is_some() {
            return Err(Error::DuplicatePosition(position));
        }
    }
    let identity = ComplexMatrix::identity(ctx.local_dim());
    let mut out = ComplexMatrix::identity(1);
    for slot in &slots[1..] {
        let factor = match slot {
            Some(g) => &basis.generators[*g],
            None => &identity,
        };
        out = kron_with_limit(&out, factor, ctx.dim_limit())?;
    }
    Ok(out)
}
