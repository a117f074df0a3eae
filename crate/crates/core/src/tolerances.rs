//! Numerical tolerances shared by validation and the bound computations.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Lower edge of the range a caller may override a tolerance within.
pub const MIN_OVERRIDE: f64 = 1e-14;
/// Upper edge of the override range.
pub const MAX_OVERRIDE: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Max entry of |M - M^dagger| accepted for a density matrix.
    pub hermitian: f64,
    /// Max |Tr M - 1|.
    pub trace: f64,
    /// Eigenvalues down to `-eigenvalue` are accepted as zero.
    pub eigenvalue: f64,
    /// Max imaginary part tolerated on a correlation tensor entry.
    pub imaginary_residue: f64,
    /// Max |Tr rho^2 - 1| for a state to count as pure.
    pub purity: f64,
    /// Radicands within `radicand_clamp` of zero are treated as exactly zero.
    pub radicand_clamp: f64,
    /// Pure-state radicands below `-radicand_reject` are rejected.
    pub radicand_reject: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermitian: 1e-10,
            trace: 1e-10,
            eigenvalue: 1e-10,
            imaginary_residue: 1e-10,
            purity: 1e-8,
            radicand_clamp: 1e-10,
            radicand_reject: 1e-6,
        }
    }
}

impl Tolerances {
    /// Checks every field lies in `[MIN_OVERRIDE, MAX_OVERRIDE]`.
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("hermitian", self.hermitian),
            ("trace", self.trace),
            ("eigenvalue", self.eigenvalue),
            ("imaginary_residue", self.imaginary_residue),
            ("purity", self.purity),
            ("radicand_clamp", self.radicand_clamp),
            ("radicand_reject", self.radicand_reject),
        ];
        for (name, value) in fields {
            if !(MIN_OVERRIDE..=MAX_OVERRIDE).contains(&value) {
                return Err(Error::InvalidParameter(format!(
                    "tolerance {name} = {value:e} outside [{MIN_OVERRIDE:e}, {MAX_OVERRIDE:e}]"
                )));
            }
        }
        Ok(())
    }
}
