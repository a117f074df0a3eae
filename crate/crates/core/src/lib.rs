//! Correlation-tensor bounds on multipartite concurrence and tangle.
//!
//! The crate decomposes an N-partite state of local dimension `d` into the
//! correlation tensors of its generalized Bloch representation and evaluates,
//! from their norms:
//!
//! - the exact concurrence of pure states, both from reduced purities and from
//!   tensor norms ([`bounds::pure_concurrence_purity`],
//!   [`bounds::pure_concurrence_tensor`]);
//! - a lower bound on the concurrence of mixed states and the resulting
//!   entanglement / genuine-multipartite-entanglement verdict
//!   ([`bounds::concurrence_lower_bound`], [`bounds::gme_threshold`]);
//! - lower and upper bounds on the multipartite tangle
//!   ([`bounds::tangle_bounds`]);
//! - a sampling upper estimate of the convex roof
//!   ([`roof::convex_roof_upper_estimate`]).
//!
//! ```
//! use multiconc::bounds::{analyze, AnalysisOptions, Verdict};
//! use multiconc::states::ghz3_with_noise;
//!
//! let report = analyze(&ghz3_with_noise(0.05).unwrap(), &AnalysisOptions::default()).unwrap();
//! assert_eq!(report.verdict, Verdict::GenuineMultipartiteEntangled);
//! ```

pub mod bounds;
pub mod cli;
pub mod density;
pub mod error;
pub mod generators;
pub mod matrix;
pub mod roof;
pub mod states;
pub mod tensors;
pub mod tolerances;
pub mod verify;

pub use bounds::{analyze, AnalysisOptions, BoundsReport, Verdict};
pub use density::{DensityMatrix, PartitionContext, SubsetMask};
pub use error::{Error, Result};
pub use generators::{su_generators, GeneratorBasis};
pub use matrix::ComplexMatrix;
pub use states::{make_state, StateKind, StateSpec};
pub use tensors::{all_tensors, CorrelationTensorSet};
