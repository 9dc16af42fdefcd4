//! Linear algebra over the ring of squares `S`: module coordinates, the
//! matrix of a derivation, its kernel, presentations of the kernel ring, and
//! Jacobian minors reduced in that ring.

pub mod base;
pub mod engine;
pub mod presentation;

use thiserror::Error;

use crate::algebra::AlgebraError;

pub use base::{BaseRingS, Chart, ModuleVector, BASIS_MASKS};
pub use engine::{apply_matrix, change_of_basis_det, clear_denominators, derivation_matrix, express_in, kernel_basis};
pub use presentation::{
    jacobian, jacobian_minors, linear_coords, normal_form_r, reduce_t, verify_presentation, CheckOutcome, Minor,
    Presentation, PresentationReport, RNormal, Relation,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuotientError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("derivation is not S-linear: nonzero on {0}")]
    NotSLinear(String),
    #[error("{0}")]
    Check(String),
}
