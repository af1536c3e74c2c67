//! Quotient categories by a subcategory ideal, the induced shift functor
//! with its quasi-inverse, standard angles, and the end-to-end quotient
//! verification pipelines.

mod build;
mod functor;
mod standard;
mod theorem;

pub use build::{build_quotient, ideal_subspace, QuotientData};
pub use functor::{
    build_backward_functor, build_forward_functor, build_weak_shift, search_natural_iso,
};
pub use standard::{standard_angle, sum_forward_angle, PhiClass, QuotientContext, StandardAngle};
pub use theorem::{class_independence_check, compatibility_check, verify_frobenius, verify_theorem, TheoremArtifacts};

use thiserror::Error;

#[derive(Debug, Error, Clone)]
pub enum QuotientError {
    #[error("quotient construction failed: {0}")]
    Construction(String),
    /// Completion against a fixed witness angle was infeasible; valid
    /// witnesses always admit completions, so this is a hard error.
    #[error("corrupted witness: {0}")]
    CorruptedWitness(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}
