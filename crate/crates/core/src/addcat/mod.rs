//! Finitely presented additive categories with a suspension automorphism.
//!
//! A category is given by generators, Hom-space dimensions over `F_p`, a
//! trilinear table of composition structure constants, and identity
//! coordinates. Objects are formal direct sums of generators, morphisms are
//! block matrices of Hom-basis coordinates. All laws (associativity, units,
//! suspension functoriality) are checked exhaustively on basis elements when
//! a presentation is constructed.

mod category;
mod functor;
mod hom;
mod morphism;
mod opposite;
mod suspension;
#[cfg(test)]
mod tests;

pub use category::{CategoryBuilder, ObjectExpr, PresentedCategory, Subcategory};
pub use functor::{Endofunctor, Shift, WeakShift};
pub use hom::{
    elementary_morphism, enumerate_hom, hom_dim_obj, is_isomorphism, iso_inverse, iso_search,
    postcompose_matrix, precompose_matrix,
};
pub use morphism::Morphism;
pub use opposite::{opposite_category, opposite_morphism, opposite_suspension};
pub use suspension::SuspensionFunctor;

use crate::ffmat::FfmatError;
use thiserror::Error;

#[derive(Debug, Error, Clone)]
pub enum CatError {
    #[error("object mismatch: {0}")]
    ObjectMismatch(String),
    #[error("presentation invalid: {0}")]
    Validation(String),
    #[error(transparent)]
    Ffmat(#[from] FfmatError),
}
