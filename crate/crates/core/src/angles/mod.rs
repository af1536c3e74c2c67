//! n-Σ-sequences, rotations, mapping cones, Hom-exactness, angle classes and
//! the bounded checkers for the axioms N1, N2, N3, N4 and N4'.

mod axioms;
mod classes;
mod exact;
mod linsys;
mod octahedron;
mod sequence;

pub use axioms::{
    check_n1, check_n2, check_n3, check_n4, check_n4_prime, complete_morphism, cone_witness_search,
    differential_n4_check, enum_objects, octahedron_instances, random_sequence,
    rotation_round_trip, run_axiom_suite, ConeOutcome,
};
pub use classes::{
    build_opposite, screen_class, x_wrap_sequence, AngleClass, DynClass, EnumeratedClass,
    FilteredClass, OppositeClass, SplitClass, WrapExactClass,
};
pub use exact::{check_hom_exact, periodic_exactness, Variance};
pub use linsys::{
    fill_components, sequence_iso_search, solve_affine, solve_sequence_morphism, AffineMorphisms,
};
pub use octahedron::{
    assemble_octahedron, search_octahedron, OctahedronInstance, OctahedronOutcome,
    OctahedronWitness,
};
pub use sequence::{
    from_component_grid, mapping_cone, rewrite_at, rotate_left, rotate_right, sequence_direct_sum,
    trivial_angle, NSequence, SequenceMorphism,
};

use crate::addcat::{CatError, Morphism, ObjectExpr, PresentedCategory, Shift};
use thiserror::Error;

#[derive(Debug, Error, Clone)]
pub enum AngleError {
    #[error("sequence invalid: {0}")]
    InvalidSequence(String),
    #[error("sequence morphism invalid: {0}")]
    InvalidMorphism(String),
    #[error("first square does not commute")]
    FirstSquare,
    #[error(transparent)]
    Cat(#[from] CatError),
}

/// A category, its shift, and the sequence length n ≥ 3 everything is
/// checked against. Immutable once built; all checker state lives in budgets
/// and reports.
#[derive(Debug, Clone)]
pub struct Structure {
    pub cat: PresentedCategory,
    pub shift: Shift,
    pub n: usize,
}

impl Structure {
    pub fn new(cat: PresentedCategory, shift: Shift, n: usize) -> Result<Self, AngleError> {
        if n < 3 {
            return Err(AngleError::InvalidSequence(format!("n must be at least 3, got {}", n)));
        }
        Ok(Self { cat, shift, n })
    }

    pub fn fwd_obj(&self, x: &ObjectExpr) -> ObjectExpr {
        self.shift.fwd_obj(&self.cat, x)
    }

    pub fn bwd_obj(&self, x: &ObjectExpr) -> ObjectExpr {
        self.shift.bwd_obj(&self.cat, x)
    }

    pub fn fwd_mor(&self, f: &Morphism) -> Morphism {
        self.shift.fwd_mor(&self.cat, f)
    }

    pub fn bwd_mor(&self, f: &Morphism) -> Morphism {
        self.shift.bwd_mor(&self.cat, f)
    }

    /// `(-1)^n` in the coefficient field.
    pub fn rotation_sign(&self) -> u32 {
        crate::ffmat::fp_sign(self.n, self.cat.modulus())
    }
}
