//! Verification engine for n-angulated categories presented over small prime
//! fields.
//!
//! The crate checks the defining axioms of an n-angulated structure on finite
//! data, validates mutation pairs, constructs quotient categories with their
//! induced shift functor and standard angle class, and re-runs the axiom
//! suite on the quotient, treating the quotient-angulation theorem as a
//! correctness oracle: on validated inputs every quotient check must pass,
//! and any failure is a replayable defect report.
//!
//! All checkers are bounded verifiers with three-valued verdicts; budgets and
//! seeds are recorded in every report so runs are reproducible.

pub mod addcat;
pub mod angles;
pub mod corpus;
pub mod ffmat;
pub mod format;
pub mod jobs;
pub mod mutation;
pub mod quotient;
pub mod report;

pub use addcat::{Morphism, ObjectExpr, PresentedCategory, Shift, Subcategory, SuspensionFunctor};
pub use angles::{NSequence, SequenceMorphism, Structure};
pub use report::{AxiomReport, Budget, CheckReport, Membership, SearchOutcome, Verdict};
