//! Built-in example structures exercising every pipeline at desk scale.
//!
//! Split structures are semisimple presentations whose angle class is the
//! exactness oracle; they satisfy the whole axiom suite and are the
//! workhorses of the acceptance runs. The dual-numbers entry is a candidate:
//! free modules over F_2[x]/(x²) with the wrap-exactness oracle. Its axiom
//! verdicts are recorded by the checker, never asserted up front.

use crate::addcat::{CategoryBuilder, PresentedCategory, Shift, SuspensionFunctor};
use crate::angles::{screen_class, AngleClass, DynClass, SplitClass, Structure, WrapExactClass};
use crate::ffmat::FpMatrix;
use crate::report::Budget;
use std::sync::Arc;

/// A named structure plus its angle class and bookkeeping for reports.
pub struct CorpusEntry {
    pub name: String,
    pub structure: Arc<Structure>,
    pub class: DynClass,
    /// What the entry is expected to do under the checkers; candidates carry
    /// a "recorded, not asserted" note instead of a verdict.
    pub expected: String,
    pub provenance: String,
}

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("invalid corpus parameters: {0}")]
    Invalid(String),
    #[error("load-time screen rejected the entry: {0}")]
    Screen(String),
}

/// Semisimple presentation: `gen_count` simple generators with scalar
/// endomorphisms only, suspension permuting the generators, and the split
/// angle class.
pub fn split_structure(
    p: u32,
    gen_count: usize,
    sigma: &[usize],
    n: usize,
) -> Result<CorpusEntry, CorpusError> {
    if sigma.len() != gen_count {
        return Err(CorpusError::Invalid("permutation length must match generator count".into()));
    }
    let mut builder = CategoryBuilder::new(p);
    for g in 0..gen_count {
        builder.add_gen(&format!("s{}", g));
    }
    for g in 0..gen_count {
        let name = format!("id_s{}", g);
        builder.set_hom(g, g, &[&name]);
        builder.set_id(g, &[1]);
        builder.set_comp(g, g, g, 0, 0, &[1]);
    }
    let cat = builder.build().map_err(|e| CorpusError::Invalid(e.to_string()))?;
    let maps: Vec<Vec<FpMatrix>> = (0..gen_count)
        .map(|g| {
            (0..gen_count)
                .map(|h| FpMatrix::identity(p, cat.hom_dim(g, h)))
                .collect()
        })
        .collect();
    let sus = SuspensionFunctor::new(&cat, sigma.to_vec(), maps)
        .map_err(|e| CorpusError::Invalid(e.to_string()))?;
    let structure = Structure::new(cat, Shift::Strict(sus), n)
        .map_err(|e| CorpusError::Invalid(e.to_string()))?;
    SplitClass::check_shape(&structure).map_err(CorpusError::Invalid)?;
    let class: DynClass = Arc::new(SplitClass);
    screen_entry(&structure, class.as_ref())?;
    Ok(CorpusEntry {
        name: format!("split-p{}-g{}-n{}", p, gen_count, n),
        structure: Arc::new(structure),
        class,
        expected: "axiom suite passes at cap 2".into(),
        provenance: "semisimple presentation with the contractible angle class".into(),
    })
}

/// Free modules over the dual numbers F_2[x]/(x²): one generator `P` with
/// End(P) spanned by the identity and a square-zero element, identity
/// suspension, wrap-exactness angle class. The axiom verdicts for a given n
/// are whatever the checker reports.
pub fn local_algebra_candidate(n: usize) -> Result<CorpusEntry, CorpusError> {
    let mut builder = CategoryBuilder::new(2);
    let p_gen = builder.add_gen("P");
    builder.set_hom(p_gen, p_gen, &["id_P", "x"]);
    builder.set_id(p_gen, &[1, 0]);
    // id∘id = id, x∘id = id∘x = x, x∘x = 0
    builder.set_comp(p_gen, p_gen, p_gen, 0, 0, &[1, 0]);
    builder.set_comp(p_gen, p_gen, p_gen, 0, 1, &[0, 1]);
    builder.set_comp(p_gen, p_gen, p_gen, 1, 0, &[0, 1]);
    builder.set_comp(p_gen, p_gen, p_gen, 1, 1, &[0, 0]);
    let cat = builder.build().map_err(|e| CorpusError::Invalid(e.to_string()))?;
    let sus = SuspensionFunctor::identity(&cat);
    let structure = Structure::new(cat, Shift::Strict(sus), n)
        .map_err(|e| CorpusError::Invalid(e.to_string()))?;
    let class: DynClass = Arc::new(WrapExactClass::new(&structure, Budget::default()));
    screen_entry(&structure, class.as_ref())?;
    Ok(CorpusEntry {
        name: format!("dual-numbers-n{}", n),
        structure: Arc::new(structure),
        class,
        expected: "recorded, not asserted".into(),
        provenance: "free modules over F_2[x]/(x^2) with the wrap-exactness oracle".into(),
    })
}

/// The two-simple category with suspension swapping the generators.
pub fn two_simples_swap(p: u32, n: usize) -> Result<CorpusEntry, CorpusError> {
    split_structure(p, 2, &[1, 0], n)
}

/// The zero category: no generators.
pub fn zero_category(p: u32, n: usize) -> Result<CorpusEntry, CorpusError> {
    split_structure(p, 0, &[], n)
}

fn screen_entry(structure: &Structure, class: &dyn AngleClass) -> Result<(), CorpusError> {
    let budget = Budget { cap_objects: 2, cap_solutions: 128, cap_instances: 24, exhaustive: false };
    screen_class(structure, class, &budget).map_err(CorpusError::Screen)
}

/// The default corpus the acceptance runs iterate over.
pub fn default_entries(n: usize) -> Vec<CorpusEntry> {
    vec![
        split_structure(2, 1, &[0], n).expect("valid corpus entry"),
        split_structure(2, 2, &[1, 0], n).expect("valid corpus entry"),
        split_structure(3, 1, &[0], n).expect("valid corpus entry"),
        local_algebra_candidate(n).expect("valid corpus entry"),
    ]
}

/// Validates an arbitrary user structure the way corpus entries are
/// validated at load time.
pub fn validate_entry(structure: &Structure, class: &dyn AngleClass) -> Result<(), CorpusError> {
    screen_entry(structure, class)
}

/// The underlying presentation of the dual-numbers entry, exposed for tests
/// that need the raw category.
pub fn dual_numbers_category() -> PresentedCategory {
    local_algebra_candidate(4).expect("valid corpus entry").structure.cat.clone()
}
