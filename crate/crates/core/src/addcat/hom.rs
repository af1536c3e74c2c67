//! Hom-space utilities: dimensions, enumeration, pre/post-composition
//! matrices, and isomorphism tests.

use super::category::{ObjectExpr, PresentedCategory};
use super::morphism::Morphism;
use crate::ffmat::{enumerate_vectors, FpMatrix};
use crate::report::SearchOutcome;

/// Dimension of `Hom(x, y)` as an `F_p`-space.
pub fn hom_dim_obj(cat: &PresentedCategory, x: &ObjectExpr, y: &ObjectExpr) -> usize {
    let mut dim = 0;
    for ci in 0..y.len() {
        for di in 0..x.len() {
            dim += cat.hom_dim(x.summand(di), y.summand(ci));
        }
    }
    dim
}

/// The morphism whose flat coordinate vector is the `idx`-th standard basis
/// vector of `Hom(x, y)`.
pub fn elementary_morphism(
    cat: &PresentedCategory,
    x: &ObjectExpr,
    y: &ObjectExpr,
    idx: usize,
) -> Morphism {
    let dim = hom_dim_obj(cat, x, y);
    let mut flat = vec![0u32; dim];
    flat[idx] = 1;
    Morphism::from_flat(cat, x, y, &flat)
}

/// All morphisms `x → y` in flat-coordinate lexicographic order, capped at
/// `limit`. The flag reports whether the whole space was produced.
pub fn enumerate_hom(
    cat: &PresentedCategory,
    x: &ObjectExpr,
    y: &ObjectExpr,
    limit: usize,
) -> (Vec<Morphism>, bool) {
    let dim = hom_dim_obj(cat, x, y);
    let (vecs, full) = enumerate_vectors(cat.modulus(), dim, limit);
    (vecs.into_iter().map(|v| Morphism::from_flat(cat, x, y, &v)).collect(), full)
}

/// Matrix of `u ↦ g ∘ u` as a map `Hom(w, g.dom) → Hom(w, g.cod)`.
pub fn postcompose_matrix(cat: &PresentedCategory, g: &Morphism, w: &ObjectExpr) -> FpMatrix {
    let src_dim = hom_dim_obj(cat, w, g.dom());
    let tgt_dim = hom_dim_obj(cat, w, g.cod());
    let cols: Vec<Vec<u32>> = (0..src_dim)
        .map(|i| {
            let e = elementary_morphism(cat, w, g.dom(), i);
            Morphism::compose(cat, g, &e).expect("endpoints agree").to_flat()
        })
        .collect();
    FpMatrix::from_cols(cat.modulus(), tgt_dim, &cols).expect("column shapes agree")
}

/// Matrix of `u ↦ u ∘ f` as a map `Hom(f.cod, w) → Hom(f.dom, w)`.
pub fn precompose_matrix(cat: &PresentedCategory, f: &Morphism, w: &ObjectExpr) -> FpMatrix {
    let src_dim = hom_dim_obj(cat, f.cod(), w);
    let tgt_dim = hom_dim_obj(cat, f.dom(), w);
    let cols: Vec<Vec<u32>> = (0..src_dim)
        .map(|i| {
            let e = elementary_morphism(cat, f.cod(), w, i);
            Morphism::compose(cat, &e, f).expect("endpoints agree").to_flat()
        })
        .collect();
    FpMatrix::from_cols(cat.modulus(), tgt_dim, &cols).expect("column shapes agree")
}

/// Two-sided invertibility, decided by solving `f∘u = id` and `v∘f = id`.
pub fn is_isomorphism(cat: &PresentedCategory, f: &Morphism) -> bool {
    iso_inverse(cat, f).is_some()
}

/// The two-sided inverse of `f`, when it exists.
pub fn iso_inverse(cat: &PresentedCategory, f: &Morphism) -> Option<Morphism> {
    // f∘u = id_cod with u: cod -> dom
    let l = postcompose_matrix(cat, f, f.cod());
    let id_cod = Morphism::identity(cat, f.cod()).to_flat();
    let u = l.solve(&id_cod).expect("shapes agree")?;
    // v∘f = id_dom with v: cod -> dom
    let r = precompose_matrix(cat, f, f.dom());
    let id_dom = Morphism::identity(cat, f.dom()).to_flat();
    r.solve(&id_dom).expect("shapes agree")?;
    // both one-sided inverses exist, so they coincide
    Some(Morphism::from_flat(cat, f.cod(), f.dom(), &u.particular))
}

/// First isomorphism `x → y` in enumeration order. `NotFound` is only
/// reported when the whole Hom space fit inside the budget.
pub fn iso_search(
    cat: &PresentedCategory,
    x: &ObjectExpr,
    y: &ObjectExpr,
    limit: usize,
) -> SearchOutcome<Morphism> {
    let (candidates, exhausted) = enumerate_hom(cat, x, y, limit);
    for f in candidates {
        if is_isomorphism(cat, &f) {
            return SearchOutcome::Found(f);
        }
    }
    if exhausted {
        SearchOutcome::NotFound
    } else {
        SearchOutcome::Inconclusive
    }
}
