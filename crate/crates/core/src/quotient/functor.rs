//! The induced functor on the quotient: object images from the fixed
//! witness angles, morphism images by completion against them, the dual
//! quasi-inverse, and the natural-isomorphism searches tying them together.

use super::build::QuotientData;
use super::QuotientError;
use crate::addcat::{iso_inverse, is_isomorphism, Endofunctor, Morphism, ObjectExpr, Shift, WeakShift};
use crate::angles::{solve_affine, solve_sequence_morphism, Structure};
use crate::mutation::MutationPairWitness;
use crate::report::Budget;
use std::collections::BTreeMap;

/// The forward functor: sends each generator to the next-to-last term of its
/// fixed condition-one angle; morphisms go through the completion square
/// against the two fixed angles and project to the quotient.
pub fn build_forward_functor(
    base: &Structure,
    witness: &MutationPairWitness,
    quot: &QuotientData,
) -> Result<Endofunctor, QuotientError> {
    let n = base.n;
    let qn = quot.base_gens.len();
    let mut obj_images = Vec::with_capacity(qn);
    let mut hom_maps = Vec::with_capacity(qn);
    for qg in 0..qn {
        let g = quot.base_gens[qg];
        let angle = &witness
            .forward_for(g)
            .ok_or_else(|| QuotientError::CorruptedWitness("missing forward angle".into()))?
            .angle;
        obj_images.push(quot.to_quotient_obj(&angle.objects[n - 1]));
    }
    for qg in 0..qn {
        let g = quot.base_gens[qg];
        let src = witness.forward_for(g).expect("checked above").angle.clone();
        let mut maps_for_g = Vec::with_capacity(qn);
        for qh in 0..qn {
            let h = quot.base_gens[qh];
            let tgt = witness.forward_for(h).expect("checked above").angle.clone();
            let dim = quot.cat.hom_dim(qg, qh);
            let mut images = Vec::with_capacity(dim);
            for k in 0..dim {
                let e = crate::addcat::elementary_morphism(
                    &quot.cat,
                    &ObjectExpr::generator(qg),
                    &ObjectExpr::generator(qh),
                    k,
                );
                let lifted = quot.lift(&base.cat, &e);
                let mut known = BTreeMap::new();
                known.insert(0usize, lifted);
                let family =
                    solve_sequence_morphism(base, &src, &tgt, &known).ok_or_else(|| {
                        QuotientError::CorruptedWitness(format!(
                            "completion against the fixed angles of {} and {} is infeasible",
                            base.cat.gen_name(g),
                            base.cat.gen_name(h)
                        ))
                    })?;
                let comps = family.materialize(base, &family.space.particular);
                // unknown positions are 1..n-1; the last one is the image
                let image_base = comps[n - 2].clone();
                images.push(quot.project(&base.cat, &image_base));
            }
            maps_for_g.push(images);
        }
        hom_maps.push(maps_for_g);
    }
    Ok(Endofunctor::new(obj_images, hom_maps))
}

/// The dual functor from the condition-two angles: generators map to the
/// first term, morphism images complete leftwards.
pub fn build_backward_functor(
    base: &Structure,
    witness: &MutationPairWitness,
    quot: &QuotientData,
) -> Result<Endofunctor, QuotientError> {
    let n = base.n;
    let qn = quot.base_gens.len();
    let mut obj_images = Vec::with_capacity(qn);
    let mut hom_maps = Vec::with_capacity(qn);
    for qg in 0..qn {
        let g = quot.base_gens[qg];
        let angle = &witness
            .backward_for(g)
            .ok_or_else(|| QuotientError::CorruptedWitness("missing backward angle".into()))?
            .angle;
        obj_images.push(quot.to_quotient_obj(&angle.objects[0]));
    }
    for qg in 0..qn {
        let g = quot.base_gens[qg];
        let src = witness.backward_for(g).expect("checked above").angle.clone();
        let mut maps_for_g = Vec::with_capacity(qn);
        for qh in 0..qn {
            let h = quot.base_gens[qh];
            let tgt = witness.backward_for(h).expect("checked above").angle.clone();
            let dim = quot.cat.hom_dim(qg, qh);
            let mut images = Vec::with_capacity(dim);
            for k in 0..dim {
                let e = crate::addcat::elementary_morphism(
                    &quot.cat,
                    &ObjectExpr::generator(qg),
                    &ObjectExpr::generator(qh),
                    k,
                );
                let lifted = quot.lift(&base.cat, &e);
                let mut known = BTreeMap::new();
                known.insert(n - 1, lifted);
                let family =
                    solve_sequence_morphism(base, &src, &tgt, &known).ok_or_else(|| {
                        QuotientError::CorruptedWitness(format!(
                            "dual completion against the fixed angles of {} and {} is infeasible",
                            base.cat.gen_name(g),
                            base.cat.gen_name(h)
                        ))
                    })?;
                let comps = family.materialize(base, &family.space.particular);
                let image_base = comps[0].clone();
                images.push(quot.project(&base.cat, &image_base));
            }
            maps_for_g.push(images);
        }
        hom_maps.push(maps_for_g);
    }
    Ok(Endofunctor::new(obj_images, hom_maps))
}

/// Searches for a natural isomorphism `F ⇒ G` between endofunctors of the
/// quotient: naturality is one joint linear system over the components, and
/// solution points are scanned for all-invertible families. The found family
/// is recorded, not asserted unique.
pub fn search_natural_iso(
    quot_st: &Structure,
    f: &Endofunctor,
    g: &Endofunctor,
    budget: &Budget,
) -> Option<Vec<Morphism>> {
    let cat = &quot_st.cat;
    let qn = cat.gen_count();
    let slots: Vec<(ObjectExpr, ObjectExpr)> = (0..qn)
        .map(|q| {
            let gq = ObjectExpr::generator(q);
            (f.apply_obj(&gq), g.apply_obj(&gq))
        })
        .collect();
    let family = solve_affine(quot_st, slots, |assign| {
        let mut defect = Vec::new();
        for a in 0..qn {
            for b in 0..qn {
                for k in 0..cat.hom_dim(a, b) {
                    let e = crate::addcat::elementary_morphism(
                        cat,
                        &ObjectExpr::generator(a),
                        &ObjectExpr::generator(b),
                        k,
                    );
                    let fe = f.apply_mor(cat, &e);
                    let ge = g.apply_mor(cat, &e);
                    let lhs = Morphism::compose(cat, &assign[b], &fe).expect("naturality shapes");
                    let rhs = Morphism::compose(cat, &ge, &assign[a]).expect("naturality shapes");
                    defect.extend(Morphism::sub(cat, &lhs, &rhs).expect("shapes").to_flat());
                }
            }
        }
        defect
    })?;
    let (points, _) = family.tuples(quot_st, budget.cap_solutions);
    points
        .into_iter()
        .find(|comps| comps.iter().all(|c| is_isomorphism(cat, c)))
}

/// Assembles the weak shift for the quotient: forward and backward functors
/// plus natural isomorphisms witnessing both round trips.
pub fn build_weak_shift(
    base: &Structure,
    quot_st_cat: &Structure,
    witness: &MutationPairWitness,
    quot: &QuotientData,
    budget: &Budget,
) -> Result<(Shift, Vec<String>), QuotientError> {
    let fwd = build_forward_functor(base, witness, quot)?;
    let bwd = build_backward_functor(base, witness, quot)?;
    let cat = &quot_st_cat.cat;
    let ident = Endofunctor::identity(cat);
    let fb = Endofunctor::compose(cat, &fwd, &bwd);
    let bf = Endofunctor::compose(cat, &bwd, &fwd);
    let fb_iso = search_natural_iso(quot_st_cat, &fb, &ident, budget).ok_or_else(|| {
        QuotientError::Construction(
            "no natural isomorphism from the forward-backward round trip to the identity".into(),
        )
    })?;
    let bf_iso = search_natural_iso(quot_st_cat, &bf, &ident, budget).ok_or_else(|| {
        QuotientError::Construction(
            "no natural isomorphism from the backward-forward round trip to the identity".into(),
        )
    })?;
    let mut choices = Vec::new();
    for (q, iso) in fb_iso.iter().enumerate() {
        choices.push(format!(
            "round-trip iso at {}: {}",
            cat.gen_name(q),
            iso.display(cat)
        ));
    }
    let fb_iso_inv: Vec<Morphism> = fb_iso
        .iter()
        .map(|m| iso_inverse(cat, m).expect("searched isomorphisms invert"))
        .collect();
    let bf_iso_inv: Vec<Morphism> = bf_iso
        .iter()
        .map(|m| iso_inverse(cat, m).expect("searched isomorphisms invert"))
        .collect();
    Ok((
        Shift::Weak(Box::new(WeakShift { fwd, bwd, fb_iso, fb_iso_inv, bf_iso, bf_iso_inv })),
        choices,
    ))
}
