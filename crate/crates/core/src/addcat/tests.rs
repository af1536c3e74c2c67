//! Category-level unit tests against the built-in presentations.

use super::*;
use crate::corpus::{dual_numbers_category, split_structure};

fn dual_numbers() -> PresentedCategory {
    dual_numbers_category()
}

fn two_simples_swapped() -> (PresentedCategory, SuspensionFunctor) {
    let entry = split_structure(2, 2, &[1, 0], 4).unwrap();
    let cat = entry.structure.cat.clone();
    match &entry.structure.shift {
        Shift::Strict(s) => (cat.clone(), s.clone()),
        _ => unreachable!(),
    }
}

fn x_endo(cat: &PresentedCategory) -> Morphism {
    Morphism::from_flat(cat, &ObjectExpr::generator(0), &ObjectExpr::generator(0), &[0, 1])
}

#[test]
fn identity_is_neutral_for_composition() {
    let cat = dual_numbers();
    let p2 = ObjectExpr::from_summands(vec![0, 0]);
    let id = Morphism::identity(&cat, &p2);
    let (all, _) = enumerate_hom(&cat, &p2, &p2, 1 << 10);
    for f in all {
        assert_eq!(Morphism::compose(&cat, &id, &f).unwrap(), f);
        assert_eq!(Morphism::compose(&cat, &f, &id).unwrap(), f);
    }
}

#[test]
fn square_zero_element_composes_to_zero() {
    let cat = dual_numbers();
    let x = x_endo(&cat);
    let xx = Morphism::compose(&cat, &x, &x).unwrap();
    assert!(xx.is_zero());
}

#[test]
fn cross_homs_vanish_in_the_two_simples() {
    let (cat, _) = two_simples_swapped();
    let s = ObjectExpr::generator(0);
    let t = ObjectExpr::generator(1);
    assert_eq!(hom_dim_obj(&cat, &s, &t), 0);
    // the only s → t morphism is zero, so every composite through it is zero
    let f = Morphism::zero(&cat, s.clone(), t.clone());
    let g = Morphism::zero(&cat, t, s);
    assert!(Morphism::compose(&cat, &g, &f).unwrap().is_zero());
}

#[test]
fn identity_is_an_isomorphism_and_x_is_not() {
    let cat = dual_numbers();
    let p = ObjectExpr::generator(0);
    assert!(is_isomorphism(&cat, &Morphism::identity(&cat, &p)));
    // brute-force oracle: none of the four endomorphisms inverts x
    let x = x_endo(&cat);
    let (all, full) = enumerate_hom(&cat, &p, &p, 16);
    assert!(full && all.len() == 4);
    let id = Morphism::identity(&cat, &p);
    assert!(all
        .iter()
        .all(|u| Morphism::compose(&cat, &x, u).unwrap() != id));
    assert!(!is_isomorphism(&cat, &x));
}

#[test]
fn iso_search_finds_the_swap() {
    let (cat, _) = two_simples_swapped();
    let st_obj = ObjectExpr::from_summands(vec![0, 1]);
    let ts_obj = ObjectExpr::from_summands(vec![1, 0]);
    match iso_search(&cat, &st_obj, &ts_obj, 64) {
        crate::report::SearchOutcome::Found(f) => {
            // the swap has identity blocks in the off-diagonal positions
            assert_eq!(f.block(0, 1), &[1]);
            assert_eq!(f.block(1, 0), &[1]);
        }
        other => panic!("expected the swap, got {:?}", other),
    }
}

#[test]
fn suspension_images_and_inverse() {
    let (cat, sus) = two_simples_swapped();
    let s = ObjectExpr::generator(0);
    let id_s = Morphism::identity(&cat, &s);
    let img = sus.apply(&cat, &id_s, 1);
    assert_eq!(img, Morphism::identity(&cat, &ObjectExpr::generator(1)));
    // round trip on every endomorphism of s⊕t
    let st_obj = ObjectExpr::from_summands(vec![0, 1]);
    let (all, _) = enumerate_hom(&cat, &st_obj, &st_obj, 64);
    for f in all {
        assert_eq!(sus.apply(&cat, &sus.apply(&cat, &f, 1), -1), f);
        let sig = sus.apply(&cat, &f, 1);
        assert_eq!(sig.dom(), &sus.apply_obj(&st_obj, 1));
    }
}

#[test]
fn opposite_is_an_involution() {
    let cat = dual_numbers();
    let op = opposite_category(&cat);
    let opop = opposite_category(&op);
    for g in 0..cat.gen_count() {
        for h in 0..cat.gen_count() {
            assert_eq!(cat.hom_dim(g, h), op.hom_dim(h, g));
            assert_eq!(cat.hom_dim(g, h), opop.hom_dim(g, h));
            for i in 0..cat.hom_dim(g, h) {
                let dim_khk = cat.hom_dim(g, h);
                for j in 0..dim_khk {
                    // compare a full composition table entry through the double dual
                    let orig = cat.compose_basis(g, g, h, i, j % cat.hom_dim(g, g).max(1));
                    let twice = opop.compose_basis(g, g, h, i, j % cat.hom_dim(g, g).max(1));
                    assert_eq!(orig, twice);
                }
            }
        }
    }
}

#[test]
fn opposite_reverses_composition() {
    let cat = dual_numbers();
    let p = ObjectExpr::generator(0);
    let op = opposite_category(&cat);
    let (all, _) = enumerate_hom(&cat, &p, &p, 16);
    for f in &all {
        for g in &all {
            let comp = Morphism::compose(&cat, g, f).unwrap();
            let op_comp =
                Morphism::compose(&op, &opposite_morphism(f), &opposite_morphism(g)).unwrap();
            assert_eq!(opposite_morphism(&comp), op_comp);
        }
    }
}

#[test]
fn opposite_suspension_inverts() {
    let (cat, sus) = two_simples_swapped();
    let op = opposite_category(&cat);
    let op_sus = opposite_suspension(&cat, &op, &sus).unwrap();
    for g in 0..cat.gen_count() {
        assert_eq!(op_sus.gen_image(g), sus.gen_preimage(g));
    }
}

// Independent oracle for block composition: extract every component through
// injections and projections, compose the scalar pieces, and reassemble.
fn naive_compose(cat: &PresentedCategory, g: &Morphism, f: &Morphism) -> Morphism {
    let mut out = Morphism::zero(cat, f.dom().clone(), g.cod().clone());
    for ci in 0..g.cod().len() {
        let pr = Morphism::projection(cat, g.cod(), ci);
        for di in 0..f.dom().len() {
            let inc = Morphism::injection(cat, f.dom(), di);
            let mut acc = vec![
                0u32;
                cat.hom_dim(f.dom().summand(di), g.cod().summand(ci))
            ];
            for bj in 0..f.cod().len() {
                let mid_pr = Morphism::projection(cat, f.cod(), bj);
                let mid_inc = Morphism::injection(cat, f.cod(), bj);
                let left = Morphism::compose(cat, &pr, g).unwrap();
                let left = Morphism::compose(cat, &left, &mid_inc).unwrap();
                let right = Morphism::compose(cat, &mid_pr, f).unwrap();
                let right = Morphism::compose(cat, &right, &inc).unwrap();
                let piece = Morphism::compose(cat, &left, &right).unwrap();
                for (k, &v) in piece.block(0, 0).iter().enumerate() {
                    acc[k] = crate::ffmat::fp_add(acc[k], v, cat.modulus());
                }
            }
            out.set_block(ci, di, acc);
        }
    }
    out
}

#[test]
fn block_composition_matches_the_naive_oracle() {
    use rand::{Rng, SeedableRng};
    let cat = dual_numbers();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let objects = [
        ObjectExpr::generator(0),
        ObjectExpr::from_summands(vec![0, 0]),
        ObjectExpr::from_summands(vec![0, 0, 0]),
        ObjectExpr::zero(),
    ];
    for a in &objects {
        for b in &objects {
            for c in &objects {
                for _ in 0..4 {
                    let df = hom_dim_obj(&cat, a, b);
                    let dg = hom_dim_obj(&cat, b, c);
                    let f_flat: Vec<u32> = (0..df).map(|_| rng.gen_range(0..2)).collect();
                    let g_flat: Vec<u32> = (0..dg).map(|_| rng.gen_range(0..2)).collect();
                    let f = Morphism::from_flat(&cat, a, b, &f_flat);
                    let g = Morphism::from_flat(&cat, b, c, &g_flat);
                    let fast = Morphism::compose(&cat, &g, &f).unwrap();
                    assert_eq!(fast, naive_compose(&cat, &g, &f));
                }
            }
        }
    }
}

#[test]
fn validation_names_the_broken_law() {
    // a unit violation: id composed with x declared to be zero
    let mut builder = CategoryBuilder::new(2);
    let g = builder.add_gen("P");
    builder.set_hom(g, g, &["id_P", "x"]);
    builder.set_id(g, &[1, 0]);
    builder.set_comp(g, g, g, 0, 0, &[1, 0]);
    builder.set_comp(g, g, g, 1, 0, &[0, 0]); // id then x should be x
    builder.set_comp(g, g, g, 0, 1, &[0, 1]);
    builder.set_comp(g, g, g, 1, 1, &[0, 0]);
    let err = builder.build().unwrap_err().to_string();
    assert!(err.contains("unit"), "{}", err);
    assert!(err.contains('x'), "{}", err);

    // an associativity violation on a three-dimensional endomorphism space
    let mut builder = CategoryBuilder::new(2);
    let g = builder.add_gen("Q");
    builder.set_hom(g, g, &["id_Q", "a", "b"]);
    builder.set_id(g, &[1, 0, 0]);
    for i in 0..3 {
        builder.set_comp(g, g, g, 0, i, {
            let mut e = vec![0, 0, 0];
            e[i] = 1;
            &e.clone()
        });
        builder.set_comp(g, g, g, i, 0, {
            let mut e = vec![0, 0, 0];
            e[i] = 1;
            &e.clone()
        });
    }
    // a∘a = b, b∘a = id (inconsistent with (a a) a vs a (a a))
    builder.set_comp(g, g, g, 1, 1, &[0, 0, 1]);
    builder.set_comp(g, g, g, 1, 2, &[1, 0, 0]);
    builder.set_comp(g, g, g, 2, 1, &[0, 0, 0]);
    builder.set_comp(g, g, g, 2, 2, &[0, 0, 0]);
    let err = builder.build().unwrap_err().to_string();
    assert!(err.contains("associativity"), "{}", err);
    assert!(err.contains('a'), "{}", err);
}

#[test]
fn endofunctor_composition_is_functorial() {
    let (cat, sus) = two_simples_swapped();
    let f = Endofunctor::from_suspension(&cat, &sus, 1);
    let ff = Endofunctor::compose(&cat, &f, &f);
    // the swap squares to the identity on objects
    for g in 0..cat.gen_count() {
        assert_eq!(ff.apply_obj(&ObjectExpr::generator(g)), ObjectExpr::generator(g));
    }
    let st_obj = ObjectExpr::from_summands(vec![0, 1]);
    let (all, _) = enumerate_hom(&cat, &st_obj, &st_obj, 64);
    for m in all {
        assert_eq!(ff.apply_mor(&cat, &m), m);
    }
}
