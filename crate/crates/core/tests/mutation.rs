//! Approximation predicates, mutation-pair validation, extension-closedness
//! and the Frobenius computation.

use nangulate::addcat::{enumerate_hom, precompose_matrix, Subcategory};
use nangulate::angles::{rotate_left, rotate_right, trivial_angle};
use nangulate::report::SearchOutcome;
use nangulate::corpus::{local_algebra_candidate, split_structure};
use nangulate::mutation::{
    check_frobenius, compute_e_injectives, find_left_approximation, find_right_approximation,
    is_d_epic, is_d_monic, is_extension_closed, is_monomorphism, rotated_trivial,
    validate_mutation_pair,
};
use nangulate::report::{Budget, Verdict};
use nangulate::{Morphism, ObjectExpr};

fn budget() -> Budget {
    Budget { cap_objects: 2, cap_solutions: 256, cap_instances: 60, exhaustive: false }
}

#[test]
fn monic_and_epic_predicates() {
    let entry = local_algebra_candidate(4).unwrap();
    let st = &entry.structure;
    let p = ObjectExpr::generator(0);
    let full = Subcategory::full(&st.cat);
    let zero = Subcategory::empty();
    let id = Morphism::identity(&st.cat, &p);
    assert!(is_d_monic(st, &id, &full));
    assert!(is_d_epic(st, &id, &full));
    let x = Morphism::from_flat(&st.cat, &p, &p, &[0, 1]);
    // oracle: the precomposition image of x on End(P) is {0, x}, missing the
    // identity, so the map is not surjective
    let (endos, _) = enumerate_hom(&st.cat, &p, &p, 16);
    let images: Vec<Morphism> = endos
        .iter()
        .map(|u| Morphism::compose(&st.cat, u, &x).unwrap())
        .collect();
    assert!(!images.contains(&id));
    assert_eq!(precompose_matrix(&st.cat, &x, &p).rank(), 1);
    assert!(!is_d_monic(st, &x, &full));
    assert!(!is_d_epic(st, &x, &full));
    // relative to the zero subcategory everything is monic and epic
    assert!(is_d_monic(st, &x, &zero));
    assert!(is_d_epic(st, &x, &zero));
    // x has nonzero kernel, so it is not monic in the absolute sense either
    assert!(!is_monomorphism(st, &x));
}

#[test]
fn left_approximation_search_order() {
    let entry = local_algebra_candidate(4).unwrap();
    let st = &entry.structure;
    let p = ObjectExpr::generator(0);
    let full = Subcategory::full(&st.cat);
    let zero = Subcategory::empty();
    // an object of D approximates itself by the identity, found before the
    // stacked-basis map
    match find_left_approximation(st, &p, &full, &budget()) {
        SearchOutcome::Found(f) => assert_eq!(f, Morphism::identity(&st.cat, &p)),
        other => panic!("expected the identity, got {:?}", other),
    }
    // relative to the zero subcategory the zero map into 0 is vacuously monic
    match find_left_approximation(st, &p, &zero, &budget()) {
        SearchOutcome::Found(f) => {
            assert!(f.cod().is_zero());
            assert!(f.is_zero());
        }
        other => panic!("expected the zero map, got {:?}", other),
    }
    // found approximations pass the predicate and land in D
    match find_right_approximation(st, &p, &full, &budget()) {
        SearchOutcome::Found(f) => {
            assert!(is_d_epic(st, &f, &full));
            assert!(full.contains_object(f.dom()));
        }
        other => panic!("expected a right approximation, got {:?}", other),
    }
}

#[test]
fn degenerate_pairs_validate_with_canonical_witnesses() {
    let entry = split_structure(2, 1, &[0], 4).unwrap();
    let st = &entry.structure;
    let full = Subcategory::full(&st.cat);
    let zero = Subcategory::empty();
    // D = Z = everything: the trivial angle settles condition one
    let (witness, report) = validate_mutation_pair(st, entry.class.as_ref(), &full, &full, &budget());
    assert_eq!(report.verdict, Verdict::Pass);
    let w = witness.unwrap();
    assert_eq!(w.forward[0].angle, trivial_angle(st, &ObjectExpr::generator(0)));
    // D = zero: the rotated trivial angle with its shifted endpoint
    let (witness, report) = validate_mutation_pair(st, entry.class.as_ref(), &full, &zero, &budget());
    assert_eq!(report.verdict, Verdict::Pass);
    let w = witness.unwrap();
    assert_eq!(w.forward[0].angle, rotated_trivial(st, &ObjectExpr::generator(0)));
    w.verify(st, entry.class.as_ref()).unwrap();
}

#[test]
fn missing_shifted_object_fails_condition_one() {
    // with the swap suspension, the shift of s0 is s1; a Z containing only
    // s0 admits no condition-one angle relative to the zero subcategory
    let entry = split_structure(2, 2, &[1, 0], 4).unwrap();
    let st = &entry.structure;
    let z = Subcategory::from_gens([0]);
    let zero = Subcategory::empty();
    let exhaustive = budget().exhaustive();
    let (witness, report) = validate_mutation_pair(st, entry.class.as_ref(), &z, &zero, &exhaustive);
    assert!(witness.is_none());
    assert_eq!(report.verdict, Verdict::Fail);
    assert!(report.witnesses[0].contains("s0"), "{:?}", report.witnesses);
    // without the exhaustive marker the same failure stays inconclusive
    let (witness, report) = validate_mutation_pair(st, entry.class.as_ref(), &z, &zero, &budget());
    assert!(witness.is_none());
    assert_eq!(report.verdict, Verdict::Inconclusive);
}

#[test]
fn witness_angles_pass_membership_and_the_screen() {
    let entry = local_algebra_candidate(4).unwrap();
    let st = &entry.structure;
    let full = Subcategory::full(&st.cat);
    let (witness, _) = validate_mutation_pair(st, entry.class.as_ref(), &full, &full, &budget());
    let w = witness.unwrap();
    let probes = nangulate::angles::enum_objects(st, 2);
    for ma in w.forward.iter().chain(w.backward.iter()) {
        for variance in
            [nangulate::angles::Variance::Covariant, nangulate::angles::Variance::Contravariant]
        {
            let rep = nangulate::angles::check_hom_exact(st, &ma.angle, variance, &probes, &budget());
            assert_eq!(rep.verdict, Verdict::Pass);
        }
    }
}

#[test]
fn extension_closure_detects_outside_middles() {
    let entry = split_structure(2, 2, &[0, 1], 4).unwrap();
    let st = &entry.structure;
    // the whole category is closed
    let full = Subcategory::full(&st.cat);
    assert_eq!(is_extension_closed(st, entry.class.as_ref(), &full, &budget()).verdict, Verdict::Pass);
    // {s0} is not: an interval angle on s1 has zero endpoints but s1 middles
    let z = Subcategory::from_gens([0]);
    let report = is_extension_closed(st, entry.class.as_ref(), &z, &budget());
    assert_eq!(report.verdict, Verdict::Fail);
    assert!(report.witnesses[0].contains("middle term"));
    // sanity: the offending member really is one
    let interval = rotate_right(st, &trivial_angle(st, &ObjectExpr::generator(1)));
    assert_eq!(entry.class.membership(st, &interval), nangulate::report::Membership::In);
    assert!(z.contains_object(&interval.objects[0]));
}

#[test]
fn split_structures_are_frobenius_with_every_generator_injective() {
    for entry in [split_structure(2, 1, &[0], 4).unwrap(), split_structure(2, 2, &[1, 0], 4).unwrap()]
    {
        let st = &entry.structure;
        let full = Subcategory::full(&st.cat);
        let (data, report) = compute_e_injectives(st, entry.class.as_ref(), &full, &budget());
        assert_eq!(report.verdict, Verdict::Pass, "{:?}", report.notes);
        assert_eq!(data.injectives, full);
        assert_eq!(data.projectives, full);
        let (found, report) = check_frobenius(st, entry.class.as_ref(), &full, &budget());
        assert!(found.is_some());
        assert_eq!(report.verdict, Verdict::Pass);
        // pipeline consistency: the injectives induce a mutation pair
        let data = found.unwrap();
        let (witness, report) =
            validate_mutation_pair(st, entry.class.as_ref(), &full, &data.injectives, &budget());
        assert!(witness.is_some());
        assert_eq!(report.verdict, Verdict::Pass);
    }
}

#[test]
fn zero_category_is_vacuously_frobenius() {
    let entry = split_structure(2, 0, &[], 4).unwrap();
    let st = &entry.structure;
    let full = Subcategory::full(&st.cat);
    let (found, report) = check_frobenius(st, entry.class.as_ref(), &full, &budget());
    assert!(found.is_some());
    assert_eq!(report.verdict, Verdict::Pass);
}

#[test]
fn monic_predicate_matches_the_opposite_epic_predicate() {
    let entry = local_algebra_candidate(4).unwrap();
    let st = &entry.structure;
    let (op_st, _) = nangulate::angles::build_opposite(st, entry.class.clone());
    let full = Subcategory::full(&st.cat);
    let p = ObjectExpr::generator(0);
    let pp = ObjectExpr::from_summands(vec![0, 0]);
    for (dom, cod) in [(&p, &p), (&p, &pp), (&pp, &p)] {
        let (all, _) = enumerate_hom(&st.cat, dom, cod, 300);
        for f in all {
            let f_op = nangulate::addcat::opposite_morphism(&f);
            assert_eq!(is_d_monic(st, &f, &full), is_d_epic(&op_st, &f_op, &full));
            assert_eq!(is_d_epic(st, &f, &full), is_d_monic(&op_st, &f_op, &full));
        }
    }
}

#[test]
fn rotated_trivial_starts_with_the_zero_map() {
    let entry = split_structure(3, 1, &[0], 5).unwrap();
    let st = &entry.structure;
    let seq = rotated_trivial(st, &ObjectExpr::generator(0));
    assert!(seq.maps[0].cod().is_zero());
    assert_eq!(rotate_left(st, &trivial_angle(st, &ObjectExpr::generator(0))), seq);
}
