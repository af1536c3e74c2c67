//! Sequence machinery and axiom checkers: rotation arithmetic, mapping
//! cones, completion against a brute-force oracle, and deliberately broken
//! classes that the checkers must catch.

use nangulate::addcat::{enumerate_hom, hom_dim_obj};
use nangulate::angles::{
    assemble_octahedron, check_n1, check_n2, check_n4, complete_morphism, mapping_cone,
    rotate_left, rotate_right, search_octahedron, sequence_direct_sum, sequence_iso_search,
    trivial_angle, AngleClass, FilteredClass, NSequence, OctahedronInstance, OctahedronOutcome,
    SequenceMorphism, Structure,
};
use nangulate::corpus::{local_algebra_candidate, split_structure, two_simples_swap};
use nangulate::report::{Budget, Membership, SearchOutcome, Verdict};
use nangulate::{Morphism, ObjectExpr};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

fn budget() -> Budget {
    Budget { cap_objects: 2, cap_solutions: 256, cap_instances: 40, exhaustive: false }
}

fn random_valid_sequence(st: &Structure, rng: &mut ChaCha8Rng) -> NSequence {
    nangulate::angles::random_sequence(st, 2, rng)
}

#[test]
fn rotation_sign_over_f2_and_f3() {
    // over F_2 the rotated trivial angle ends in the shifted identity
    let entry = split_structure(2, 1, &[0], 4).unwrap();
    let st = &entry.structure;
    let triv = trivial_angle(st, &ObjectExpr::generator(0));
    let rot = rotate_left(st, &triv);
    let sigma_id = st.fwd_mor(&triv.maps[0]);
    assert_eq!(rot.maps[3], sigma_id);

    // over F_3 with n = 5 the sign is (-1)^5 = 2
    let entry = split_structure(3, 1, &[0], 5).unwrap();
    let st = &entry.structure;
    let triv = trivial_angle(st, &ObjectExpr::generator(0));
    let rot = rotate_left(st, &triv);
    let expected = st.fwd_mor(&triv.maps[0]).scale(&st.cat, 2);
    assert_eq!(rot.maps[4], expected);
}

#[test]
fn rotations_invert_each_other() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for entry in [
        split_structure(2, 2, &[1, 0], 4).unwrap(),
        split_structure(3, 1, &[0], 3).unwrap(),
        local_algebra_candidate(5).unwrap(),
    ] {
        let st = &entry.structure;
        for _ in 0..50 {
            let seq = random_valid_sequence(st, &mut rng);
            seq.validate(st).unwrap();
            assert_eq!(rotate_right(st, &rotate_left(st, &seq)), seq);
            assert_eq!(rotate_left(st, &rotate_right(st, &seq)), seq);
            // n rotations each way also return home
            let mut left = seq.clone();
            let mut right = seq.clone();
            for _ in 0..st.n {
                left = rotate_left(st, &left);
                right = rotate_right(st, &right);
            }
            for _ in 0..st.n {
                left = rotate_right(st, &left);
                right = rotate_left(st, &right);
            }
            assert_eq!(left, seq);
            assert_eq!(right, seq);
        }
    }
}

#[test]
fn rotation_matches_the_shift_and_sign_recipe() {
    // manual oracle: build the left rotation by hand on a random sequence
    let entry = local_algebra_candidate(4).unwrap();
    let st = &entry.structure;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let seq = random_valid_sequence(st, &mut rng);
        let rot = rotate_left(st, &seq);
        let mut expect_objects = seq.objects[1..].to_vec();
        expect_objects.push(st.fwd_obj(&seq.objects[0]));
        assert_eq!(rot.objects, expect_objects);
        for i in 0..st.n - 1 {
            assert_eq!(rot.maps[i], seq.maps[i + 1]);
        }
        // (-1)^4 = 1, so the wrap map is exactly the shifted first map
        assert_eq!(rot.maps[st.n - 1], st.fwd_mor(&seq.maps[0]));
    }
}

#[test]
fn cone_of_identity_splits_into_rotated_trivial_angles() {
    let entry = split_structure(2, 1, &[0], 4).unwrap();
    let st = &entry.structure;
    let triv = trivial_angle(st, &ObjectExpr::generator(0));
    let id_mor = SequenceMorphism {
        components: triv.objects.iter().map(|x| Morphism::identity(&st.cat, x)).collect(),
    };
    let cone = mapping_cone(st, &triv, &triv, &id_mor).unwrap();
    cone.validate(st).unwrap();
    assert_eq!(entry.class.membership(st, &cone), Membership::In);
    // expected decomposition computed by expanding the block formula: the
    // cone is isomorphic to trivial ⊕ left-rotated trivial
    let expected = sequence_direct_sum(st, &triv, &rotate_left(st, &triv));
    assert_eq!(cone.objects, expected.objects);
    match sequence_iso_search(st, &cone, &expected, 256) {
        SearchOutcome::Found(_) => {}
        other => panic!("cone should match the decomposition, got {:?}", other),
    }
}

#[test]
fn cone_of_zero_is_rotation_plus_target() {
    let entry = split_structure(2, 2, &[1, 0], 4).unwrap();
    let st = &entry.structure;
    let a = trivial_angle(st, &ObjectExpr::generator(0));
    let b = trivial_angle(st, &ObjectExpr::generator(1));
    let zero_mor = SequenceMorphism {
        components: (0..st.n)
            .map(|i| Morphism::zero(&st.cat, a.objects[i].clone(), b.objects[i].clone()))
            .collect(),
    };
    let cone = mapping_cone(st, &a, &b, &zero_mor).unwrap();
    // over F_2 the block formula degenerates coordinatewise
    let expected = sequence_direct_sum(st, &rotate_left(st, &a), &b);
    assert_eq!(cone, expected);
}

#[test]
fn cone_endpoint_is_structural() {
    let entry = local_algebra_candidate(4).unwrap();
    let st = &entry.structure;
    let wrap = nangulate::angles::x_wrap_sequence(st);
    let id_mor = SequenceMorphism {
        components: wrap.objects.iter().map(|x| Morphism::identity(&st.cat, x)).collect(),
    };
    let cone = mapping_cone(st, &wrap, &wrap, &id_mor).unwrap();
    assert_eq!(cone.maps[st.n - 1].cod(), &st.fwd_obj(&cone.objects[0]));
    // rotating inputs commutes with the cone construction at even n
    let rot_inputs = mapping_cone(
        st,
        &rotate_left(st, &wrap),
        &rotate_left(st, &wrap),
        &SequenceMorphism {
            components: (0..st.n)
                .map(|i| id_mor.components[(i + 1) % st.n].clone())
                .collect(),
        },
    )
    .unwrap();
    assert_eq!(rotate_left(st, &cone), rot_inputs);
}

#[test]
fn cone_requires_commuting_squares() {
    let entry = local_algebra_candidate(4).unwrap();
    let st = &entry.structure;
    let wrap = nangulate::angles::x_wrap_sequence(st);
    let triv = trivial_angle(st, &ObjectExpr::generator(0));
    let bad = SequenceMorphism {
        components: (0..st.n)
            .map(|i| {
                Morphism::from_flat(
                    &st.cat,
                    &wrap.objects[i],
                    &triv.objects[i],
                    &vec![1; hom_dim_obj(&st.cat, &wrap.objects[i], &triv.objects[i])],
                )
            })
            .collect(),
    };
    assert!(mapping_cone(st, &wrap, &triv, &bad).is_err());
}

// brute-force oracle: enumerate every morphism tuple and keep the commuting
// ones; the solver's affine space must produce exactly this set
fn brute_completions(
    st: &Structure,
    sx: &NSequence,
    sy: &NSequence,
    phi1: &Morphism,
    phi2: &Morphism,
) -> Vec<Vec<Morphism>> {
    let n = st.n;
    let cat = &st.cat;
    let mut results = Vec::new();
    let dims: Vec<usize> =
        (2..n).map(|i| hom_dim_obj(cat, &sx.objects[i], &sy.objects[i])).collect();
    let total: usize = dims.iter().sum();
    let (vectors, full) = nangulate::ffmat::enumerate_vectors(cat.modulus(), total, 1 << 16);
    assert!(full, "oracle needs the whole space");
    for flat in vectors {
        let mut comps = vec![phi1.clone(), phi2.clone()];
        let mut off = 0;
        for (i, &d) in dims.iter().enumerate() {
            comps.push(Morphism::from_flat(
                cat,
                &sx.objects[i + 2],
                &sy.objects[i + 2],
                &flat[off..off + d],
            ));
            off += d;
        }
        let candidate = SequenceMorphism { components: comps };
        if candidate.validate(st, sx, sy).is_ok() {
            results.push(candidate.components[2..].to_vec());
        }
    }
    results
}

#[test]
fn completion_matches_the_brute_force_oracle() {
    let entry = split_structure(2, 1, &[0], 4).unwrap();
    let st = &entry.structure;
    let triv = trivial_angle(st, &ObjectExpr::generator(0));
    let rot = rotate_left(st, &triv);

    // identity completion solves the identity square
    let id0 = Morphism::identity(&st.cat, &triv.objects[0]);
    let id1 = Morphism::identity(&st.cat, &triv.objects[1]);
    let family = complete_morphism(st, &id0, &id1, &triv, &triv).unwrap().unwrap();
    let (points, _) = family.tuples(st, 64);
    let identity_completion: Vec<Morphism> =
        (2..st.n).map(|i| Morphism::identity(&st.cat, &triv.objects[i])).collect();
    assert!(points.contains(&identity_completion));

    // zero completion solves the zero square
    let z0 = Morphism::zero(&st.cat, triv.objects[0].clone(), rot.objects[0].clone());
    let z1 = Morphism::zero(&st.cat, triv.objects[1].clone(), rot.objects[1].clone());
    let family = complete_morphism(st, &z0, &z1, &triv, &rot).unwrap().unwrap();
    let (points, _) = family.tuples(st, 64);
    let zero_completion: Vec<Morphism> = (2..st.n)
        .map(|i| Morphism::zero(&st.cat, triv.objects[i].clone(), rot.objects[i].clone()))
        .collect();
    assert!(points.contains(&zero_completion));

    // full agreement with enumeration on sampled commuting squares
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (members, _) = entry.class.enumerate(st, &budget());
    for _ in 0..6 {
        let sx = &members[rng.gen_range(0..members.len())];
        let sy = &members[rng.gen_range(0..members.len())];
        let d0 = hom_dim_obj(&st.cat, &sx.objects[0], &sy.objects[0]);
        let d1 = hom_dim_obj(&st.cat, &sx.objects[1], &sy.objects[1]);
        let f0 = Morphism::from_flat(
            &st.cat,
            &sx.objects[0],
            &sy.objects[0],
            &(0..d0).map(|_| rng.gen_range(0..2)).collect::<Vec<_>>(),
        );
        let f1 = Morphism::from_flat(
            &st.cat,
            &sx.objects[1],
            &sy.objects[1],
            &(0..d1).map(|_| rng.gen_range(0..2)).collect::<Vec<_>>(),
        );
        match complete_morphism(st, &f0, &f1, sx, sy) {
            Err(_) => continue, // first square does not commute
            Ok(solution) => {
                let mut brute = brute_completions(st, sx, sy, &f0, &f1);
                brute.sort_by_key(|comps| comps.iter().map(|m| m.to_flat()).collect::<Vec<_>>());
                let mut solved: Vec<Vec<Morphism>> = match solution {
                    None => Vec::new(),
                    Some(family) => family.tuples(st, 1 << 16).0,
                };
                solved.sort_by_key(|comps| comps.iter().map(|m| m.to_flat()).collect::<Vec<_>>());
                solved.dedup();
                assert_eq!(solved, brute);
            }
        }
    }
}

#[test]
fn first_square_violation_is_a_precondition_error() {
    let entry = local_algebra_candidate(4).unwrap();
    let st = &entry.structure;
    let wrap = nangulate::angles::x_wrap_sequence(st);
    let triv = trivial_angle(st, &ObjectExpr::generator(0));
    // identity against x-first-map cannot commute with zero on the right
    let one = Morphism::identity(&st.cat, &wrap.objects[0]);
    let zero = Morphism::zero(&st.cat, wrap.objects[1].clone(), triv.objects[1].clone());
    assert!(matches!(
        complete_morphism(st, &one, &zero, &wrap, &triv),
        Err(nangulate::angles::AngleError::FirstSquare) | Err(_)
    ));
}

#[test]
fn defective_class_fails_trivial_angle_check() {
    let entry = split_structure(2, 2, &[1, 0], 4).unwrap();
    let st = &entry.structure;
    let rejected = trivial_angle(st, &ObjectExpr::generator(1));
    let defective = FilteredClass {
        inner: entry.class.clone(),
        rejects: vec![rejected],
        label: "split-missing-trivial".into(),
    };
    let reports = check_n1(st, &defective, &budget(), 7);
    let n1b = reports.iter().find(|r| r.name == "N1b").unwrap();
    assert_eq!(n1b.verdict, Verdict::Fail);
    assert!(n1b.witnesses[0].contains("s1"), "{:?}", n1b.witnesses);
}

#[test]
fn defective_class_fails_right_rotation_check() {
    let entry = split_structure(2, 1, &[0], 4).unwrap();
    let st = &entry.structure;
    let triv = trivial_angle(st, &ObjectExpr::generator(0));
    let defective = FilteredClass {
        inner: entry.class.clone(),
        rejects: vec![rotate_right(st, &triv)],
        label: "split-broken-right-rotation".into(),
    };
    let report = check_n2(st, &defective, &budget());
    assert_eq!(report.verdict, Verdict::Fail);
    assert!(report.witnesses[0].contains("right rotation"), "{:?}", report.witnesses);
}

// a class rejecting every sequence with a genuinely composite object; its
// cones can never be members
struct NoSumsClass {
    inner: Arc<dyn AngleClass>,
}

impl AngleClass for NoSumsClass {
    fn name(&self) -> &str {
        "split-rejecting-sums"
    }
    fn membership(&self, st: &Structure, seq: &NSequence) -> Membership {
        if seq.objects.iter().any(|o| o.len() >= 2) {
            return Membership::Out;
        }
        self.inner.membership(st, seq)
    }
    fn complete(&self, st: &Structure, f1: &Morphism) -> Option<NSequence> {
        self.inner.complete(st, f1)
    }
    fn enumerate(&self, st: &Structure, budget: &Budget) -> (Vec<NSequence>, bool) {
        let (members, truncated) = self.inner.enumerate(st, budget);
        (members.into_iter().filter(|m| m.objects.iter().all(|o| o.len() < 2)).collect(), truncated)
    }
}

#[test]
fn sum_rejecting_class_fails_the_cone_check() {
    let entry = split_structure(2, 1, &[0], 4).unwrap();
    let st = &entry.structure;
    let defective = NoSumsClass { inner: entry.class.clone() };
    let report = check_n4(st, &defective, &budget(), 7);
    assert_eq!(report.verdict, Verdict::Fail);
    assert!(report.witnesses[0].contains("cone"), "{:?}", report.witnesses);
}

#[test]
fn degenerate_octahedron_admits_the_zero_connecting_witness() {
    let entry = split_structure(2, 1, &[0], 4).unwrap();
    let st = &entry.structure;
    let n = st.n;
    let member = sequence_direct_sum(
        st,
        &trivial_angle(st, &ObjectExpr::generator(0)),
        &rotate_left(st, &trivial_angle(st, &ObjectExpr::generator(0))),
    );
    let phi2 = Morphism::identity(&st.cat, &member.objects[1]);
    let col = trivial_angle(st, &member.objects[1]);
    let inst = OctahedronInstance {
        row1: member.clone(),
        row2: member.clone(),
        col,
        phi2,
    };
    inst.validate(st).unwrap();
    // hand witness: identity row comparison, zero connecting families
    let phis: Vec<Morphism> =
        member.objects.iter().map(|x| Morphism::identity(&st.cat, x)).collect();
    let psis: Vec<Morphism> = (2..n)
        .map(|j| Morphism::zero(&st.cat, inst.row2.objects[j].clone(), inst.col.objects[j].clone()))
        .collect();
    let diags: Vec<Morphism> = (3..n)
        .map(|k| {
            Morphism::zero(&st.cat, inst.row1.objects[k].clone(), inst.col.objects[k - 1].clone())
        })
        .collect();
    let long = assemble_octahedron(st, &inst, &phis, &psis, &diags);
    long.validate(st).unwrap();
    assert_eq!(entry.class.membership(st, &long), Membership::In);
    // the bounded search also finds a witness
    match search_octahedron(st, entry.class.as_ref(), &inst, &budget()) {
        OctahedronOutcome::Witnessed(w) => {
            let lhs = Morphism::compose(&st.cat, &inst.col.maps[n - 1], w.col_fill.last().unwrap())
                .unwrap();
            let rhs = Morphism::compose(
                &st.cat,
                &st.fwd_mor(&inst.row1.maps[0]),
                &inst.row2.maps[n - 1],
            )
            .unwrap();
            assert_eq!(lhs, rhs);
        }
        _ => panic!("expected a witness"),
    }
}

#[test]
fn solver_spaces_enumerate_zero_first() {
    let entry = split_structure(2, 1, &[0], 4).unwrap();
    let st = &entry.structure;
    let triv = trivial_angle(st, &ObjectExpr::generator(0));
    let zero0 = Morphism::zero(&st.cat, triv.objects[0].clone(), triv.objects[0].clone());
    let zero1 = Morphism::zero(&st.cat, triv.objects[1].clone(), triv.objects[1].clone());
    let family = complete_morphism(st, &zero0, &zero1, &triv, &triv).unwrap().unwrap();
    let (points, _) = family.tuples(st, 4);
    // the particular solution of the homogeneous system is the zero tuple
    assert!(points[0].iter().all(|m| m.is_zero()));
}

#[test]
fn k_fold_rotations_respect_memberships() {
    let entry = two_simples_swap(2, 4).unwrap();
    let st = &entry.structure;
    let (members, _) = entry.class.enumerate(st, &budget());
    for member in members.iter().take(10) {
        let mut seq = member.clone();
        for _ in 0..st.n {
            seq = rotate_left(st, &seq);
            assert_eq!(entry.class.membership(st, &seq), Membership::In);
        }
    }
    let _ = enumerate_hom(&st.cat, &ObjectExpr::generator(0), &ObjectExpr::generator(0), 4);
}
