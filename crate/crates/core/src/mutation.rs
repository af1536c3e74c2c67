//! Approximation theory for generator-subset subcategories: monic/epic
//! predicates relative to a subcategory, left and right approximations,
//! mutation-pair validation, extension-closedness, and the Frobenius
//! (injectives = projectives) pipeline.

use crate::addcat::{
    enumerate_hom, hom_dim_obj, postcompose_matrix, precompose_matrix, Morphism, ObjectExpr,
    Subcategory,
};
use crate::angles::{
    enum_objects, rotate_left, rotate_right, trivial_angle, AngleClass, NSequence, Structure,
};
use crate::report::{Budget, CheckReport, Membership, SearchOutcome, Verdict};
use serde::{Deserialize, Serialize};

/// `f: X → Y` is monic relative to `D` when precomposition
/// `Hom(Y, G) → Hom(X, G)` is surjective for every generator of `D`.
/// Checking generators suffices because Hom into a sum splits.
pub fn is_d_monic(st: &Structure, f: &Morphism, d: &Subcategory) -> bool {
    let cat = &st.cat;
    d.gens().all(|g| {
        let probe = ObjectExpr::generator(g);
        precompose_matrix(cat, f, &probe).is_surjective()
    })
}

/// Dual of `is_d_monic`: postcomposition `Hom(G, X) → Hom(G, Y)` must be
/// surjective for every generator of `D`.
pub fn is_d_epic(st: &Structure, f: &Morphism, d: &Subcategory) -> bool {
    let cat = &st.cat;
    d.gens().all(|g| {
        let probe = ObjectExpr::generator(g);
        postcompose_matrix(cat, f, &probe).is_surjective()
    })
}

/// A monomorphism in the plain categorical sense: postcomposition is
/// injective on every generator probe.
pub fn is_monomorphism(st: &Structure, f: &Morphism) -> bool {
    let cat = &st.cat;
    (0..cat.gen_count()).all(|g| {
        let probe = ObjectExpr::generator(g);
        postcompose_matrix(cat, f, &probe).is_injective()
    })
}

/// Dual: precomposition is injective on every generator probe.
pub fn is_epimorphism(st: &Structure, f: &Morphism) -> bool {
    let cat = &st.cat;
    (0..cat.gen_count()).all(|g| {
        let probe = ObjectExpr::generator(g);
        precompose_matrix(cat, f, &probe).is_injective()
    })
}

/// Candidate objects inside `d`, ordered by total multiplicity then
/// lexicographically, capped at `max_size`.
fn d_objects(st: &Structure, d: &Subcategory, max_size: usize) -> Vec<ObjectExpr> {
    enum_objects(st, max_size)
        .into_iter()
        .filter(|x| d.contains_object(x))
        .collect()
}

/// The stacked-basis map `X → ⊕_G G^{dim Hom(X,G)}` whose components are the
/// basis elements; it is always a left approximation, so the search below is
/// complete once targets of its size are reachable.
pub fn stacked_basis_map(st: &Structure, x: &ObjectExpr, d: &Subcategory) -> Morphism {
    let cat = &st.cat;
    let mut summands = Vec::new();
    let mut rows: Vec<(usize, usize)> = Vec::new(); // (generator, basis index)
    for g in d.gens() {
        let dim = hom_dim_obj(cat, x, &ObjectExpr::generator(g));
        for k in 0..dim {
            summands.push(g);
            rows.push((g, k));
        }
    }
    let target = ObjectExpr::from_summands(summands);
    let mut out = Morphism::zero(cat, x.clone(), target);
    for (row, (g, k)) in rows.iter().enumerate() {
        let e = crate::addcat::elementary_morphism(cat, x, &ObjectExpr::generator(*g), *k);
        for di in 0..x.len() {
            out.set_block(row, di, e.block(0, di).to_vec());
        }
    }
    out
}

/// First monic-into-`D` morphism in search order: targets by increasing
/// multiplicity, morphisms in coordinate order. The stacked-basis map bounds
/// the complete search size; if the budget runs out first it is returned
/// directly as the canonical approximation.
pub fn find_left_approximation(
    st: &Structure,
    x: &ObjectExpr,
    d: &Subcategory,
    budget: &Budget,
) -> SearchOutcome<Morphism> {
    let cat = &st.cat;
    let stacked = stacked_basis_map(st, x, d);
    let cap = stacked.cod().len().max(budget.cap_objects);
    let mut spent = 0usize;
    for target in d_objects(st, d, cap) {
        let (candidates, full) = enumerate_hom(cat, x, &target, budget.cap_solutions);
        for f in candidates {
            spent += 1;
            if is_d_monic(st, &f, d) {
                return SearchOutcome::Found(f);
            }
            if spent >= budget.cap_solutions {
                return SearchOutcome::Found(stacked);
            }
        }
        if !full {
            return SearchOutcome::Found(stacked);
        }
    }
    SearchOutcome::Found(stacked)
}

/// Dual search: sources by increasing multiplicity, epic-onto-`y` test.
/// There is no dual of the stacked map in general, so exhaustion is
/// reported honestly.
pub fn find_right_approximation(
    st: &Structure,
    y: &ObjectExpr,
    d: &Subcategory,
    budget: &Budget,
) -> SearchOutcome<Morphism> {
    let cat = &st.cat;
    let mut spent = 0usize;
    let mut exhausted = true;
    for source in d_objects(st, d, budget.cap_objects) {
        let (candidates, full) = enumerate_hom(cat, &source, y, budget.cap_solutions);
        if !full {
            exhausted = false;
        }
        for f in candidates {
            spent += 1;
            if is_d_epic(st, &f, d) {
                return SearchOutcome::Found(f);
            }
            if spent >= budget.cap_solutions {
                return SearchOutcome::Inconclusive;
            }
        }
    }
    if exhausted {
        SearchOutcome::NotFound
    } else {
        SearchOutcome::Inconclusive
    }
}

/// One direction of the mutation data: an angle through `D` with certified
/// approximations at both ends.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MutationAngle {
    pub angle: NSequence,
    /// The generator this angle was fixed for.
    pub base_gen: usize,
}

/// Witness that `(Z, Z)` is a mutation pair relative to `D`: one angle per
/// generator in each direction, every one re-verifiable against the
/// predicates and the membership oracle.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MutationPairWitness {
    pub z: Subcategory,
    pub d: Subcategory,
    /// Condition-one angles, indexed by starting generator of `Z`:
    /// `X → D_1 → … → D_{n-2} → Y → ΣX` with the `D_i` in `D`, `Y` in `Z`.
    pub forward: Vec<MutationAngle>,
    /// Condition-two angles; position n-1 holds the generator.
    pub backward: Vec<MutationAngle>,
}

impl MutationPairWitness {
    pub fn forward_for(&self, g: usize) -> Option<&MutationAngle> {
        self.forward.iter().find(|ma| ma.base_gen == g)
    }

    pub fn backward_for(&self, g: usize) -> Option<&MutationAngle> {
        self.backward.iter().find(|ma| ma.base_gen == g)
    }

    /// Re-verifies the whole witness: membership, subcategory membership of
    /// the middle terms, and both approximation certificates.
    pub fn verify(&self, st: &Structure, class: &dyn AngleClass) -> Result<(), String> {
        for (tag, angles, forward) in
            [("forward", &self.forward, true), ("backward", &self.backward, false)]
        {
            for ma in angles.iter() {
                verify_mutation_angle(st, class, &self.z, &self.d, ma, forward).map_err(|e| {
                    format!("{} angle for generator {}: {}", tag, st.cat.gen_name(ma.base_gen), e)
                })?;
            }
        }
        Ok(())
    }
}

fn verify_mutation_angle(
    st: &Structure,
    class: &dyn AngleClass,
    z: &Subcategory,
    d: &Subcategory,
    ma: &MutationAngle,
    forward: bool,
) -> Result<(), String> {
    let n = st.n;
    let angle = &ma.angle;
    angle.validate(st).map_err(|e| e.to_string())?;
    if class.membership(st, angle) != Membership::In {
        return Err("angle fails membership".into());
    }
    for i in 1..n - 1 {
        if !d.contains_object(&angle.objects[i]) {
            return Err(format!("middle term {} is outside D", i));
        }
    }
    let (start_ok, end_ok) = if forward {
        (
            angle.objects[0] == ObjectExpr::generator(ma.base_gen),
            z.contains_object(&angle.objects[n - 1]),
        )
    } else {
        (
            z.contains_object(&angle.objects[0]),
            angle.objects[n - 1] == ObjectExpr::generator(ma.base_gen),
        )
    };
    if !start_ok || !end_ok {
        return Err("endpoint condition violated".into());
    }
    if !is_d_monic(st, &angle.maps[0], d) {
        return Err("first map is not a left approximation".into());
    }
    if !is_d_epic(st, &angle.maps[n - 2], d) {
        return Err("next-to-last map is not a right approximation".into());
    }
    Ok(())
}

/// Condition-one candidates for a generator: members that start at it, then
/// completions of left-approximation candidates in search order.
fn forward_candidates(
    st: &Structure,
    class: &dyn AngleClass,
    x: usize,
    d: &Subcategory,
    budget: &Budget,
) -> Vec<NSequence> {
    let gx = ObjectExpr::generator(x);
    let mut out = Vec::new();
    let (members, _) = class.enumerate(st, budget);
    for m in members {
        if m.objects[0] == gx {
            out.push(m);
        }
    }
    let cat = &st.cat;
    let mut spent = 0usize;
    'targets: for target in d_objects(st, d, budget.cap_objects) {
        let (candidates, _) = enumerate_hom(cat, &gx, &target, budget.cap_solutions);
        for f in candidates {
            spent += 1;
            if spent > budget.cap_solutions {
                break 'targets;
            }
            if !is_d_monic(st, &f, d) {
                continue;
            }
            if let Some(seq) = class.complete(st, &f) {
                out.push(seq);
            }
        }
    }
    out
}

/// Condition-two candidates for a generator: members ending at it, then
/// completions of right-approximation candidates rotated into next-to-last
/// position.
fn backward_candidates(
    st: &Structure,
    class: &dyn AngleClass,
    y: usize,
    d: &Subcategory,
    budget: &Budget,
) -> Vec<NSequence> {
    let n = st.n;
    let gy = ObjectExpr::generator(y);
    let mut out = Vec::new();
    let (members, _) = class.enumerate(st, budget);
    for m in members {
        if m.objects[n - 1] == gy {
            out.push(m);
        }
    }
    let cat = &st.cat;
    let mut spent = 0usize;
    'sources: for source in d_objects(st, d, budget.cap_objects) {
        let (candidates, _) = enumerate_hom(cat, &source, &gy, budget.cap_solutions);
        for f in candidates {
            spent += 1;
            if spent > budget.cap_solutions {
                break 'sources;
            }
            if !is_d_epic(st, &f, d) {
                continue;
            }
            if let Some(seq) = class.complete(st, &f) {
                let mut rotated = seq;
                for _ in 0..n - 2 {
                    rotated = rotate_right(st, &rotated);
                }
                out.push(rotated);
            }
        }
    }
    out
}

/// Validates a mutation pair. A definite "not a pair" is reported only when
/// the budget is marked exhaustive and every candidate was falsified;
/// otherwise a fruitless search stays inconclusive.
pub fn validate_mutation_pair(
    st: &Structure,
    class: &dyn AngleClass,
    z: &Subcategory,
    d: &Subcategory,
    budget: &Budget,
) -> (Option<MutationPairWitness>, CheckReport) {
    let mut report = CheckReport::new("mutation-pair");
    if !d.is_subset_of(z) {
        report.fail("D must be a subset of Z".into());
        return (None, report);
    }
    let mut forward = Vec::new();
    let mut backward = Vec::new();
    for g in z.gens() {
        report.instances_checked += 1;
        let found = forward_candidates(st, class, g, d, budget)
            .into_iter()
            .map(|angle| MutationAngle { angle, base_gen: g })
            .find(|ma| verify_mutation_angle(st, class, z, d, ma, true).is_ok());
        match found {
            Some(ma) => {
                report.note(format!(
                    "fixed forward angle for {}: {}",
                    st.cat.gen_name(g),
                    ma.angle.display(st)
                ));
                forward.push(ma);
            }
            None => {
                if budget.exhaustive {
                    report.fail(format!(
                        "condition one fails for generator {}: every candidate angle was falsified",
                        st.cat.gen_name(g)
                    ));
                } else {
                    report.inconclusive(
                        budget,
                        format!(
                            "no condition-one angle found for generator {}",
                            st.cat.gen_name(g)
                        ),
                    );
                }
                return (None, report);
            }
        }
    }
    for g in z.gens() {
        report.instances_checked += 1;
        let found = backward_candidates(st, class, g, d, budget)
            .into_iter()
            .map(|angle| MutationAngle { angle, base_gen: g })
            .find(|ma| verify_mutation_angle(st, class, z, d, ma, false).is_ok());
        match found {
            Some(ma) => backward.push(ma),
            None => {
                if budget.exhaustive {
                    report.fail(format!(
                        "condition two fails for generator {}: every candidate angle was falsified",
                        st.cat.gen_name(g)
                    ));
                } else {
                    report.inconclusive(
                        budget,
                        format!(
                            "no condition-two angle found for generator {}",
                            st.cat.gen_name(g)
                        ),
                    );
                }
                return (None, report);
            }
        }
    }
    let witness = MutationPairWitness { z: z.clone(), d: d.clone(), forward, backward };
    if let Err(e) = witness.verify(st, class) {
        report.fail(format!("witness re-verification failed: {}", e));
        return (None, report);
    }
    (Some(witness), report)
}

/// Extension-closedness: members with both endpoints in `Z` must have every
/// middle term in `Z`.
pub fn is_extension_closed(
    st: &Structure,
    class: &dyn AngleClass,
    z: &Subcategory,
    budget: &Budget,
) -> CheckReport {
    let mut report = CheckReport::new("extension-closed");
    let (members, truncated) = class.enumerate(st, budget);
    if truncated {
        report.note("member stream truncated at the instance cap".into());
    }
    let n = st.n;
    for member in &members {
        if !z.contains_object(&member.objects[0]) || !z.contains_object(&member.objects[n - 1]) {
            continue;
        }
        report.instances_checked += 1;
        for i in 1..n - 1 {
            if !z.contains_object(&member.objects[i]) {
                report.fail(format!(
                    "member with endpoints in Z has middle term {} outside: {}",
                    i,
                    member.display(st)
                ));
                return report;
            }
        }
    }
    report
}

// ---------------------------------------------------------------------------
// Frobenius machinery
// ---------------------------------------------------------------------------

/// The internal angle class of `Z` together with its injectives and
/// projectives and the witnesses that there are enough of each.
#[derive(Debug, Clone)]
pub struct FrobeniusData {
    pub z: Subcategory,
    /// Members with every term in `Z`, up to the enumeration budget.
    pub internal_angles: Vec<NSequence>,
    pub injectives: Subcategory,
    pub projectives: Subcategory,
    /// Per generator of `Z`: an internal angle through injectives.
    pub enough_injectives: Vec<(usize, NSequence)>,
    /// Per generator of `Z`: an internal angle through projectives ending at
    /// the generator.
    pub enough_projectives: Vec<(usize, NSequence)>,
}

/// Admissible monomorphisms are the first maps of internal angles that are
/// monic; an object is injective when Hom(−, it) turns every admissible mono
/// into a surjection. Dually for projectives and admissible epis.
pub fn compute_e_injectives(
    st: &Structure,
    class: &dyn AngleClass,
    z: &Subcategory,
    budget: &Budget,
) -> (FrobeniusData, CheckReport) {
    let mut report = CheckReport::new("injective-computation");
    let n = st.n;
    let (members, truncated) = class.enumerate(st, budget);
    if truncated {
        report.note("member stream truncated at the instance cap".into());
    }
    let internal: Vec<NSequence> = members
        .into_iter()
        .filter(|m| m.objects.iter().all(|x| z.contains_object(x)))
        .collect();
    report.note(format!(
        "internal angle class read as: all members with every term in Z ({} found)",
        internal.len()
    ));
    let admissible_monos: Vec<&Morphism> = internal
        .iter()
        .map(|m| &m.maps[0])
        .filter(|f| is_monomorphism(st, f))
        .collect();
    let admissible_epis: Vec<&Morphism> = internal
        .iter()
        .map(|m| &m.maps[n - 2])
        .filter(|f| is_epimorphism(st, f))
        .collect();
    let cat = &st.cat;
    let mut injective_gens = Vec::new();
    let mut projective_gens = Vec::new();
    for g in z.gens() {
        let probe = ObjectExpr::generator(g);
        if admissible_monos.iter().all(|f| precompose_matrix(cat, f, &probe).is_surjective()) {
            injective_gens.push(g);
        } else {
            report.note(format!(
                "generator {} excluded from the injectives by an admissible monomorphism",
                cat.gen_name(g)
            ));
        }
        if admissible_epis.iter().all(|f| postcompose_matrix(cat, f, &probe).is_surjective()) {
            projective_gens.push(g);
        }
    }
    let injectives = Subcategory::from_gens(injective_gens);
    let projectives = Subcategory::from_gens(projective_gens);
    let mut enough_injectives = Vec::new();
    for g in z.gens() {
        report.instances_checked += 1;
        let found = forward_candidates(st, class, g, &injectives, budget).into_iter().find(|cand| {
            cand.objects.iter().all(|x| z.contains_object(x))
                && (1..n - 1).all(|i| injectives.contains_object(&cand.objects[i]))
                && class.membership(st, cand) == Membership::In
        });
        match found {
            Some(seq) => enough_injectives.push((g, seq)),
            None => report.inconclusive(
                budget,
                format!("no injective resolution angle found for {}", cat.gen_name(g)),
            ),
        }
    }
    let mut enough_projectives = Vec::new();
    for g in z.gens() {
        report.instances_checked += 1;
        let found =
            backward_candidates(st, class, g, &projectives, budget).into_iter().find(|cand| {
                cand.objects.iter().all(|x| z.contains_object(x))
                    && (1..n - 1).all(|i| projectives.contains_object(&cand.objects[i]))
                    && class.membership(st, cand) == Membership::In
            });
        match found {
            Some(seq) => enough_projectives.push((g, seq)),
            None => report.inconclusive(
                budget,
                format!("no projective resolution angle found for {}", cat.gen_name(g)),
            ),
        }
    }
    let data = FrobeniusData {
        z: z.clone(),
        internal_angles: internal,
        injectives,
        projectives,
        enough_injectives,
        enough_projectives,
    };
    (data, report)
}

/// Frobenius: injectives and projectives coincide and both "enough"
/// conditions hold on every generator of `Z`.
pub fn check_frobenius(
    st: &Structure,
    class: &dyn AngleClass,
    z: &Subcategory,
    budget: &Budget,
) -> (Option<FrobeniusData>, CheckReport) {
    let (data, sub) = compute_e_injectives(st, class, z, budget);
    let mut report = CheckReport::new("frobenius");
    report.instances_checked = sub.instances_checked;
    for note in &sub.notes {
        report.note(note.clone());
    }
    if sub.verdict == Verdict::Inconclusive {
        report.inconclusive(budget, "resolution search incomplete".into());
        return (None, report);
    }
    if data.injectives != data.projectives {
        report.fail(format!(
            "injectives {} and projectives {} differ",
            data.injectives.display(&st.cat),
            data.projectives.display(&st.cat)
        ));
        return (None, report);
    }
    if data.enough_injectives.len() != z.gen_count()
        || data.enough_projectives.len() != z.gen_count()
    {
        report.inconclusive(budget, "missing resolution witnesses".into());
        return (None, report);
    }
    report.note(format!("injectives = projectives = {}", data.injectives.display(&st.cat)));
    (Some(data), report)
}

/// The left-rotated trivial angle `X → 0 → … → 0 → ΣX → ΣX`, the canonical
/// condition-one angle when `D` is the zero subcategory.
pub fn rotated_trivial(st: &Structure, x: &ObjectExpr) -> NSequence {
    rotate_left(st, &trivial_angle(st, x))
}
