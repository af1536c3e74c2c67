//! Joint linear systems over unknown morphism coordinates.
//!
//! Commutativity constraints are affine-linear in the unknown coordinates, so
//! every completion problem here is assembled by evaluating a defect function
//! at the zero assignment and at each unit coordinate, then solved exactly.
//! Solution spaces enumerate deterministically: lexicographic in the
//! kernel-basis coefficients, zero vector first, so witnesses are replayable.

use super::sequence::{NSequence, SequenceMorphism};
use super::Structure;
use crate::addcat::{hom_dim_obj, is_isomorphism, Morphism, ObjectExpr};
use crate::ffmat::{fp_sub, AffineSpace, FpMatrix};
use crate::report::SearchOutcome;
use std::collections::BTreeMap;

/// An affine family of morphism tuples: one slot per unknown position.
#[derive(Debug, Clone)]
pub struct AffineMorphisms {
    pub slots: Vec<(ObjectExpr, ObjectExpr)>,
    pub dims: Vec<usize>,
    pub space: AffineSpace,
}

impl AffineMorphisms {
    pub fn materialize(&self, st: &Structure, flat: &[u32]) -> Vec<Morphism> {
        let mut out = Vec::with_capacity(self.slots.len());
        let mut off = 0;
        for ((dom, cod), &d) in self.slots.iter().zip(&self.dims) {
            out.push(Morphism::from_flat(&st.cat, dom, cod, &flat[off..off + d]));
            off += d;
        }
        out
    }

    /// First `limit` tuples in enumeration order plus an exhaustion flag.
    pub fn tuples(&self, st: &Structure, limit: usize) -> (Vec<Vec<Morphism>>, bool) {
        let (points, full) = self.space.points(limit);
        (points.iter().map(|p| self.materialize(st, p)).collect(), full)
    }

    pub fn kernel_dim(&self) -> usize {
        self.space.kernel.len()
    }
}

/// Solves an affine system over morphism slots. `eval` maps a full slot
/// assignment to a defect vector and must be affine-linear in the flat
/// coordinates; the system is `defect = 0`.
pub fn solve_affine(
    st: &Structure,
    slots: Vec<(ObjectExpr, ObjectExpr)>,
    eval: impl Fn(&[Morphism]) -> Vec<u32>,
) -> Option<AffineMorphisms> {
    let cat = &st.cat;
    let p = cat.modulus();
    let dims: Vec<usize> = slots.iter().map(|(d, c)| hom_dim_obj(cat, d, c)).collect();
    let total: usize = dims.iter().sum();
    let zero_assign: Vec<Morphism> = slots
        .iter()
        .map(|(d, c)| Morphism::zero(cat, d.clone(), c.clone()))
        .collect();
    let base = eval(&zero_assign);
    let mut cols: Vec<Vec<u32>> = Vec::with_capacity(total);
    for unit in 0..total {
        let mut flat = vec![0u32; total];
        flat[unit] = 1;
        let assign = materialize_flat(st, &slots, &dims, &flat);
        let image = eval(&assign);
        debug_assert_eq!(image.len(), base.len(), "defect length must be constant");
        cols.push(image.iter().zip(&base).map(|(&a, &b)| fp_sub(a, b, p)).collect());
    }
    let matrix = FpMatrix::from_cols(p, base.len(), &cols).expect("defect shapes agree");
    let rhs: Vec<u32> = base.iter().map(|&b| fp_sub(0, b, p)).collect();
    let sol = matrix.solve(&rhs).expect("shapes agree")?;
    Some(AffineMorphisms { slots, dims, space: sol.space(p) })
}

fn materialize_flat(
    st: &Structure,
    slots: &[(ObjectExpr, ObjectExpr)],
    dims: &[usize],
    flat: &[u32],
) -> Vec<Morphism> {
    let mut out = Vec::with_capacity(slots.len());
    let mut off = 0;
    for ((dom, cod), &d) in slots.iter().zip(dims) {
        out.push(Morphism::from_flat(&st.cat, dom, cod, &flat[off..off + d]));
        off += d;
    }
    out
}

/// Solves for the unknown components of a sequence morphism `src → tgt`,
/// with the components listed in `known` held fixed. All n commuting squares
/// (the last one against the shifted first component) are imposed jointly.
/// Returns `None` when the joint system is infeasible.
pub fn solve_sequence_morphism(
    st: &Structure,
    src: &NSequence,
    tgt: &NSequence,
    known: &BTreeMap<usize, Morphism>,
) -> Option<AffineMorphisms> {
    let n = st.n;
    let unknown: Vec<usize> = (0..n).filter(|i| !known.contains_key(i)).collect();
    let slots: Vec<(ObjectExpr, ObjectExpr)> = unknown
        .iter()
        .map(|&i| (src.objects[i].clone(), tgt.objects[i].clone()))
        .collect();
    let cat = &st.cat;
    let eval = |assign: &[Morphism]| -> Vec<u32> {
        let mut comps: Vec<Morphism> = Vec::with_capacity(n);
        let mut ai = 0;
        for i in 0..n {
            if let Some(m) = known.get(&i) {
                comps.push(m.clone());
            } else {
                comps.push(assign[ai].clone());
                ai += 1;
            }
        }
        let mut defect = Vec::new();
        for i in 0..n {
            let next = if i + 1 < n { comps[i + 1].clone() } else { st.fwd_mor(&comps[0]) };
            let lhs = Morphism::compose(cat, &next, &src.maps[i]).expect("sequence shapes agree");
            let rhs = Morphism::compose(cat, &tgt.maps[i], &comps[i]).expect("sequence shapes agree");
            let diff = Morphism::sub(cat, &lhs, &rhs).expect("same endpoints");
            defect.extend(diff.to_flat());
        }
        defect
    };
    solve_affine(st, slots, eval)
}

/// Completes an affine solution into full component lists.
pub fn fill_components(
    st: &Structure,
    n: usize,
    known: &BTreeMap<usize, Morphism>,
    family: &AffineMorphisms,
    point: &[Morphism],
) -> SequenceMorphism {
    let _ = st;
    let _ = family;
    let mut comps = Vec::with_capacity(n);
    let mut ai = 0;
    for i in 0..n {
        if let Some(m) = known.get(&i) {
            comps.push(m.clone());
        } else {
            comps.push(point[ai].clone());
            ai += 1;
        }
    }
    SequenceMorphism { components: comps }
}

/// Searches for an isomorphism of sequences `a → b`: solves the joint
/// commuting system with every component unknown, scans the solution space
/// in enumeration order, and falls back to seeded random sampling when the
/// space is too large to exhaust.
pub fn sequence_iso_search(
    st: &Structure,
    a: &NSequence,
    b: &NSequence,
    limit: usize,
) -> SearchOutcome<SequenceMorphism> {
    if a.objects.len() != b.objects.len() {
        return SearchOutcome::NotFound;
    }
    // a shared first morphism admits the cheap path: an isomorphism
    // extending the identity on the first two terms, which exists whenever
    // both sequences are angles
    if a.objects[0] == b.objects[0] && a.objects[1] == b.objects[1] && a.maps[0] == b.maps[0] {
        if let Some(found) = iso_extending_identity(st, a, b, limit) {
            return SearchOutcome::Found(found);
        }
    }
    let Some(family) = solve_sequence_morphism(st, a, b, &BTreeMap::new()) else {
        return SearchOutcome::NotFound;
    };
    let (tuples, exhausted) = family.tuples(st, limit);
    for comps in tuples {
        if comps.iter().all(|c| is_isomorphism(&st.cat, c)) {
            return SearchOutcome::Found(SequenceMorphism { components: comps });
        }
    }
    if exhausted {
        return SearchOutcome::NotFound;
    }
    for comps in sample_tuples(st, &family, limit) {
        if comps.iter().all(|c| is_isomorphism(&st.cat, c)) {
            return SearchOutcome::Found(SequenceMorphism { components: comps });
        }
    }
    SearchOutcome::Inconclusive
}

/// Completion-based isomorphism search for sequences sharing their first
/// morphism: solve with the identity prescribed on the first two positions
/// and look for an all-invertible point.
fn iso_extending_identity(
    st: &Structure,
    a: &NSequence,
    b: &NSequence,
    limit: usize,
) -> Option<SequenceMorphism> {
    let cat = &st.cat;
    let mut known = BTreeMap::new();
    known.insert(0usize, Morphism::identity(cat, &a.objects[0]));
    known.insert(1usize, Morphism::identity(cat, &a.objects[1]));
    let family = solve_sequence_morphism(st, a, b, &known)?;
    let check = |point: &[Morphism]| point.iter().all(|c| is_isomorphism(cat, c));
    let (points, exhausted) = family.tuples(st, limit);
    for point in &points {
        if check(point) {
            return Some(fill_components(st, st.n, &known, &family, point));
        }
    }
    if !exhausted {
        for point in sample_tuples(st, &family, limit) {
            if check(&point) {
                return Some(fill_components(st, st.n, &known, &family, &point));
            }
        }
    }
    None
}

/// Deterministic random sample of solution tuples, for spaces too large to
/// enumerate. The generator is seeded from the space's dimensions only, so
/// repeated runs see the same sample.
fn sample_tuples(st: &Structure, family: &AffineMorphisms, count: usize) -> Vec<Vec<Morphism>> {
    use rand::Rng;
    use rand::SeedableRng;
    let dim = family.space.kernel.len();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed ^ dim as u64);
    let p = family.space.p;
    (0..count)
        .map(|_| {
            let coeffs: Vec<u32> = (0..dim).map(|_| rng.gen_range(0..p)).collect();
            family.materialize(st, &family.space.point_at(&coeffs))
        })
        .collect()
}
