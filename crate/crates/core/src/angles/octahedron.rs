//! The higher octahedral completion: given two angles sharing their first
//! object and endpoint plus a compatible column angle, search for connecting
//! morphisms making the long sign-laden sequence an angle.
//!
//! The search runs in two stages. The fill-in of the row comparison is a
//! linear system; for each of its solutions, the chain conditions of the
//! long sequence together with the wrap identity are again linear in the
//! remaining unknowns, and each point of that space is membership-tested.

use super::classes::AngleClass;
use super::linsys::{solve_affine, solve_sequence_morphism, AffineMorphisms};
use super::sequence::{from_component_grid, NSequence, SequenceMorphism};
use super::Structure;
use crate::addcat::{Morphism, ObjectExpr};
use crate::ffmat::fp_sign;
use crate::report::{Budget, Membership, SearchOutcome};
use std::collections::BTreeMap;

/// Input data: two rows sharing first object and endpoint, the comparison
/// map `phi2` between their second objects, and a column angle starting with
/// `phi2`. Validity requires `row2.maps[0] = phi2 ∘ row1.maps[0]`.
#[derive(Debug, Clone)]
pub struct OctahedronInstance {
    pub row1: NSequence,
    pub row2: NSequence,
    pub col: NSequence,
    pub phi2: Morphism,
}

impl OctahedronInstance {
    pub fn validate(&self, st: &Structure) -> Result<(), String> {
        let cat = &st.cat;
        self.row1.validate(st).map_err(|e| format!("row1: {}", e))?;
        self.row2.validate(st).map_err(|e| format!("row2: {}", e))?;
        self.col.validate(st).map_err(|e| format!("column: {}", e))?;
        if self.row1.objects[0] != self.row2.objects[0] {
            return Err("rows must share their first object".into());
        }
        if self.col.objects[0] != self.row1.objects[1] {
            return Err("column must start at the second object of row1".into());
        }
        if self.col.objects[1] != self.row2.objects[1] {
            return Err("column must pass through the second object of row2".into());
        }
        if self.col.maps[0] != self.phi2 {
            return Err("column must start with the comparison map".into());
        }
        let composed = Morphism::compose(cat, &self.phi2, &self.row1.maps[0]).map_err(|e| e.to_string())?;
        if composed != self.row2.maps[0] {
            return Err("row2 must start with phi2 composed after row1's first map".into());
        }
        Ok(())
    }
}

/// A verified witness: the row fill-in, the two connecting families, and the
/// assembled long sequence that passed membership.
#[derive(Debug, Clone)]
pub struct OctahedronWitness {
    /// Components 1..n of the row comparison (position 0 is the identity).
    pub row_morphism: SequenceMorphism,
    /// `psi[j]` connects `row2[j+2] → col[j+2]` for j = 0..n-3 (0-based).
    pub col_fill: Vec<Morphism>,
    /// `diag[k]` connects `row1[k+3] → col[k+2]`.
    pub diag_fill: Vec<Morphism>,
    pub long_sequence: NSequence,
}

/// Assembles the long sign-laden sequence from an instance and a full set of
/// connecting morphisms. `phis` are the row-comparison components (length n,
/// position 0 the identity), `psis[j] : row2[j+2] → col[j+2]` for
/// `j = 0..n-3`, `diags[k] : row1[k+3] → col[k+2]` for `k = 0..n-4`.
pub fn assemble_octahedron(
    st: &Structure,
    inst: &OctahedronInstance,
    phis: &[Morphism],
    psis: &[Morphism],
    diags: &[Morphism],
) -> NSequence {
    let cat = &st.cat;
    let n = st.n;
    let neg = crate::ffmat::fp_neg(1, cat.modulus());
    // component w of the long sequence holds: row1[w+2] while w+2 < n,
    // row2[w+1] from w >= 1, col[w] from w >= 2
    let has_x = |w: usize| w + 3 <= n;
    let has_y = |w: usize| (1..=n - 2).contains(&w);
    let has_z = |w: usize| (2..=n - 1).contains(&w);
    let parts = |w: usize| -> Vec<ObjectExpr> {
        let mut v = Vec::new();
        if has_x(w) {
            v.push(inst.row1.objects[w + 2].clone());
        }
        if has_y(w) {
            v.push(inst.row2.objects[w + 1].clone());
        }
        if has_z(w) {
            v.push(inst.col.objects[w].clone());
        }
        v
    };
    let objects: Vec<ObjectExpr> = (0..n)
        .map(|w| {
            parts(w)
                .into_iter()
                .fold(ObjectExpr::zero(), |acc, x| acc.direct_sum(&x))
        })
        .collect();
    let mut maps = Vec::with_capacity(n);
    for w in 0..n - 1 {
        let dom_parts = parts(w);
        let cod_parts = parts(w + 1);
        // role-indexed positions inside the part lists
        let idx = |w: usize, role: usize| -> usize {
            // role 0 = X, 1 = Y, 2 = Z
            let mut i = 0;
            if role > 0 && has_x(w) {
                i += 1;
            }
            if role > 1 && has_y(w) {
                i += 1;
            }
            i
        };
        let mut entries: Vec<(usize, usize, Morphism)> = Vec::new();
        if w == 0 {
            // first map: (f_3; phi_3) with positive signs
            if has_x(1) {
                entries.push((idx(1, 0), idx(0, 0), inst.row1.maps[2].clone()));
            }
            entries.push((idx(1, 1), idx(0, 0), phis[2].clone()));
        } else {
            if has_x(w) && has_x(w + 1) {
                entries.push((idx(w + 1, 0), idx(w, 0), inst.row1.maps[w + 2].clone().scale(cat, neg)));
            }
            if has_x(w) && has_y(w + 1) {
                let sign = fp_sign(w + 3, cat.modulus());
                entries.push((idx(w + 1, 1), idx(w, 0), phis[w + 2].clone().scale(cat, sign)));
            }
            if has_x(w) && has_z(w + 1) {
                entries.push((idx(w + 1, 2), idx(w, 0), diags[w - 1].clone()));
            }
            if has_y(w) && has_y(w + 1) {
                entries.push((idx(w + 1, 1), idx(w, 1), inst.row2.maps[w + 1].clone().scale(cat, neg)));
            }
            if has_y(w) && has_z(w + 1) {
                entries.push((idx(w + 1, 2), idx(w, 1), psis[w - 1].clone()));
            }
            if has_z(w) && has_z(w + 1) {
                entries.push((idx(w + 1, 2), idx(w, 2), inst.col.maps[w].clone()));
            }
        }
        maps.push(from_component_grid(st, &dom_parts, &cod_parts, &entries));
    }
    // final map: fwd(f_2) ∘ h_n : col[n-1] → fwd(row1[2]) = fwd(objects[0])
    let last = Morphism::compose(
        cat,
        &st.fwd_mor(&inst.row1.maps[1]),
        &inst.col.maps[n - 1],
    )
    .expect("octahedron endpoint chain");
    maps.push(last);
    NSequence::new(objects, maps)
}

/// Outcome of the witness search for one instance.
pub enum OctahedronOutcome {
    Witnessed(Box<OctahedronWitness>),
    /// Every candidate in the fully enumerated space failed definitively.
    Failed,
    Inconclusive,
}

/// Two-stage bounded search for an octahedron witness.
pub fn search_octahedron(
    st: &Structure,
    class: &dyn AngleClass,
    inst: &OctahedronInstance,
    budget: &Budget,
) -> OctahedronOutcome {
    let cat = &st.cat;
    let n = st.n;
    let id = Morphism::identity(cat, &inst.row1.objects[0]);
    let mut known = BTreeMap::new();
    known.insert(0usize, id.clone());
    known.insert(1usize, inst.phi2.clone());
    let Some(row_family) = solve_sequence_morphism(st, &inst.row1, &inst.row2, &known) else {
        return OctahedronOutcome::Failed;
    };
    let (row_points, rows_exhausted) = row_family.tuples(st, budget.cap_solutions);
    let mut saw_inconclusive = !rows_exhausted;
    for point in row_points {
        let mut phis: Vec<Morphism> = Vec::with_capacity(n);
        let mut ai = 0;
        for i in 0..n {
            if let Some(m) = known.get(&i) {
                phis.push(m.clone());
            } else {
                phis.push(point[ai].clone());
                ai += 1;
            }
        }
        match stage_two(st, class, inst, &phis, budget) {
            SearchOutcome::Found(witness) => return OctahedronOutcome::Witnessed(Box::new(witness)),
            SearchOutcome::NotFound => {}
            SearchOutcome::Inconclusive => saw_inconclusive = true,
        }
    }
    if saw_inconclusive {
        OctahedronOutcome::Inconclusive
    } else {
        OctahedronOutcome::Failed
    }
}

/// With the row comparison fixed, the chain conditions of the long sequence,
/// its wrap condition, and the compatibility identity
/// `h_n ∘ ψ_n = Σf_1 ∘ g_n` are jointly linear in the connecting morphisms.
fn stage_two(
    st: &Structure,
    class: &dyn AngleClass,
    inst: &OctahedronInstance,
    phis: &[Morphism],
    budget: &Budget,
) -> SearchOutcome<OctahedronWitness> {
    let cat = &st.cat;
    let n = st.n;
    let mut slots: Vec<(ObjectExpr, ObjectExpr)> = Vec::new();
    // psi slots: row2[j] → col[j] for positions j = 2..n-1 (0-based)
    for j in 2..n {
        slots.push((inst.row2.objects[j].clone(), inst.col.objects[j].clone()));
    }
    // diag slots: row1[k] → col[k-1] for positions k = 3..n-1 (0-based)
    for k in 3..n {
        slots.push((inst.row1.objects[k].clone(), inst.col.objects[k - 1].clone()));
    }
    let psi_count = n - 2;
    let eval = |assign: &[Morphism]| -> Vec<u32> {
        let psis = &assign[..psi_count];
        let diags = &assign[psi_count..];
        let long = assemble_octahedron(st, inst, phis, psis, diags);
        let mut defect = Vec::new();
        for w in 0..n - 1 {
            let comp = Morphism::compose(cat, &long.maps[w + 1], &long.maps[w])
                .expect("long sequence chains");
            defect.extend(comp.to_flat());
        }
        let wrap = Morphism::compose(cat, &st.fwd_mor(&long.maps[0]), &long.maps[n - 1])
            .expect("long sequence wraps");
        defect.extend(wrap.to_flat());
        // h_n ∘ ψ_n − fwd(f_1) ∘ g_n = 0
        let lhs = Morphism::compose(cat, &inst.col.maps[n - 1], &psis[psi_count - 1])
            .expect("wrap identity chains");
        let rhs = Morphism::compose(cat, &st.fwd_mor(&inst.row1.maps[0]), &inst.row2.maps[n - 1])
            .expect("wrap identity chains");
        defect.extend(Morphism::sub(cat, &lhs, &rhs).expect("same endpoints").to_flat());
        defect
    };
    let Some(family): Option<AffineMorphisms> = solve_affine(st, slots, eval) else {
        return SearchOutcome::NotFound;
    };
    let (points, exhausted) = family.tuples(st, budget.cap_solutions);
    let mut saw_inconclusive = !exhausted;
    let mut try_point = |point: &[Morphism]| -> Option<OctahedronWitness> {
        let psis = point[..psi_count].to_vec();
        let diags = point[psi_count..].to_vec();
        let long = assemble_octahedron(st, inst, phis, &psis, &diags);
        match class.membership(st, &long) {
            Membership::In => Some(OctahedronWitness {
                row_morphism: SequenceMorphism { components: phis.to_vec() },
                col_fill: psis,
                diag_fill: diags,
                long_sequence: long,
            }),
            Membership::Out => None,
            Membership::Inconclusive => {
                saw_inconclusive = true;
                None
            }
        }
    };
    for point in &points {
        if let Some(witness) = try_point(point) {
            return SearchOutcome::Found(witness);
        }
    }
    if !exhausted {
        // deterministic random sample of the rest of the space
        use rand::Rng;
        use rand::SeedableRng;
        let dim = family.space.kernel.len();
        let p = family.space.p;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x0c7a ^ dim as u64);
        for _ in 0..budget.cap_solutions {
            let coeffs: Vec<u32> = (0..dim).map(|_| rng.gen_range(0..p)).collect();
            let point = family.materialize(st, &family.space.point_at(&coeffs));
            if let Some(witness) = try_point(&point) {
                return SearchOutcome::Found(witness);
            }
        }
    }
    if saw_inconclusive {
        SearchOutcome::Inconclusive
    } else {
        SearchOutcome::NotFound
    }
}
