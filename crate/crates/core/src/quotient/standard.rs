//! Standard angles in the quotient and the class Φ they generate.
//!
//! A member whose terms lie in `Z` and whose first map is monic relative to
//! `D` completes uniquely-up-to-ideal against the fixed witness angle of its
//! first object; projecting the completion's last component produces the
//! standard angle. Φ is the class of quotient sequences isomorphic to
//! standard angles; its membership is a bounded search and never reports a
//! definite "out" for structurally valid sequences.

use super::build::QuotientData;
use super::QuotientError;
use crate::addcat::{is_isomorphism, Morphism, ObjectExpr};
use crate::angles::{
    rewrite_at, sequence_direct_sum, sequence_iso_search, solve_sequence_morphism, AngleClass,
    DynClass, NSequence, SequenceMorphism, Structure, trivial_angle,
};
use crate::mutation::{is_d_monic, MutationPairWitness};
use crate::report::{Budget, Membership, SearchOutcome};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Everything the quotient-side machinery needs to interpret sequences:
/// the base structure with its class, the witness, the quotient data, the
/// quotient structure (weak shift installed), and internal search budgets.
pub struct QuotientContext {
    pub base: Structure,
    pub base_class: DynClass,
    pub witness: MutationPairWitness,
    pub quot: QuotientData,
    pub quot_st: Structure,
    pub budget: Budget,
}

/// Degreewise direct sum of the fixed forward angles of the summands of `x`;
/// the canonical condition-one angle of an arbitrary object of `Z`.
pub fn sum_forward_angle(
    base: &Structure,
    witness: &MutationPairWitness,
    x: &ObjectExpr,
) -> NSequence {
    x.iter()
        .map(|g| witness.forward_for(g).expect("witness covers Z").angle.clone())
        .reduce(|a, b| sequence_direct_sum(base, &a, &b))
        .unwrap_or_else(|| trivial_angle(base, &ObjectExpr::zero()))
}

/// A standard angle: the source member, the completion against the fixed
/// angle of its first object, and the induced quotient sequence.
#[derive(Debug, Clone)]
pub struct StandardAngle {
    pub source: NSequence,
    pub completion: SequenceMorphism,
    pub quotient_seq: NSequence,
}

/// Builds the standard angle of a member with Z-internal terms and
/// D-monic first map. Completion infeasibility is a corrupted-witness error.
pub fn standard_angle(ctx: &QuotientContext, seq: &NSequence) -> Result<StandardAngle, QuotientError> {
    let base = &ctx.base;
    let n = base.n;
    if seq.validate(base).is_err() {
        return Err(QuotientError::Precondition("not a valid sequence".into()));
    }
    if !seq.objects.iter().all(|x| ctx.witness.z.contains_object(x)) {
        return Err(QuotientError::Precondition("terms must lie in Z".into()));
    }
    if ctx.base_class.membership(base, seq) == Membership::Out {
        return Err(QuotientError::Precondition("not a member".into()));
    }
    if !is_d_monic(base, &seq.maps[0], &ctx.witness.d) {
        return Err(QuotientError::Precondition(
            "first map is not monic relative to D".into(),
        ));
    }
    let fixed = sum_forward_angle(base, &ctx.witness, &seq.objects[0]);
    let mut known = BTreeMap::new();
    known.insert(0usize, Morphism::identity(&base.cat, &seq.objects[0]));
    let family = solve_sequence_morphism(base, seq, &fixed, &known).ok_or_else(|| {
        QuotientError::CorruptedWitness(
            "completion against the fixed angle is infeasible".into(),
        )
    })?;
    let comps = family.materialize(base, &family.space.particular);
    let mut components = vec![Morphism::identity(&base.cat, &seq.objects[0])];
    components.extend(comps);
    let completion = SequenceMorphism { components };
    let last_class = ctx.quot.project(&base.cat, &completion.components[n - 1]);
    let mut objects: Vec<ObjectExpr> =
        seq.objects.iter().map(|x| ctx.quot.to_quotient_obj(x)).collect();
    let mut maps: Vec<Morphism> = Vec::with_capacity(n);
    for i in 0..n - 1 {
        maps.push(ctx.quot.project(&base.cat, &seq.maps[i]));
    }
    maps.push(last_class);
    // the endpoint is the functor image of the first object by construction
    let quotient_seq = NSequence::new(std::mem::take(&mut objects), maps);
    debug_assert!(quotient_seq.validate(&ctx.quot_st).is_ok());
    Ok(StandardAngle { source: seq.clone(), completion, quotient_seq })
}

/// The class Φ of quotient sequences isomorphic to standard angles.
pub struct PhiClass {
    pub ctx: Arc<QuotientContext>,
}

impl PhiClass {
    fn usable_sources(&self) -> Vec<NSequence> {
        let ctx = &self.ctx;
        let (members, _) = ctx.base_class.enumerate(&ctx.base, &ctx.budget);
        members
            .into_iter()
            .filter(|m| m.objects.iter().all(|x| ctx.witness.z.contains_object(x)))
            .filter(|m| is_d_monic(&ctx.base, &m.maps[0], &ctx.witness.d))
            .filter(|m| ctx.base_class.membership(&ctx.base, m) == Membership::In)
            .collect()
    }

    /// Candidate standard angles whose objects match the query's degreewise
    /// (as multisets): single base members and pairwise sums of them. Sums of
    /// standard angles are standard angles of sums, so both kinds witness
    /// membership. Object multisets are matched on the base members before
    /// any completion work is spent.
    fn matching_candidates(&self, query: &NSequence) -> Vec<NSequence> {
        let ctx = &self.ctx;
        let sources = self.usable_sources();
        let n = ctx.base.n;
        let query_base: Vec<ObjectExpr> =
            query.objects.iter().map(|x| ctx.quot.to_base_obj(x)).collect();
        let mut out = Vec::new();
        let cap = ctx.budget.cap_instances;
        for m in &sources {
            if out.len() >= cap {
                return out;
            }
            if (0..n).all(|i| m.objects[i].same_multiset(&query_base[i])) {
                if let Ok(std) = standard_angle(ctx, m) {
                    out.push(std.quotient_seq);
                }
            }
        }
        let sum_matches = |a: &NSequence, b: &NSequence| {
            (0..n).all(|i| {
                a.objects[i]
                    .direct_sum(&b.objects[i])
                    .same_multiset(&query_base[i])
            })
        };
        for (i, a) in sources.iter().enumerate() {
            for b in sources.iter().skip(i) {
                if out.len() >= cap {
                    return out;
                }
                if !sum_matches(a, b) {
                    continue;
                }
                let (Ok(std_a), Ok(std_b)) = (standard_angle(ctx, a), standard_angle(ctx, b))
                else {
                    continue;
                };
                out.push(sequence_direct_sum(
                    &ctx.quot_st,
                    &std_a.quotient_seq,
                    &std_b.quotient_seq,
                ));
            }
        }
        out
    }
}

impl AngleClass for PhiClass {
    fn name(&self) -> &str {
        "standard-angles"
    }

    fn membership(&self, st: &Structure, seq: &NSequence) -> Membership {
        if seq.validate(st).is_err() {
            return Membership::Out;
        }
        let ctx = &self.ctx;
        // the canonical completion of the first map, when available, is the
        // primary candidate
        if let Some(candidate) = self.complete(st, &seq.maps[0]) {
            if &candidate == seq {
                return Membership::In;
            }
            if let SearchOutcome::Found(_) =
                sequence_iso_search(st, seq, &candidate, ctx.budget.cap_solutions)
            {
                return Membership::In;
            }
        }
        for candidate in self.matching_candidates(seq) {
            if &candidate == seq {
                return Membership::In;
            }
            if let SearchOutcome::Found(_) =
                sequence_iso_search(st, seq, &candidate, ctx.budget.cap_solutions)
            {
                return Membership::In;
            }
        }
        // members beyond the object cap exist in principle, so absence of a
        // witness is never a definite rejection
        Membership::Inconclusive
    }

    /// Realizes the first-morphism axiom in the quotient: lift the morphism,
    /// stack it with the fixed approximation of its domain, complete in the
    /// base class, take the standard angle, and transport along the
    /// projection isomorphism so the output starts with the given morphism.
    fn complete(&self, st: &Structure, f1: &Morphism) -> Option<NSequence> {
        let ctx = &self.ctx;
        let base = &ctx.base;
        let cat = &base.cat;
        let lifted = ctx.quot.lift(cat, f1);
        let fixed = sum_forward_angle(base, &ctx.witness, lifted.dom());
        let d1 = fixed.maps[0].clone();
        // column morphism (f; d1): X → Y ⊕ D1, monic relative to D because d1 is
        let stacked = crate::angles::from_component_grid(
            base,
            &[lifted.dom().clone()],
            &[lifted.cod().clone(), d1.cod().clone()],
            &[(0, 0, lifted.clone()), (1, 0, d1.clone())],
        );
        let completed = ctx.base_class.complete(base, &stacked)?;
        if !completed.objects.iter().all(|x| ctx.witness.z.contains_object(x)) {
            return None;
        }
        let std = standard_angle(ctx, &completed).ok()?;
        // collapse Y ⊕ D1 back to Y: the projection is invertible in the
        // quotient because D1 dies there
        let proj_base = crate::angles::from_component_grid(
            base,
            &[lifted.cod().clone(), d1.cod().clone()],
            &[lifted.cod().clone()],
            &[(0, 0, Morphism::identity(cat, lifted.cod()))],
        );
        let proj_q = ctx.quot.project(cat, &proj_base);
        if !is_isomorphism(&st.cat, &proj_q) {
            return None;
        }
        let transported = rewrite_at(st, &std.quotient_seq, 1, &proj_q);
        if &transported.maps[0] == f1 {
            Some(transported)
        } else {
            None
        }
    }

    fn enumerate(&self, _st: &Structure, budget: &Budget) -> (Vec<NSequence>, bool) {
        let ctx = &self.ctx;
        let (members, truncated) = ctx.base_class.enumerate(&ctx.base, budget);
        let mut out = Vec::new();
        let mut cut = truncated;
        for m in members {
            if out.len() >= budget.cap_instances {
                cut = true;
                break;
            }
            if !m.objects.iter().all(|x| ctx.witness.z.contains_object(x)) {
                continue;
            }
            if !is_d_monic(&ctx.base, &m.maps[0], &ctx.witness.d) {
                continue;
            }
            if ctx.base_class.membership(&ctx.base, &m) != Membership::In {
                continue;
            }
            if let Ok(std) = standard_angle(ctx, &m) {
                out.push(std.quotient_seq);
            }
        }
        (out, cut)
    }
}
