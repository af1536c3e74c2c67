//! n-Σ-sequences and the elementary constructions on them: rotation in both
//! directions, trivial angles, direct sums, mapping cones and isomorphic
//! rewrites.

use super::{AngleError, Structure};
use crate::addcat::{iso_inverse, Morphism, ObjectExpr};
use serde::{Deserialize, Serialize};

/// A sequence of n composable morphisms ending in the shift of the first
/// object: `X_1 → X_2 → … → X_n → ΣX_1` (0-based in code).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NSequence {
    pub objects: Vec<ObjectExpr>,
    pub maps: Vec<Morphism>,
}

impl NSequence {
    pub fn new(objects: Vec<ObjectExpr>, maps: Vec<Morphism>) -> Self {
        Self { objects, maps }
    }

    pub fn validate(&self, st: &Structure) -> Result<(), AngleError> {
        let n = st.n;
        if self.objects.len() != n || self.maps.len() != n {
            return Err(AngleError::InvalidSequence(format!(
                "expected {} objects and maps, got {} and {}",
                n,
                self.objects.len(),
                self.maps.len()
            )));
        }
        for (i, m) in self.maps.iter().enumerate() {
            if m.dom() != &self.objects[i] {
                return Err(AngleError::InvalidSequence(format!("map {} has wrong domain", i)));
            }
            let expected_cod =
                if i + 1 < n { self.objects[i + 1].clone() } else { st.fwd_obj(&self.objects[0]) };
            if m.cod() != &expected_cod {
                return Err(AngleError::InvalidSequence(format!("map {} has wrong codomain", i)));
            }
        }
        Ok(())
    }

    /// Total summand count across all objects, the size the object cap is
    /// measured against.
    pub fn max_object_len(&self) -> usize {
        self.objects.iter().map(|o| o.len()).max().unwrap_or(0)
    }

    pub fn display(&self, st: &Structure) -> String {
        let objs: Vec<String> = self.objects.iter().map(|o| o.display(&st.cat)).collect();
        let maps: Vec<String> = self.maps.iter().map(|m| m.display(&st.cat)).collect();
        format!("objects: {}; maps: {}", objs.join(" | "), maps.join(" ; "))
    }
}

/// A degreewise morphism of sequences; all squares, including the final one
/// against the shifted first component, must commute.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceMorphism {
    pub components: Vec<Morphism>,
}

impl SequenceMorphism {
    pub fn validate(
        &self,
        st: &Structure,
        src: &NSequence,
        tgt: &NSequence,
    ) -> Result<(), AngleError> {
        let n = st.n;
        if self.components.len() != n {
            return Err(AngleError::InvalidMorphism("wrong component count".into()));
        }
        for (i, c) in self.components.iter().enumerate() {
            if c.dom() != &src.objects[i] || c.cod() != &tgt.objects[i] {
                return Err(AngleError::InvalidMorphism(format!("component {} has wrong endpoints", i)));
            }
        }
        let cat = &st.cat;
        for i in 0..n {
            let next = if i + 1 < n {
                self.components[i + 1].clone()
            } else {
                st.fwd_mor(&self.components[0])
            };
            let lhs = Morphism::compose(cat, &next, &src.maps[i])?;
            let rhs = Morphism::compose(cat, &tgt.maps[i], &self.components[i])?;
            if lhs != rhs {
                return Err(AngleError::InvalidMorphism(format!("square {} does not commute", i)));
            }
        }
        Ok(())
    }
}

/// The trivial angle `X = X → 0 → … → 0 → ΣX`.
pub fn trivial_angle(st: &Structure, x: &ObjectExpr) -> NSequence {
    let cat = &st.cat;
    let n = st.n;
    let mut objects = vec![x.clone(), x.clone()];
    objects.extend(std::iter::repeat_n(ObjectExpr::zero(), n - 2));
    let mut maps = vec![Morphism::identity(cat, x)];
    for i in 1..n {
        let dom = objects[i].clone();
        let cod = if i + 1 < n { objects[i + 1].clone() } else { st.fwd_obj(x) };
        maps.push(Morphism::zero(cat, dom, cod));
    }
    NSequence::new(objects, maps)
}

/// Left rotation: drop the first object, append the shifted one; the new
/// final map is `(-1)^n Σf_1`.
pub fn rotate_left(st: &Structure, seq: &NSequence) -> NSequence {
    let mut objects: Vec<ObjectExpr> = seq.objects[1..].to_vec();
    objects.push(st.fwd_obj(&seq.objects[0]));
    let mut maps: Vec<Morphism> = seq.maps[1..].to_vec();
    maps.push(st.fwd_mor(&seq.maps[0]).scale(&st.cat, st.rotation_sign()));
    NSequence::new(objects, maps)
}

/// Right rotation, the inverse of `rotate_left` for a strict shift. With a
/// weak shift the round trip is only isomorphic to the input: the unshifted
/// wrap map is corrected along the stored natural isomorphisms so the result
/// is still structurally valid.
pub fn rotate_right(st: &Structure, seq: &NSequence) -> NSequence {
    let cat = &st.cat;
    let n = st.n;
    let last = &seq.maps[n - 1];
    let first_obj = st.bwd_obj(&seq.objects[n - 1]);
    // bwd(f_n): bwd(X_n) → bwd(fwd(X_1)), corrected into X_1
    let correction = st.shift.bf_iso_obj(cat, &seq.objects[0]);
    let first_map = Morphism::compose(cat, &correction, &st.bwd_mor(last))
        .expect("rotation endpoints agree")
        .scale(cat, st.rotation_sign());
    let mut objects = vec![first_obj];
    objects.extend_from_slice(&seq.objects[..n - 1]);
    let mut maps = vec![first_map];
    maps.extend_from_slice(&seq.maps[..n - 2]);
    // f_{n-1}: X_{n-1} → X_n must be re-targeted at fwd(bwd(X_n))
    let retarget = st.shift.fb_iso_inv_obj(cat, &seq.objects[n - 1]);
    maps.push(Morphism::compose(cat, &retarget, &seq.maps[n - 2]).expect("rotation endpoints agree"));
    NSequence::new(objects, maps)
}

/// Degreewise direct sum.
pub fn sequence_direct_sum(st: &Structure, a: &NSequence, b: &NSequence) -> NSequence {
    let cat = &st.cat;
    let objects = a
        .objects
        .iter()
        .zip(&b.objects)
        .map(|(x, y)| x.direct_sum(y))
        .collect();
    let maps = a.maps.iter().zip(&b.maps).map(|(f, g)| Morphism::direct_sum(cat, f, g)).collect();
    NSequence::new(objects, maps)
}

/// Assembles a morphism `⊕ dom_parts → ⊕ cod_parts` from component
/// morphisms; missing entries are zero.
pub fn from_component_grid(
    st: &Structure,
    dom_parts: &[ObjectExpr],
    cod_parts: &[ObjectExpr],
    entries: &[(usize, usize, Morphism)],
) -> Morphism {
    let cat = &st.cat;
    let dom = dom_parts.iter().fold(ObjectExpr::zero(), |acc, x| acc.direct_sum(x));
    let cod = cod_parts.iter().fold(ObjectExpr::zero(), |acc, x| acc.direct_sum(x));
    let dom_offs: Vec<usize> = dom_parts
        .iter()
        .scan(0, |acc, x| {
            let off = *acc;
            *acc += x.len();
            Some(off)
        })
        .collect();
    let cod_offs: Vec<usize> = cod_parts
        .iter()
        .scan(0, |acc, x| {
            let off = *acc;
            *acc += x.len();
            Some(off)
        })
        .collect();
    let mut out = Morphism::zero(cat, dom, cod);
    for (r, c, m) in entries {
        debug_assert_eq!(m.dom(), &dom_parts[*c], "grid entry domain");
        debug_assert_eq!(m.cod(), &cod_parts[*r], "grid entry codomain");
        for ci in 0..m.cod().len() {
            for di in 0..m.dom().len() {
                out.set_block(cod_offs[*r] + ci, dom_offs[*c] + di, m.block(ci, di).to_vec());
            }
        }
    }
    out
}

/// The mapping cone of a morphism of sequences: degree k is
/// `X_{k+1} ⊕ Y_k` and the differentials carry the sign pattern
/// `((-f, 0), (φ, g))`.
pub fn mapping_cone(
    st: &Structure,
    src: &NSequence,
    tgt: &NSequence,
    phi: &SequenceMorphism,
) -> Result<NSequence, AngleError> {
    phi.validate(st, src, tgt)?;
    let cat = &st.cat;
    let n = st.n;
    let neg = crate::ffmat::fp_neg(1, cat.modulus());
    // source objects extended by one shifted step
    let sx = |k: usize| -> ObjectExpr {
        if k < n {
            src.objects[k].clone()
        } else {
            st.fwd_obj(&src.objects[0])
        }
    };
    let objects: Vec<ObjectExpr> = (0..n).map(|k| sx(k + 1).direct_sum(&tgt.objects[k])).collect();
    let mut maps = Vec::with_capacity(n);
    for k in 0..n {
        let dom_parts = [sx(k + 1), tgt.objects[k].clone()];
        let (cod_parts, fx, px, gy): ([ObjectExpr; 2], Morphism, Morphism, Morphism) = if k + 1 < n
        {
            (
                [sx(k + 2), tgt.objects[k + 1].clone()],
                src.maps[k + 1].clone(),
                phi.components[k + 1].clone(),
                tgt.maps[k].clone(),
            )
        } else {
            // final step lands in Σ(X_2 ⊕ Y_1)
            (
                [st.fwd_obj(&src.objects[1]), st.fwd_obj(&tgt.objects[0])],
                st.fwd_mor(&src.maps[0]),
                st.fwd_mor(&phi.components[0]),
                tgt.maps[n - 1].clone(),
            )
        };
        let entries = vec![
            (0usize, 0usize, fx.scale(cat, neg)),
            (1usize, 0usize, px),
            (1usize, 1usize, gy),
        ];
        maps.push(from_component_grid(st, &dom_parts, &cod_parts, &entries));
    }
    Ok(NSequence::new(objects, maps))
}

/// Change of basis at one position: replaces `X_i` by the codomain of the
/// isomorphism `u` and conjugates the two adjacent maps.
pub fn rewrite_at(st: &Structure, seq: &NSequence, i: usize, u: &Morphism) -> NSequence {
    let cat = &st.cat;
    let n = st.n;
    debug_assert_eq!(u.dom(), &seq.objects[i]);
    let u_inv = iso_inverse(cat, u).expect("rewrite requires an isomorphism");
    let mut out = seq.clone();
    out.objects[i] = u.cod().clone();
    out.maps[i] = Morphism::compose(cat, &seq.maps[i], &u_inv).expect("endpoints agree");
    if i > 0 {
        out.maps[i - 1] = Morphism::compose(cat, u, &seq.maps[i - 1]).expect("endpoints agree");
    } else {
        out.maps[n - 1] =
            Morphism::compose(cat, &st.fwd_mor(u), &seq.maps[n - 1]).expect("endpoints agree");
    }
    out
}
