//! Additive endofunctors given by explicit data, and the shift abstraction
//! used by the sequence machinery.
//!
//! A strict shift is a suspension automorphism. A weak shift is an
//! autoequivalence: a functor with a designated quasi-inverse and explicit
//! natural isomorphisms witnessing the two round trips. Quotient categories
//! only carry the weak form.

use super::category::{ObjectExpr, PresentedCategory};
use super::morphism::Morphism;
use super::suspension::SuspensionFunctor;
use crate::ffmat::{fp_add, fp_mul};

/// An additive endofunctor presented on generators: the image of each
/// generator and the image of each Hom-basis element.
#[derive(Debug, Clone)]
pub struct Endofunctor {
    obj_images: Vec<ObjectExpr>,
    /// `hom_maps[g][h][k]`: image of the k-th basis element of Hom(g,h), a
    /// morphism `F(g) → F(h)`.
    hom_maps: Vec<Vec<Vec<Morphism>>>,
}

impl Endofunctor {
    pub fn new(obj_images: Vec<ObjectExpr>, hom_maps: Vec<Vec<Vec<Morphism>>>) -> Self {
        Self { obj_images, hom_maps }
    }

    pub fn identity(cat: &PresentedCategory) -> Self {
        let n = cat.gen_count();
        let obj_images: Vec<ObjectExpr> = (0..n).map(ObjectExpr::generator).collect();
        let hom_maps = (0..n)
            .map(|g| {
                (0..n)
                    .map(|h| {
                        (0..cat.hom_dim(g, h))
                            .map(|k| {
                                super::hom::elementary_morphism(
                                    cat,
                                    &ObjectExpr::generator(g),
                                    &ObjectExpr::generator(h),
                                    k,
                                )
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Self { obj_images, hom_maps }
    }

    pub fn from_suspension(cat: &PresentedCategory, sus: &SuspensionFunctor, power: i64) -> Self {
        let n = cat.gen_count();
        let obj_images: Vec<ObjectExpr> =
            (0..n).map(|g| sus.apply_obj(&ObjectExpr::generator(g), power)).collect();
        let hom_maps = (0..n)
            .map(|g| {
                (0..n)
                    .map(|h| {
                        (0..cat.hom_dim(g, h))
                            .map(|k| {
                                let e = super::hom::elementary_morphism(
                                    cat,
                                    &ObjectExpr::generator(g),
                                    &ObjectExpr::generator(h),
                                    k,
                                );
                                sus.apply(cat, &e, power)
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Self { obj_images, hom_maps }
    }

    pub fn obj_image(&self, g: usize) -> &ObjectExpr {
        &self.obj_images[g]
    }

    /// `F(x)`: images of the summands concatenated in order.
    pub fn apply_obj(&self, x: &ObjectExpr) -> ObjectExpr {
        let mut out = Vec::new();
        for g in x.iter() {
            out.extend_from_slice(self.obj_images[g].summands());
        }
        ObjectExpr::from_summands(out)
    }

    /// Functorial image of a morphism, assembled blockwise.
    pub fn apply_mor(&self, cat: &PresentedCategory, f: &Morphism) -> Morphism {
        let p = cat.modulus();
        let fdom = self.apply_obj(f.dom());
        let fcod = self.apply_obj(f.cod());
        let mut out = Morphism::zero(cat, fdom, fcod);
        // offset of each original summand inside the image object
        let offsets = |x: &ObjectExpr| -> Vec<usize> {
            let mut offs = Vec::with_capacity(x.len());
            let mut acc = 0;
            for g in x.iter() {
                offs.push(acc);
                acc += self.obj_images[g].len();
            }
            offs
        };
        let dom_offs = offsets(f.dom());
        let cod_offs = offsets(f.cod());
        for ci in 0..f.cod().len() {
            let h = f.cod().summand(ci);
            for di in 0..f.dom().len() {
                let g = f.dom().summand(di);
                let coords = f.block(ci, di);
                // piece = Σ_k coords[k] · F(e_k): F(g) → F(h)
                for (k, &c) in coords.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let img = &self.hom_maps[g][h][k];
                    for pci in 0..img.cod().len() {
                        for pdi in 0..img.dom().len() {
                            let tci = cod_offs[ci] + pci;
                            let tdi = dom_offs[di] + pdi;
                            let mut acc = out.block(tci, tdi).to_vec();
                            for (t, &v) in img.block(pci, pdi).iter().enumerate() {
                                acc[t] = fp_add(acc[t], fp_mul(c, v, p), p);
                            }
                            out.set_block(tci, tdi, acc);
                        }
                    }
                }
            }
        }
        out
    }

    /// `outer ∘ inner` as functor data over the same category.
    pub fn compose(cat: &PresentedCategory, outer: &Endofunctor, inner: &Endofunctor) -> Endofunctor {
        let n = inner.obj_images.len();
        let obj_images: Vec<ObjectExpr> =
            (0..n).map(|g| outer.apply_obj(&inner.obj_images[g])).collect();
        let hom_maps = (0..n)
            .map(|g| {
                (0..n)
                    .map(|h| {
                        inner.hom_maps[g][h]
                            .iter()
                            .map(|m| outer.apply_mor(cat, m))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Endofunctor { obj_images, hom_maps }
    }
}

/// An autoequivalence with a designated quasi-inverse. The iso families are
/// indexed by generator; `fb_iso[g]: fwd(bwd(g)) → g` and
/// `bf_iso[g]: bwd(fwd(g)) → g`, with stored inverses.
#[derive(Debug, Clone)]
pub struct WeakShift {
    pub fwd: Endofunctor,
    pub bwd: Endofunctor,
    pub fb_iso: Vec<Morphism>,
    pub fb_iso_inv: Vec<Morphism>,
    pub bf_iso: Vec<Morphism>,
    pub bf_iso_inv: Vec<Morphism>,
}

/// The shift a sequence structure rotates against: either a strict suspension
/// automorphism or an autoequivalence with quasi-inverse data.
#[derive(Debug, Clone)]
pub enum Shift {
    Strict(SuspensionFunctor),
    Weak(Box<WeakShift>),
}

impl Shift {
    pub fn fwd_obj(&self, cat: &PresentedCategory, x: &ObjectExpr) -> ObjectExpr {
        let _ = cat;
        match self {
            Shift::Strict(s) => s.apply_obj(x, 1),
            Shift::Weak(w) => w.fwd.apply_obj(x),
        }
    }

    pub fn bwd_obj(&self, cat: &PresentedCategory, x: &ObjectExpr) -> ObjectExpr {
        let _ = cat;
        match self {
            Shift::Strict(s) => s.apply_obj(x, -1),
            Shift::Weak(w) => w.bwd.apply_obj(x),
        }
    }

    pub fn fwd_mor(&self, cat: &PresentedCategory, f: &Morphism) -> Morphism {
        match self {
            Shift::Strict(s) => s.apply(cat, f, 1),
            Shift::Weak(w) => w.fwd.apply_mor(cat, f),
        }
    }

    pub fn bwd_mor(&self, cat: &PresentedCategory, f: &Morphism) -> Morphism {
        match self {
            Shift::Strict(s) => s.apply(cat, f, -1),
            Shift::Weak(w) => w.bwd.apply_mor(cat, f),
        }
    }

    fn diag_family(
        cat: &PresentedCategory,
        family: &[Morphism],
        x: &ObjectExpr,
    ) -> Morphism {
        let pieces: Vec<Morphism> = x.iter().map(|g| family[g].clone()).collect();
        Morphism::block_diag(cat, &pieces)
    }

    /// `fwd(bwd(x)) → x`; the identity for a strict shift.
    pub fn fb_iso_obj(&self, cat: &PresentedCategory, x: &ObjectExpr) -> Morphism {
        match self {
            Shift::Strict(_) => Morphism::identity(cat, x),
            Shift::Weak(w) => Self::diag_family(cat, &w.fb_iso, x),
        }
    }

    pub fn fb_iso_inv_obj(&self, cat: &PresentedCategory, x: &ObjectExpr) -> Morphism {
        match self {
            Shift::Strict(_) => Morphism::identity(cat, x),
            Shift::Weak(w) => Self::diag_family(cat, &w.fb_iso_inv, x),
        }
    }

    /// `bwd(fwd(x)) → x`; the identity for a strict shift.
    pub fn bf_iso_obj(&self, cat: &PresentedCategory, x: &ObjectExpr) -> Morphism {
        match self {
            Shift::Strict(_) => Morphism::identity(cat, x),
            Shift::Weak(w) => Self::diag_family(cat, &w.bf_iso, x),
        }
    }

    pub fn bf_iso_inv_obj(&self, cat: &PresentedCategory, x: &ObjectExpr) -> Morphism {
        match self {
            Shift::Strict(_) => Morphism::identity(cat, x),
            Shift::Weak(w) => Self::diag_family(cat, &w.bf_iso_inv, x),
        }
    }

    pub fn is_strict(&self) -> bool {
        matches!(self, Shift::Strict(_))
    }
}
