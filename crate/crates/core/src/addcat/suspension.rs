//! The suspension automorphism of a presentation: a generator permutation
//! plus invertible coordinate maps on every Hom basis.

use super::category::{ObjectExpr, PresentedCategory};
use super::morphism::Morphism;
use super::CatError;
use crate::ffmat::FpMatrix;

#[derive(Debug, Clone)]
pub struct SuspensionFunctor {
    perm: Vec<usize>,
    perm_inv: Vec<usize>,
    /// `maps[g][h]`: coordinates of Hom(g,h) → Hom(σg, σh).
    maps: Vec<Vec<FpMatrix>>,
    maps_inv: Vec<Vec<FpMatrix>>,
}

impl SuspensionFunctor {
    pub fn new(
        cat: &PresentedCategory,
        perm: Vec<usize>,
        maps: Vec<Vec<FpMatrix>>,
    ) -> Result<Self, CatError> {
        let n = cat.gen_count();
        let bad = |msg: String| Err(CatError::Validation(msg));
        if perm.len() != n || maps.len() != n {
            return bad("suspension tables do not match the generator count".into());
        }
        let mut perm_inv = vec![usize::MAX; n];
        for (g, &sg) in perm.iter().enumerate() {
            if sg >= n || perm_inv[sg] != usize::MAX {
                return bad("suspension generator map is not a permutation".into());
            }
            perm_inv[sg] = g;
        }
        let mut maps_inv = vec![Vec::new(); n];
        for g in 0..n {
            if maps[g].len() != n {
                return bad("suspension hom tables have wrong arity".into());
            }
            for h in 0..n {
                let m = &maps[g][h];
                if m.rows() != cat.hom_dim(perm[g], perm[h]) || m.cols() != cat.hom_dim(g, h) {
                    return bad(format!(
                        "suspension map on Hom({},{}) has shape {}x{}",
                        cat.gen_name(g),
                        cat.gen_name(h),
                        m.rows(),
                        m.cols()
                    ));
                }
                let Some(inv) = m.inverse() else {
                    return bad(format!(
                        "suspension map on Hom({},{}) is not invertible",
                        cat.gen_name(g),
                        cat.gen_name(h)
                    ));
                };
                maps_inv[g].push(inv);
            }
        }
        let sus = Self { perm, perm_inv, maps, maps_inv };
        sus.validate(cat)?;
        Ok(sus)
    }

    /// Identity suspension (every generator fixed, hom maps identity).
    pub fn identity(cat: &PresentedCategory) -> Self {
        let n = cat.gen_count();
        let perm: Vec<usize> = (0..n).collect();
        let maps: Vec<Vec<FpMatrix>> = (0..n)
            .map(|g| (0..n).map(|h| FpMatrix::identity(cat.modulus(), cat.hom_dim(g, h))).collect())
            .collect();
        Self::new(cat, perm, maps).expect("identity suspension is valid")
    }

    fn validate(&self, cat: &PresentedCategory) -> Result<(), CatError> {
        let n = cat.gen_count();
        // functoriality on all composable basis pairs, and on identities
        for g in 0..n {
            let id_img = self.maps[g][g].mul_vec(cat.id_coords(g)).expect("shape");
            if id_img != cat.id_coords(self.perm[g]) {
                return Err(CatError::Validation(format!(
                    "suspension functoriality: image of id({}) is not id({})",
                    cat.gen_name(g),
                    cat.gen_name(self.perm[g])
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for i in 0..cat.hom_dim(a, b) {
                        for j in 0..cat.hom_dim(b, c) {
                            let mut u = vec![0u32; cat.hom_dim(a, b)];
                            u[i] = 1;
                            let mut v = vec![0u32; cat.hom_dim(b, c)];
                            v[j] = 1;
                            let vu = cat.compose_coords(a, b, c, &v, &u);
                            let lhs = self.maps[a][c].mul_vec(&vu).expect("shape");
                            let su = self.maps[a][b].mul_vec(&u).expect("shape");
                            let sv = self.maps[b][c].mul_vec(&v).expect("shape");
                            let rhs = cat.compose_coords(self.perm[a], self.perm[b], self.perm[c], &sv, &su);
                            if lhs != rhs {
                                return Err(CatError::Validation(format!(
                                    "suspension functoriality: basis pair ({}, {})",
                                    cat.basis_name(a, b, i),
                                    cat.basis_name(b, c, j)
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn gen_image(&self, g: usize) -> usize {
        self.perm[g]
    }

    pub fn gen_preimage(&self, g: usize) -> usize {
        self.perm_inv[g]
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn hom_map(&self, g: usize, h: usize) -> &FpMatrix {
        &self.maps[g][h]
    }

    pub fn apply_obj(&self, x: &ObjectExpr, power: i64) -> ObjectExpr {
        let map_one = |g: usize, fwd: bool| if fwd { self.perm[g] } else { self.perm_inv[g] };
        let mut summands: Vec<usize> = x.summands().to_vec();
        let steps = power.unsigned_abs();
        for _ in 0..steps {
            summands = summands.iter().map(|&g| map_one(g, power > 0)).collect();
        }
        ObjectExpr::from_summands(summands)
    }

    /// Functorial image of a morphism; negative powers use the inverse data.
    pub fn apply(&self, cat: &PresentedCategory, f: &Morphism, power: i64) -> Morphism {
        let mut cur = f.clone();
        let steps = power.unsigned_abs();
        for _ in 0..steps {
            cur = self.apply_once(cat, &cur, power > 0);
        }
        cur
    }

    fn apply_once(&self, cat: &PresentedCategory, f: &Morphism, fwd: bool) -> Morphism {
        let dom = self.apply_obj(f.dom(), if fwd { 1 } else { -1 });
        let cod = self.apply_obj(f.cod(), if fwd { 1 } else { -1 });
        let mut out = Morphism::zero(cat, dom, cod);
        for ci in 0..f.cod().len() {
            for di in 0..f.dom().len() {
                let g = f.dom().summand(di);
                let h = f.cod().summand(ci);
                let m = if fwd { &self.maps[g][h] } else { &self.maps_inv[self.perm_inv[g]][self.perm_inv[h]] };
                out.set_block(ci, di, m.mul_vec(f.block(ci, di)).expect("shape"));
            }
        }
        out
    }
}
