//! Morphisms between formal sums: block matrices of Hom-basis coordinates.

use super::category::{ObjectExpr, PresentedCategory};
use super::CatError;
use crate::ffmat::{fp_add, fp_mul, fp_neg};
use serde::{Deserialize, Serialize};

/// A morphism `dom → cod`. Block `(ci, di)` is the coordinate vector of the
/// component `dom[di] → cod[ci]` in the presentation basis (empty when the
/// Hom space is zero-dimensional).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Morphism {
    dom: ObjectExpr,
    cod: ObjectExpr,
    blocks: Vec<Vec<u32>>,
}

impl Morphism {
    pub fn zero(cat: &PresentedCategory, dom: ObjectExpr, cod: ObjectExpr) -> Self {
        let mut blocks = Vec::with_capacity(dom.len() * cod.len());
        for ci in 0..cod.len() {
            for di in 0..dom.len() {
                blocks.push(vec![0; cat.hom_dim(dom.summand(di), cod.summand(ci))]);
            }
        }
        Self { dom, cod, blocks }
    }

    pub fn identity(cat: &PresentedCategory, x: &ObjectExpr) -> Self {
        let mut m = Self::zero(cat, x.clone(), x.clone());
        for i in 0..x.len() {
            let g = x.summand(i);
            m.set_block(i, i, cat.id_coords(g).to_vec());
        }
        m
    }

    pub fn from_blocks(dom: ObjectExpr, cod: ObjectExpr, blocks: Vec<Vec<u32>>) -> Self {
        assert_eq!(blocks.len(), dom.len() * cod.len(), "block grid shape");
        Self { dom, cod, blocks }
    }

    pub fn dom(&self) -> &ObjectExpr {
        &self.dom
    }

    pub fn cod(&self) -> &ObjectExpr {
        &self.cod
    }

    #[inline]
    pub fn block(&self, ci: usize, di: usize) -> &[u32] {
        &self.blocks[ci * self.dom.len() + di]
    }

    pub fn set_block(&mut self, ci: usize, di: usize, coords: Vec<u32>) {
        let idx = ci * self.dom.len() + di;
        debug_assert_eq!(self.blocks[idx].len(), coords.len(), "block dimension");
        self.blocks[idx] = coords;
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.iter().all(|&c| c == 0))
    }

    /// Flat coordinate vector: blocks in `(ci, di)` row-major order.
    pub fn to_flat(&self) -> Vec<u32> {
        self.blocks.iter().flatten().copied().collect()
    }

    pub fn from_flat(
        cat: &PresentedCategory,
        dom: &ObjectExpr,
        cod: &ObjectExpr,
        flat: &[u32],
    ) -> Self {
        let mut m = Self::zero(cat, dom.clone(), cod.clone());
        let mut off = 0;
        for ci in 0..cod.len() {
            for di in 0..dom.len() {
                let d = cat.hom_dim(dom.summand(di), cod.summand(ci));
                m.set_block(ci, di, flat[off..off + d].to_vec());
                off += d;
            }
        }
        assert_eq!(off, flat.len(), "flat vector length");
        m
    }

    pub fn compose(cat: &PresentedCategory, g: &Morphism, f: &Morphism) -> Result<Morphism, CatError> {
        if f.cod != g.dom {
            return Err(CatError::ObjectMismatch(format!(
                "compose: codomain {} != domain {}",
                f.cod.display(cat),
                g.dom.display(cat)
            )));
        }
        let p = cat.modulus();
        let mut out = Morphism::zero(cat, f.dom.clone(), g.cod.clone());
        for ci in 0..g.cod.len() {
            let c = g.cod.summand(ci);
            for di in 0..f.dom.len() {
                let a = f.dom.summand(di);
                let mut acc = vec![0u32; cat.hom_dim(a, c)];
                for bj in 0..f.cod.len() {
                    let b = f.cod.summand(bj);
                    let piece = cat.compose_coords(a, b, c, g.block(ci, bj), f.block(bj, di));
                    for (k, v) in piece.into_iter().enumerate() {
                        acc[k] = fp_add(acc[k], v, p);
                    }
                }
                out.set_block(ci, di, acc);
            }
        }
        Ok(out)
    }

    pub fn add(cat: &PresentedCategory, a: &Morphism, b: &Morphism) -> Result<Morphism, CatError> {
        if a.dom != b.dom || a.cod != b.cod {
            return Err(CatError::ObjectMismatch("add: endpoints differ".into()));
        }
        let p = cat.modulus();
        let blocks = a
            .blocks
            .iter()
            .zip(&b.blocks)
            .map(|(x, y)| x.iter().zip(y).map(|(&u, &v)| fp_add(u, v, p)).collect())
            .collect();
        Ok(Morphism { dom: a.dom.clone(), cod: a.cod.clone(), blocks })
    }

    pub fn sub(cat: &PresentedCategory, a: &Morphism, b: &Morphism) -> Result<Morphism, CatError> {
        Morphism::add(cat, a, &b.scale(cat, fp_neg(1, cat.modulus())))
    }

    pub fn scale(&self, cat: &PresentedCategory, c: u32) -> Morphism {
        let p = cat.modulus();
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&v| fp_mul(v, c, p)).collect())
            .collect();
        Morphism { dom: self.dom.clone(), cod: self.cod.clone(), blocks }
    }

    /// Block-diagonal sum: `(f ⊕ g): dom_f ⊕ dom_g → cod_f ⊕ cod_g`.
    pub fn direct_sum(cat: &PresentedCategory, f: &Morphism, g: &Morphism) -> Morphism {
        let dom = f.dom.direct_sum(&g.dom);
        let cod = f.cod.direct_sum(&g.cod);
        let mut out = Morphism::zero(cat, dom, cod);
        for ci in 0..f.cod.len() {
            for di in 0..f.dom.len() {
                out.set_block(ci, di, f.block(ci, di).to_vec());
            }
        }
        for ci in 0..g.cod.len() {
            for di in 0..g.dom.len() {
                out.set_block(f.cod.len() + ci, f.dom.len() + di, g.block(ci, di).to_vec());
            }
        }
        out
    }

    pub fn block_diag(cat: &PresentedCategory, pieces: &[Morphism]) -> Morphism {
        let mut acc = Morphism::zero(cat, ObjectExpr::zero(), ObjectExpr::zero());
        for piece in pieces {
            acc = Morphism::direct_sum(cat, &acc, piece);
        }
        acc
    }

    /// The canonical inclusion of the `i`-th summand of `x`.
    pub fn injection(cat: &PresentedCategory, x: &ObjectExpr, i: usize) -> Morphism {
        let g = x.summand(i);
        let mut m = Morphism::zero(cat, ObjectExpr::generator(g), x.clone());
        m.set_block(i, 0, cat.id_coords(g).to_vec());
        m
    }

    /// The canonical projection onto the `i`-th summand of `x`.
    pub fn projection(cat: &PresentedCategory, x: &ObjectExpr, i: usize) -> Morphism {
        let g = x.summand(i);
        let mut m = Morphism::zero(cat, x.clone(), ObjectExpr::generator(g));
        m.set_block(0, i, cat.id_coords(g).to_vec());
        m
    }

    /// Permutation isomorphism `x → y` where `y.summand(perm[i]) = x.summand(i)`
    /// and `perm` is a bijection of positions.
    pub fn permutation(cat: &PresentedCategory, x: &ObjectExpr, perm: &[usize]) -> Morphism {
        let mut target = vec![usize::MAX; x.len()];
        for (i, &pi) in perm.iter().enumerate() {
            target[pi] = x.summand(i);
        }
        let y = ObjectExpr::from_summands(target);
        let mut m = Morphism::zero(cat, x.clone(), y.clone());
        for (i, &pi) in perm.iter().enumerate() {
            m.set_block(pi, i, cat.id_coords(x.summand(i)).to_vec());
        }
        m
    }

    pub fn display(&self, cat: &PresentedCategory) -> String {
        let mut parts = Vec::new();
        for ci in 0..self.cod.len() {
            for di in 0..self.dom.len() {
                let b = self.block(ci, di);
                if b.iter().any(|&c| c != 0) {
                    let terms: Vec<String> = b
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(k, &c)| {
                            let name = cat.basis_name(self.dom.summand(di), self.cod.summand(ci), k);
                            if c == 1 {
                                name.to_string()
                            } else {
                                format!("{}*{}", c, name)
                            }
                        })
                        .collect();
                    parts.push(format!("({},{})={}", ci, di, terms.join("+")));
                }
            }
        }
        format!(
            "{} -> {} [{}]",
            self.dom.display(cat),
            self.cod.display(cat),
            if parts.is_empty() { "0".to_string() } else { parts.join(", ") }
        )
    }
}
