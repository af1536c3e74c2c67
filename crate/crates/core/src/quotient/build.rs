//! The quotient presentation: ideal subspaces, complement bases, projection
//! and lift, and the induced composition tables.

use super::QuotientError;
use crate::addcat::{
    hom_dim_obj, Morphism, ObjectExpr, PresentedCategory, Subcategory,
};
use crate::angles::Structure;
use crate::ffmat::FpMatrix;
use std::collections::BTreeMap;

/// Basis of the subspace of `Hom(x, y)` of morphisms factoring through an
/// object of `d`: the span of all two-step composites through `d`'s
/// generators. Factoring through a finite sum equals factoring through the
/// generators one at a time, summed, so generator probes are complete.
pub fn ideal_subspace(
    st: &Structure,
    x: &ObjectExpr,
    y: &ObjectExpr,
    d: &Subcategory,
) -> Vec<Vec<u32>> {
    let cat = &st.cat;
    let dim = hom_dim_obj(cat, x, y);
    let mut spanning: Vec<Vec<u32>> = Vec::new();
    for g in d.gens() {
        let probe = ObjectExpr::generator(g);
        let into = hom_dim_obj(cat, x, &probe);
        let out_of = hom_dim_obj(cat, &probe, y);
        for i in 0..into {
            let a = crate::addcat::elementary_morphism(cat, x, &probe, i);
            for j in 0..out_of {
                let b = crate::addcat::elementary_morphism(cat, &probe, y, j);
                let comp = Morphism::compose(cat, &b, &a).expect("probe shapes agree");
                spanning.push(comp.to_flat());
            }
        }
    }
    if spanning.is_empty() {
        return Vec::new();
    }
    let m = FpMatrix::from_rows(cat.modulus(), &spanning).expect("uniform row length");
    let (r, pivots) = m.rref();
    let _ = dim;
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// The quotient category: base subcategory data, per-pair ideal bases and
/// lexicographically-first complement bases, projection matrices, and the
/// induced presentation (which is itself validated on construction).
#[derive(Debug, Clone)]
pub struct QuotientData {
    pub z: Subcategory,
    pub d: Subcategory,
    pub cat: PresentedCategory,
    /// quotient generator index → base generator index
    pub base_gens: Vec<usize>,
    quot_index: BTreeMap<usize, usize>,
    /// `[qg][qh]`: basis of the ideal in base Hom coordinates.
    pub ideal_bases: Vec<Vec<Vec<Vec<u32>>>>,
    /// `[qg][qh]`: base basis indices spanning the chosen complement.
    pub complements: Vec<Vec<Vec<usize>>>,
    /// `[qg][qh]`: matrix sending base Hom coordinates to quotient ones.
    proj_mats: Vec<Vec<FpMatrix>>,
}

impl QuotientData {
    pub fn quot_gen(&self, base_gen: usize) -> usize {
        self.quot_index[&base_gen]
    }

    pub fn to_quotient_obj(&self, x: &ObjectExpr) -> ObjectExpr {
        ObjectExpr::from_summands(x.iter().map(|g| self.quot_gen(g)).collect())
    }

    pub fn to_base_obj(&self, x: &ObjectExpr) -> ObjectExpr {
        ObjectExpr::from_summands(x.iter().map(|qg| self.base_gens[qg]).collect())
    }

    /// Projects a base morphism between Z-internal objects to its class.
    pub fn project(&self, base_cat: &PresentedCategory, f: &Morphism) -> Morphism {
        let dom = self.to_quotient_obj(f.dom());
        let cod = self.to_quotient_obj(f.cod());
        let mut out = Morphism::zero(&self.cat, dom, cod);
        for ci in 0..f.cod().len() {
            for di in 0..f.dom().len() {
                let qg = self.quot_gen(f.dom().summand(di));
                let qh = self.quot_gen(f.cod().summand(ci));
                let coords =
                    self.proj_mats[qg][qh].mul_vec(f.block(ci, di)).expect("projection shape");
                out.set_block(ci, di, coords);
            }
        }
        let _ = base_cat;
        out
    }

    /// Lifts a quotient morphism to the chosen complement representatives.
    pub fn lift(&self, base_cat: &PresentedCategory, f: &Morphism) -> Morphism {
        let dom = self.to_base_obj(f.dom());
        let cod = self.to_base_obj(f.cod());
        let mut out = Morphism::zero(base_cat, dom, cod);
        for ci in 0..f.cod().len() {
            for di in 0..f.dom().len() {
                let qg = f.dom().summand(di);
                let qh = f.cod().summand(ci);
                let base_dim =
                    base_cat.hom_dim(self.base_gens[qg], self.base_gens[qh]);
                let mut coords = vec![0u32; base_dim];
                for (s, &base_idx) in self.complements[qg][qh].iter().enumerate() {
                    coords[base_idx] = f.block(ci, di)[s];
                }
                out.set_block(ci, di, coords);
            }
        }
        out
    }

    /// Ideal membership of a base morphism: its class is zero.
    pub fn in_ideal(&self, base_cat: &PresentedCategory, f: &Morphism) -> bool {
        self.project(base_cat, f).is_zero()
    }
}

/// Builds the quotient of `Z` by the ideal of morphisms factoring through
/// `D`. The complement of each ideal is the lexicographically first one under
/// the ambient basis order, so quotient coordinates are stable across runs.
pub fn build_quotient(
    st: &Structure,
    z: &Subcategory,
    d: &Subcategory,
) -> Result<QuotientData, QuotientError> {
    if !d.is_subset_of(z) {
        return Err(QuotientError::Precondition("D must be a subset of Z".into()));
    }
    let cat = &st.cat;
    let p = cat.modulus();
    let base_gens: Vec<usize> = z.gens().collect();
    let quot_index: BTreeMap<usize, usize> =
        base_gens.iter().enumerate().map(|(q, &b)| (b, q)).collect();
    let qn = base_gens.len();
    let mut ideal_bases = vec![vec![Vec::new(); qn]; qn];
    let mut complements = vec![vec![Vec::new(); qn]; qn];
    let mut proj_mats = vec![Vec::new(); qn];
    let mut hom_dims = vec![vec![0usize; qn]; qn];
    let mut basis_names = vec![vec![Vec::new(); qn]; qn];
    for qg in 0..qn {
        for qh in 0..qn {
            let (g, h) = (base_gens[qg], base_gens[qh]);
            let gx = ObjectExpr::generator(g);
            let hx = ObjectExpr::generator(h);
            let dim = cat.hom_dim(g, h);
            let ideal = ideal_subspace(st, &gx, &hx, d);
            // lexicographically first complement: greedily add standard basis
            // vectors that increase the rank
            let mut chosen: Vec<usize> = Vec::new();
            let mut rows: Vec<Vec<u32>> = ideal.clone();
            let mut rank = if rows.is_empty() {
                0
            } else {
                FpMatrix::from_rows(p, &rows).expect("rows").rank()
            };
            for idx in 0..dim {
                if rank == dim {
                    break;
                }
                let mut e = vec![0u32; dim];
                e[idx] = 1;
                let mut trial = rows.clone();
                trial.push(e.clone());
                let r = FpMatrix::from_rows(p, &trial).expect("rows").rank();
                if r > rank {
                    rank = r;
                    rows = trial;
                    chosen.push(idx);
                }
            }
            // projection: solve v = ideal·a + complement·λ and keep λ
            let ideal_count = ideal.len();
            let mut cols: Vec<Vec<u32>> = ideal.clone();
            for &idx in &chosen {
                let mut e = vec![0u32; dim];
                e[idx] = 1;
                cols.push(e);
            }
            let basis_mat = FpMatrix::from_cols(p, dim, &cols).expect("basis shape");
            let mut proj = FpMatrix::zeros(p, chosen.len(), dim);
            for v_idx in 0..dim {
                let mut e = vec![0u32; dim];
                e[v_idx] = 1;
                let sol = basis_mat
                    .solve(&e)
                    .expect("shapes agree")
                    .expect("ideal plus complement spans the Hom space");
                for s in 0..chosen.len() {
                    proj.set(s, v_idx, sol.particular[ideal_count + s]);
                }
            }
            hom_dims[qg][qh] = chosen.len();
            basis_names[qg][qh] = chosen
                .iter()
                .map(|&idx| cat.basis_name(g, h, idx).to_string())
                .collect();
            ideal_bases[qg][qh] = ideal;
            complements[qg][qh] = chosen;
            proj_mats[qg].push(proj);
        }
    }
    // induced composition: lift, compose in the base, project
    let mut comp = vec![vec![vec![Vec::new(); qn]; qn]; qn];
    let mut ids = Vec::with_capacity(qn);
    for qa in 0..qn {
        for qb in 0..qn {
            for qc in 0..qn {
                let (a, b, c) = (base_gens[qa], base_gens[qb], base_gens[qc]);
                let rows = hom_dims[qb][qc];
                let cols_n = hom_dims[qa][qb];
                let mut table = vec![vec![Vec::new(); cols_n]; rows];
                #[allow(clippy::needless_range_loop)]
                for j in 0..rows {
                    for i in 0..cols_n {
                        let dim_ab = cat.hom_dim(a, b);
                        let dim_bc = cat.hom_dim(b, c);
                        let mut u = vec![0u32; dim_ab];
                        u[complements[qa][qb][i]] = 1;
                        let mut v = vec![0u32; dim_bc];
                        v[complements[qb][qc][j]] = 1;
                        let composite = cat.compose_coords(a, b, c, &v, &u);
                        table[j][i] =
                            proj_mats[qa][qc].mul_vec(&composite).expect("projection shape");
                    }
                }
                comp[qa][qb][qc] = table;
            }
        }
    }
    for qg in 0..qn {
        let g = base_gens[qg];
        ids.push(proj_mats[qg][qg].mul_vec(cat.id_coords(g)).expect("projection shape"));
    }
    let names = base_gens.iter().map(|&g| cat.gen_name(g).to_string()).collect();
    let quotient_cat = PresentedCategory::new(p, names, hom_dims, basis_names, comp, ids)
        .map_err(|e| QuotientError::Construction(e.to_string()))?;
    Ok(QuotientData {
        z: z.clone(),
        d: d.clone(),
        cat: quotient_cat,
        base_gens,
        quot_index,
        ideal_bases,
        complements,
        proj_mats,
    })
}
