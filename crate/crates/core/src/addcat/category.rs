//! Presentations, objects as formal sums, and generator-subset subcategories.

use super::CatError;
use crate::ffmat::{check_modulus, fp_add, fp_mul};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Structure-constant table for one generator triple `(a, b, c)`:
/// `table[j][i]` holds the coordinates of `v_j ∘ u_i` in the basis of
/// `Hom(a, c)`, where `u_i` runs over the basis of `Hom(a, b)` and `v_j` over
/// the basis of `Hom(b, c)`.
pub type CompTable = Vec<Vec<Vec<u32>>>;

/// A finite additive category presented by generators, Hom bases over `F_p`,
/// composition structure constants and identity coordinates.
#[derive(Debug, Clone)]
pub struct PresentedCategory {
    p: u32,
    gens: Vec<String>,
    hom_dims: Vec<Vec<usize>>,
    basis_names: Vec<Vec<Vec<String>>>,
    comp: Vec<Vec<Vec<CompTable>>>,
    ids: Vec<Vec<u32>>,
}

impl PresentedCategory {
    pub fn new(
        p: u32,
        gens: Vec<String>,
        hom_dims: Vec<Vec<usize>>,
        basis_names: Vec<Vec<Vec<String>>>,
        comp: Vec<Vec<Vec<CompTable>>>,
        ids: Vec<Vec<u32>>,
    ) -> Result<Self, CatError> {
        check_modulus(p)?;
        let cat = Self { p, gens, hom_dims, basis_names, comp, ids };
        cat.validate()?;
        Ok(cat)
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn gen_count(&self) -> usize {
        self.gens.len()
    }

    pub fn gen_name(&self, g: usize) -> &str {
        &self.gens[g]
    }

    pub fn gen_names(&self) -> &[String] {
        &self.gens
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|n| n == name)
    }

    pub fn hom_dim(&self, g: usize, h: usize) -> usize {
        self.hom_dims[g][h]
    }

    pub fn basis_name(&self, g: usize, h: usize, i: usize) -> &str {
        &self.basis_names[g][h][i]
    }

    pub fn basis_names(&self, g: usize, h: usize) -> &[String] {
        &self.basis_names[g][h]
    }

    pub fn id_coords(&self, g: usize) -> &[u32] {
        &self.ids[g]
    }

    /// Coordinates of `v_j ∘ u_i` for `u_i ∈ Hom(a,b)`, `v_j ∈ Hom(b,c)`.
    pub fn compose_basis(&self, a: usize, b: usize, c: usize, j: usize, i: usize) -> &[u32] {
        &self.comp[a][b][c][j][i]
    }

    /// Composes coordinate vectors `v ∈ Hom(b,c)` after `u ∈ Hom(a,b)`.
    pub fn compose_coords(&self, a: usize, b: usize, c: usize, v: &[u32], u: &[u32]) -> Vec<u32> {
        let mut out = vec![0u32; self.hom_dims[a][c]];
        for (j, &vj) in v.iter().enumerate() {
            if vj == 0 {
                continue;
            }
            for (i, &ui) in u.iter().enumerate() {
                if ui == 0 {
                    continue;
                }
                let coeff = fp_mul(vj, ui, self.p);
                for (k, &ck) in self.compose_basis(a, b, c, j, i).iter().enumerate() {
                    out[k] = fp_add(out[k], fp_mul(coeff, ck, self.p), self.p);
                }
            }
        }
        out
    }

    fn validate(&self) -> Result<(), CatError> {
        let n = self.gens.len();
        let bad = |msg: String| Err(CatError::Validation(msg));
        if self.hom_dims.len() != n
            || self.basis_names.len() != n
            || self.comp.len() != n
            || self.ids.len() != n
        {
            return bad("table sizes do not match the generator count".into());
        }
        for g in 0..n {
            if self.hom_dims[g].len() != n || self.basis_names[g].len() != n || self.comp[g].len() != n
            {
                return bad(format!("tables for generator {} have wrong arity", self.gens[g]));
            }
            for h in 0..n {
                if self.basis_names[g][h].len() != self.hom_dims[g][h] {
                    return bad(format!(
                        "basis of Hom({},{}) has {} names for dimension {}",
                        self.gens[g],
                        self.gens[h],
                        self.basis_names[g][h].len(),
                        self.hom_dims[g][h]
                    ));
                }
                if self.comp[g][h].len() != n {
                    return bad(format!(
                        "composition table for ({},{}) has wrong arity",
                        self.gens[g], self.gens[h]
                    ));
                }
                for k in 0..n {
                    let table = &self.comp[g][h][k];
                    if table.len() != self.hom_dims[h][k] {
                        return bad(format!(
                            "composition table ({},{},{}) has wrong outer size",
                            self.gens[g], self.gens[h], self.gens[k]
                        ));
                    }
                    for row in table {
                        if row.len() != self.hom_dims[g][h] {
                            return bad(format!(
                                "composition table ({},{},{}) has wrong inner size",
                                self.gens[g], self.gens[h], self.gens[k]
                            ));
                        }
                        for coords in row {
                            if coords.len() != self.hom_dims[g][k] {
                                return bad(format!(
                                    "composite coordinates in ({},{},{}) have wrong length",
                                    self.gens[g], self.gens[h], self.gens[k]
                                ));
                            }
                            if coords.iter().any(|&c| c >= self.p) {
                                return bad(format!(
                                    "coordinates in ({},{},{}) are not reduced mod {}",
                                    self.gens[g], self.gens[h], self.gens[k], self.p
                                ));
                            }
                        }
                    }
                }
            }
            if self.ids[g].len() != self.hom_dims[g][g] {
                return bad(format!("identity coordinates of {} have wrong length", self.gens[g]));
            }
        }
        self.validate_units()?;
        self.validate_associativity()
    }

    fn validate_units(&self) -> Result<(), CatError> {
        let n = self.gens.len();
        for a in 0..n {
            for b in 0..n {
                let dim = self.hom_dims[a][b];
                for i in 0..dim {
                    let mut e = vec![0u32; dim];
                    e[i] = 1;
                    let left = self.compose_coords(a, b, b, &self.ids[b], &e);
                    if left != e {
                        return Err(CatError::Validation(format!(
                            "associativity/unit consistency: id({}) is not a left unit on basis element {} of Hom({},{})",
                            self.gens[b], self.basis_names[a][b][i], self.gens[a], self.gens[b]
                        )));
                    }
                    let right = self.compose_coords(a, a, b, &e, &self.ids[a]);
                    if right != e {
                        return Err(CatError::Validation(format!(
                            "associativity/unit consistency: id({}) is not a right unit on basis element {} of Hom({},{})",
                            self.gens[a], self.basis_names[a][b][i], self.gens[a], self.gens[b]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn validate_associativity(&self) -> Result<(), CatError> {
        let n = self.gens.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        for i in 0..self.hom_dims[a][b] {
                            for j in 0..self.hom_dims[b][c] {
                                for k in 0..self.hom_dims[c][d] {
                                    let mut u = vec![0u32; self.hom_dims[a][b]];
                                    u[i] = 1;
                                    let mut v = vec![0u32; self.hom_dims[b][c]];
                                    v[j] = 1;
                                    let mut w = vec![0u32; self.hom_dims[c][d]];
                                    w[k] = 1;
                                    let vu = self.compose_coords(a, b, c, &v, &u);
                                    let left = self.compose_coords(a, c, d, &w, &vu);
                                    let wv = self.compose_coords(b, c, d, &w, &v);
                                    let right = self.compose_coords(a, b, d, &wv, &u);
                                    if left != right {
                                        return Err(CatError::Validation(format!(
                                            "associativity/unit consistency: basis triple ({}, {}, {}) over ({},{},{},{})",
                                            self.basis_names[a][b][i],
                                            self.basis_names[b][c][j],
                                            self.basis_names[c][d][k],
                                            self.gens[a],
                                            self.gens[b],
                                            self.gens[c],
                                            self.gens[d],
                                        )));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Incremental construction of a presentation; omitted composition constants
/// default to zero.
pub struct CategoryBuilder {
    p: u32,
    gens: Vec<String>,
    hom_dims: Vec<Vec<usize>>,
    basis_names: Vec<Vec<Vec<String>>>,
    comp: Vec<Vec<Vec<CompTable>>>,
    ids: Vec<Vec<u32>>,
}

impl CategoryBuilder {
    pub fn new(p: u32) -> Self {
        Self { p, gens: Vec::new(), hom_dims: Vec::new(), basis_names: Vec::new(), comp: Vec::new(), ids: Vec::new() }
    }

    pub fn add_gen(&mut self, name: &str) -> usize {
        self.gens.push(name.to_string());
        self.gens.len() - 1
    }

    pub fn set_hom(&mut self, g: usize, h: usize, basis: &[&str]) {
        self.resize();
        self.hom_dims[g][h] = basis.len();
        self.basis_names[g][h] = basis.iter().map(|s| s.to_string()).collect();
    }

    pub fn set_id(&mut self, g: usize, coords: &[u32]) {
        self.resize();
        self.ids[g] = coords.to_vec();
    }

    /// Records `v_j ∘ u_i = coords` for the basis pair `(i in Hom(a,b), j in Hom(b,c))`.
    pub fn set_comp(&mut self, a: usize, b: usize, c: usize, i: usize, j: usize, coords: &[u32]) {
        self.resize();
        let table = &mut self.comp[a][b][c];
        table[j][i] = coords.to_vec();
    }

    fn resize(&mut self) {
        let n = self.gens.len();
        self.hom_dims.resize(n, Vec::new());
        self.basis_names.resize(n, Vec::new());
        self.ids.resize(n, Vec::new());
        self.comp.resize(n, Vec::new());
        for g in 0..n {
            self.hom_dims[g].resize(n, 0);
            self.basis_names[g].resize(n, Vec::new());
            self.comp[g].resize(n, Vec::new());
            for h in 0..n {
                self.comp[g][h].resize(n, Vec::new());
            }
        }
        // composition tables grow lazily once dims are known
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let rows = self.hom_dims[b][c];
                    let cols = self.hom_dims[a][b];
                    let out = self.hom_dims[a][c];
                    let table = &mut self.comp[a][b][c];
                    if table.len() != rows || table.iter().any(|r| r.len() != cols) {
                        *table = vec![vec![vec![0; out]; cols]; rows];
                    } else {
                        for row in table.iter_mut() {
                            for coords in row.iter_mut() {
                                coords.resize(out, 0);
                            }
                        }
                    }
                }
            }
        }
    }

    pub fn build(mut self) -> Result<PresentedCategory, CatError> {
        self.resize();
        PresentedCategory::new(self.p, self.gens, self.hom_dims, self.basis_names, self.comp, self.ids)
    }
}

/// A formal direct sum of generators. Summands keep the order they were
/// assembled in, which is what block-matrix layouts are defined against; the
/// canonical sorted form is used whenever only the isomorphism class matters.
/// The empty sum is the zero object.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ObjectExpr {
    summands: Vec<usize>,
}

impl ObjectExpr {
    pub fn zero() -> Self {
        Self { summands: Vec::new() }
    }

    pub fn generator(g: usize) -> Self {
        Self { summands: vec![g] }
    }

    pub fn from_summands(summands: Vec<usize>) -> Self {
        Self { summands }
    }

    pub fn direct_sum(&self, other: &ObjectExpr) -> ObjectExpr {
        let mut s = self.summands.clone();
        s.extend_from_slice(&other.summands);
        Self { summands: s }
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn summand(&self, i: usize) -> usize {
        self.summands[i]
    }

    pub fn summands(&self) -> &[usize] {
        &self.summands
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.summands.iter().copied()
    }

    /// Sorted copy; two objects are isomorphic via a permutation exactly when
    /// their canonical forms agree.
    pub fn canonical(&self) -> ObjectExpr {
        let mut s = self.summands.clone();
        s.sort_unstable();
        Self { summands: s }
    }

    pub fn same_multiset(&self, other: &ObjectExpr) -> bool {
        self.canonical() == other.canonical()
    }

    pub fn display(&self, cat: &PresentedCategory) -> String {
        if self.is_zero() {
            "0".to_string()
        } else {
            self.summands.iter().map(|&g| cat.gen_name(g)).collect::<Vec<_>>().join("+")
        }
    }
}

/// A full subcategory closed under isomorphisms, sums and summands, realized
/// as a subset of the generators. An object belongs when every summand does,
/// so the zero object is always a member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subcategory {
    gens: BTreeSet<usize>,
}

impl Subcategory {
    pub fn empty() -> Self {
        Self { gens: BTreeSet::new() }
    }

    pub fn full(cat: &PresentedCategory) -> Self {
        Self { gens: (0..cat.gen_count()).collect() }
    }

    pub fn from_gens(gens: impl IntoIterator<Item = usize>) -> Self {
        Self { gens: gens.into_iter().collect() }
    }

    pub fn contains_gen(&self, g: usize) -> bool {
        self.gens.contains(&g)
    }

    pub fn contains_object(&self, x: &ObjectExpr) -> bool {
        x.iter().all(|g| self.gens.contains(&g))
    }

    pub fn is_subset_of(&self, other: &Subcategory) -> bool {
        self.gens.is_subset(&other.gens)
    }

    pub fn gens(&self) -> impl Iterator<Item = usize> + '_ {
        self.gens.iter().copied()
    }

    pub fn gen_count(&self) -> usize {
        self.gens.len()
    }

    pub fn display(&self, cat: &PresentedCategory) -> String {
        if self.gens.is_empty() {
            "{}".to_string()
        } else {
            let names: Vec<_> = self.gens.iter().map(|&g| cat.gen_name(g)).collect();
            format!("{{{}}}", names.join(","))
        }
    }
}
