//! Angle classes: membership oracles with completion procedures and bounded
//! enumerators.
//!
//! Two concrete oracles cover the built-in corpus. The split oracle lives on
//! semisimple presentations, where a sequence is an angle exactly when its
//! wrap-around complex is exact (equivalently, when it decomposes into
//! rotated trivial angles). The wrap-exact oracle accepts any presentation
//! and uses the same exactness membership; on the dual-numbers presentation
//! it completes morphisms through a diagonal normal form, elsewhere through
//! bounded search.

use super::exact::periodic_exactness;
use super::sequence::{
    rewrite_at, rotate_left, rotate_right, sequence_direct_sum, trivial_angle, NSequence,
};
use super::{linsys, Structure};
use crate::addcat::{opposite_morphism, Morphism, ObjectExpr};
use crate::ffmat::{fp_add, fp_mul, fp_neg, FpMatrix};
use crate::report::{Budget, Membership};
use std::sync::Arc;

/// A class of n-angles: a three-valued membership oracle, a completion
/// procedure realizing the first-morphism axiom, and a bounded enumerator.
/// Every sequence produced by `complete` or `enumerate` passes `membership`.
/// Implementations must be safe for concurrent use over shared structures.
pub trait AngleClass: Send + Sync {
    fn name(&self) -> &str;
    fn membership(&self, st: &Structure, seq: &NSequence) -> Membership;
    fn complete(&self, st: &Structure, f1: &Morphism) -> Option<NSequence>;
    /// Member stream capped by the budget; the flag reports truncation.
    fn enumerate(&self, st: &Structure, budget: &Budget) -> (Vec<NSequence>, bool);
}

pub type DynClass = Arc<dyn AngleClass>;

/// All objects of total multiplicity at most `cap`, canonical (sorted) form,
/// ordered by size then lexicographically.
pub fn enum_objects_impl(gen_count: usize, cap: usize) -> Vec<ObjectExpr> {
    let mut out = vec![ObjectExpr::zero()];
    let mut current: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..cap {
        let mut next = Vec::new();
        for base in &current {
            let start = base.last().copied().unwrap_or(0);
            for g in start..gen_count {
                let mut s = base.clone();
                s.push(g);
                next.push(s);
            }
        }
        out.extend(next.iter().map(|s| ObjectExpr::from_summands(s.clone())));
        current = next;
    }
    out
}

// ---------------------------------------------------------------------------
// split oracle
// ---------------------------------------------------------------------------

/// Oracle for semisimple presentations: every Hom(g,g) is one-dimensional
/// with basis the identity and all cross Homs vanish. Membership is exactness
/// of the wrap-around complex, which at these presentations characterizes the
/// sequences isomorphic to direct sums of rotated trivial angles.
pub struct SplitClass;

impl SplitClass {
    pub fn check_shape(st: &Structure) -> Result<(), String> {
        let cat = &st.cat;
        for g in 0..cat.gen_count() {
            for h in 0..cat.gen_count() {
                let expect = if g == h { 1 } else { 0 };
                if cat.hom_dim(g, h) != expect {
                    return Err(format!(
                        "split oracle needs a semisimple presentation; Hom({},{}) has dimension {}",
                        cat.gen_name(g),
                        cat.gen_name(h),
                        cat.hom_dim(g, h)
                    ));
                }
            }
            if cat.id_coords(g) != [1] {
                return Err(format!(
                    "split oracle needs identity coordinates [1] on {}",
                    cat.gen_name(g)
                ));
            }
        }
        Ok(())
    }

    fn complete_split(st: &Structure, f: &Morphism) -> NSequence {
        let cat = &st.cat;
        let gen_count = cat.gen_count();
        // group domain and codomain positions by generator
        let group = |x: &ObjectExpr| -> Vec<Vec<usize>> {
            let mut groups = vec![Vec::new(); gen_count];
            for (i, g) in x.summands().iter().enumerate() {
                groups[*g].push(i);
            }
            groups
        };
        let dom_groups = group(f.dom());
        let cod_groups = group(f.cod());
        let perm_of = |groups: &[Vec<usize>], len: usize| -> Vec<usize> {
            let mut perm = vec![0usize; len];
            let mut next = 0;
            for grp in groups {
                for &orig in grp {
                    perm[orig] = next;
                    next += 1;
                }
            }
            perm
        };
        let pi_dom = Morphism::permutation(cat, f.dom(), &perm_of(&dom_groups, f.dom().len()));
        let pi_cod = Morphism::permutation(cat, f.cod(), &perm_of(&cod_groups, f.cod().len()));

        // per-generator matrices and their diagonal normal forms
        let p = cat.modulus();
        let mut pieces: Vec<NSequence> = Vec::new();
        let mut u_blocks: Vec<Morphism> = Vec::new();
        let mut v_inv_blocks: Vec<Morphism> = Vec::new();
        for g in 0..gen_count {
            let rows = cod_groups[g].len();
            let cols = dom_groups[g].len();
            let mut m = FpMatrix::zeros(p, rows, cols);
            for (ri, &cp) in cod_groups[g].iter().enumerate() {
                for (ci, &dp) in dom_groups[g].iter().enumerate() {
                    m.set(ri, ci, f.block(cp, dp)[0]);
                }
            }
            let (u, v, r) = smith_field(&m);
            let gx = ObjectExpr::generator(g);
            for _ in 0..r {
                pieces.push(trivial_angle(st, &gx));
            }
            for _ in r..cols {
                pieces.push(rotate_left(st, &trivial_angle(st, &gx)));
            }
            for _ in r..rows {
                pieces.push(rotate_right(st, &trivial_angle(st, &gx)));
            }
            u_blocks.push(matrix_to_morphism(cat, &u, g));
            let v_inv = v.inverse().expect("smith factor is invertible");
            v_inv_blocks.push(matrix_to_morphism(cat, &v_inv, g));
        }
        let normal = pieces
            .into_iter()
            .reduce(|a, b| sequence_direct_sum(st, &a, &b))
            .unwrap_or_else(|| zero_sequence(st));
        let u_mor = Morphism::block_diag(cat, &u_blocks);
        let v_inv_mor = Morphism::block_diag(cat, &v_inv_blocks);
        let u = Morphism::compose(cat, &v_inv_mor, &pi_dom).expect("grouped shapes agree");
        let v = Morphism::compose(cat, &u_mor, &pi_cod).expect("grouped shapes agree");
        transport_completion(st, &normal, f, &u, &v)
    }
}

impl AngleClass for SplitClass {
    fn name(&self) -> &str {
        "split"
    }

    fn membership(&self, st: &Structure, seq: &NSequence) -> Membership {
        if seq.validate(st).is_err() {
            return Membership::Out;
        }
        match periodic_exactness(st, seq) {
            Ok(()) => Membership::In,
            Err(_) => Membership::Out,
        }
    }

    fn complete(&self, st: &Structure, f1: &Morphism) -> Option<NSequence> {
        Some(Self::complete_split(st, f1))
    }

    fn enumerate(&self, st: &Structure, budget: &Budget) -> (Vec<NSequence>, bool) {
        enumerate_from_pieces(st, &split_pieces(st), budget)
    }
}

fn zero_sequence(st: &Structure) -> NSequence {
    trivial_angle(st, &ObjectExpr::zero())
}

/// All single-generator rotated trivial angles, the building blocks of the
/// split class.
fn split_pieces(st: &Structure) -> Vec<NSequence> {
    let mut pieces = Vec::new();
    for g in 0..st.cat.gen_count() {
        let mut seq = trivial_angle(st, &ObjectExpr::generator(g));
        for _ in 0..st.n {
            pieces.push(seq.clone());
            seq = rotate_left(st, &seq);
        }
    }
    pieces
}

/// Deterministic member stream: sums of canonical pieces in multiset order,
/// then change-of-basis rewrites of those sums, capped by the budget.
fn enumerate_from_pieces(
    st: &Structure,
    pieces: &[NSequence],
    budget: &Budget,
) -> (Vec<NSequence>, bool) {
    let mut out = vec![zero_sequence(st)];
    let mut truncated = false;
    let cap = budget.cap_instances;
    // multisets of piece indices, size 1..=cap_objects
    let mut level: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..budget.cap_objects {
        let mut next_level = Vec::new();
        for base in &level {
            let start = base.last().copied().unwrap_or(0);
            for idx in start..pieces.len() {
                let mut s = base.clone();
                s.push(idx);
                next_level.push(s);
            }
        }
        for combo in &next_level {
            if out.len() >= cap {
                truncated = true;
                break;
            }
            let seq = combo
                .iter()
                .map(|&i| pieces[i].clone())
                .reduce(|a, b| sequence_direct_sum(st, &a, &b))
                .expect("combo is nonempty");
            out.push(seq);
        }
        if truncated {
            break;
        }
        level = next_level;
    }
    // isomorphic rewrites give the stream non-diagonal members
    if !truncated {
        let base_count = out.len();
        'outer: for i in 0..base_count {
            let seq = out[i].clone();
            for pos in 0..st.n {
                if seq.objects[pos].len() < 2 {
                    continue;
                }
                for u in rewrite_isos(st, &seq.objects[pos]) {
                    if out.len() >= cap {
                        truncated = true;
                        break 'outer;
                    }
                    out.push(rewrite_at(st, &seq, pos, &u));
                }
            }
        }
    }
    (out, truncated)
}

/// A small deterministic family of self-isomorphisms of `x`: a transposition
/// of the first two summands of equal generator, and a unipotent shear when
/// the first two summands share a generator.
fn rewrite_isos(st: &Structure, x: &ObjectExpr) -> Vec<Morphism> {
    let cat = &st.cat;
    let mut out = Vec::new();
    let Some(j) = (1..x.len()).find(|&j| x.summand(j) == x.summand(0)) else {
        return out;
    };
    let mut perm: Vec<usize> = (0..x.len()).collect();
    perm.swap(0, j);
    out.push(Morphism::permutation(cat, x, &perm));
    let mut shear = Morphism::identity(cat, x);
    shear.set_block(j, 0, cat.id_coords(x.summand(0)).to_vec());
    out.push(shear);
    out
}

/// Writes a scalar matrix over a single generator as a morphism
/// `g^cols → g^rows`.
fn matrix_to_morphism(cat: &crate::addcat::PresentedCategory, m: &FpMatrix, g: usize) -> Morphism {
    let dom = ObjectExpr::from_summands(vec![g; m.cols()]);
    let cod = ObjectExpr::from_summands(vec![g; m.rows()]);
    let mut out = Morphism::zero(cat, dom, cod);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let v = m.get(i, j);
            if v != 0 {
                out.set_block(i, j, vec![v]);
            }
        }
    }
    out
}

/// `U · M · V = [[I, 0], [0, 0]]` over a field, with both factors invertible.
pub fn smith_field(m: &FpMatrix) -> (FpMatrix, FpMatrix, usize) {
    let p = m.modulus();
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = FpMatrix::identity(p, rows);
    let mut v = FpMatrix::identity(p, cols);
    let mut r = 0;
    while r < rows.min(cols) {
        let Some((pi, pj)) = (r..rows)
            .flat_map(|i| (r..cols).map(move |j| (i, j)))
            .find(|&(i, j)| a.get(i, j) != 0)
        else {
            break;
        };
        swap_rows(&mut a, r, pi);
        swap_rows(&mut u, r, pi);
        swap_cols(&mut a, r, pj);
        swap_cols(&mut v, r, pj);
        let inv = crate::ffmat::fp_inv(a.get(r, r), p);
        scale_row(&mut a, r, inv);
        scale_row(&mut u, r, inv);
        for i in 0..rows {
            if i != r && a.get(i, r) != 0 {
                let f = a.get(i, r);
                row_sub(&mut a, i, r, f);
                row_sub(&mut u, i, r, f);
            }
        }
        for j in 0..cols {
            if j != r && a.get(r, j) != 0 {
                let f = a.get(r, j);
                col_sub(&mut a, j, r, f);
                col_sub(&mut v, j, r, f);
            }
        }
        r += 1;
    }
    (u, v, r)
}

fn swap_rows(m: &mut FpMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.cols() {
        let (x, y) = (m.get(a, j), m.get(b, j));
        m.set(a, j, y);
        m.set(b, j, x);
    }
}

fn swap_cols(m: &mut FpMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..m.rows() {
        let (x, y) = (m.get(i, a), m.get(i, b));
        m.set(i, a, y);
        m.set(i, b, x);
    }
}

fn scale_row(m: &mut FpMatrix, r: usize, c: u32) {
    let p = m.modulus();
    for j in 0..m.cols() {
        m.set(r, j, fp_mul(m.get(r, j), c, p));
    }
}

/// row_a -= f * row_b
fn row_sub(m: &mut FpMatrix, a: usize, b: usize, f: u32) {
    let p = m.modulus();
    for j in 0..m.cols() {
        let v = fp_add(m.get(a, j), fp_mul(fp_neg(f, p), m.get(b, j), p), p);
        m.set(a, j, v);
    }
}

/// col_a -= f * col_b
fn col_sub(m: &mut FpMatrix, a: usize, b: usize, f: u32) {
    let p = m.modulus();
    for i in 0..m.rows() {
        let v = fp_add(m.get(i, a), fp_mul(fp_neg(f, p), m.get(i, b), p), p);
        m.set(i, a, v);
    }
}

/// Rebases an angle with normal-form first map onto the morphism `f` it came
/// from: `u: dom(f) → dom(N)` and `v: cod(f) → cod(N)` are isomorphisms with
/// `N∘u = v∘f`, and the transported angle starts with `f` on the nose.
pub fn transport_completion(
    st: &Structure,
    normal: &NSequence,
    f: &Morphism,
    u: &Morphism,
    v: &Morphism,
) -> NSequence {
    let cat = &st.cat;
    let n = st.n;
    debug_assert_eq!(
        Morphism::compose(cat, &normal.maps[0], u).unwrap(),
        Morphism::compose(cat, v, f).unwrap(),
        "transport square must commute"
    );
    let mut objects = vec![f.dom().clone(), f.cod().clone()];
    objects.extend_from_slice(&normal.objects[2..]);
    let mut maps = vec![f.clone()];
    maps.push(Morphism::compose(cat, &normal.maps[1], v).expect("transport shapes agree"));
    for i in 2..n - 1 {
        maps.push(normal.maps[i].clone());
    }
    let u_inv = crate::addcat::iso_inverse(cat, u).expect("transport iso");
    let last = Morphism::compose(cat, &st.fwd_mor(&u_inv), &normal.maps[n - 1])
        .expect("transport shapes agree");
    maps.push(last);
    let seq = NSequence::new(objects, maps);
    debug_assert!(seq.validate(st).is_ok(), "transported completion must be valid");
    seq
}

// ---------------------------------------------------------------------------
// wrap-exact oracle
// ---------------------------------------------------------------------------

/// Membership by exactness of the wrap-around doubly periodic complex.
/// Completion is exact on the dual-numbers presentation (one generator `P`
/// with End(P) = F_2[x]/(x²) and identity suspension) via a diagonal normal
/// form over that local ring; other presentations fall back to bounded
/// search, which may return `None` within budget.
pub struct WrapExactClass {
    completer: Completer,
    search_budget: Budget,
}

enum Completer {
    DualNumbers,
    Search,
}

impl WrapExactClass {
    pub fn new(st: &Structure, search_budget: Budget) -> Self {
        let completer =
            if Self::is_dual_numbers(st) { Completer::DualNumbers } else { Completer::Search };
        Self { completer, search_budget }
    }

    /// One generator, p = 2, End = {1, x} with x² = 0, identity suspension.
    fn is_dual_numbers(st: &Structure) -> bool {
        let cat = &st.cat;
        if cat.gen_count() != 1 || cat.modulus() != 2 || cat.hom_dim(0, 0) != 2 {
            return false;
        }
        if cat.id_coords(0) != [1, 0] {
            return false;
        }
        if cat.compose_coords(0, 0, 0, &[0, 1], &[0, 1]) != [0, 0] {
            return false;
        }
        if st.fwd_obj(&ObjectExpr::generator(0)) != ObjectExpr::generator(0) {
            return false;
        }
        let x = Morphism::from_flat(
            cat,
            &ObjectExpr::generator(0),
            &ObjectExpr::generator(0),
            &[0, 1],
        );
        st.fwd_mor(&x) == x
    }
}

impl AngleClass for WrapExactClass {
    fn name(&self) -> &str {
        "wrap-exact"
    }

    fn membership(&self, st: &Structure, seq: &NSequence) -> Membership {
        if seq.validate(st).is_err() {
            return Membership::Out;
        }
        match periodic_exactness(st, seq) {
            Ok(()) => Membership::In,
            Err(_) => Membership::Out,
        }
    }

    fn complete(&self, st: &Structure, f1: &Morphism) -> Option<NSequence> {
        match self.completer {
            Completer::DualNumbers => Some(complete_dual_numbers(st, f1)),
            Completer::Search => complete_by_search(st, self, f1, &self.search_budget),
        }
    }

    fn enumerate(&self, st: &Structure, budget: &Budget) -> (Vec<NSequence>, bool) {
        let mut pieces = split_pieces(st);
        if matches!(self.completer, Completer::DualNumbers) {
            pieces.push(x_wrap_sequence(st));
        }
        enumerate_from_pieces(st, &pieces, budget)
    }
}

/// The wrap sequence `P →x P →x ⋯ →x P` (all maps multiplication by x),
/// exact because ker x = im x in the dual numbers.
pub fn x_wrap_sequence(st: &Structure) -> NSequence {
    let gx = ObjectExpr::generator(0);
    let x = Morphism::from_flat(&st.cat, &gx, &gx, &[0, 1]);
    NSequence::new(vec![gx; st.n], vec![x; st.n])
}

type LamEntry = (u32, u32); // c + d·x over F_2

fn lam_add(a: LamEntry, b: LamEntry) -> LamEntry {
    ((a.0 ^ b.0), (a.1 ^ b.1))
}

fn lam_mul(a: LamEntry, b: LamEntry) -> LamEntry {
    ((a.0 & b.0), (a.0 & b.1) ^ (a.1 & b.0))
}

struct LamMat {
    rows: usize,
    cols: usize,
    e: Vec<LamEntry>,
}

impl LamMat {
    fn get(&self, i: usize, j: usize) -> LamEntry {
        self.e[i * self.cols + j]
    }
    fn set(&mut self, i: usize, j: usize, v: LamEntry) {
        self.e[i * self.cols + j] = v;
    }
    fn identity(n: usize) -> Self {
        let mut m = Self { rows: n, cols: n, e: vec![(0, 0); n * n] };
        for i in 0..n {
            m.set(i, i, (1, 0));
        }
        m
    }
    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let (x, y) = (self.get(a, j), self.get(b, j));
            self.set(a, j, y);
            self.set(b, j, x);
        }
    }
    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            let (x, y) = (self.get(i, a), self.get(i, b));
            self.set(i, a, y);
            self.set(i, b, x);
        }
    }
    fn scale_row(&mut self, r: usize, c: LamEntry) {
        for j in 0..self.cols {
            let v = lam_mul(c, self.get(r, j));
            self.set(r, j, v);
        }
    }
    /// row_a += f · row_b (char 2, so this is also subtraction)
    fn row_add(&mut self, a: usize, b: usize, f: LamEntry) {
        for j in 0..self.cols {
            let v = lam_add(self.get(a, j), lam_mul(f, self.get(b, j)));
            self.set(a, j, v);
        }
    }
    fn col_add(&mut self, a: usize, b: usize, f: LamEntry) {
        for i in 0..self.rows {
            let v = lam_add(self.get(i, a), lam_mul(f, self.get(i, b)));
            self.set(i, a, v);
        }
    }
    fn to_morphism(&self, st: &Structure) -> Morphism {
        let cat = &st.cat;
        let dom = ObjectExpr::from_summands(vec![0; self.cols]);
        let cod = ObjectExpr::from_summands(vec![0; self.rows]);
        let mut out = Morphism::zero(cat, dom, cod);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let (c, d) = self.get(i, j);
                out.set_block(i, j, vec![c, d]);
            }
        }
        out
    }
}

/// Diagonal normal form over F_2[x]/(x²): returns (U, V, units, nilpotents)
/// with `U·M·V` diagonal carrying `units` ones then `nilpotents` x entries.
fn smith_dual_numbers(m: &mut LamMat) -> (LamMat, LamMat, usize, usize) {
    let (rows, cols) = (m.rows, m.cols);
    let mut u = LamMat::identity(rows);
    let mut v = LamMat::identity(cols);
    let mut r = 0;
    // phase 1: unit pivots (constant term 1); units are self-inverse here
    while r < rows.min(cols) {
        let Some((pi, pj)) = (r..rows)
            .flat_map(|i| (r..cols).map(move |j| (i, j)))
            .find(|&(i, j)| m.get(i, j).0 == 1)
        else {
            break;
        };
        m.swap_rows(r, pi);
        u.swap_rows(r, pi);
        m.swap_cols(r, pj);
        v.swap_cols(r, pj);
        let pinv = m.get(r, r); // (1+dx)⁻¹ = 1+dx
        m.scale_row(r, pinv);
        u.scale_row(r, pinv);
        for i in 0..rows {
            if i != r && m.get(i, r) != (0, 0) {
                let f = m.get(i, r);
                m.row_add(i, r, f);
                u.row_add(i, r, f);
            }
        }
        for j in 0..cols {
            if j != r && m.get(r, j) != (0, 0) {
                let f = m.get(r, j);
                m.col_add(j, r, f);
                v.col_add(j, r, f);
            }
        }
        r += 1;
    }
    let units = r;
    // phase 2: the remaining minor only holds multiples of x
    while r < rows.min(cols) {
        let Some((pi, pj)) = (r..rows)
            .flat_map(|i| (r..cols).map(move |j| (i, j)))
            .find(|&(i, j)| m.get(i, j) == (0, 1))
        else {
            break;
        };
        m.swap_rows(r, pi);
        u.swap_rows(r, pi);
        m.swap_cols(r, pj);
        v.swap_cols(r, pj);
        for i in r + 1..rows {
            if m.get(i, r) == (0, 1) {
                m.row_add(i, r, (1, 0));
                u.row_add(i, r, (1, 0));
            }
        }
        for j in r + 1..cols {
            if m.get(r, j) == (0, 1) {
                m.col_add(j, r, (1, 0));
                v.col_add(j, r, (1, 0));
            }
        }
        r += 1;
    }
    (u, v, units, r - units)
}

fn complete_dual_numbers(st: &Structure, f: &Morphism) -> NSequence {
    let cat = &st.cat;
    let (rows, cols) = (f.cod().len(), f.dom().len());
    let mut m = LamMat { rows, cols, e: vec![(0, 0); rows * cols] };
    for i in 0..rows {
        for j in 0..cols {
            let b = f.block(i, j);
            m.set(i, j, (b[0], b[1]));
        }
    }
    let (u_mat, v_mat, units, nilpotents) = smith_dual_numbers(&mut m);
    let gx = ObjectExpr::generator(0);
    let mut pieces = Vec::new();
    for _ in 0..units {
        pieces.push(trivial_angle(st, &gx));
    }
    for _ in 0..nilpotents {
        pieces.push(x_wrap_sequence(st));
    }
    for _ in units + nilpotents..cols {
        pieces.push(rotate_left(st, &trivial_angle(st, &gx)));
    }
    for _ in units + nilpotents..rows {
        pieces.push(rotate_right(st, &trivial_angle(st, &gx)));
    }
    let normal = pieces
        .into_iter()
        .reduce(|a, b| sequence_direct_sum(st, &a, &b))
        .unwrap_or_else(|| zero_sequence(st));
    let u_mor = u_mat.to_morphism(st);
    let v_mor = v_mat.to_morphism(st);
    let v_inv = crate::addcat::iso_inverse(cat, &v_mor).expect("smith factor is invertible");
    // U·M·V = N, so N∘(V⁻¹) = U∘M and the transport square commutes with
    // u = V⁻¹, v = U.
    transport_completion(st, &normal, f, &v_inv, &u_mor)
}

/// Depth-first bounded completion: candidate middle objects in canonical
/// order, one kernel-space enumeration per differential, membership test at
/// the leaves. The budget bounds the number of candidate sequences tested.
fn complete_by_search(
    st: &Structure,
    class: &dyn AngleClass,
    f: &Morphism,
    budget: &Budget,
) -> Option<NSequence> {
    let n = st.n;
    let middles = enum_objects_impl(st.cat.gen_count(), budget.cap_objects);
    let mut tested = 0usize;
    let mut tuple_idx = vec![0usize; n.saturating_sub(2)];
    loop {
        let tuple: Vec<ObjectExpr> = tuple_idx.iter().map(|&i| middles[i].clone()).collect();
        if let Some(found) = search_maps(st, class, f, &tuple, budget, &mut tested) {
            return Some(found);
        }
        if tested >= budget.cap_solutions {
            return None;
        }
        // odometer over middle-object tuples
        let mut i = tuple_idx.len();
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            tuple_idx[i] += 1;
            if tuple_idx[i] < middles.len() {
                break;
            }
            tuple_idx[i] = 0;
        }
    }
}

fn search_maps(
    st: &Structure,
    class: &dyn AngleClass,
    f: &Morphism,
    middles: &[ObjectExpr],
    budget: &Budget,
    tested: &mut usize,
) -> Option<NSequence> {
    let mut objects = vec![f.dom().clone(), f.cod().clone()];
    objects.extend_from_slice(middles);
    let endpoint = st.fwd_obj(&objects[0]);
    // depth-first over kernel spaces of each consecutive composite
    fn rec(
        st: &Structure,
        class: &dyn AngleClass,
        objects: &[ObjectExpr],
        endpoint: &ObjectExpr,
        maps: &mut Vec<Morphism>,
        first: &Morphism,
        budget: &Budget,
        tested: &mut usize,
    ) -> Option<NSequence> {
        let cat = &st.cat;
        let n = st.n;
        let i = maps.len();
        if i == n {
            *tested += 1;
            let seq = NSequence::new(objects.to_vec(), maps.clone());
            if class.membership(st, &seq) == Membership::In {
                return Some(seq);
            }
            return None;
        }
        let cod = if i + 1 < n { objects[i + 1].clone() } else { endpoint.clone() };
        let prev = maps[i - 1].clone();
        // m with m∘prev = 0, and for the last slot also fwd(first)∘m = 0
        let slot = vec![(objects[i].clone(), cod.clone())];
        let fwd_first = st.fwd_mor(first);
        let is_last = i + 1 == n;
        let family = linsys::solve_affine(st, slot, |assign| {
            let m = &assign[0];
            let mut defect =
                Morphism::compose(cat, m, &prev).expect("chain shapes agree").to_flat();
            if is_last {
                defect.extend(
                    Morphism::compose(cat, &fwd_first, m).expect("chain shapes agree").to_flat(),
                );
            }
            defect
        })?;
        let (points, _) = family.tuples(st, budget.cap_solutions);
        for point in points {
            if *tested >= budget.cap_solutions {
                return None;
            }
            maps.push(point[0].clone());
            if let Some(found) = rec(st, class, objects, endpoint, maps, first, budget, tested) {
                return Some(found);
            }
            maps.pop();
        }
        None
    }
    let mut maps = vec![f.clone()];
    rec(st, class, &objects, &endpoint, &mut maps, f, budget, tested)
}

// ---------------------------------------------------------------------------
// enumerated oracle and test harness wrappers
// ---------------------------------------------------------------------------

/// Class given by an explicit member list. Membership is exact match or a
/// bounded isomorphism search against listed members; anything else is
/// inconclusive, never definitively out.
pub struct EnumeratedClass {
    pub members: Vec<NSequence>,
    pub iso_budget: usize,
}

impl AngleClass for EnumeratedClass {
    fn name(&self) -> &str {
        "enumerated"
    }

    fn membership(&self, st: &Structure, seq: &NSequence) -> Membership {
        if seq.validate(st).is_err() {
            return Membership::Out;
        }
        if self.members.contains(seq) {
            return Membership::In;
        }
        for m in &self.members {
            if m.objects
                .iter()
                .zip(&seq.objects)
                .all(|(a, b)| a.same_multiset(b))
            {
                if let crate::report::SearchOutcome::Found(_) =
                    linsys::sequence_iso_search(st, seq, m, self.iso_budget)
                {
                    return Membership::In;
                }
            }
        }
        Membership::Inconclusive
    }

    fn complete(&self, _st: &Structure, f1: &Morphism) -> Option<NSequence> {
        self.members.iter().find(|m| &m.maps[0] == f1).cloned()
    }

    fn enumerate(&self, _st: &Structure, budget: &Budget) -> (Vec<NSequence>, bool) {
        let take = budget.cap_instances.min(self.members.len());
        (self.members[..take].to_vec(), take < self.members.len())
    }
}

/// Wraps an oracle and rejects an explicit list of sequences. Used to build
/// deliberately defective classes in the verifier's own test suites.
pub struct FilteredClass {
    pub inner: DynClass,
    pub rejects: Vec<NSequence>,
    pub label: String,
}

impl AngleClass for FilteredClass {
    fn name(&self) -> &str {
        &self.label
    }

    fn membership(&self, st: &Structure, seq: &NSequence) -> Membership {
        if self.rejects.contains(seq) {
            return Membership::Out;
        }
        self.inner.membership(st, seq)
    }

    fn complete(&self, st: &Structure, f1: &Morphism) -> Option<NSequence> {
        let found = self.inner.complete(st, f1)?;
        if self.rejects.contains(&found) {
            None
        } else {
            Some(found)
        }
    }

    fn enumerate(&self, st: &Structure, budget: &Budget) -> (Vec<NSequence>, bool) {
        let (members, truncated) = self.inner.enumerate(st, budget);
        (members.into_iter().filter(|m| !self.rejects.contains(m)).collect(), truncated)
    }
}

// ---------------------------------------------------------------------------
// opposite structure
// ---------------------------------------------------------------------------

/// The angle class of the opposite structure: a sequence is an opposite
/// angle exactly when its reversal, with the sign `(-1)^n` on the unshifted
/// wrap map, is an angle of the base structure.
pub struct OppositeClass {
    pub base: Arc<Structure>,
    pub base_class: DynClass,
}

impl OppositeClass {
    /// Opposite-side view of a base sequence.
    pub fn to_opposite(base: &Structure, seq: &NSequence) -> NSequence {
        let n = base.n;
        let cat = &base.cat;
        let mut objects = Vec::with_capacity(n);
        for k in 0..n {
            objects.push(seq.objects[n - 1 - k].clone());
        }
        let mut maps = Vec::with_capacity(n);
        for j in 0..n - 1 {
            maps.push(opposite_morphism(&seq.maps[n - 2 - j]));
        }
        let last = base.bwd_mor(&seq.maps[n - 1]).scale(cat, base.rotation_sign());
        // bwd(f_n): bwd(X_n) → bwd(fwd(X_1)) = X_1 for the strict shifts the
        // opposite construction applies to
        maps.push(opposite_morphism(&Morphism::compose(
            cat,
            &base.shift.bf_iso_obj(cat, &seq.objects[0]),
            &last,
        )
        .expect("strict shift round trip")));
        NSequence::new(objects, maps)
    }

    /// Base-side view of an opposite sequence (inverse of `to_opposite`).
    pub fn to_base(base: &Structure, seq: &NSequence) -> NSequence {
        let n = base.n;
        let cat = &base.cat;
        let mut objects = Vec::with_capacity(n);
        for k in 0..n {
            objects.push(seq.objects[n - 1 - k].clone());
        }
        let mut maps = Vec::with_capacity(n);
        for k in 0..n - 1 {
            maps.push(opposite_morphism(&seq.maps[n - 2 - k]));
        }
        // the opposite wrap map reads in the base as bwd(A_1) → A_n; shift it
        // and correct the domain along the round-trip isomorphism of A_1
        let back = opposite_morphism(&seq.maps[n - 1]);
        let shifted = base.fwd_mor(&back);
        let fix = base.shift.fb_iso_inv_obj(cat, &seq.objects[0]);
        let corrected =
            Morphism::compose(cat, &shifted, &fix).expect("strict shift round trip");
        maps.push(corrected.scale(cat, base.rotation_sign()));
        NSequence::new(objects, maps)
    }
}

/// Builds the opposite structure of a strict-shift structure together with
/// its angle class. Applying it twice recovers the original data.
pub fn build_opposite(st: &Structure, class: DynClass) -> (Structure, OppositeClass) {
    let crate::addcat::Shift::Strict(sus) = &st.shift else {
        panic!("the opposite construction needs a strict shift");
    };
    let op_cat = crate::addcat::opposite_category(&st.cat);
    let op_sus = crate::addcat::opposite_suspension(&st.cat, &op_cat, sus)
        .expect("opposite suspension of a valid suspension is valid");
    let op_st = Structure::new(op_cat, crate::addcat::Shift::Strict(op_sus), st.n)
        .expect("n carries over");
    let op_class = OppositeClass { base: Arc::new(st.clone()), base_class: class };
    (op_st, op_class)
}

impl AngleClass for OppositeClass {
    fn name(&self) -> &str {
        "opposite"
    }

    fn membership(&self, op_st: &Structure, seq: &NSequence) -> Membership {
        if seq.validate(op_st).is_err() {
            return Membership::Out;
        }
        let base_seq = Self::to_base(&self.base, seq);
        self.base_class.membership(&self.base, &base_seq)
    }

    fn complete(&self, op_st: &Structure, f1: &Morphism) -> Option<NSequence> {
        // an opposite angle starting with f1 corresponds to a base angle with
        // the base view of f1 in next-to-last position; build by completing
        // at the front and rotating into place
        let base_first = opposite_morphism(f1);
        let base_angle = self.base_class.complete(&self.base, &base_first)?;
        let mut rotated = base_angle;
        for _ in 0..self.base.n - 2 {
            rotated = rotate_right(&self.base, &rotated);
        }
        let candidate = Self::to_opposite(&self.base, &rotated);
        if &candidate.maps[0] == f1 {
            let _ = op_st;
            Some(candidate)
        } else {
            None
        }
    }

    fn enumerate(&self, _op_st: &Structure, budget: &Budget) -> (Vec<NSequence>, bool) {
        let (members, truncated) = self.base_class.enumerate(&self.base, budget);
        (members.iter().map(|m| Self::to_opposite(&self.base, m)).collect(), truncated)
    }
}

// ---------------------------------------------------------------------------
// load-time screen
// ---------------------------------------------------------------------------

/// Rejects membership oracles that violate the exactness screen or basic
/// consistency: enumerated members must be valid, exact in both variances on
/// all probes at the cap, stable under isomorphic rewrites (never flipping to
/// out), and reproduced by membership; completions must start with their
/// prescribed first morphism and pass membership.
pub fn screen_class(st: &Structure, class: &dyn AngleClass, budget: &Budget) -> Result<(), String> {
    let screen_budget = Budget {
        cap_objects: budget.cap_objects.min(2),
        cap_solutions: budget.cap_solutions,
        cap_instances: budget.cap_instances.min(40),
        exhaustive: false,
    };
    let probes = enum_objects_impl(st.cat.gen_count(), screen_budget.cap_objects);
    let (members, _) = class.enumerate(st, &screen_budget);
    for (i, member) in members.iter().enumerate() {
        member
            .validate(st)
            .map_err(|e| format!("enumerated member {} is not a valid sequence: {}", i, e))?;
        if class.membership(st, member) == Membership::Out {
            return Err(format!("enumerated member {} fails its own membership", i));
        }
        for variance in [super::exact::Variance::Covariant, super::exact::Variance::Contravariant] {
            let report = super::exact::check_hom_exact(st, member, variance, &probes, &screen_budget);
            if report.verdict == crate::report::Verdict::Fail {
                return Err(format!(
                    "member {} fails the exactness screen: {}",
                    i,
                    report.witnesses.join("; ")
                ));
            }
        }
    }
    // isomorphism invariance on a sample of rewrites
    for member in members.iter().take(8) {
        if class.membership(st, member) != Membership::In {
            continue;
        }
        for pos in 0..st.n {
            for u in rewrite_isos(st, &member.objects[pos]) {
                let rewritten = rewrite_at(st, member, pos, &u);
                if class.membership(st, &rewritten) == Membership::Out {
                    return Err(format!(
                        "membership is not isomorphism-invariant at position {}",
                        pos
                    ));
                }
            }
        }
    }
    // completion consistency on a sample of first maps
    for member in members.iter().take(8) {
        if let Some(completed) = class.complete(st, &member.maps[0]) {
            if completed.maps[0] != member.maps[0] {
                return Err("completion does not start with the prescribed morphism".into());
            }
            if class.membership(st, &completed) == Membership::Out {
                return Err("completion fails membership".into());
            }
        }
    }
    for g in 0..st.cat.gen_count() {
        let triv = trivial_angle(st, &ObjectExpr::generator(g));
        if triv.validate(st).is_err() {
            return Err("trivial angle is structurally invalid".into());
        }
    }
    Ok(())
}
