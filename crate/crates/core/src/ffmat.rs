//! Dense exact linear algebra over the prime fields `F_p` with `p ∈ {2, 3, 5}`.
//!
//! Every Hom-space computation in the engine bottoms out here: rank and
//! kernel/image bases via Gaussian elimination, and linear solves that return
//! a particular solution together with a kernel basis so callers can walk the
//! whole affine solution set deterministically.
//!
//! Matrices are row-major and tiny (Hom dimensions rarely exceed ~10), so no
//! attempt is made at sparsity or blocking.

use thiserror::Error;

/// Moduli the engine accepts. Enumeration costs grow like `p^dim`, so larger
/// primes are rejected up front.
pub const SUPPORTED_PRIMES: [u32; 3] = [2, 3, 5];

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum FfmatError {
    #[error("modulus {0} is not supported (expected one of 2, 3, 5)")]
    UnsupportedModulus(u32),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
}

pub fn check_modulus(p: u32) -> Result<(), FfmatError> {
    if SUPPORTED_PRIMES.contains(&p) {
        Ok(())
    } else {
        Err(FfmatError::UnsupportedModulus(p))
    }
}

#[inline]
pub fn fp_add(a: u32, b: u32, p: u32) -> u32 {
    (a + b) % p
}

#[inline]
pub fn fp_sub(a: u32, b: u32, p: u32) -> u32 {
    (a + p - b % p) % p
}

#[inline]
pub fn fp_mul(a: u32, b: u32, p: u32) -> u32 {
    (a * b) % p
}

#[inline]
pub fn fp_neg(a: u32, p: u32) -> u32 {
    (p - a % p) % p
}

/// Multiplicative inverse; panics on zero input.
pub fn fp_inv(a: u32, p: u32) -> u32 {
    assert!(a % p != 0, "zero has no inverse");
    // p ≤ 5, so a brute scan is fastest and obviously correct.
    (1..p).find(|&x| fp_mul(a, x, p) == 1).unwrap()
}

/// `(-1)^n` as an element of `F_p`.
pub fn fp_sign(n: usize, p: u32) -> u32 {
    if n % 2 == 0 {
        1
    } else {
        fp_neg(1, p)
    }
}

/// Row-major matrix with entries reduced modulo a small prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl FpMatrix {
    pub fn new(p: u32, rows: usize, cols: usize, entries: Vec<u32>) -> Result<Self, FfmatError> {
        check_modulus(p)?;
        if entries.len() != rows * cols {
            return Err(FfmatError::ShapeMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        let entries = entries.into_iter().map(|e| e % p).collect();
        Ok(Self { p, rows, cols, entries })
    }

    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        Self::new(p, rows, cols, vec![0; rows * cols]).expect("valid shape")
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u32, rows: &[Vec<u32>]) -> Result<Self, FfmatError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(FfmatError::ShapeMismatch("ragged rows".into()));
        }
        Self::new(p, r, c, rows.iter().flatten().copied().collect())
    }

    /// Builds a matrix column-by-column; `cols` may be empty (0 columns).
    pub fn from_cols(p: u32, nrows: usize, cols: &[Vec<u32>]) -> Result<Self, FfmatError> {
        if cols.iter().any(|c| c.len() != nrows) {
            return Err(FfmatError::ShapeMismatch("ragged columns".into()));
        }
        let mut m = Self::zeros(p, nrows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.entries[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix, FfmatError> {
        if self.p != other.p {
            return Err(FfmatError::ModulusMismatch(self.p, other.p));
        }
        if self.cols != other.rows {
            return Err(FfmatError::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = FpMatrix::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = fp_add(out.get(i, j), fp_mul(a, other.get(k, j), self.p), self.p);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>, FfmatError> {
        if v.len() != self.cols {
            return Err(FfmatError::ShapeMismatch(format!(
                "matrix has {} cols, vector has {} entries",
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols).fold(0, |acc, j| {
                    fp_add(acc, fp_mul(self.get(i, j), v[j] % self.p, self.p), self.p)
                })
            })
            .collect())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// Reduced row echelon form together with the pivot column indices.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let mut m = self.clone();
        let p = m.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    let (a, b) = (m.get(r, j), m.get(pr, j));
                    m.set(r, j, b);
                    m.set(pr, j, a);
                }
            }
            let inv = fp_inv(m.get(r, c), p);
            for j in 0..m.cols {
                m.set(r, j, fp_mul(m.get(r, j), inv, p));
            }
            for i in 0..m.rows {
                if i != r && m.get(i, c) != 0 {
                    let f = m.get(i, c);
                    for j in 0..m.cols {
                        let v = fp_sub(m.get(i, j), fp_mul(f, m.get(r, j), p), p);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{ v : A v = 0 }`.
    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &c) in pivots.iter().enumerate() {
                v[c] = Some(row);
            }
            v
        };
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut vec = vec![0u32; self.cols];
            vec[free] = 1;
            for c in 0..self.cols {
                if let Some(row) = pivot_set[c] {
                    vec[c] = fp_neg(r.get(row, free), self.p);
                }
            }
            basis.push(vec);
        }
        basis
    }

    /// Basis of the column space, taken from the original pivot columns.
    pub fn image_basis(&self) -> Vec<Vec<u32>> {
        let (_, pivots) = self.rref();
        pivots.iter().map(|&c| self.col(c)).collect()
    }

    /// Solves `A x = b`. Returns `None` when the system is infeasible,
    /// otherwise one particular solution (free variables set to zero) plus a
    /// kernel basis spanning the full solution set.
    pub fn solve(&self, b: &[u32]) -> Result<Option<LinearSolution>, FfmatError> {
        if b.len() != self.rows {
            return Err(FfmatError::ShapeMismatch(format!(
                "matrix has {} rows, rhs has {} entries",
                self.rows,
                b.len()
            )));
        }
        let mut aug = FpMatrix::zeros(self.p, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0u32; self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            x[c] = r.get(row, self.cols);
        }
        Ok(Some(LinearSolution { particular: x, kernel: self.kernel_basis() }))
    }

    /// Checks surjectivity of the linear map this matrix represents.
    pub fn is_surjective(&self) -> bool {
        self.rank() == self.rows
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.cols
    }

    /// Two-sided inverse, if the matrix is square and invertible.
    pub fn inverse(&self) -> Option<FpMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = FpMatrix::zeros(self.p, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (r, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        let mut inv = FpMatrix::zeros(self.p, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Some(inv)
    }
}

/// One solution of a linear system plus a basis of the homogeneous solutions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSolution {
    pub particular: Vec<u32>,
    pub kernel: Vec<Vec<u32>>,
}

impl LinearSolution {
    pub fn space(self, p: u32) -> AffineSpace {
        AffineSpace { p, particular: self.particular, kernel: self.kernel }
    }
}

/// Affine subspace `particular + span(kernel)` with a deterministic point
/// enumeration: coefficient tuples over the kernel basis in lexicographic
/// order, zero vector first, so the particular solution is always point 0.
#[derive(Debug, Clone)]
pub struct AffineSpace {
    pub p: u32,
    pub particular: Vec<u32>,
    pub kernel: Vec<Vec<u32>>,
}

impl AffineSpace {
    pub fn point_at(&self, coeffs: &[u32]) -> Vec<u32> {
        let mut v = self.particular.clone();
        for (c, k) in coeffs.iter().zip(&self.kernel) {
            for (vi, ki) in v.iter_mut().zip(k) {
                *vi = fp_add(*vi, fp_mul(*c, *ki, self.p), self.p);
            }
        }
        v
    }

    pub fn total_points(&self) -> Option<u64> {
        let dim = self.kernel.len() as u32;
        if dim > 40 {
            return None;
        }
        (self.p as u64).checked_pow(dim)
    }

    /// First `limit` points in enumeration order; the flag reports whether the
    /// whole space was covered.
    pub fn points(&self, limit: usize) -> (Vec<Vec<u32>>, bool) {
        let mut out = Vec::new();
        let dim = self.kernel.len();
        let mut coeffs = vec![0u32; dim];
        loop {
            if out.len() >= limit {
                return (out, false);
            }
            out.push(self.point_at(&coeffs));
            // odometer with the last coefficient moving fastest
            let mut i = dim;
            loop {
                if i == 0 {
                    return (out, true);
                }
                i -= 1;
                coeffs[i] += 1;
                if coeffs[i] < self.p {
                    break;
                }
                coeffs[i] = 0;
            }
        }
    }
}

/// Lexicographic enumeration of all vectors in `F_p^dim`, capped at `limit`.
/// Returns the vectors and whether the whole space was exhausted.
pub fn enumerate_vectors(p: u32, dim: usize, limit: usize) -> (Vec<Vec<u32>>, bool) {
    let space = AffineSpace {
        p,
        particular: vec![0; dim],
        kernel: (0..dim)
            .map(|i| {
                let mut v = vec![0; dim];
                v[i] = 1;
                v
            })
            .collect(),
    };
    space.points(limit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Independent oracle: enumerate all vectors and collect the exact solution
    // set of A x = b.
    fn brute_solutions(a: &FpMatrix, b: &[u32]) -> Vec<Vec<u32>> {
        let (vecs, full) = enumerate_vectors(a.modulus(), a.cols(), 1 << 20);
        assert!(full);
        vecs.into_iter().filter(|v| a.mul_vec(v).unwrap() == b).collect()
    }

    fn solution_set_from_solver(a: &FpMatrix, sol: &LinearSolution) -> Vec<Vec<u32>> {
        let space = AffineSpace {
            p: a.modulus(),
            particular: sol.particular.clone(),
            kernel: sol.kernel.clone(),
        };
        let (mut pts, full) = space.points(1 << 20);
        assert!(full);
        pts.sort();
        pts.dedup();
        pts
    }

    #[test]
    fn solve_identity_case() {
        let a = FpMatrix::from_rows(2, &[vec![1]]).unwrap();
        let sol = a.solve(&[0]).unwrap().unwrap();
        assert_eq!(sol.particular, vec![0]);
        assert!(sol.kernel.is_empty());
    }

    #[test]
    fn solve_zero_map() {
        let a = FpMatrix::from_rows(2, &[vec![0]]).unwrap();
        let sol = a.solve(&[0]).unwrap().unwrap();
        assert_eq!(sol.particular, vec![0]);
        assert_eq!(sol.kernel, vec![vec![1]]);
    }

    #[test]
    fn solve_rank_one_system_matches_enumeration() {
        // Expected values frozen from the brute-force oracle over all four
        // vectors of F_2^2: solutions of [[1,1],[0,0]] x = (1,0) are
        // {(1,0), (0,1)} = (1,0) + span{(1,1)}.
        let a = FpMatrix::from_rows(2, &[vec![1, 1], vec![0, 0]]).unwrap();
        let brute = brute_solutions(&a, &[1, 0]);
        assert_eq!(brute.len(), 2);
        let sol = a.solve(&[1, 0]).unwrap().unwrap();
        assert_eq!(sol.particular, vec![1, 0]);
        assert_eq!(sol.kernel, vec![vec![1, 1]]);
        let mut brute_sorted = brute;
        brute_sorted.sort();
        assert_eq!(solution_set_from_solver(&a, &sol), brute_sorted);
    }

    #[test]
    fn infeasible_system_detected() {
        let a = FpMatrix::from_rows(2, &[vec![0]]).unwrap();
        assert_eq!(a.solve(&[1]).unwrap(), None);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(FpMatrix::identity(3, 2).rank(), 2);
        let zero = FpMatrix::zeros(3, 2, 2);
        assert_eq!(zero.rank(), 0);
        assert_eq!(zero.kernel_basis().len(), 2);
        // Second row is 2 × first over F_3, so the rank drops to 1.
        let m = FpMatrix::from_rows(3, &[vec![1, 2], vec![2, 1]]).unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn image_basis_spans_the_column_space() {
        assert!(FpMatrix::zeros(3, 2, 2).image_basis().is_empty());
        assert_eq!(FpMatrix::identity(2, 2).image_basis(), vec![vec![1, 0], vec![0, 1]]);
        let m = FpMatrix::from_rows(3, &[vec![1, 2], vec![2, 1]]).unwrap();
        // rank one: the first column spans the image
        assert_eq!(m.image_basis(), vec![vec![1, 2]]);
    }

    #[test]
    fn exhaustive_2x2_over_f2() {
        // All 2x2 systems over F_2 against the brute-force oracle.
        for bits in 0..16u32 {
            let entries: Vec<u32> = (0..4).map(|i| (bits >> i) & 1).collect();
            let a = FpMatrix::new(2, 2, 2, entries).unwrap();
            for bbits in 0..4u32 {
                let b = vec![bbits & 1, (bbits >> 1) & 1];
                let brute = brute_solutions(&a, &b);
                match a.solve(&b).unwrap() {
                    None => assert!(brute.is_empty()),
                    Some(sol) => {
                        let mut brute_sorted = brute;
                        brute_sorted.sort();
                        assert_eq!(solution_set_from_solver(&a, &sol), brute_sorted);
                    }
                }
            }
        }
    }

    #[test]
    fn inverse_round_trip() {
        let m = FpMatrix::from_rows(5, &[vec![2, 1], vec![1, 1]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), FpMatrix::identity(5, 2));
        assert_eq!(inv.mul(&m).unwrap(), FpMatrix::identity(5, 2));
        let sing = FpMatrix::from_rows(5, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(sing.inverse().is_none());
    }

    proptest! {
        #[test]
        fn rank_equals_transpose_rank(
            p in prop::sample::select(vec![2u32, 3, 5]),
            rows in 1usize..5,
            cols in 1usize..5,
            seed in any::<u64>(),
        ) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let entries: Vec<u32> = (0..rows * cols).map(|_| rng.gen_range(0..p)).collect();
            let m = FpMatrix::new(p, rows, cols, entries).unwrap();
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn solutions_satisfy_system(
            p in prop::sample::select(vec![2u32, 3]),
            rows in 1usize..5,
            cols in 1usize..5,
            seed in any::<u64>(),
        ) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let entries: Vec<u32> = (0..rows * cols).map(|_| rng.gen_range(0..p)).collect();
            let m = FpMatrix::new(p, rows, cols, entries).unwrap();
            let b: Vec<u32> = (0..rows).map(|_| rng.gen_range(0..p)).collect();
            if let Some(sol) = m.solve(&b).unwrap() {
                let space = sol.space(p);
                let (points, _) = space.points(64);
                for x in points {
                    prop_assert_eq!(m.mul_vec(&x).unwrap(), b.clone());
                }
            }
            prop_assert_eq!(m.rank() + m.kernel_basis().len(), cols);
        }
    }
}
