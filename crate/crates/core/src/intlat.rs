//! Exact integer linear algebra over arbitrary-precision integers.
//!
//! Smith normal form with explicit unimodular transforms, saturated kernel
//! bases, and the determinantal-divisor oracle `gcd_of_minors` used to check
//! invariant factors independently of the elimination path.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Dense row-major matrix of big integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixParseError {
    #[error("missing matrix header \"rows cols\"")]
    MissingHeader,
    #[error("invalid token {token:?} at position {index}")]
    InvalidToken { index: usize, token: String },
    #[error("expected {expected} entries, found {found}")]
    WrongEntryCount { expected: usize, found: usize },
}

impl IntMatrix {
    /// Panics if `entries.len() != rows * cols`.
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        IntMatrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from small-integer rows. All rows must have equal length.
    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        let entries = rows.iter().flat_map(|r| r.iter().map(|&x| x.into())).collect();
        IntMatrix::new(rows.len(), ncols, entries)
    }

    /// Builds a matrix whose rows are the given big-integer vectors, with an
    /// explicit column count so that an empty list still has a shape.
    pub fn from_big_rows(rows: &[Vec<BigInt>], cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix::new(rows.len(), cols, rows.iter().flatten().cloned().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Panics on a shape mismatch.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "shape mismatch in product");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a: Vec<Vec<BigInt>> = self.row_vecs();
        let mut prev = BigInt::one();
        let mut sign = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        if n == 0 {
            return BigInt::one();
        }
        sign * &a[n - 1][n - 1]
    }

    /// Rank over the rationals (number of Smith divisors).
    pub fn rank(&self) -> usize {
        smith_normal_form(self).divisors.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let delta = factor * &self.entries[src * self.cols + j];
            self.entries[dst * self.cols + j] += delta;
        }
    }

    /// col[dst] += factor * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let delta = factor * &self.entries[i * self.cols + src];
            self.entries[i * self.cols + dst] += delta;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let e = &mut self.entries[i * self.cols + j];
            *e = -std::mem::take(e);
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    /// Same text format accepted by `FromStr`: header line, then one line per row.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "{}", self.row(i).iter().join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for IntMatrix {
    type Err = MatrixParseError;

    /// `rows cols` followed by `rows * cols` whitespace-separated integers.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut tokens = s.split_whitespace().enumerate();
        let mut dim = || -> Result<usize, MatrixParseError> {
            let (index, tok) = tokens.next().ok_or(MatrixParseError::MissingHeader)?;
            tok.parse()
                .map_err(|_| MatrixParseError::InvalidToken { index, token: tok.to_string() })
        };
        let rows = dim()?;
        let cols = dim()?;
        let entries = tokens
            .map(|(index, tok)| {
                tok.parse::<BigInt>()
                    .map_err(|_| MatrixParseError::InvalidToken { index, token: tok.to_string() })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if entries.len() != rows * cols {
            return Err(MatrixParseError::WrongEntryCount {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(IntMatrix::new(rows, cols, entries))
    }
}

/// `u * a * v == s` with `u`, `v` unimodular and `s` diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    /// Positive invariant factors `d_1 | d_2 | ... | d_r`, `r = rank`.
    pub divisors: Vec<BigInt>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }

    /// Divisors greater than one: the torsion of the cokernel.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.divisors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

/// Smith normal form by elimination with a minimal-absolute-value pivot.
///
/// The divisibility chain is enforced inside the elimination: once a pivot
/// clears its row and column, any entry of the trailing block it does not
/// divide is folded back into the pivot row and elimination resumes.
pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let (m, n) = (a.rows, a.cols);
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut divisors = Vec::new();

    for t in 0..m.min(n) {
        loop {
            let pivot = (t..m)
                .cartesian_product(t..n)
                .filter(|&(i, j)| !s[(i, j)].is_zero())
                .min_by(|&p, &q| s[p].magnitude().cmp(s[q].magnitude()));
            let Some((pi, pj)) = pivot else {
                return SnfResult { u, s, v, divisors };
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut cleared = true;
            for i in t + 1..m {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = -s[(i, t)].div_floor(&s[(t, t)]);
                s.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                cleared &= s[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = -s[(t, j)].div_floor(&s[(t, t)]);
                s.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                cleared &= s[(t, j)].is_zero();
            }
            if !cleared {
                continue;
            }

            let pivot = s[(t, t)].clone();
            let offending = (t + 1..m)
                .find(|&i| (t + 1..n).any(|j| !s[(i, j)].is_multiple_of(&pivot)));
            match offending {
                Some(i) => {
                    s.add_row_multiple(t, i, &BigInt::one());
                    u.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        divisors.push(s[(t, t)].clone());
    }
    SnfResult { u, s, v, divisors }
}

/// Basis of the integer kernel `{x : a x = 0}`.
///
/// The vectors are the trailing columns of the Smith column transform, so
/// the returned lattice is saturated.
pub fn kernel_basis(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    (snf.rank()..a.cols).map(|j| snf.v.column(j)).collect()
}

/// `Δ_k`: gcd of all `k × k` minors (0 if all vanish, 1 for `k = 0`).
///
/// Combinatorial cost; meant as an oracle on small matrices.
pub fn gcd_of_minors(a: &IntMatrix, k: usize) -> BigInt {
    assert!(k <= a.rows.min(a.cols), "minor order exceeds matrix shape");
    if k == 0 {
        return BigInt::one();
    }
    let mut g = BigInt::zero();
    for rows in (0..a.rows).combinations(k) {
        for cols in (0..a.cols).combinations(k) {
            let entries = rows
                .iter()
                .flat_map(|&i| cols.iter().map(move |&j| a[(i, j)].clone()))
                .collect();
            g = g.gcd(&IntMatrix::new(k, k, entries).det());
            if g.is_one() {
                return g;
            }
        }
    }
    g
}

/// Integer coordinates `c` with `Σ c_k basis[k] = target`, if they exist.
///
/// `basis` vectors must all have length `target.len()`.
pub fn lattice_coordinates(basis: &[Vec<BigInt>], target: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = target.len();
    let d = basis.len();
    if d == 0 {
        return target.iter().all(Zero::is_zero).then(Vec::new);
    }
    // Solve B^T c = t with B^T = U^{-1} S V^{-1}: S y = U t, c = V y.
    let bt = IntMatrix::from_big_rows(basis, n).transpose();
    let snf = smith_normal_form(&bt);
    let ut = snf.u.mul_vec(target);
    let mut y = vec![BigInt::zero(); d];
    for (i, rhs) in ut.iter().enumerate() {
        match snf.divisors.get(i) {
            Some(div) => {
                let (q, r) = rhs.div_rem(div);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            }
            None if !rhs.is_zero() => return None,
            None => {}
        }
    }
    Some(snf.v.mul_vec(&y))
}
