//! Exact integer matrices: fraction-free rank and determinant, Smith normal
//! form, and the hyperbolic normal form of skew-symmetric matrices under
//! unimodular congruence.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::serde_int;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("expected {expected} entries for the given shape, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not skew-symmetric")]
    NotSkewSymmetric,
    #[error("dimension mismatch: {0}x{1} times {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
}

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::Shape { expected: rows * cols, got: data.len() });
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn diagonal<T: Into<BigInt> + Clone>(entries: &[T]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m[(i, i)] = x.clone().into();
        }
        m
    }

    /// Builds a matrix from rows; every row must have the same length.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        let data: Vec<BigInt> = rows.iter().flat_map(|r| r.iter().cloned().map(Into::into)).collect();
        Self::new(rows.len(), cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
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

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(self.rows, self.cols, other.rows, other.cols));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Submatrix on the given row and column indices.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let data = rows.iter().flat_map(|&i| cols.iter().map(move |&j| self[(i, j)].clone())).collect();
        IntMatrix { rows: rows.len(), cols: cols.len(), data }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[target] += factor * row[source]`
    pub fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = &self[(source, j)] * factor;
            self[(target, j)] += delta;
        }
    }

    /// `col[target] += factor * col[source]`
    pub fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let delta = &self[(i, source)] * factor;
            self[(i, target)] += delta;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = std::mem::take(&mut self[(i, j)]);
            self[(i, j)] = -x;
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let x = std::mem::take(&mut self[(i, j)]);
            self[(i, j)] = -x;
        }
    }

    /// Position of a nonzero entry of minimal absolute value in the block
    /// `[r0.., c0..]`, first in row-major order on ties.
    fn min_abs_nonzero(&self, r0: usize, c0: usize, upper_only: bool) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), BigInt)> = None;
        for i in r0..self.rows {
            let start = if upper_only { c0.max(i + 1) } else { c0 };
            for j in start..self.cols {
                let x = &self[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let a = x.abs();
                if best.as_ref().is_none_or(|(_, b)| a < *b) {
                    best = Some(((i, j), a));
                }
            }
        }
        best.map(|(p, _)| p)
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serde_int::string_rows::serialize(&self.to_rows(), s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = serde_int::string_rows::deserialize(d)?;
        IntMatrix::from_rows(&rows).map_err(serde::de::Error::custom)
    }
}

/// A square integer matrix with `M = -M^T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewIntMatrix(IntMatrix);

impl SkewIntMatrix {
    pub fn new(m: IntMatrix) -> Result<Self, LinalgError> {
        if !m.is_square() {
            return Err(LinalgError::NotSquare { rows: m.rows, cols: m.cols });
        }
        for i in 0..m.rows {
            for j in i..m.cols {
                if m[(i, j)] != -&m[(j, i)] {
                    return Err(LinalgError::NotSkewSymmetric);
                }
            }
        }
        Ok(SkewIntMatrix(m))
    }

    pub fn size(&self) -> usize {
        self.0.rows
    }

    pub fn as_matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.0
    }
}

/// A unimodular matrix kept together with its inverse. Row operations apply
/// to the matrix; the inverse receives the matching inverse column operation.
#[derive(Debug, Clone)]
struct Tracked {
    m: IntMatrix,
    inv: IntMatrix,
}

impl Tracked {
    fn identity(n: usize) -> Self {
        Tracked { m: IntMatrix::identity(n), inv: IntMatrix::identity(n) }
    }

    fn row_add(&mut self, target: usize, source: usize, factor: &BigInt) {
        self.m.add_row_multiple(target, source, factor);
        self.inv.add_col_multiple(source, target, &-factor);
    }

    fn row_swap(&mut self, a: usize, b: usize) {
        self.m.swap_rows(a, b);
        self.inv.swap_cols(a, b);
    }

    fn row_neg(&mut self, i: usize) {
        self.m.negate_row(i);
        self.inv.negate_col(i);
    }
}

/// Rank over the rationals by fraction-free elimination.
pub fn rank(m: &IntMatrix) -> usize {
    let mut a = m.clone();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..a.cols {
        if rank == a.rows {
            break;
        }
        let Some(p) = (rank..a.rows).find(|&i| !a[(i, col)].is_zero()) else {
            continue;
        };
        a.swap_rows(rank, p);
        let pivot = a[(rank, col)].clone();
        for i in rank + 1..a.rows {
            let lead = a[(i, col)].clone();
            for j in col + 1..a.cols {
                let v = (&a[(i, j)] * &pivot - &lead * &a[(rank, j)]) / &prev;
                a[(i, j)] = v;
            }
            a[(i, col)] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Exact determinant by Bareiss elimination.
pub fn determinant(m: &IntMatrix) -> Result<BigInt, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare { rows: m.rows, cols: m.cols });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    let mut prev = BigInt::one();
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[(i, k)].is_zero()) else {
            return Ok(BigInt::zero());
        };
        if p != k {
            a.swap_rows(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                a[(i, j)] = v;
            }
        }
        prev = a[(k, k)].clone();
    }
    let det = a[(n - 1, n - 1)].clone();
    Ok(if negate { -det } else { det })
}

pub fn is_unimodular(m: &IntMatrix) -> bool {
    determinant(m).is_ok_and(|d| d.abs().is_one())
}

/// `U * M * V = D` with `U`, `V` unimodular and `D` diagonal with
/// nonnegative entries `d_1 | d_2 | ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithForm {
    /// The diagonal of `D`, zeros included.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn nonzero_factors(&self) -> Vec<BigInt> {
        self.invariant_factors().into_iter().filter(|x| !x.is_zero()).collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut left = Tracked::identity(rows);
    // Column operations are tracked as row operations on the transpose.
    let mut right = Tracked::identity(cols);

    'outer: for t in 0..rows.min(cols) {
        loop {
            let Some((i, j)) = a.min_abs_nonzero(t, t, false) else {
                break 'outer;
            };
            a.swap_rows(t, i);
            left.row_swap(t, i);
            a.swap_cols(t, j);
            right.row_swap(t, j);

            let pivot = a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&pivot);
                a.add_row_multiple(i, t, &q);
                left.row_add(i, t, &q);
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&pivot);
                a.add_col_multiple(j, t, &q);
                right.row_add(j, t, &q);
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let stray = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&pivot)));
            if let Some(i) = stray {
                a.add_row_multiple(t, i, &BigInt::one());
                left.row_add(t, i, &BigInt::one());
                continue;
            }
            break;
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            left.row_neg(t);
        }
    }

    SmithForm { u: left.m, u_inv: left.inv, v: right.m.transpose(), v_inv: right.inv.transpose(), d: a }
}

/// `U * M * U^T` is a direct sum of blocks `[[0, l], [-l, 0]]` followed by
/// zeros, with `0 < l_1 | l_2 | ... | l_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewNormalForm {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub lambdas: Vec<BigInt>,
    pub size: usize,
}

impl SkewNormalForm {
    /// The block matrix `U * M * U^T` described by `lambdas`.
    pub fn block_matrix(&self) -> IntMatrix {
        let mut b = IntMatrix::zeros(self.size, self.size);
        for (k, l) in self.lambdas.iter().enumerate() {
            b[(2 * k, 2 * k + 1)] = l.clone();
            b[(2 * k + 1, 2 * k)] = -l;
        }
        b
    }

    pub fn rank(&self) -> usize {
        2 * self.lambdas.len()
    }
}

/// Hyperbolic normal form by simultaneous row and column operations,
/// pivoting on an entry of minimal absolute value.
pub fn skew_normal_form(m: &SkewIntMatrix) -> SkewNormalForm {
    let n = m.size();
    let mut a = m.as_matrix().clone();
    let mut tr = Tracked::identity(n);
    let mut lambdas = Vec::new();

    let swap = |a: &mut IntMatrix, tr: &mut Tracked, x: usize, y: usize| {
        a.swap_rows(x, y);
        a.swap_cols(x, y);
        tr.row_swap(x, y);
    };
    let add = |a: &mut IntMatrix, tr: &mut Tracked, target: usize, source: usize, factor: &BigInt| {
        a.add_row_multiple(target, source, factor);
        a.add_col_multiple(target, source, factor);
        tr.row_add(target, source, factor);
    };

    let mut p = 0;
    'outer: while p + 1 < n {
        loop {
            let Some((i, mut j)) = a.min_abs_nonzero(p, p, true) else {
                break 'outer;
            };
            if i != p {
                swap(&mut a, &mut tr, p, i);
                if j == p {
                    j = i;
                }
            }
            swap(&mut a, &mut tr, p + 1, j);

            let g = a[(p, p + 1)].clone();
            let mut clean = true;
            for r in p + 2..n {
                if !a[(p, r)].is_zero() {
                    let q = -a[(p, r)].div_floor(&g);
                    add(&mut a, &mut tr, r, p + 1, &q);
                    clean &= a[(p, r)].is_zero();
                }
                if !a[(p + 1, r)].is_zero() {
                    let q = a[(p + 1, r)].div_floor(&g);
                    add(&mut a, &mut tr, r, p, &q);
                    clean &= a[(p + 1, r)].is_zero();
                }
            }
            if !clean {
                continue;
            }
            let stray = (p + 2..n).find(|&i| (i + 1..n).any(|j| !a[(i, j)].is_multiple_of(&g)));
            if let Some(i) = stray {
                add(&mut a, &mut tr, p, i, &BigInt::one());
                continue;
            }
            break;
        }
        if a[(p, p + 1)].is_negative() {
            a.negate_row(p);
            a.negate_col(p);
            tr.row_neg(p);
        }
        lambdas.push(a[(p, p + 1)].clone());
        p += 2;
    }

    SkewNormalForm { u: tr.m, u_inv: tr.inv, lambdas, size: n }
}
