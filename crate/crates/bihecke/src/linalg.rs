//! Exact linear algebra over the rationals: dense matrices, maintained
//! reduced row-echelon row spaces, and quotient actions.
//!
//! Module elements are row vectors of coordinates; an operator acts on the
//! right, so applying `op` to the coefficient vector `v` is `v * M` where row
//! `u` of `M` holds the image of the `u`-th basis vector.  Composing two
//! operators multiplies their matrices in application order.

use num::{BigRational, One, Zero};

use crate::error::{Error, Result};

/// Dense matrix over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl QMat {
    pub fn zero(rows: usize, cols: usize) -> QMat {
        QMat {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> QMat {
        let mut m = QMat::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigRational::one();
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> QMat {
        assert_eq!(entries.len(), rows * cols);
        QMat {
            rows,
            cols,
            data: entries.iter().map(|&e| BigRational::from_integer(e.into())).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigRational) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows);
        let mut out = QMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cell = &mut out.data[i * other.cols + j];
                        *cell += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, other: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a -= b;
        }
        out
    }

    pub fn trace(&self) -> BigRational {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Word product `word[0] * word[1] * ...` (identity for an empty word).
    pub fn word_product(n: usize, word: &[&QMat]) -> QMat {
        word.iter().fold(QMat::identity(n), |acc, m| acc.mul(m))
    }

    /// The trace of an idempotent matrix, as an `i64`; errors if the matrix
    /// is not idempotent or the trace is not an integer.
    pub fn idempotent_trace(&self) -> Result<i64> {
        if self.mul(self) != *self {
            return Err(Error::InvariantViolation(
                "matrix is not idempotent".to_string(),
            ));
        }
        let t = self.trace();
        if !t.is_integer() {
            return Err(Error::InvariantViolation(format!(
                "idempotent trace {t} is not an integer"
            )));
        }
        i64::try_from(t.to_integer()).map_err(|_| {
            Error::InvariantViolation("idempotent trace exceeds i64".to_string())
        })
    }
}

/// Dense matrix over the integers (module actions have entries in {-1,0,1}).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IMat {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IMat {
    pub fn zero(rows: usize, cols: usize) -> IMat {
        IMat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> IMat {
        let mut m = IMat::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, data: Vec<i64>) -> IMat {
        assert_eq!(data.len(), rows * cols);
        IMat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: i64) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[i64] {
        &self.data
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &IMat) -> IMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, other: &IMat) -> IMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a -= b;
        }
        out
    }

    pub fn to_qmat(&self) -> QMat {
        QMat::from_i64(self.rows, self.cols, &self.data)
    }
}

/// A subspace of `Q^cols` maintained in reduced row-echelon form (leading
/// coefficients 1, pivots strictly increasing, pivot columns cleared in all
/// other rows).  The RREF basis is canonical: it does not depend on the
/// order vectors were inserted.
#[derive(Debug, Clone)]
pub struct RowSpace {
    cols: usize,
    rows: Vec<Vec<BigRational>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(cols: usize) -> RowSpace {
        RowSpace {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    /// Columns that are not pivot columns, in increasing order.
    pub fn non_pivots(&self) -> Vec<usize> {
        (0..self.cols).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Remainder of `v` after eliminating all pivots.
    pub fn reduce(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.cols);
        let mut out = v.to_vec();
        for (row, &pivot) in self.rows.iter().zip(self.pivots.iter()) {
            let coeff = out[pivot].clone();
            if coeff.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(row.iter()) {
                if !r.is_zero() {
                    *o -= &coeff * r;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Inserts `v`; returns true if the rank grew.
    pub fn insert(&mut self, v: &[BigRational]) -> bool {
        let mut reduced = self.reduce(v);
        let Some(pivot) = reduced.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let lead = reduced[pivot].clone();
        for x in reduced.iter_mut() {
            if !x.is_zero() {
                *x /= &lead;
            }
        }
        // Clear the new pivot column from the existing rows.
        for row in self.rows.iter_mut() {
            let coeff = row[pivot].clone();
            if coeff.is_zero() {
                continue;
            }
            for (r, n) in row.iter_mut().zip(reduced.iter()) {
                if !n.is_zero() {
                    *r -= &coeff * n;
                }
            }
        }
        let at = self.pivots.partition_point(|&p| p < pivot);
        self.pivots.insert(at, pivot);
        self.rows.insert(at, reduced);
        true
    }

    pub fn insert_i64(&mut self, v: &[i64]) -> bool {
        let rational: Vec<BigRational> = v
            .iter()
            .map(|&x| BigRational::from_integer(x.into()))
            .collect();
        self.insert(&rational)
    }

    /// Is the space stable under right multiplication by `m`?
    pub fn is_stable(&self, m: &QMat) -> bool {
        assert_eq!(m.rows(), self.cols);
        self.rows.iter().all(|row| self.contains(&apply_row(row, m)))
    }
}

/// Row vector times matrix.
pub fn apply_row(v: &[BigRational], m: &QMat) -> Vec<BigRational> {
    assert_eq!(v.len(), m.rows());
    let mut out = vec![BigRational::zero(); m.cols()];
    for (i, coeff) in v.iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        for (j, cell) in out.iter_mut().enumerate() {
            let e = m.get(i, j);
            if !e.is_zero() {
                *cell += coeff * e;
            }
        }
    }
    out
}

pub fn i64_row_to_rational(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
}

/// The action induced by `m` on the quotient of the full space by `space`.
/// The quotient basis is the set of non-pivot coordinates (returned in
/// increasing order); entry `(i, j)` of the returned matrix is the
/// coefficient of the `j`-th non-pivot coordinate in the reduction of
/// `e_{basis[i]} * m`.  Errors if `space` is not stable under `m`.
pub fn quotient_matrix(m: &QMat, space: &RowSpace) -> Result<(Vec<usize>, QMat)> {
    assert_eq!(m.rows(), m.cols());
    assert_eq!(m.rows(), space.cols());
    if !space.is_stable(m) {
        return Err(Error::InvariantViolation(
            "subspace is not stable under the operator".to_string(),
        ));
    }
    let basis = space.non_pivots();
    let mut out = QMat::zero(basis.len(), basis.len());
    for (i, &b) in basis.iter().enumerate() {
        let image = space.reduce(m.row(b));
        for (j, &c) in basis.iter().enumerate() {
            out.set(i, j, image[c].clone());
        }
    }
    Ok((basis, out))
}
