//! Dense matrices over [`ExactScalar`].
//!
//! Matrices are small (at most 64 on a side) and stored row-major. The
//! structural predicates (`is_hermitian`, `is_orthogonal`, ...) are exact.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

/// Largest supported side length.
pub const MAX_DIM: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<ExactScalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ExactScalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.set(k, k, ExactScalar::one());
        }
        m
    }

    pub fn diag(entries: Vec<ExactScalar>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (k, e) in entries.into_iter().enumerate() {
            m.set(k, k, e);
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<ExactScalar>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        Self {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_int_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| ExactScalar::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<ExactScalar>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    /// Side length of a square matrix.
    pub fn dim(&self) -> usize {
        debug_assert!(self.is_square());
        self.rows
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &ExactScalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: ExactScalar) {
        self.data[r * self.cols + c] = value;
    }

    pub fn entry_mut(&mut self, r: usize, c: usize) -> &mut ExactScalar {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[ExactScalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[ExactScalar] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<ExactScalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Row-major flattening.
    pub fn flatten(&self) -> Vec<ExactScalar> {
        self.data.clone()
    }

    pub fn map(&self, f: impl Fn(&ExactScalar) -> ExactScalar) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn conj(&self) -> Self {
        self.map(ExactScalar::conj)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    pub fn scale(&self, s: &ExactScalar) -> Self {
        if s.is_one() {
            return self.clone();
        }
        self.map(|x| x * s)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(ExactScalar::is_zero)
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn trace(&self) -> ExactScalar {
        (0..self.rows.min(self.cols))
            .map(|k| self.get(k, k).clone())
            .sum()
    }

    pub fn try_add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.same_shape(rhs)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.same_shape(rhs)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn try_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    *out.entry_mut(r, c) += &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[ExactScalar]) -> Result<Vec<ExactScalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (v.len(), 1),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    fn same_shape(&self, rhs: &Matrix) -> Result<()> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        Ok(())
    }

    pub fn pow(&self, n: u32) -> Matrix {
        (0..n).fold(Matrix::identity(self.rows), |acc, _| &acc * self)
    }

    /// Sub-matrix of `nr × nc` entries starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Matrix {
        let mut out = Matrix::zeros(nr, nc);
        for r in 0..nr {
            for c in 0..nc {
                out.set(r, c, self.get(r0 + r, c0 + c).clone());
            }
        }
        out
    }

    /// `[[a, b], [c, d]]` assembled from four equally shaped square blocks.
    pub fn from_blocks(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Matrix {
        let n = a.rows;
        let mut out = Matrix::zeros(2 * n, 2 * n);
        for (blk, r0, c0) in [(a, 0, 0), (b, 0, n), (c, n, 0), (d, n, n)] {
            assert_eq!((blk.rows, blk.cols), (n, n), "block shape");
            out.place(blk, r0, c0);
        }
        out
    }

    /// Copies `blk` into `self` with its top-left corner at `(r0, c0)`.
    pub fn place(&mut self, blk: &Matrix, r0: usize, c0: usize) {
        for r in 0..blk.rows {
            for c in 0..blk.cols {
                self.set(r0 + r, c0 + c, blk.get(r, c).clone());
            }
        }
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(ExactScalar::is_real)
    }

    pub fn is_imaginary(&self) -> bool {
        self.data.iter().all(ExactScalar::is_imaginary)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square() && *self == -&self.transpose()
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.adjoint()
    }

    pub fn is_antihermitian(&self) -> bool {
        self.is_square() && *self == -&self.adjoint()
    }

    pub fn is_unitary(&self) -> bool {
        self.is_square() && &self.adjoint() * self == Matrix::identity(self.rows)
    }

    pub fn is_orthogonal(&self) -> bool {
        self.is_square() && &self.transpose() * self == Matrix::identity(self.rows)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self.get(r, c).is_zero()))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(self.rows)
    }

    /// First entry where `self` and `other` differ.
    pub fn first_difference(&self, other: &Matrix) -> Option<(usize, usize)> {
        if self.rows != other.rows || self.cols != other.cols {
            return Some((0, 0));
        }
        (0..self.rows)
            .flat_map(|r| (0..self.cols).map(move |c| (r, c)))
            .find(|&(r, c)| self.get(r, c) != other.get(r, c))
    }

    /// Determinant by Gaussian elimination over the field.
    pub fn determinant(&self) -> Result<ExactScalar> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (self.cols, self.rows),
            });
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = ExactScalar::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return Ok(ExactScalar::zero());
            };
            if pivot != col {
                m.swap_rows(pivot, col);
                det = -det;
            }
            let p = m.get(col, col).clone();
            det = &det * &p;
            let p_inv = p.inv()?;
            for r in col + 1..n {
                let factor = m.get(r, col) * &p_inv;
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let delta = &factor * m.get(col, c);
                    *m.entry_mut(r, c) -= &delta;
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Singular);
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        aug.place(self, 0, 0);
        aug.place(&Matrix::identity(n), 0, n);
        let reduced = crate::linalg::rref(&aug);
        if reduced.pivots.len() < n || reduced.pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        Ok(reduced.matrix.block(0, n, n, n))
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn to_latex(&self) -> String {
        let body = (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .map(ExactScalar::to_latex)
                    .collect::<Vec<_>>()
                    .join(" & ")
            })
            .collect::<Vec<_>>()
            .join(" \\\\\n");
        format!("\\begin{{pmatrix}}\n{body}\n\\end{{pmatrix}}")
    }
}

/// `AB − BA`.
pub fn commutator(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    check_square_pair(a, b)?;
    (a * b).try_sub(&(b * a))
}

/// `AB + BA`.
pub fn anticommutator(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    check_square_pair(a, b)?;
    (a * b).try_add(&(b * a))
}

fn check_square_pair(a: &Matrix, b: &Matrix) -> Result<()> {
    if !a.is_square() || !b.is_square() || a.rows != b.rows {
        return Err(Error::DimensionMismatch {
            left: (a.rows, a.cols),
            right: (b.rows, b.cols),
        });
    }
    Ok(())
}

/// Kronecker product; errors if the result exceeds [`MAX_DIM`].
pub fn kron(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    if rows > MAX_DIM || cols > MAX_DIM {
        return Err(Error::UnsupportedDimension(rows.max(cols)));
    }
    let mut out = Matrix::zeros(rows, cols);
    for ar in 0..a.rows {
        for ac in 0..a.cols {
            let x = a.get(ar, ac);
            if x.is_zero() {
                continue;
            }
            for br in 0..b.rows {
                for bc in 0..b.cols {
                    let y = b.get(br, bc);
                    if !y.is_zero() {
                        out.set(ar * b.rows + br, ac * b.cols + bc, x * y);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Block-diagonal direct sum.
pub fn direct_sum(blocks: &[&Matrix]) -> Matrix {
    let n: usize = blocks.iter().map(|b| b.rows).sum();
    let mut out = Matrix::zeros(n, n);
    let mut at = 0;
    for b in blocks {
        out.place(b, at, at);
        at += b.rows;
    }
    out
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.try_add(rhs).expect("matrix add shape")
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.try_sub(rhs).expect("matrix sub shape")
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).expect("matrix mul shape")
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.map(|x| -x)
    }
}

impl Add for Matrix {
    type Output = Matrix;
    fn add(self, rhs: Matrix) -> Matrix {
        &self + &rhs
    }
}

impl Sub for Matrix {
    type Output = Matrix;
    fn sub(self, rhs: Matrix) -> Matrix {
        &self - &rhs
    }
}

impl Mul for Matrix {
    type Output = Matrix;
    fn mul(self, rhs: Matrix) -> Matrix {
        &self * &rhs
    }
}

impl Neg for Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        -&self
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<ExactScalar>>::deserialize(deserializer)?;
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(serde::de::Error::custom("ragged matrix rows"));
        }
        Ok(Matrix::from_rows(rows))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn self_commutator_vanishes() {
        let a = Matrix::from_int_rows(&[[1, 2], [3, 4]]);
        assert!(commutator(&a, &a).unwrap().is_zero());
    }

    #[test]
    fn commutator_rejects_mismatched_dims() {
        let a = Matrix::identity(2);
        let b = Matrix::identity(4);
        assert!(matches!(
            commutator(&a, &b),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn kron_of_identities() {
        let k = kron(&Matrix::identity(2), &Matrix::identity(4)).unwrap();
        assert_eq!(k, Matrix::identity(8));
    }

    #[test]
    fn kron_sigma_z_identity() {
        let sz = Matrix::from_int_rows(&[[1, 0], [0, -1]]);
        let k = kron(&sz, &Matrix::identity(4)).unwrap();
        let minus = -&Matrix::identity(4);
        assert_eq!(k, direct_sum(&[&Matrix::identity(4), &minus]));
    }

    #[test]
    fn kron_too_large() {
        let big = Matrix::identity(16);
        assert!(matches!(
            kron(&big, &Matrix::identity(8)),
            Err(Error::UnsupportedDimension(128))
        ));
    }

    #[test]
    fn determinant_and_inverse() {
        let m = Matrix::from_int_rows(&[[2, 1, 0], [0, 1, 3], [1, 0, 1]]);
        assert_eq!(m.determinant().unwrap(), ExactScalar::from_int(5));
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
        let singular = Matrix::from_int_rows(&[[1, 2], [2, 4]]);
        assert!(singular.determinant().unwrap().is_zero());
        assert!(matches!(singular.inverse(), Err(Error::Singular)));
    }

    #[test]
    fn predicates_are_exact() {
        let r = Matrix::from_int_rows(&[[0, 1], [-1, 0]]);
        assert!(r.is_antisymmetric() && r.is_real() && r.is_orthogonal());
        assert!(!r.is_symmetric());
        let h = r.map(|x| x.mul_i());
        assert!(h.is_hermitian() && h.is_imaginary() && h.is_unitary());
    }
}
