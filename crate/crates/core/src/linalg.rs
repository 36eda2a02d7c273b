//! Exact row reduction, kernels, subspaces and structure constants.
//!
//! Pivoting is deterministic: columns are scanned left to right and the first
//! row (in index order) with a nonzero entry in that column becomes the pivot.

use crate::error::{Error, Result};
use crate::matrix::{commutator, Matrix};
use crate::scalar::ExactScalar;

/// Reduced row-echelon form together with its pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn rref(m: &Matrix) -> Rref {
    let mut a = m.clone();
    let (rows, cols) = (a.nrows(), a.ncols());
    let mut pivots = Vec::new();
    let mut lead = 0;
    for col in 0..cols {
        if lead == rows {
            break;
        }
        let Some(pivot_row) = (lead..rows).find(|&r| !a.get(r, col).is_zero()) else {
            continue;
        };
        a.swap_rows(pivot_row, lead);
        let inv = a.get(lead, col).inv().expect("pivot is nonzero");
        for c in col..cols {
            let scaled = a.get(lead, c) * &inv;
            a.set(lead, c, scaled);
        }
        let pivot_tail: Vec<(usize, ExactScalar)> = (col..cols)
            .filter(|&c| !a.get(lead, c).is_zero())
            .map(|c| (c, a.get(lead, c).clone()))
            .collect();
        for r in 0..rows {
            if r == lead {
                continue;
            }
            let factor = a.get(r, col).clone();
            if factor.is_zero() {
                continue;
            }
            for (c, p) in &pivot_tail {
                let delta = &factor * p;
                *a.entry_mut(r, *c) -= &delta;
            }
        }
        pivots.push(col);
        lead += 1;
    }
    Rref { matrix: a, pivots }
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).rank()
}

/// Basis of the right kernel `{x : M x = 0}`, one vector per free column.
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<ExactScalar>> {
    let reduced = rref(m);
    let cols = m.ncols();
    let free: Vec<usize> = (0..cols).filter(|c| !reduced.pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![ExactScalar::zero(); cols];
            v[f] = ExactScalar::one();
            for (row, &p) in reduced.pivots.iter().enumerate() {
                v[p] = -reduced.matrix.get(row, f);
            }
            v
        })
        .collect()
}

/// Kernel of `m` as a [`Subspace`] of coefficient space.
pub fn rref_kernel(m: &Matrix) -> Subspace {
    Subspace::from_vectors(m.ncols(), &kernel_basis(m))
}

/// A linear subspace held as the nonzero rows of an exact RREF.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis_rows: Matrix,
}

impl Subspace {
    pub fn from_vectors(ambient_dim: usize, vectors: &[Vec<ExactScalar>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient_dim);
        }
        let m = Matrix::from_rows(vectors.to_vec());
        assert_eq!(m.ncols(), ambient_dim, "vector length");
        let reduced = rref(&m);
        let r = reduced.rank();
        Self {
            ambient_dim,
            basis_rows: reduced.matrix.block(0, 0, r, ambient_dim),
        }
    }

    /// Span of flattened matrices.
    pub fn span_of(gens: &[Matrix]) -> Self {
        let ambient = gens.first().map_or(0, |g| g.nrows() * g.ncols());
        let vectors: Vec<Vec<ExactScalar>> = gens.iter().map(Matrix::flatten).collect();
        Self::from_vectors(ambient, &vectors)
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis_rows: Matrix::zeros(0, ambient_dim),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis_rows.nrows()
    }

    pub fn basis_rows(&self) -> &Matrix {
        &self.basis_rows
    }

    pub fn basis(&self) -> Vec<Vec<ExactScalar>> {
        self.basis_rows.to_rows()
    }

    pub fn contains(&self, v: &[ExactScalar]) -> bool {
        if v.len() != self.ambient_dim {
            return false;
        }
        let mut rows = self.basis();
        rows.push(v.to_vec());
        rank(&Matrix::from_rows(rows)) == self.dim()
    }

    pub fn contains_matrix(&self, m: &Matrix) -> bool {
        self.contains(&m.flatten())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis().iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut rows = self.basis();
        rows.extend(other.basis());
        Subspace::from_vectors(self.ambient_dim, &rows)
    }

    /// Intersection via the kernel of `[A | −B]` for spanning rows `A`, `B`.
    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let (p, q) = (self.dim(), other.dim());
        if p == 0 || q == 0 {
            return Subspace::zero(self.ambient_dim);
        }
        let mut system = Matrix::zeros(self.ambient_dim, p + q);
        for k in 0..p {
            for e in 0..self.ambient_dim {
                system.set(e, k, self.basis_rows.get(k, e).clone());
            }
        }
        for k in 0..q {
            for e in 0..self.ambient_dim {
                system.set(e, p + k, -other.basis_rows.get(k, e));
            }
        }
        let vectors: Vec<Vec<ExactScalar>> = kernel_basis(&system)
            .into_iter()
            .map(|coeffs| combine_rows(&self.basis_rows, &coeffs[..p]))
            .collect();
        Subspace::from_vectors(self.ambient_dim, &vectors)
    }
}

fn combine_rows(rows: &Matrix, coeffs: &[ExactScalar]) -> Vec<ExactScalar> {
    let mut out = vec![ExactScalar::zero(); rows.ncols()];
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (slot, x) in out.iter_mut().zip(rows.row(k)) {
            if !x.is_zero() {
                *slot += &(c * x);
            }
        }
    }
    out
}

/// `Σ c_k X_k`.
pub fn linear_combination(coeffs: &[ExactScalar], gens: &[Matrix]) -> Matrix {
    assert_eq!(coeffs.len(), gens.len());
    let (r, c) = (gens[0].nrows(), gens[0].ncols());
    let mut out = Matrix::zeros(r, c);
    for (coef, g) in coeffs.iter().zip(gens) {
        if coef.is_zero() {
            continue;
        }
        for row in 0..r {
            for col in 0..c {
                let x = g.get(row, col);
                if !x.is_zero() {
                    *out.entry_mut(row, col) += &(coef * x);
                }
            }
        }
    }
    out
}

/// Expresses matrices in a fixed linearly independent generating set.
///
/// A square sub-block of the flattened generator matrix is inverted once;
/// every solve is then checked against the full system.
#[derive(Debug, Clone)]
pub struct SpanSolver {
    gens: Vec<Matrix>,
    rows: Vec<usize>,
    sub_inverse: Matrix,
}

impl SpanSolver {
    pub fn new(gens: &[Matrix]) -> Result<Self> {
        let n = gens.len();
        if n == 0 {
            return Err(Error::LinearlyDependent { rank: 0, count: 0 });
        }
        let flat_rows: Vec<Vec<ExactScalar>> = gens.iter().map(Matrix::flatten).collect();
        let reduced = rref(&Matrix::from_rows(flat_rows.clone()));
        if reduced.rank() < n {
            return Err(Error::LinearlyDependent {
                rank: reduced.rank(),
                count: n,
            });
        }
        // Pivot columns of the row-stacked generators pick entries that
        // determine the coefficients uniquely.
        let rows = reduced.pivots.clone();
        let mut sub = Matrix::zeros(n, n);
        for (i, &e) in rows.iter().enumerate() {
            for (k, flat) in flat_rows.iter().enumerate() {
                sub.set(i, k, flat[e].clone());
            }
        }
        Ok(Self {
            gens: gens.to_vec(),
            rows,
            sub_inverse: sub.inverse()?,
        })
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.gens
    }

    /// Coefficients of `target` in the generators, or the residual if it lies
    /// outside their span.
    pub fn solve(&self, target: &Matrix) -> std::result::Result<Vec<ExactScalar>, Matrix> {
        let flat = target.flatten();
        let rhs: Vec<ExactScalar> = self.rows.iter().map(|&e| flat[e].clone()).collect();
        let coeffs = self
            .sub_inverse
            .mul_vec(&rhs)
            .expect("square solve dimensions");
        let residual = target - &linear_combination(&coeffs, &self.gens);
        if residual.is_zero() {
            Ok(coeffs)
        } else {
            Err(residual)
        }
    }

    pub fn in_span(&self, target: &Matrix) -> bool {
        self.solve(target).is_ok()
    }
}

/// `f[a][b][c]` with `[X_a, X_b] = Σ_c f[a][b][c] X_c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstants {
    n: usize,
    data: Vec<ExactScalar>,
}

impl StructureConstants {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> &ExactScalar {
        &self.data[(a * self.n + b) * self.n + c]
    }

    /// First `(a, b, c)` where the arrays differ, in lexicographic order.
    pub fn first_mismatch(&self, other: &StructureConstants) -> Option<(usize, usize, usize)> {
        if self.n != other.n {
            return Some((0, 0, 0));
        }
        let n = self.n;
        (0..n * n * n)
            .find(|&k| self.data[k] != other.data[k])
            .map(|k| (k / (n * n), (k / n) % n, k % n))
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.n;
        (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| *self.get(a, b, c) == -self.get(b, a, c)))
        })
    }
}

/// Solves every bracket of the generators in their own span.
pub fn structure_constants(gens: &[Matrix]) -> Result<StructureConstants> {
    let solver = SpanSolver::new(gens)?;
    let n = gens.len();
    let mut data = vec![ExactScalar::zero(); n * n * n];
    for a in 0..n {
        for b in a + 1..n {
            let bracket = commutator(&gens[a], &gens[b])?;
            let coeffs = solver.solve(&bracket).map_err(|residual| Error::NotClosed {
                a,
                b,
                residual: Box::new(residual),
            })?;
            for (c, f) in coeffs.into_iter().enumerate() {
                if f.is_zero() {
                    continue;
                }
                data[(b * n + a) * n + c] = -&f;
                data[(a * n + b) * n + c] = f;
            }
        }
    }
    Ok(StructureConstants { n, data })
}

/// First pair `(a, b)` whose bracket leaves the span, if any.
pub fn first_unclosed_pair(gens: &[Matrix]) -> Result<Option<(usize, usize)>> {
    match structure_constants(gens) {
        Ok(_) => Ok(None),
        Err(Error::NotClosed { a, b, .. }) => Ok(Some((a, b))),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> ExactScalar {
        ExactScalar::from_int(n)
    }

    #[test]
    fn identity_has_trivial_kernel() {
        assert_eq!(rref_kernel(&Matrix::identity(8)).dim(), 0);
    }

    #[test]
    fn zero_array_kernel_is_everything() {
        assert_eq!(rref_kernel(&Matrix::zeros(3, 5)).dim(), 5);
    }

    #[test]
    fn rref_pivots_leftmost_first_row() {
        let m = Matrix::from_int_rows(&[[0, 2, 4], [1, 1, 1], [2, 4, 6]]);
        let r = rref(&m);
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(
            r.matrix,
            Matrix::from_int_rows(&[[1, 0, -1], [0, 1, 2], [0, 0, 0]])
        );
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = Matrix::from_int_rows(&[[1, 2, 3, 4], [2, 4, 6, 8], [0, 1, 1, 0]]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).unwrap().iter().all(ExactScalar::is_zero));
        }
    }

    #[test]
    fn subspace_intersection_and_sum() {
        let e = |v: [i64; 3]| v.iter().map(|&x| int(x)).collect::<Vec<_>>();
        let xy = Subspace::from_vectors(3, &[e([1, 0, 0]), e([0, 1, 0])]);
        let yz = Subspace::from_vectors(3, &[e([0, 1, 0]), e([0, 0, 1])]);
        let meet = xy.intersection(&yz);
        assert_eq!(meet.dim(), 1);
        assert!(meet.contains(&e([0, 5, 0])));
        assert_eq!(xy.sum(&yz).dim(), 3);
        assert_eq!(xy.intersection(&xy), xy);
    }

    #[test]
    fn dependent_generators_are_rejected() {
        let a = Matrix::from_int_rows(&[[0, 1], [-1, 0]]);
        let b = a.scale(&int(2));
        assert!(matches!(
            structure_constants(&[a, b]),
            Err(Error::LinearlyDependent { rank: 1, count: 2 })
        ));
    }

    #[test]
    fn unclosed_pair_reported() {
        // E12 and E21 bracket to diag(1, -1), outside their span.
        let e12 = Matrix::from_int_rows(&[[0, 1], [0, 0]]);
        let e21 = Matrix::from_int_rows(&[[0, 0], [1, 0]]);
        match structure_constants(&[e12, e21]) {
            Err(Error::NotClosed { a: 0, b: 1, residual }) => {
                assert_eq!(*residual, Matrix::from_int_rows(&[[1, 0], [0, -1]]));
            }
            other => panic!("expected NotClosed, got {other:?}"),
        }
    }
}
