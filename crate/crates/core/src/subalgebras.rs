//! spin(7) restrictions, their common g2 intersection, and su(3) inside g2.

use std::fmt;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{first_unclosed_pair, rref, Subspace};
use crate::matrix::Matrix;
use crate::representations::{GenIndex, Kind, LieBasis};
use crate::scalar::ExactScalar;

/// The 21 generators of a basis that do not rotate `axis`.
#[derive(Debug, Clone)]
pub struct Restriction {
    pub kind: Kind,
    pub axis: usize,
    pub indices: Vec<GenIndex>,
    pub gens: Vec<Matrix>,
}

impl Restriction {
    pub fn span(&self) -> Subspace {
        Subspace::span_of(&self.gens)
    }
}

pub fn restrict(basis: &LieBasis, axis: usize) -> Restriction {
    assert!(axis < 8, "axis {axis} out of range");
    let (indices, gens) = basis
        .iter()
        .filter(|(idx, _)| !idx.involves(axis))
        .map(|(idx, m)| (idx, m.clone()))
        .unzip();
    Restriction {
        kind: basis.kind,
        axis,
        indices,
        gens,
    }
}

/// Common span of several generator lists.
pub fn intersect(spans: &[&[Matrix]]) -> Subspace {
    let mut iter = spans.iter();
    let first = match iter.next() {
        Some(gens) => Subspace::span_of(gens),
        None => return Subspace::zero(0),
    };
    iter.fold(first, |acc, gens| acc.intersection(&Subspace::span_of(gens)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub coefficient: ExactScalar,
    pub unknown: String,
}

/// `dependent = Σ terms`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub dependent: String,
    pub terms: Vec<Term>,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} =", self.dependent)?;
        if self.terms.is_empty() {
            return write!(f, " 0");
        }
        for (n, t) in self.terms.iter().enumerate() {
            let c = &t.coefficient;
            let (sign, mag) = match c.as_rational() {
                Some(q) if q.is_negative() => ("-", -c),
                _ => ("+", c.clone()),
            };
            match (n, sign) {
                (0, "+") => write!(f, " ")?,
                (0, _) => write!(f, " -")?,
                _ => write!(f, " {sign} ")?,
            }
            if !mag.is_one() {
                write!(f, "({mag})")?;
            }
            write!(f, "{}", t.unknown)?;
        }
        Ok(())
    }
}

/// Solved form of `Σ a_ij X_ij = Σ b_ij Y_ij` for two restrictions.
#[derive(Debug, Clone)]
pub struct ConstraintSystem {
    /// Column order: all `a` unknowns, then all `b` unknowns, lexicographic.
    pub unknowns: Vec<String>,
    pub rank: usize,
    /// Dimension of the solution space.
    pub nullity: usize,
    /// One relation per pivot, in terms of the free unknowns.
    pub relations: Vec<Relation>,
}

fn unknown_name(prefix: char, idx: GenIndex) -> String {
    format!("{prefix}_{{{},{}}}", idx.i(), idx.j())
}

impl ConstraintSystem {
    fn relation(&self, dependent: &str) -> Option<&Relation> {
        self.relations.iter().find(|r| r.dependent == dependent)
    }

    /// Relations with a `b` coefficient on the left.
    pub fn b_relations(&self) -> Vec<Relation> {
        self.relations
            .iter()
            .filter(|r| r.dependent.starts_with('b'))
            .cloned()
            .collect()
    }

    /// Whether every `a_ij` is forced equal to `b_ij`.
    pub fn a_equals_b(&self) -> bool {
        self.unknowns
            .iter()
            .filter(|u| u.starts_with('a'))
            .all(|a| {
                let b = format!("b{}", &a[1..]);
                let a_rel = match self.relation(a) {
                    Some(r) => r,
                    None => return false,
                };
                match self.relation(&b) {
                    Some(b_rel) => a_rel.terms == b_rel.terms,
                    None => {
                        a_rel.terms
                            == [Term {
                                coefficient: ExactScalar::one(),
                                unknown: b.clone(),
                            }]
                    }
                }
            })
    }

    /// The `b` relations followed by `a_ij = b_ij`, when that holds.
    pub fn presented(&self) -> Vec<Relation> {
        let mut out = self.b_relations();
        if self.a_equals_b() {
            for a in self.unknowns.iter().filter(|u| u.starts_with('a')) {
                out.push(Relation {
                    dependent: a.clone(),
                    terms: vec![Term {
                        coefficient: ExactScalar::one(),
                        unknown: format!("b{}", &a[1..]),
                    }],
                });
            }
        } else {
            out.extend(
                self.relations
                    .iter()
                    .filter(|r| r.dependent.starts_with('a'))
                    .cloned(),
            );
        }
        out
    }
}

/// Solves `Σ a X = Σ b Y` by exact elimination on the flattened system
/// `[X | −Y]`.
pub fn coefficient_constraints(first: &Restriction, second: &Restriction) -> ConstraintSystem {
    let n = first.gens.len() + second.gens.len();
    let entries = first.gens.first().map_or(0, |m| m.nrows() * m.ncols());
    let mut system = Matrix::zeros(entries, n);
    let columns = first
        .gens
        .iter()
        .cloned()
        .chain(second.gens.iter().map(|m| -m));
    for (c, m) in columns.enumerate() {
        for (r, x) in m.flatten().into_iter().enumerate() {
            system.set(r, c, x);
        }
    }
    let unknowns: Vec<String> = first
        .indices
        .iter()
        .map(|&i| unknown_name('a', i))
        .chain(second.indices.iter().map(|&i| unknown_name('b', i)))
        .collect();
    let reduced = rref(&system);
    let free: Vec<usize> = (0..n).filter(|c| !reduced.pivots.contains(c)).collect();
    let relations = reduced
        .pivots
        .iter()
        .enumerate()
        .map(|(row, &pc)| Relation {
            dependent: unknowns[pc].clone(),
            terms: free
                .iter()
                .filter(|&&fc| !reduced.matrix.get(row, fc).is_zero())
                .map(|&fc| Term {
                    coefficient: -reduced.matrix.get(row, fc),
                    unknown: unknowns[fc].clone(),
                })
                .collect(),
        })
        .collect();
    ConstraintSystem {
        rank: reduced.rank(),
        nullity: free.len(),
        unknowns,
        relations,
    }
}

/// Entry `(row, col)` of the 7×7 block, the θ it carries, and an integer
/// multiplier. The lower triangle follows by antisymmetry.
type TemplateEntry = (usize, usize, usize, i64);

/// Part with overall factor ½.
const HALF_PART: [TemplateEntry; 14] = [
    (1, 3, 6, 1),
    (1, 4, 7, 1),
    (1, 5, 5, -1),
    (1, 6, 4, 1),
    (2, 3, 7, 1),
    (2, 4, 6, -1),
    (2, 5, 4, 1),
    (2, 6, 5, 1),
    (3, 4, 3, 1),
    (3, 5, 1, 1),
    (3, 6, 2, 1),
    (4, 5, 2, -1),
    (4, 6, 1, 1),
    (5, 6, 3, -1),
];

/// Part with overall factor 1/(2√3).
const ROOT3_PART: [TemplateEntry; 21] = [
    (0, 1, 9, -2),
    (0, 2, 10, -2),
    (0, 3, 11, -2),
    (0, 4, 12, 2),
    (0, 5, 14, -2),
    (0, 6, 13, -2),
    (1, 2, 8, -2),
    (1, 3, 13, -1),
    (1, 4, 14, -1),
    (1, 5, 12, -1),
    (1, 6, 11, 1),
    (2, 3, 14, 1),
    (2, 4, 13, -1),
    (2, 5, 11, -1),
    (2, 6, 12, -1),
    (3, 4, 8, -1),
    (3, 5, 10, 1),
    (3, 6, 9, -1),
    (4, 5, 9, -1),
    (4, 6, 10, -1),
    (5, 6, 8, -1),
];

pub const LAMBDA_COUNT: usize = 14;

#[derive(Debug, Clone)]
pub struct G2Basis {
    /// `Λ1..Λ14` as 8×8 matrices with zero 0th row and column.
    pub lambdas: Vec<Matrix>,
    pub theta_labels: Vec<String>,
}

/// `⟨X, Y⟩ = ½ tr(X†Y)`.
pub fn frobenius(x: &Matrix, y: &Matrix) -> ExactScalar {
    &(&x.adjoint() * y).trace() * &ExactScalar::from_ratio(1, 2)
}

fn lambda_from_template(theta: usize) -> Matrix {
    let half = ExactScalar::from_ratio(1, 2);
    let root3 = (&ExactScalar::sqrt(3) * &ExactScalar::from_int(2))
        .inv()
        .expect("nonzero");
    let mut m = Matrix::zeros(8, 8);
    for (entries, scale) in [(&HALF_PART[..], &half), (&ROOT3_PART[..], &root3)] {
        for &(r, c, t, mult) in entries {
            if t == theta {
                let v = scale * &ExactScalar::from_int(mult);
                m.set(r + 1, c + 1, v.clone());
                m.set(c + 1, r + 1, -&v);
            }
        }
    }
    m
}

/// The 14 Λ matrices, checked to close under the bracket.
pub fn g2_basis() -> Result<G2Basis> {
    let lambdas: Vec<Matrix> = (1..=LAMBDA_COUNT).map(lambda_from_template).collect();
    if let Some((a, b)) = first_unclosed_pair(&lambdas)? {
        return Err(Error::ClosureFailure { a, b });
    }
    Ok(G2Basis {
        lambdas,
        theta_labels: (1..=LAMBDA_COUNT).map(|k| format!("theta_{k}")).collect(),
    })
}

impl G2Basis {
    /// `Λk`, 1-based.
    pub fn lambda(&self, k: usize) -> &Matrix {
        &self.lambdas[k - 1]
    }

    pub fn su3_part(&self) -> &[Matrix] {
        &self.lambdas[..8]
    }

    pub fn su3_closed(&self) -> Result<bool> {
        Ok(first_unclosed_pair(self.su3_part())?.is_none())
    }

    /// The list with the names of Λ8 and Λ10 exchanged.
    pub fn swapped(&self) -> Vec<Matrix> {
        let mut out = self.lambdas.clone();
        out.swap(7, 9);
        out
    }

    /// Values of `k` for which `[Λk, Λk+7] ≠ 0` after the swap.
    pub fn noncommuting_partners(&self) -> Vec<usize> {
        let swapped = self.swapped();
        (1..=7)
            .filter(|&k| !(&swapped[k - 1] * &swapped[k + 6]).eq(&(&swapped[k + 6] * &swapped[k - 1])))
            .collect()
    }

    pub fn norms(&self) -> Vec<ExactScalar> {
        self.lambdas.iter().map(|x| frobenius(x, x)).collect()
    }

    /// First pair `(j, k)` (1-based) with `⟨Λj, Λk⟩ ≠ 0`.
    pub fn first_non_orthogonal(&self) -> Option<(usize, usize)> {
        (0..LAMBDA_COUNT)
            .flat_map(|a| (a + 1..LAMBDA_COUNT).map(move |b| (a, b)))
            .find(|&(a, b)| !frobenius(&self.lambdas[a], &self.lambdas[b]).is_zero())
            .map(|(a, b)| (a + 1, b + 1))
    }

    pub fn span(&self) -> Subspace {
        Subspace::span_of(&self.lambdas)
    }
}

/// The eight Gell-Mann matrices, `tr(λa λb) = 2δab`.
pub fn gell_mann() -> [Matrix; 8] {
    let i = ExactScalar::i();
    let one = ExactScalar::one();
    let z = ExactScalar::zero();
    let offdiag = |r: usize, c: usize, upper: &ExactScalar| {
        let mut m = Matrix::zeros(3, 3);
        m.set(r, c, upper.clone());
        m.set(c, r, upper.conj());
        m
    };
    let inv_root3 = ExactScalar::sqrt(3).inv().expect("nonzero");
    [
        offdiag(0, 1, &one),
        offdiag(0, 1, &-&i),
        Matrix::diag(vec![one.clone(), -&one, z.clone()]),
        offdiag(0, 2, &one),
        offdiag(0, 2, &-&i),
        offdiag(1, 2, &one),
        offdiag(1, 2, &-&i),
        Matrix::diag(vec![
            inv_root3.clone(),
            inv_root3.clone(),
            &inv_root3 * &ExactScalar::from_int(-2),
        ]),
    ]
}

/// The 7×7 special unitary that block-diagonalizes the su(3) part.
pub fn su3_transform() -> Matrix {
    let i = ExactScalar::i();
    let mi = -&i;
    let one = ExactScalar::one();
    let m1 = ExactScalar::from_int(-1);
    let z = ExactScalar::zero();
    let rows = vec![
        vec![ExactScalar::sqrt(2), z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), z.clone()],
        vec![z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), one.clone(), mi.clone()],
        vec![z.clone(), z.clone(), z.clone(), mi.clone(), m1.clone(), z.clone(), z.clone()],
        vec![z.clone(), m1, mi.clone(), z.clone(), z.clone(), z.clone(), z.clone()],
        vec![z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), mi, one.clone()],
        vec![z.clone(), z.clone(), z.clone(), one.clone(), i.clone(), z.clone(), z.clone()],
        vec![z.clone(), i, one, z.clone(), z.clone(), z.clone(), z],
    ];
    Matrix::from_rows(rows).scale(&ExactScalar::sqrt(2).inv().expect("nonzero"))
}

/// Scalar relating the conjugated Λk to `diag(0, λk, −λkᵀ)`.
pub fn su3_block_scalar() -> ExactScalar {
    ExactScalar::from_ratio(-1, 2).mul_i()
}

/// `diag(0, λ, −λᵀ)`, 7×7.
pub fn su3_block(lambda: &Matrix) -> Matrix {
    let mut m = Matrix::zeros(7, 7);
    m.place(lambda, 1, 1);
    m.place(&-&lambda.transpose(), 4, 4);
    m
}

#[derive(Debug, Clone)]
pub struct Su3Embedding {
    pub transform: Matrix,
    pub gellmann: [Matrix; 8],
    /// `U Λk U†` on the 7×7 block, k = 1..8.
    pub blocks: Vec<Matrix>,
    pub scalar: ExactScalar,
}

/// Conjugates Λ1..Λ8 by the su(3) transform and matches each against
/// `scalar · diag(0, λk, −λkᵀ)`.
pub fn su3_embedding_with(g2: &G2Basis, scalar: &ExactScalar) -> Result<Su3Embedding> {
    let u = su3_transform();
    let u_dag = u.adjoint();
    let gellmann = gell_mann();
    let mut blocks = Vec::with_capacity(8);
    for (k, lam) in gellmann.iter().enumerate() {
        let inner = g2.lambdas[k].block(1, 1, 7, 7);
        let conjugated = &(&u * &inner) * &u_dag;
        let expected = su3_block(lam).scale(scalar);
        if let Some((row, col)) = conjugated.first_difference(&expected) {
            return Err(Error::BlockMismatch { k: k + 1, row, col });
        }
        blocks.push(conjugated);
    }
    Ok(Su3Embedding {
        transform: u,
        gellmann,
        blocks,
        scalar: scalar.clone(),
    })
}

pub fn su3_embedding(g2: &G2Basis) -> Result<Su3Embedding> {
    su3_embedding_with(g2, &su3_block_scalar())
}
