//! The vector and two chiral spinor bases of so(8) / spin(1,7).
//!
//! All six bases are indexed by the 28 pairs `0 ≤ i < j ≤ 7` and share one
//! sign convention: after construction the `(1,5)` and `(2,6)` generators
//! are negated. With that convention the vector, left and right bases of
//! each signature have identical structure constants.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::clifford::{cl17_basis, cl8_basis, GammaBasis, Signature};
use crate::error::{Error, Result};
use crate::linalg::{structure_constants, StructureConstants, Subspace};
use crate::matrix::Matrix;
use crate::scalar::ExactScalar;

/// A rotation plane `(i, j)` with `0 ≤ i < j ≤ 7`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GenIndex {
    i: u8,
    j: u8,
}

impl GenIndex {
    pub const COUNT: usize = 28;

    pub fn new(i: usize, j: usize) -> Option<GenIndex> {
        (i < j && j < 8).then_some(GenIndex {
            i: i as u8,
            j: j as u8,
        })
    }

    pub fn i(&self) -> usize {
        self.i as usize
    }

    pub fn j(&self) -> usize {
        self.j as usize
    }

    /// Lexicographic position in `0..28`.
    pub fn position(&self) -> usize {
        let (i, j) = (self.i(), self.j());
        // Pairs with first index < i come first: Σ_{k<i} (7 − k).
        i * (15 - i) / 2 + (j - i - 1)
    }

    pub fn from_position(pos: usize) -> GenIndex {
        Self::all().nth(pos).expect("position < 28")
    }

    pub fn all() -> impl Iterator<Item = GenIndex> {
        (0..8).flat_map(|i| (i + 1..8).map(move |j| GenIndex::new(i, j).unwrap()))
    }

    pub fn involves(&self, axis: usize) -> bool {
        self.i() == axis || self.j() == axis
    }
}

impl fmt::Display for GenIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.i, self.j)
    }
}

/// Generators negated after every basis construction.
pub const FLIPPED: [(usize, usize); 2] = [(1, 5), (2, 6)];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    V,
    L,
    R,
}

impl Kind {
    /// Successor under triality: V → L → R → V.
    pub fn next(self) -> Kind {
        match self {
            Kind::V => Kind::L,
            Kind::L => Kind::R,
            Kind::R => Kind::V,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Kind::V => "V",
            Kind::L => "L",
            Kind::R => "R",
        }
    }

    pub fn parse(s: &str) -> Result<Kind> {
        match s {
            "V" | "v" => Ok(Kind::V),
            "L" | "l" => Ok(Kind::L),
            "R" | "r" => Ok(Kind::R),
            _ => Err(Error::Parse(format!("representation kind {s:?}"))),
        }
    }
}

/// 28 generators of one 8-dimensional representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieBasis {
    pub kind: Kind,
    pub signature: Signature,
    gens: Vec<Matrix>,
}

impl LieBasis {
    pub fn new(kind: Kind, signature: Signature, gens: Vec<Matrix>) -> Result<LieBasis> {
        check_signature(signature)?;
        if gens.len() != GenIndex::COUNT {
            return Err(Error::LinearlyDependent {
                rank: gens.len(),
                count: GenIndex::COUNT,
            });
        }
        if let Some(g) = gens.iter().find(|g| !g.is_square() || g.dim() != 8) {
            return Err(Error::DimensionMismatch {
                left: (g.nrows(), g.ncols()),
                right: (8, 8),
            });
        }
        Ok(LieBasis {
            kind,
            signature,
            gens,
        })
    }

    pub fn get(&self, idx: GenIndex) -> &Matrix {
        &self.gens[idx.position()]
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.gens
    }

    pub fn iter(&self) -> impl Iterator<Item = (GenIndex, &Matrix)> {
        GenIndex::all().zip(&self.gens)
    }

    pub fn name(&self, idx: GenIndex) -> String {
        generator_name(self.kind, idx)
    }

    /// `X ↦ S X S⁻¹` for every generator; kind and signature are kept.
    pub fn conjugated_by(&self, s: &Matrix) -> Result<LieBasis> {
        let s_inv = s.inverse()?;
        Ok(LieBasis {
            kind: self.kind,
            signature: self.signature,
            gens: self.gens.iter().map(|g| &(s * g) * &s_inv).collect(),
        })
    }

    pub fn with_kind(mut self, kind: Kind) -> LieBasis {
        self.kind = kind;
        self
    }

    pub fn structure_constants(&self) -> Result<StructureConstants> {
        structure_constants(&self.gens)
    }

    pub fn span(&self) -> Subspace {
        Subspace::span_of(&self.gens)
    }

    /// Generator-by-generator comparison; returns the first differing index.
    pub fn first_difference(&self, other: &LieBasis) -> Option<GenIndex> {
        GenIndex::all().find(|&idx| self.get(idx) != other.get(idx))
    }
}

/// `"V_{i,j}"`, `"L_{i,j}"`, `"R_{i,j}"`.
pub fn generator_name(kind: Kind, idx: GenIndex) -> String {
    format!("{}_{{{},{}}}", kind.symbol(), idx.i(), idx.j())
}

fn check_signature(sig: Signature) -> Result<()> {
    if sig == Signature::EUCLIDEAN || sig == Signature::LORENTZIAN {
        Ok(())
    } else {
        Err(Error::UnsupportedSignature { p: sig.p, q: sig.q })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BasisChangeName {
    P,
    M,
    A,
    U,
    B,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisChange {
    pub name: BasisChangeName,
    pub matrix: Matrix,
}

impl BasisChange {
    /// `P = diag(−1, 1, …, 1)`.
    pub fn parity() -> BasisChange {
        let mut diag = vec![ExactScalar::one(); 8];
        diag[0] = ExactScalar::from_int(-1);
        BasisChange {
            name: BasisChangeName::P,
            matrix: Matrix::diag(diag),
        }
    }

    /// `M = diag(i, 1, …, 1)`.
    pub fn phase() -> BasisChange {
        let mut diag = vec![ExactScalar::one(); 8];
        diag[0] = ExactScalar::i();
        BasisChange {
            name: BasisChangeName::M,
            matrix: Matrix::diag(diag),
        }
    }

    pub fn chiral() -> BasisChange {
        BasisChange {
            name: BasisChangeName::A,
            matrix: crate::clifford::chiral_transform(),
        }
    }
}

fn apply_flips(gens: &mut [Matrix]) {
    for (i, j) in FLIPPED {
        let pos = GenIndex::new(i, j).unwrap().position();
        gens[pos] = -&gens[pos];
    }
}

fn unit_rotation(idx: GenIndex) -> Matrix {
    let mut m = Matrix::zeros(8, 8);
    m.set(idx.i(), idx.j(), ExactScalar::one());
    m.set(idx.j(), idx.i(), ExactScalar::from_int(-1));
    m
}

/// Vector representation: `(V_ij)_ab = δ^i_a δ^j_b − δ^j_a δ^i_b`, with
/// `V15`, `V26` negated. In signature (1,7) the generators touching axis 0
/// are made symmetric (boosts).
pub fn vector_basis(signature: Signature) -> Result<LieBasis> {
    check_signature(signature)?;
    let mut gens: Vec<Matrix> = GenIndex::all().map(unit_rotation).collect();
    apply_flips(&mut gens);
    if signature == Signature::LORENTZIAN {
        for (idx, g) in GenIndex::all().zip(gens.iter_mut()) {
            if idx.i() == 0 {
                let lower = g.get(idx.j(), idx.i()).clone();
                g.set(idx.j(), idx.i(), -&lower);
            }
        }
    }
    LieBasis::new(Kind::V, signature, gens)
}

/// Upper-left and lower-right 8×8 blocks of `Γi Γj / 2`.
fn chiral_blocks(gammas: &GammaBasis, idx: GenIndex) -> Result<(Matrix, Matrix)> {
    let half = ExactScalar::from_ratio(1, 2);
    let x = (gammas.gamma(idx.i()) * gammas.gamma(idx.j())).scale(&half);
    if !x.block(0, 8, 8, 8).is_zero() || !x.block(8, 0, 8, 8).is_zero() {
        return Err(Error::Construction {
            i: idx.i(),
            j: idx.j(),
            reason: "bilinear is not block diagonal".into(),
        });
    }
    Ok((x.block(0, 0, 8, 8), x.block(8, 8, 8, 8)))
}

/// Left- and right-handed spinor bases.
///
/// Euclidean: `L` and `R′` are the diagonal blocks of `ΓiΓj/2` in the real
/// Cl(8,0) basis and `R = P R′ Pᵀ`. Lorentzian: blocks from the chiral
/// Cl(1,7) basis with `L = −M L′ M†` and `R = −M† R′ M`.
pub fn spinor_bases(signature: Signature) -> Result<(LieBasis, LieBasis)> {
    check_signature(signature)?;
    let mut left = Vec::with_capacity(GenIndex::COUNT);
    let mut right = Vec::with_capacity(GenIndex::COUNT);
    if signature == Signature::EUCLIDEAN {
        let gammas = cl8_basis();
        let p = BasisChange::parity().matrix;
        for idx in GenIndex::all() {
            let (l, r_prime) = chiral_blocks(&gammas, idx)?;
            left.push(l);
            right.push(&(&p * &r_prime) * &p.transpose());
        }
    } else {
        let gammas = cl17_basis(true);
        let m = BasisChange::phase().matrix;
        let m_dag = m.adjoint();
        for idx in GenIndex::all() {
            let (l_prime, r_prime) = chiral_blocks(&gammas, idx)?;
            left.push(-&(&(&m * &l_prime) * &m_dag));
            right.push(-&(&(&m_dag * &r_prime) * &m));
        }
    }
    apply_flips(&mut left);
    apply_flips(&mut right);
    Ok((
        LieBasis::new(Kind::L, signature, left)?,
        LieBasis::new(Kind::R, signature, right)?,
    ))
}

/// All three bases of one signature, in V, L, R order.
pub fn all_bases(signature: Signature) -> Result<[LieBasis; 3]> {
    let v = vector_basis(signature)?;
    let (l, r) = spinor_bases(signature)?;
    Ok([v, l, r])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanComparison {
    /// Equality of the real spans (the real Lie algebras spanned).
    pub equal: bool,
    pub dim_first: usize,
    pub dim_second: usize,
    pub dim_intersection: usize,
    /// Equality after complexification.
    pub complex_equal: bool,
}

/// Real coordinates of a generator: real parts of all entries, then
/// imaginary parts.
fn real_coordinates(m: &Matrix) -> Vec<ExactScalar> {
    let entries = m.entries();
    entries
        .iter()
        .map(ExactScalar::re)
        .chain(entries.iter().map(ExactScalar::im))
        .collect()
}

fn real_span(gens: &[Matrix]) -> Subspace {
    let vectors: Vec<Vec<ExactScalar>> = gens.iter().map(real_coordinates).collect();
    Subspace::from_vectors(2 * gens[0].entries().len(), &vectors)
}

/// Compares the real spans of the two generator sets via exact RREF.
pub fn same_span(first: &LieBasis, second: &LieBasis) -> SpanComparison {
    let a = real_span(first.generators());
    let b = real_span(second.generators());
    let meet = a.intersection(&b);
    let (ca, cb) = (first.span(), second.span());
    SpanComparison {
        equal: a.dim() == b.dim() && meet.dim() == a.dim(),
        dim_first: a.dim(),
        dim_second: b.dim(),
        dim_intersection: meet.dim(),
        complex_equal: ca.dim() == cb.dim() && ca.intersection(&cb).dim() == ca.dim(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureComparison {
    pub equal: bool,
    /// `(a, b, c)` of the first differing `f_ab^c`.
    pub first_mismatch: Option<(GenIndex, GenIndex, GenIndex)>,
}

pub fn same_structure_constants(
    first: &LieBasis,
    second: &LieBasis,
) -> Result<StructureComparison> {
    let f1 = first.structure_constants()?;
    let f2 = second.structure_constants()?;
    let first_mismatch = f1.first_mismatch(&f2).map(|(a, b, c)| {
        (
            GenIndex::from_position(a),
            GenIndex::from_position(b),
            GenIndex::from_position(c),
        )
    });
    Ok(StructureComparison {
        equal: first_mismatch.is_none(),
        first_mismatch,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(i: usize, j: usize) -> GenIndex {
        GenIndex::new(i, j).unwrap()
    }

    #[test]
    fn positions_are_lexicographic() {
        for (n, g) in GenIndex::all().enumerate() {
            assert_eq!(g.position(), n);
        }
        assert_eq!(GenIndex::all().count(), 28);
        assert_eq!(idx(6, 7).position(), 27);
        assert!(GenIndex::new(3, 3).is_none());
        assert!(GenIndex::new(2, 8).is_none());
    }

    #[test]
    fn euclidean_vector_entries() {
        let v = vector_basis(Signature::EUCLIDEAN).unwrap();
        let v01 = v.get(idx(0, 1));
        assert_eq!(v01.get(0, 1), &ExactScalar::one());
        assert_eq!(v01.get(1, 0), &ExactScalar::from_int(-1));
        assert_eq!(v01.nonzero_count(), 2);
        let v15 = v.get(idx(1, 5));
        assert_eq!(v15.get(1, 5), &ExactScalar::from_int(-1));
        assert_eq!(v15.get(5, 1), &ExactScalar::one());
    }

    #[test]
    fn lorentzian_boost_is_symmetric() {
        let v = vector_basis(Signature::LORENTZIAN).unwrap();
        let b = v.get(idx(0, 3));
        assert_eq!(b.get(0, 3), &ExactScalar::one());
        assert_eq!(b.get(3, 0), &ExactScalar::one());
        let eta = Signature::LORENTZIAN.metric_matrix();
        for (_, x) in v.iter() {
            assert!((&(&x.transpose() * &eta) + &(&eta * x)).is_zero());
        }
    }

    #[test]
    fn unflipped_commutator_v01_v12() {
        // Oracle: [V01, V12] = V02 for the raw Eq. (δδ − δδ) generators,
        // expanded with an explicit triple loop.
        let raw = |i, j| unit_rotation(idx(i, j));
        let naive = |a: &Matrix, b: &Matrix| {
            let mut out = Matrix::zeros(8, 8);
            for r in 0..8 {
                for c in 0..8 {
                    let mut acc = ExactScalar::zero();
                    for k in 0..8 {
                        acc += &(a.get(r, k) * b.get(k, c));
                    }
                    out.set(r, c, acc);
                }
            }
            out
        };
        let (a, b) = (raw(0, 1), raw(1, 2));
        let bracket = &naive(&a, &b) - &naive(&b, &a);
        assert_eq!(bracket, raw(0, 2));
        assert_eq!(crate::matrix::commutator(&a, &b).unwrap(), bracket);
    }

    #[test]
    fn euclidean_spinors_are_real_antisymmetric() {
        let (l, r) = spinor_bases(Signature::EUCLIDEAN).unwrap();
        for b in [&l, &r] {
            for (n, x) in b.iter() {
                assert!(x.is_real() && x.is_antisymmetric(), "{}", b.name(n));
            }
        }
    }

    #[test]
    fn euclidean_left_is_parity_conjugate_of_right_off_axis_zero() {
        let (l, r) = spinor_bases(Signature::EUCLIDEAN).unwrap();
        let p = BasisChange::parity().matrix;
        for g in GenIndex::all().filter(|g| !g.involves(0)) {
            assert_eq!(l.get(g), &(&(&p * r.get(g)) * &p.transpose()), "{g}");
        }
    }

    #[test]
    fn lorentzian_spinors_are_conjugate() {
        let (l, r) = spinor_bases(Signature::LORENTZIAN).unwrap();
        for g in GenIndex::all() {
            assert_eq!(&l.get(g).conj(), r.get(g), "{g}");
        }
    }

    #[test]
    fn lorentzian_spinor_hermiticity_split() {
        let (l, r) = spinor_bases(Signature::LORENTZIAN).unwrap();
        for b in [&l, &r] {
            for (g, x) in b.iter() {
                if g.i() == 0 {
                    assert!(x.is_hermitian(), "boost {}", b.name(g));
                } else {
                    assert!(x.is_antihermitian(), "rotation {}", b.name(g));
                }
            }
        }
    }

    #[test]
    fn span_comparisons() {
        let v = vector_basis(Signature::EUCLIDEAN).unwrap();
        let (l, _) = spinor_bases(Signature::EUCLIDEAN).unwrap();
        assert!(same_span(&v, &v).equal);
        let vl = same_span(&v, &l);
        assert!(vl.equal);
        assert_eq!(vl.dim_first, 28);

        let vlor = vector_basis(Signature::LORENTZIAN).unwrap();
        let (llor, _) = spinor_bases(Signature::LORENTZIAN).unwrap();
        let lor = same_span(&vlor, &llor);
        assert!(!lor.equal);
        assert_eq!((lor.dim_first, lor.dim_second), (28, 28));
        // L is an invertible complex recombination of V.
        assert!(lor.complex_equal);
    }

    #[test]
    fn parity_and_phase() {
        let p = BasisChange::parity().matrix;
        assert_eq!(p.determinant().unwrap(), ExactScalar::from_int(-1));
        let m = BasisChange::phase().matrix;
        assert_eq!(m.get(0, 0), &ExactScalar::i());
        assert!(m.is_unitary());
    }

    #[test]
    fn rejects_other_signatures() {
        assert!(matches!(
            vector_basis(Signature::CL7),
            Err(Error::UnsupportedSignature { p: 7, q: 0 })
        ));
    }
}
