//! Outer automorphisms acting on quartets of generators.
//!
//! The 28 generators are arranged as seven quartets `(a_k, b_k, c_k, d_k)`.
//! A 4×4 core `C` maps a basis `X` to the basis `Y` with
//! `Y_{q_r} = Σ_c C_{rc} X_{q_c}` on every quartet `q`. Antilinear operators
//! (complex conjugation) additionally conjugate the matrices they act on.
//!
//! Since the image of a generator `Σ_r w_r X_r` is `Σ_c (Cᵀw)_c X_c`, the
//! eigenvalue a combination picks up under the automorphism is governed by
//! `Cᵀ`, not `C`. [`diagonalize`] works with that coefficient action.

use serde::{Deserialize, Serialize};

use crate::clifford::Signature;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::representations::{BasisChange, GenIndex, Kind, LieBasis};
use crate::scalar::ExactScalar;

/// The four ordered sets of seven: rows `a, b, c, d`, column `k` is quartet `k`.
pub const QUARTETS: [[(usize, usize); 7]; 4] = [
    [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6), (0, 7)],
    [(2, 3), (5, 7), (1, 2), (3, 7), (3, 6), (1, 7), (2, 5)],
    [(4, 5), (1, 3), (4, 7), (1, 5), (1, 4), (2, 4), (1, 6)],
    [(6, 7), (4, 6), (5, 6), (2, 6), (2, 7), (3, 5), (3, 4)],
];

pub const QUARTET_COUNT: usize = 7;

/// Generators `(a_k, b_k, c_k, d_k)` of quartet `k`.
pub fn quartet(k: usize) -> [GenIndex; 4] {
    std::array::from_fn(|r| {
        let (i, j) = QUARTETS[r][k];
        GenIndex::new(i, j).expect("valid quartet entry")
    })
}

/// Row (0 = a, …, 3 = d) and quartet number of a generator.
pub fn slot(idx: GenIndex) -> (usize, usize) {
    for (r, row) in QUARTETS.iter().enumerate() {
        if let Some(k) = row.iter().position(|&(i, j)| (i, j) == (idx.i(), idx.j())) {
            return (r, k);
        }
    }
    unreachable!("quartets cover every generator")
}

/// Whether the quartets form a disjoint cover of the 28 generators.
pub fn partition_is_cover() -> bool {
    let mut seen = [false; GenIndex::COUNT];
    for k in 0..QUARTET_COUNT {
        for g in quartet(k) {
            if std::mem::replace(&mut seen[g.position()], true) {
                return false;
            }
        }
    }
    seen.iter().all(|&b| b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OpName {
    H,
    K,
    T,
    KPrime,
    Conj,
}

impl OpName {
    pub fn parse(s: &str) -> Result<OpName> {
        match s {
            "H" => Ok(OpName::H),
            "K" => Ok(OpName::K),
            "T" => Ok(OpName::T),
            "K'" | "KPrime" | "Kprime" => Ok(OpName::KPrime),
            "conj" | "Conj" | "*" => Ok(OpName::Conj),
            _ => Err(Error::Parse(format!("operator {s:?}"))),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            OpName::H => "H",
            OpName::K => "K",
            OpName::T => "T",
            OpName::KPrime => "K'",
            OpName::Conj => "conj",
        }
    }
}

/// An outer automorphism in quartet form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OuterOp {
    pub name: OpName,
    pub core: Matrix,
    pub antilinear: bool,
}

fn half() -> ExactScalar {
    ExactScalar::from_ratio(1, 2)
}

impl OuterOp {
    /// The order-3 Euclidean triality matrix.
    pub fn h() -> OuterOp {
        OuterOp {
            name: OpName::H,
            core: Matrix::from_int_rows(&[
                [-1, -1, 1, 1],
                [1, 1, 1, 1],
                [-1, 1, 1, -1],
                [-1, 1, -1, 1],
            ])
            .scale(&half()),
            antilinear: false,
        }
    }

    /// Reflection through axis 0: `diag(−1, 1, 1, 1)`.
    pub fn k() -> OuterOp {
        OuterOp {
            name: OpName::K,
            core: Matrix::from_int_rows(&[[-1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]),
            antilinear: false,
        }
    }

    /// The order-3 Lorentzian triality matrix.
    pub fn t() -> OuterOp {
        let i = ExactScalar::i();
        let mi = -&i;
        let one = ExactScalar::one();
        let m1 = ExactScalar::from_int(-1);
        OuterOp {
            name: OpName::T,
            core: Matrix::from_rows(vec![
                vec![m1.clone(), i.clone(), mi.clone(), mi.clone()],
                vec![i, one.clone(), one.clone(), one.clone()],
                vec![mi.clone(), one.clone(), one.clone(), m1.clone()],
                vec![mi, one.clone(), m1.clone(), one],
            ])
            .scale(&half()),
            antilinear: false,
        }
    }

    /// Complex conjugation of every generator.
    pub fn conj() -> OuterOp {
        OuterOp {
            name: OpName::Conj,
            core: Matrix::identity(4),
            antilinear: true,
        }
    }

    pub fn by_name(name: OpName) -> OuterOp {
        match name {
            OpName::H => OuterOp::h(),
            OpName::K => OuterOp::k(),
            OpName::T => OuterOp::t(),
            OpName::Conj => OuterOp::conj(),
            OpName::KPrime => OuterOp {
                name: OpName::KPrime,
                core: k_prime(),
                antilinear: false,
            },
        }
    }

    /// Signature the operator acts on.
    pub fn signature(&self) -> Signature {
        match self.name {
            OpName::H | OpName::K | OpName::KPrime => Signature::EUCLIDEAN,
            OpName::T | OpName::Conj => Signature::LORENTZIAN,
        }
    }

    /// Representation kind reached from `kind`.
    pub fn target_kind(&self, kind: Kind) -> Kind {
        match self.name {
            OpName::H | OpName::T => kind.next(),
            OpName::K | OpName::Conj | OpName::KPrime => match kind {
                Kind::V => Kind::V,
                Kind::L => Kind::R,
                Kind::R => Kind::L,
            },
        }
    }
}

/// An operator on 28-dimensional generator space, possibly antilinear.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnpackedOp {
    pub matrix: Matrix,
    pub antilinear: bool,
}

impl UnpackedOp {
    /// `self ∘ other`.
    pub fn compose(&self, other: &UnpackedOp) -> UnpackedOp {
        let rhs = if self.antilinear {
            other.matrix.conj()
        } else {
            other.matrix.clone()
        };
        UnpackedOp {
            matrix: &self.matrix * &rhs,
            antilinear: self.antilinear ^ other.antilinear,
        }
    }

    pub fn pow(&self, n: u32) -> UnpackedOp {
        let id = UnpackedOp {
            matrix: Matrix::identity(self.matrix.dim()),
            antilinear: false,
        };
        (0..n).fold(id, |acc, _| acc.compose(self))
    }

    pub fn is_identity(&self) -> bool {
        !self.antilinear && self.matrix.is_identity()
    }
}

/// Places the core on every quartet of the 28 generator slots.
pub fn unpack(op: &OuterOp) -> UnpackedOp {
    let mut m = Matrix::zeros(GenIndex::COUNT, GenIndex::COUNT);
    for k in 0..QUARTET_COUNT {
        let q = quartet(k);
        for r in 0..4 {
            for c in 0..4 {
                m.set(q[r].position(), q[c].position(), op.core.get(r, c).clone());
            }
        }
    }
    UnpackedOp {
        matrix: m,
        antilinear: op.antilinear,
    }
}

/// Maps each generator to its prescribed combination of old generators.
pub fn apply_outer(op: &OuterOp, basis: &LieBasis) -> Result<LieBasis> {
    if op.name == OpName::KPrime {
        return Err(Error::NotApplicable(format!("{} to a basis", op.name.label())));
    }
    let sig = op.signature();
    if basis.signature != sig {
        return Err(Error::SignatureMismatch {
            op: op.name.label().into(),
            p: basis.signature.p,
            q: basis.signature.q,
        });
    }
    let source: Vec<Matrix> = if op.antilinear {
        basis.generators().iter().map(Matrix::conj).collect()
    } else {
        basis.generators().to_vec()
    };
    let mut gens = vec![Matrix::zeros(8, 8); GenIndex::COUNT];
    for k in 0..QUARTET_COUNT {
        let q = quartet(k);
        for r in 0..4 {
            let mut acc = Matrix::zeros(8, 8);
            for c in 0..4 {
                let coeff = op.core.get(r, c);
                if !coeff.is_zero() {
                    acc = &acc + &source[q[c].position()].scale(coeff);
                }
            }
            gens[q[r].position()] = acc;
        }
    }
    LieBasis::new(op.target_kind(basis.kind), basis.signature, gens)
}

/// The basis change that follows `K`: every generator conjugated by `P`.
pub fn parity_cleanup(basis: &LieBasis) -> Result<LieBasis> {
    basis.conjugated_by(&BasisChange::parity().matrix)
}

/// One element of a group of (anti)linear 4×4 operators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    pub matrix: Matrix,
    pub antilinear: bool,
}

impl GroupElement {
    pub fn identity() -> GroupElement {
        GroupElement {
            matrix: Matrix::identity(4),
            antilinear: false,
        }
    }

    pub fn from_op(op: &OuterOp) -> GroupElement {
        GroupElement {
            matrix: op.core.clone(),
            antilinear: op.antilinear,
        }
    }

    /// `self ∘ other`; an antilinear left factor conjugates the right one.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        let rhs = if self.antilinear {
            other.matrix.conj()
        } else {
            other.matrix.clone()
        };
        GroupElement {
            matrix: &self.matrix * &rhs,
            antilinear: self.antilinear ^ other.antilinear,
        }
    }

    pub fn is_identity(&self) -> bool {
        !self.antilinear && self.matrix.is_identity()
    }

    /// Order, or `None` past `limit`.
    pub fn order(&self, limit: usize) -> Option<usize> {
        let mut acc = self.clone();
        for n in 1..=limit {
            if acc.is_identity() {
                return Some(n);
            }
            acc = acc.compose(self);
        }
        None
    }
}

/// Upper bound on closure size before declaring a construction bug.
pub const CLOSURE_LIMIT: usize = 12;

#[derive(Debug, Clone)]
pub struct GroupReport {
    pub elements: Vec<GroupElement>,
    /// `table[a][b]` is the index of `elements[a] ∘ elements[b]`.
    pub table: Vec<Vec<usize>>,
    pub order: usize,
    /// `s r s⁻¹ = r²` for the order-2 generator `s` and order-3 generator `r`.
    pub dihedral_relation: bool,
    pub is_s3: bool,
}

/// Multiplicative closure of the given cores.
pub fn s3_closure(gens: &[OuterOp]) -> Result<GroupReport> {
    let gen_elems: Vec<GroupElement> = gens.iter().map(GroupElement::from_op).collect();
    let mut elements = vec![GroupElement::identity()];
    let mut frontier = 0;
    while frontier < elements.len() {
        let current = elements[frontier].clone();
        for g in &gen_elems {
            let next = current.compose(g);
            if !elements.contains(&next) {
                elements.push(next);
                if elements.len() > CLOSURE_LIMIT {
                    return Err(Error::ClosureExceeded(elements.len()));
                }
            }
        }
        frontier += 1;
    }
    let table: Vec<Vec<usize>> = elements
        .iter()
        .map(|a| {
            elements
                .iter()
                .map(|b| {
                    let ab = a.compose(b);
                    elements
                        .iter()
                        .position(|e| *e == ab)
                        .expect("closure is closed")
                })
                .collect()
        })
        .collect();

    let rotation = gen_elems.iter().find(|g| g.order(CLOSURE_LIMIT) == Some(3));
    let reflection = gen_elems.iter().find(|g| g.order(CLOSURE_LIMIT) == Some(2));
    let dihedral_relation = match (rotation, reflection) {
        (Some(r), Some(s)) => {
            // s has order 2, so s⁻¹ = s.
            s.compose(r).compose(s) == r.compose(r)
        }
        _ => false,
    };
    let order = elements.len();
    Ok(GroupReport {
        is_s3: order == 6 && dihedral_relation,
        elements,
        table,
        order,
        dihedral_relation,
    })
}

/// `1/√k` for `k ∈ {2, 3, 6}`, exactly.
fn inv_sqrt(k: u32) -> ExactScalar {
    ExactScalar::sqrt(k).inv().expect("nonzero radical")
}

/// Eigenvector matrix of `H` in the printed column order
/// `|1⟩₃, |1⟩₈, |e^{i2π/3}⟩, |e^{−i2π/3}⟩`.
pub fn h_eigenvectors() -> Matrix {
    let s2 = inv_sqrt(2);
    let s6 = inv_sqrt(6);
    let z = ExactScalar::zero();
    let one = |s: &ExactScalar, n: i64| s * &ExactScalar::from_int(n);
    let i_root3 = ExactScalar::sqrt(3).mul_i();
    let plus = [&i_root3 * &s6, one(&s6, -1), one(&s6, 1), one(&s6, 1)];
    let cols: [[ExactScalar; 4]; 4] = [
        [z.clone(), s2.clone(), z.clone(), s2.clone()],
        [z, s6.clone(), one(&s6, 2), one(&s6, -1)],
        plus.clone(),
        plus.map(|x| x.conj()),
    ];
    columns_to_matrix(&cols)
}

/// Eigenvector matrix of `T`: as for `H` but with the leading `i` of the two
/// complex-eigenvalue columns replaced by `1`, which makes it real.
pub fn t_eigenvectors() -> Matrix {
    let s2 = inv_sqrt(2);
    let s6 = inv_sqrt(6);
    let z = ExactScalar::zero();
    let one = |n: i64| &s6 * &ExactScalar::from_int(n);
    let root3 = &ExactScalar::sqrt(3) * &s6;
    let cols: [[ExactScalar; 4]; 4] = [
        [z.clone(), s2.clone(), z.clone(), s2],
        [z, one(1), one(2), one(-1)],
        [root3.clone(), one(-1), one(1), one(1)],
        [-&root3, one(-1), one(1), one(1)],
    ];
    columns_to_matrix(&cols)
}

fn columns_to_matrix(cols: &[[ExactScalar; 4]; 4]) -> Matrix {
    let mut m = Matrix::zeros(4, 4);
    for (c, col) in cols.iter().enumerate() {
        for (r, x) in col.iter().enumerate() {
            m.set(r, c, x.clone());
        }
    }
    m
}

#[derive(Debug, Clone)]
pub struct Diagonalization {
    pub op: OpName,
    /// Columns are eigenvectors of the coefficient action `Cᵀ`.
    pub change: Matrix,
    /// `change⁻¹ · Cᵀ · change`.
    pub d: Matrix,
    pub eigenvalues: [ExactScalar; 4],
}

/// Diagonalizes the coefficient action of `H` or `T` with the printed
/// eigenvector matrices and verifies the similarity exactly.
pub fn diagonalize(op: &OuterOp) -> Result<Diagonalization> {
    let change = match op.name {
        OpName::H => h_eigenvectors(),
        OpName::T => t_eigenvectors(),
        _ => return Err(Error::NotApplicable(format!("diagonalizing {}", op.name.label()))),
    };
    let d = &(&change.inverse()? * &op.core.transpose()) * &change;
    for r in 0..4 {
        for c in 0..4 {
            if r != c && !d.get(r, c).is_zero() {
                return Err(Error::NotDiagonal { row: r, col: c });
            }
        }
    }
    let eigenvalues = std::array::from_fn(|k| d.get(k, k).clone());
    Ok(Diagonalization {
        op: op.name,
        change,
        d,
        eigenvalues,
    })
}

/// `U† K U` with `U` the eigenvector matrix of `H`.
pub fn k_prime() -> Matrix {
    let u = h_eigenvectors();
    &(&u.adjoint() * &OuterOp::k().core) * &u
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Part {
    /// Eigenvalue 1, first invariant column.
    G2Three,
    /// Eigenvalue 1, second invariant column.
    G2Eight,
    /// Eigenvalue `e^{i2π/3}`.
    Right,
    /// Eigenvalue `e^{−i2π/3}`.
    Left,
}

impl Part {
    pub fn label(self) -> &'static str {
        match self {
            Part::G2Three => "3",
            Part::G2Eight => "8",
            Part::Right => "r",
            Part::Left => "l",
        }
    }
}

#[derive(Debug, Clone)]
pub struct GradedGenerator {
    pub name: String,
    pub part: Part,
    pub quartet: usize,
    pub eigenvalue: ExactScalar,
    pub coefficients: [(GenIndex, ExactScalar); 4],
    pub matrix: Matrix,
}

/// A basis re-expressed in triality eigen-combinations.
#[derive(Debug, Clone)]
pub struct GradedBasis {
    pub source: Kind,
    pub signature: Signature,
    pub op: OpName,
    /// Ordered: 7 `G2Three`, 7 `G2Eight`, 7 `Right`, 7 `Left`.
    pub generators: Vec<GradedGenerator>,
}

impl GradedBasis {
    fn part(&self, wanted: &[Part]) -> Vec<Matrix> {
        self.generators
            .iter()
            .filter(|g| wanted.contains(&g.part))
            .map(|g| g.matrix.clone())
            .collect()
    }

    pub fn g2_part(&self) -> Vec<Matrix> {
        self.part(&[Part::G2Three, Part::G2Eight])
    }

    pub fn right_part(&self) -> Vec<Matrix> {
        self.part(&[Part::Right])
    }

    pub fn left_part(&self) -> Vec<Matrix> {
        self.part(&[Part::Left])
    }

    pub fn all(&self) -> Vec<Matrix> {
        self.generators.iter().map(|g| g.matrix.clone()).collect()
    }
}

/// Recombines every quartet with the eigenvector columns of `op`:
/// `Y_m = Σ_r W_{rm} X_{q_r}`.
pub fn graded_basis(basis: &LieBasis, op: &OuterOp) -> Result<GradedBasis> {
    if basis.signature != op.signature() || !matches!(op.name, OpName::H | OpName::T) {
        return Err(Error::SignatureMismatch {
            op: op.name.label().into(),
            p: basis.signature.p,
            q: basis.signature.q,
        });
    }
    let diag = diagonalize(op)?;
    let omega = ExactScalar::omega();
    let omega_bar = omega.conj();
    let mut invariant_seen = 0;
    let mut column_parts = [Part::G2Three; 4];
    for (m, lambda) in diag.eigenvalues.iter().enumerate() {
        column_parts[m] = if lambda.is_one() {
            invariant_seen += 1;
            if invariant_seen == 1 {
                Part::G2Three
            } else {
                Part::G2Eight
            }
        } else if *lambda == omega {
            Part::Right
        } else if *lambda == omega_bar {
            Part::Left
        } else {
            return Err(Error::NotDiagonal { row: m, col: m });
        };
    }
    let mut generators = Vec::with_capacity(GenIndex::COUNT);
    for part in [Part::G2Three, Part::G2Eight, Part::Right, Part::Left] {
        let m = column_parts
            .iter()
            .position(|&p| p == part)
            .ok_or(Error::NotDiagonal { row: 0, col: 0 })?;
        for k in 0..QUARTET_COUNT {
            let q = quartet(k);
            let coefficients: [(GenIndex, ExactScalar); 4] =
                std::array::from_fn(|r| (q[r], diag.change.get(r, m).clone()));
            let mut matrix = Matrix::zeros(8, 8);
            for (g, w) in &coefficients {
                if !w.is_zero() {
                    matrix = &matrix + &basis.get(*g).scale(w);
                }
            }
            generators.push(GradedGenerator {
                name: format!("{}{}_{{{}}}", basis.kind.symbol(), part.label(), k + 1),
                part,
                quartet: k,
                eigenvalue: diag.eigenvalues[m].clone(),
                coefficients,
                matrix,
            });
        }
    }
    Ok(GradedBasis {
        source: basis.kind,
        signature: basis.signature,
        op: op.name,
        generators,
    })
}

/// `κ(X, Y) = ½ tr(XY)`.
pub fn killing(x: &Matrix, y: &Matrix) -> ExactScalar {
    &(x * y).trace() * &ExactScalar::from_ratio(1, 2)
}

/// `Σ_k κ(X_k, X_k)`.
pub fn killing_trace(gens: &[Matrix]) -> ExactScalar {
    gens.iter().map(|x| killing(x, x)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::representations::{spinor_bases, vector_basis};

    #[test]
    fn quartets_cover_all_generators() {
        assert!(partition_is_cover());
        let g = GenIndex::new(3, 7).unwrap();
        assert_eq!(slot(g), (1, 3));
    }

    #[test]
    fn core_identities() {
        let h = OuterOp::h().core;
        assert!(h.pow(3).is_identity());
        assert!(!h.is_identity());
        let k = OuterOp::k().core;
        assert!(k.pow(2).is_identity());
        let t = OuterOp::t().core;
        assert!(t.pow(3).is_identity());
        assert!(t.is_symmetric());
        assert_eq!(t.pow(2), t.conj());
        assert!((&t.conj() * &t).is_identity());
    }

    #[test]
    fn unpacked_powers() {
        assert!(unpack(&OuterOp::h()).pow(3).is_identity());
        assert!(unpack(&OuterOp::k()).pow(2).is_identity());
        let t = unpack(&OuterOp::t());
        assert!(t.pow(3).is_identity());
        let t2 = t.pow(2).matrix;
        assert_eq!(t2, t.matrix.conj());
        assert!((&t2 * &t.matrix).is_identity());
        let c = unpack(&OuterOp::conj());
        assert!(c.pow(2).is_identity());
        assert!(!c.is_identity());
    }

    #[test]
    fn h_cycles_euclidean_bases() {
        let v = vector_basis(Signature::EUCLIDEAN).unwrap();
        let (l, r) = spinor_bases(Signature::EUCLIDEAN).unwrap();
        let h = OuterOp::h();
        let hv = apply_outer(&h, &v).unwrap();
        assert_eq!(hv.kind, Kind::L);
        assert_eq!(hv.first_difference(&l), None);
        let hhv = apply_outer(&h, &hv).unwrap();
        assert_eq!(hhv.first_difference(&r), None);
        let hhhv = apply_outer(&h, &hhv).unwrap();
        assert_eq!(hhhv, v);
    }

    #[test]
    fn k_needs_parity_cleanup() {
        let (l, r) = spinor_bases(Signature::EUCLIDEAN).unwrap();
        let kl = apply_outer(&OuterOp::k(), &l).unwrap();
        assert_eq!(kl.kind, Kind::R);
        assert!(kl.first_difference(&r).is_some());
        assert_eq!(parity_cleanup(&kl).unwrap(), r);
    }

    #[test]
    fn lorentzian_maps() {
        let v = vector_basis(Signature::LORENTZIAN).unwrap();
        let (l, r) = spinor_bases(Signature::LORENTZIAN).unwrap();
        let t = OuterOp::t();
        assert_eq!(apply_outer(&t, &v).unwrap(), l);
        assert_eq!(apply_outer(&t, &l).unwrap(), r);
        assert_eq!(apply_outer(&t, &r).unwrap(), v);
        assert_eq!(apply_outer(&OuterOp::conj(), &l).unwrap(), r);
    }

    #[test]
    fn signature_mismatch_is_an_error() {
        let v = vector_basis(Signature::EUCLIDEAN).unwrap();
        assert!(matches!(
            apply_outer(&OuterOp::t(), &v),
            Err(Error::SignatureMismatch { .. })
        ));
        assert!(matches!(
            apply_outer(&OuterOp::by_name(OpName::KPrime), &v),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn closures() {
        let hk = s3_closure(&[OuterOp::h(), OuterOp::k()]).unwrap();
        assert_eq!(hk.order, 6);
        assert!(hk.is_s3);
        let h_only = s3_closure(&[OuterOp::h()]).unwrap();
        assert_eq!(h_only.order, 3);
        assert!(!h_only.is_s3);
        let tc = s3_closure(&[OuterOp::t(), OuterOp::conj()]).unwrap();
        assert_eq!(tc.order, 6);
        assert!(tc.is_s3);
        // Latin square property of the Cayley table.
        for row in &tc.table {
            let mut sorted = row.clone();
            sorted.sort_unstable();
            assert_eq!(sorted, (0..6).collect::<Vec<_>>());
        }
    }

    #[test]
    fn closure_limit_detects_runaway_groups() {
        // diag(i, 1, 1, 1) and a 4-cycle permutation generate far more than 12.
        let mut phase = Matrix::identity(4);
        phase.set(0, 0, ExactScalar::i());
        let cycle = Matrix::from_int_rows(&[[0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]);
        let ops = [
            OuterOp { name: OpName::H, core: phase, antilinear: false },
            OuterOp { name: OpName::K, core: cycle, antilinear: false },
        ];
        assert!(matches!(s3_closure(&ops), Err(Error::ClosureExceeded(13))));
    }

    #[test]
    fn h_eigenvectors_as_printed() {
        let u = h_eigenvectors();
        assert!(u.is_unitary());
        let h = OuterOp::h().core;
        let col = |m: usize| (0..4).map(|r| u.get(r, m).clone()).collect::<Vec<_>>();
        assert_eq!(h.mul_vec(&col(0)).unwrap(), col(0));
        assert_eq!(h.mul_vec(&col(1)).unwrap(), col(1));

        let diag = diagonalize(&OuterOp::h()).unwrap();
        let w = ExactScalar::omega();
        let expected = Matrix::diag(vec![
            ExactScalar::one(),
            ExactScalar::one(),
            w.clone(),
            w.conj(),
        ]);
        assert_eq!(diag.d, expected);
        // Conjugating H itself (rather than its transpose) flips the
        // complex pair.
        let literal = &(&u.adjoint() * &h) * &u;
        assert_eq!(literal, expected.conj());
    }

    #[test]
    fn t_eigenvectors_are_real_orthogonal() {
        let b = t_eigenvectors();
        assert!(b.is_real());
        assert!(b.is_orthogonal());
        let diag = diagonalize(&OuterOp::t()).unwrap();
        let w = ExactScalar::omega();
        assert_eq!(
            diag.eigenvalues,
            [ExactScalar::one(), ExactScalar::one(), w.conj(), w]
        );
    }

    #[test]
    fn k_prime_swaps_handed_eigenspaces() {
        let expected = Matrix::from_int_rows(&[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]);
        assert_eq!(k_prime(), expected);
    }

    #[test]
    fn killing_traces() {
        let v = vector_basis(Signature::EUCLIDEAN).unwrap();
        assert_eq!(killing_trace(v.generators()), ExactScalar::from_int(-28));
        let graded = graded_basis(&v, &OuterOp::h()).unwrap();
        assert_eq!(killing_trace(&graded.all()), ExactScalar::from_int(-14));
        for x in graded.right_part().iter().chain(&graded.left_part()) {
            assert!(killing(x, x).is_zero());
        }
    }

    #[test]
    fn graded_parts_have_expected_sizes() {
        let v = vector_basis(Signature::LORENTZIAN).unwrap();
        let g = graded_basis(&v, &OuterOp::t()).unwrap();
        assert_eq!(g.g2_part().len(), 14);
        assert_eq!(g.right_part().len(), 7);
        assert_eq!(g.left_part().len(), 7);
        assert!(g.all().iter().all(Matrix::is_real));
        assert!(matches!(
            graded_basis(&v, &OuterOp::h()),
            Err(Error::SignatureMismatch { .. })
        ));
    }
}
