//! Gamma-matrix ladders: Dirac gammas → Cl(7) → Cl(8,0) and Cl(1,7).
//!
//! Dirac basis conventions: `γ0 = diag(I2, −I2)`, `γk = [[0, σk], [−σk, 0]]`
//! and `γ5 = iγ0γ1γ2γ3`. Volume elements multiply the gammas in ascending
//! index order; reversing the order changes ω by the sign
//! `(−1)^{n(n−1)/2}`, which is `+1` for eight gammas.

use crate::error::{Error, Result};
use crate::matrix::{anticommutator, kron, Matrix};
use crate::scalar::ExactScalar;

/// Metric signature `η = diag(+1^p, −1^q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    pub p: usize,
    pub q: usize,
}

impl Signature {
    pub const EUCLIDEAN: Signature = Signature { p: 8, q: 0 };
    pub const LORENTZIAN: Signature = Signature { p: 1, q: 7 };
    pub const CL7: Signature = Signature { p: 7, q: 0 };
    pub const DIRAC: Signature = Signature { p: 1, q: 3 };

    pub fn dim(&self) -> usize {
        self.p + self.q
    }

    /// `η_kk`.
    pub fn metric(&self, k: usize) -> i64 {
        if k < self.p {
            1
        } else {
            -1
        }
    }

    pub fn metric_matrix(&self) -> Matrix {
        Matrix::diag((0..self.dim()).map(|k| ExactScalar::from_int(self.metric(k))).collect())
    }

    /// `"8,0"` / `"1,7"`.
    pub fn label(&self) -> String {
        format!("{},{}", self.p, self.q)
    }

    pub fn parse(s: &str) -> Result<Signature> {
        let parsed = s
            .split_once(',')
            .and_then(|(p, q)| Some((p.trim().parse().ok()?, q.trim().parse().ok()?)));
        match parsed {
            Some((8, 0)) => Ok(Signature::EUCLIDEAN),
            Some((1, 7)) => Ok(Signature::LORENTZIAN),
            Some((p, q)) => Err(Error::UnsupportedSignature { p, q }),
            None => Err(Error::Parse(format!("signature {s:?}"))),
        }
    }
}

/// An ordered list of gammas carrying their conventional indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaBasis {
    pub signature: Signature,
    pub gammas: Vec<Matrix>,
    /// Index of `gammas[0]`: 0 for Dirac, Cl(8) and Cl(1,7); 1 for Cl(7).
    pub first_index: usize,
}

impl GammaBasis {
    pub fn gamma(&self, index: usize) -> &Matrix {
        &self.gammas[index - self.first_index]
    }

    pub fn indices(&self) -> std::ops::Range<usize> {
        self.first_index..self.first_index + self.gammas.len()
    }

    pub fn matrix_dim(&self) -> usize {
        self.gammas[0].dim()
    }

    /// The first pair `(i, j)` violating `{Γi, Γj} = 2η_ij I`, if any.
    pub fn clifford_defect(&self) -> Option<(usize, usize)> {
        let n = self.matrix_dim();
        for (a, ga) in self.gammas.iter().enumerate() {
            for (b, gb) in self.gammas.iter().enumerate().skip(a) {
                let expected = if a == b {
                    Matrix::identity(n).scale(&ExactScalar::from_int(2 * self.signature.metric(a)))
                } else {
                    Matrix::zeros(n, n)
                };
                if anticommutator(ga, gb).ok().as_ref() != Some(&expected) {
                    return Some((a + self.first_index, b + self.first_index));
                }
            }
        }
        None
    }

    /// Every gamma conjugated by `s`: `Γ ↦ s Γ s†`.
    pub fn conjugated_by(&self, s: &Matrix) -> GammaBasis {
        let s_dag = s.adjoint();
        GammaBasis {
            signature: self.signature,
            gammas: self.gammas.iter().map(|g| &(s * g) * &s_dag).collect(),
            first_index: self.first_index,
        }
    }
}

fn int(n: i64) -> ExactScalar {
    ExactScalar::from_int(n)
}

fn i_unit() -> ExactScalar {
    ExactScalar::i()
}

pub fn sigma_x() -> Matrix {
    Matrix::from_int_rows(&[[0, 1], [1, 0]])
}

pub fn sigma_y() -> Matrix {
    Matrix::from_rows(vec![
        vec![int(0), -i_unit()],
        vec![i_unit(), int(0)],
    ])
}

pub fn sigma_z() -> Matrix {
    Matrix::from_int_rows(&[[1, 0], [0, -1]])
}

#[derive(Debug, Clone)]
pub struct DiracGammas {
    pub basis: GammaBasis,
    pub gamma5: Matrix,
}

impl DiracGammas {
    pub fn gamma(&self, k: usize) -> &Matrix {
        self.basis.gamma(k)
    }
}

pub fn dirac_gammas() -> DiracGammas {
    let i2 = Matrix::identity(2);
    let z2 = Matrix::zeros(2, 2);
    let g0 = Matrix::from_blocks(&i2, &z2, &z2, &-&i2);
    let mut gammas = vec![g0];
    for s in [sigma_x(), sigma_y(), sigma_z()] {
        gammas.push(Matrix::from_blocks(&z2, &s, &-&s, &z2));
    }
    let product = gammas.iter().skip(1).fold(gammas[0].clone(), |acc, g| &acc * g);
    let gamma5 = product.scale(&i_unit());
    DiracGammas {
        basis: GammaBasis {
            signature: Signature::DIRAC,
            gammas,
            first_index: 0,
        },
        gamma5,
    }
}

/// The seven purely imaginary 8×8 generators `g1..g7`.
pub fn cl7_basis() -> GammaBasis {
    let d = dirac_gammas();
    let g = |k| d.gamma(k);
    let g5 = &d.gamma5;
    let i = i_unit();
    let k = |a: &Matrix, b: &Matrix| kron(a, b).expect("8x8 kron");
    let gammas = vec![
        k(&sigma_z(), &(g(1) * g(3))).scale(&i),
        k(&sigma_z(), g(3)).scale(&i),
        k(&sigma_z(), g(1)).scale(&i),
        -&k(&sigma_y(), &Matrix::identity(4)),
        k(&sigma_x(), &(g5 * g(2))),
        k(&sigma_x(), &(g(0) * g5)).scale(&i),
        k(&sigma_x(), &(g(2) * g(0))),
    ];
    GammaBasis {
        signature: Signature::CL7,
        gammas,
        first_index: 1,
    }
}

/// Real 16×16 basis of Cl(8,0): `Γ0 = [[0, I], [I, 0]]`,
/// `Γμ = −i [[0, gμ], [−gμ, 0]]`.
pub fn cl8_basis() -> GammaBasis {
    let cl7 = cl7_basis();
    let i8 = Matrix::identity(8);
    let z8 = Matrix::zeros(8, 8);
    let mut gammas = vec![Matrix::from_blocks(&z8, &i8, &i8, &z8)];
    let minus_i = -&i_unit();
    for g in &cl7.gammas {
        gammas.push(Matrix::from_blocks(&z8, g, &-g, &z8).scale(&minus_i));
    }
    GammaBasis {
        signature: Signature::EUCLIDEAN,
        gammas,
        first_index: 0,
    }
}

/// The unitary `A = (1/√2)[[I, −iI], [−iI, I]]` taking Cl(1,7) to chiral form.
pub fn chiral_transform() -> Matrix {
    let i8 = Matrix::identity(8);
    let mi = i8.scale(&-&i_unit());
    let half_root = ExactScalar::sqrt(2).inv().expect("√2 ≠ 0");
    Matrix::from_blocks(&i8, &mi, &mi, &i8).scale(&half_root)
}

/// Cl(1,7): `Γ0 = diag(I, −I)`, `Γμ = i [[0, gμ], [gμ, 0]]`, optionally
/// conjugated into the chiral basis by [`chiral_transform`].
pub fn cl17_basis(chiral: bool) -> GammaBasis {
    let cl7 = cl7_basis();
    let i8 = Matrix::identity(8);
    let z8 = Matrix::zeros(8, 8);
    let mut gammas = vec![Matrix::from_blocks(&i8, &z8, &z8, &-&i8)];
    for g in &cl7.gammas {
        gammas.push(Matrix::from_blocks(&z8, g, g, &z8).scale(&i_unit()));
    }
    let basis = GammaBasis {
        signature: Signature::LORENTZIAN,
        gammas,
        first_index: 0,
    };
    if chiral {
        basis.conjugated_by(&chiral_transform())
    } else {
        basis
    }
}

#[derive(Debug, Clone)]
pub struct VolumeElement {
    pub omega: Matrix,
    pub square: Matrix,
    /// Whether ω anticommutes with each gamma, in basis order.
    pub anticommutes: Vec<bool>,
}

impl VolumeElement {
    pub fn squares_to(&self, sign: i64) -> bool {
        let n = self.omega.dim();
        self.square == Matrix::identity(n).scale(&ExactScalar::from_int(sign))
    }

    pub fn anticommutes_with_all(&self) -> bool {
        self.anticommutes.iter().all(|&b| b)
    }

    /// `((I + ω)/2, (I − ω)/2)`.
    pub fn projectors(&self) -> (Matrix, Matrix) {
        let n = self.omega.dim();
        let half = ExactScalar::from_ratio(1, 2);
        let id = Matrix::identity(n);
        (
            (&id + &self.omega).scale(&half),
            (&id - &self.omega).scale(&half),
        )
    }
}

/// `ω = Γ_first Γ_{first+1} ⋯ Γ_last`.
pub fn volume_element(basis: &GammaBasis) -> VolumeElement {
    let omega = basis
        .gammas
        .iter()
        .skip(1)
        .fold(basis.gammas[0].clone(), |acc, g| &acc * g);
    let square = &omega * &omega;
    let anticommutes = basis
        .gammas
        .iter()
        .map(|g| anticommutator(&omega, g).map(|m| m.is_zero()).unwrap_or(false))
        .collect();
    VolumeElement {
        omega,
        square,
        anticommutes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dirac_relations() {
        let d = dirac_gammas();
        assert_eq!(d.basis.clifford_defect(), None);
        assert_eq!(
            anticommutator(d.gamma(0), d.gamma(0)).unwrap(),
            Matrix::identity(4).scale(&int(2))
        );
        assert!(anticommutator(d.gamma(1), d.gamma(2)).unwrap().is_zero());
        assert!((&d.gamma5 * &d.gamma5).is_identity());
    }

    #[test]
    fn gamma5_anticommutes_with_each_gamma() {
        // Oracle: expand the products entry by entry with plain loops.
        let d = dirac_gammas();
        let naive = |a: &Matrix, b: &Matrix| {
            let mut out = Matrix::zeros(4, 4);
            for r in 0..4 {
                for c in 0..4 {
                    let mut acc = ExactScalar::zero();
                    for k in 0..4 {
                        acc += &(a.get(r, k) * b.get(k, c));
                    }
                    out.set(r, c, acc);
                }
            }
            out
        };
        for k in 0..4 {
            let g = d.gamma(k);
            let sum = &naive(&d.gamma5, g) + &naive(g, &d.gamma5);
            assert!(sum.is_zero(), "γ5 vs γ{k}");
        }
    }

    #[test]
    fn g4_is_minus_sigma_y_kron_identity() {
        let cl7 = cl7_basis();
        let expected = -&kron(&sigma_y(), &Matrix::identity(4)).unwrap();
        assert_eq!(cl7.gamma(4), &expected);
    }

    #[test]
    fn g5_is_sigma_x_kron_g5g2() {
        let d = dirac_gammas();
        let expected = kron(&sigma_x(), &(&d.gamma5 * d.gamma(2))).unwrap();
        assert_eq!(cl7_basis().gamma(5), &expected);
    }

    #[test]
    fn cl7_is_imaginary_euclidean() {
        let cl7 = cl7_basis();
        assert!(cl7.gammas.iter().all(Matrix::is_imaginary));
        assert_eq!(cl7.clifford_defect(), None);
        assert_eq!(
            anticommutator(cl7.gamma(2), cl7.gamma(2)).unwrap(),
            Matrix::identity(8).scale(&int(2))
        );
    }

    #[test]
    fn cl7_divided_by_i_is_negative_definite() {
        let cl7 = cl7_basis();
        let minus_i = -&ExactScalar::i();
        let real = GammaBasis {
            signature: Signature { p: 0, q: 7 },
            gammas: cl7.gammas.iter().map(|g| g.scale(&minus_i)).collect(),
            first_index: 1,
        };
        assert!(real.gammas.iter().all(Matrix::is_real));
        assert_eq!(real.clifford_defect(), None);
    }

    #[test]
    fn cl8_is_real_euclidean() {
        let cl8 = cl8_basis();
        assert!(cl8.gammas.iter().all(Matrix::is_real));
        assert_eq!(cl8.clifford_defect(), None);
        assert!(anticommutator(cl8.gamma(0), cl8.gamma(5)).unwrap().is_zero());
        assert_eq!(
            anticommutator(cl8.gamma(3), cl8.gamma(3)).unwrap(),
            Matrix::identity(16).scale(&int(2))
        );
    }

    #[test]
    fn cl17_lorentzian_relations_both_forms() {
        for chiral in [false, true] {
            let b = cl17_basis(chiral);
            assert_eq!(b.clifford_defect(), None, "chiral = {chiral}");
            assert_eq!(
                anticommutator(b.gamma(1), b.gamma(1)).unwrap(),
                Matrix::identity(16).scale(&int(-2))
            );
        }
    }

    #[test]
    fn chiral_transform_is_unitary() {
        let a = chiral_transform();
        assert!((&a * &a.adjoint()).is_identity());
    }

    #[test]
    fn chiral_bilinears_are_block_diagonal() {
        let b = cl17_basis(true);
        for i in 0..8 {
            for j in i + 1..8 {
                let x = b.gamma(i) * b.gamma(j);
                assert!(x.block(0, 8, 8, 8).is_zero(), "({i},{j}) upper-right");
                assert!(x.block(8, 0, 8, 8).is_zero(), "({i},{j}) lower-left");
            }
        }
    }

    #[test]
    fn volume_elements() {
        let e = volume_element(&cl8_basis());
        assert!(e.squares_to(1));
        assert!(e.anticommutes_with_all());
        let (p, m) = e.projectors();
        assert_eq!(&p * &p, p);
        assert_eq!(&m * &m, m);
        assert!((&p + &m).is_identity());

        let l = volume_element(&cl17_basis(false));
        assert!(l.squares_to(-1));
    }

    #[test]
    fn signature_parsing() {
        assert_eq!(Signature::parse("8,0").unwrap(), Signature::EUCLIDEAN);
        assert_eq!(Signature::parse(" 1, 7").unwrap(), Signature::LORENTZIAN);
        assert!(matches!(
            Signature::parse("4,4"),
            Err(Error::UnsupportedSignature { p: 4, q: 4 })
        ));
        assert!(Signature::parse("x").is_err());
    }
}
