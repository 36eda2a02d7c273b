use proptest::prelude::*;

use triality_core::clifford::Signature;
use triality_core::linalg::{kernel_basis, rank, rref, structure_constants, SpanSolver};
use triality_core::matrix::commutator;
use triality_core::representations::{all_bases, LieBasis};
use triality_core::triality::{apply_outer, OuterOp};
use triality_core::{ExactScalar, Matrix};

fn rational() -> impl Strategy<Value = ExactScalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| ExactScalar::from_ratio(n, d))
}

/// A field element with every radical coordinate populated at random.
fn scalar() -> impl Strategy<Value = ExactScalar> {
    prop::array::uniform8(rational()).prop_map(|c| {
        let basis = [
            ExactScalar::one(),
            ExactScalar::sqrt(2),
            ExactScalar::sqrt(3),
            ExactScalar::sqrt(6),
        ];
        let mut x = ExactScalar::zero();
        for (k, b) in basis.iter().enumerate() {
            x = &x + &(&c[k] * b);
            x = &x + &(&(&c[k + 4] * b) * &ExactScalar::i());
        }
        x
    })
}

fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-3i64..=3, rows * cols).prop_map(move |v| {
        Matrix::from_flat(rows, cols, v.into_iter().map(ExactScalar::from_int).collect())
    })
}

fn euclidean() -> [LieBasis; 3] {
    all_bases(Signature::EUCLIDEAN).unwrap()
}

fn combination(coeffs: &[i64], gens: &[Matrix]) -> Matrix {
    let mut m = Matrix::zeros(8, 8);
    for (c, g) in coeffs.iter().zip(gens) {
        if *c != 0 {
            m = &m + &g.scale(&ExactScalar::from_int(*c));
        }
    }
    m
}

proptest! {
    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn scalar_json_round_trip(a in scalar()) {
        let text = serde_json::to_string(&a).unwrap();
        let back: ExactScalar = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn rref_is_idempotent_and_kernel_is_exact(m in small_matrix(5, 7)) {
        let once = rref(&m);
        let twice = rref(&once.matrix);
        prop_assert_eq!(&once.matrix, &twice.matrix);
        prop_assert_eq!(&once.pivots, &twice.pivots);
        let kernel = kernel_basis(&m);
        prop_assert_eq!(rank(&m) + kernel.len(), 7);
        for v in &kernel {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(ExactScalar::is_zero));
        }
    }

    #[test]
    fn jacobi_identity(x in small_matrix(8, 8), y in small_matrix(8, 8), z in small_matrix(8, 8)) {
        let c = |a: &Matrix, b: &Matrix| commutator(a, b).unwrap();
        let sum = &(&c(&x, &c(&y, &z)) + &c(&y, &c(&z, &x))) + &c(&z, &c(&x, &y));
        prop_assert!(sum.is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Triality is a homomorphism: τ[X, Y] = [τX, τY] on random elements.
    #[test]
    fn triality_preserves_brackets(
        a in prop::collection::vec(-2i64..=2, 28),
        b in prop::collection::vec(-2i64..=2, 28),
    ) {
        let [v, l, _] = euclidean();
        let hv = apply_outer(&OuterOp::h(), &v).unwrap();
        prop_assert_eq!(&hv, &l);
        let (x, y) = (combination(&a, v.generators()), combination(&b, v.generators()));
        let solver = SpanSolver::new(v.generators()).unwrap();
        let coeffs = solver.solve(&commutator(&x, &y).unwrap()).unwrap();
        let mut image = Matrix::zeros(8, 8);
        for (c, g) in coeffs.iter().zip(l.generators()) {
            image = &image + &g.scale(c);
        }
        let lhs = commutator(
            &combination(&a, l.generators()),
            &combination(&b, l.generators()),
        )
        .unwrap();
        prop_assert_eq!(image, lhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    /// Conjugating a basis by an invertible matrix leaves its structure
    /// constants unchanged.
    #[test]
    fn structure_constants_survive_conjugation(lower in prop::collection::vec(-2i64..=2, 28)) {
        let mut s = Matrix::identity(8);
        let mut it = lower.into_iter();
        for r in 0..8 {
            for c in 0..r {
                s.set(r, c, ExactScalar::from_int(it.next().unwrap()));
            }
        }
        let [v, _, _] = euclidean();
        let conjugated = v.conjugated_by(&s).unwrap();
        let f = structure_constants(v.generators()).unwrap();
        let g = structure_constants(conjugated.generators()).unwrap();
        prop_assert_eq!(f.first_mismatch(&g), None);
    }
}
