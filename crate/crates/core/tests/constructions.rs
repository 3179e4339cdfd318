use quasialg::algebra::QuasicrossedOutcome;
use quasialg::cochains::{antiassociative_cocycle, cyclic_cocycle, z3_cocycle, Cocycle3};
use quasialg::constructions::*;
use quasialg::groups::FiniteGroup;
use quasialg::scalars::Scalar;
use quasialg::GradedQuasialgebra;

fn z3(alpha: i64, beta: i64) -> Cocycle3 {
    z3_cocycle(&Scalar::from_int(3, alpha), &Scalar::from_int(3, beta), &Scalar::root_of_unity(3, 1)).unwrap()
}

fn is_identity(a: &GradedQuasialgebra, one: &quasialg::Element) -> bool {
    (0..a.dim()).all(|i| {
        let b = a.basis_element(i);
        a.mul(one, &b) == b && a.mul(&b, one) == b
    })
}

#[test]
fn trivial_cocycle_gives_ordinary_matrices() {
    for n in 1..=4u32 {
        let a = deformed_matrices(n as usize, &Cocycle3::trivial(&FiniteGroup::cyclic(n), 1)).unwrap();
        let n = n as usize;
        for p in 0..n * n {
            for q in 0..n * n {
                let (i, k, k2, j) = (p / n, p % n, q / n, q % n);
                let got = a.mul_basis(p, q);
                if k == k2 {
                    assert_eq!(got, a.basis_element(i * n + j));
                } else {
                    assert!(got.is_zero());
                }
            }
        }
        let diag: Vec<_> = (0..n).map(|i| (i * n + i, Scalar::one(1))).collect();
        assert_eq!(a.one(), a.element(&diag));
    }
}

#[test]
fn deformed_matrices_are_quasiassociative() {
    for phi in [z3(1, 1), z3(2, -1), z3(-3, 5)] {
        let a = deformed_matrices(3, &phi).unwrap();
        assert!(a.verify_quasiassociativity().passed());
        assert!(is_identity(&a, &a.one()));
        // E_ab sits in degree b − a
        assert_eq!(a.degree(a.index_of("E12").unwrap()), 1);
        assert_eq!(a.degree(a.index_of("E31").unwrap()), 1);
        assert_eq!(a.degree(a.index_of("E13").unwrap()), 2);
    }
    for n in 2..=5u32 {
        for k in 0..n as i64 {
            let a = deformed_matrices(n as usize, &cyclic_cocycle(n, k)).unwrap();
            assert!(a.verify_quasiassociativity().passed(), "n={n} k={k}");
            assert!(is_identity(&a, &a.one()));
        }
    }
}

#[test]
fn deformed_identity_is_not_the_identity_matrix() {
    let w = Scalar::root_of_unity(3, 1);
    let one = Scalar::one(3);
    let a = deformed_matrices(3, &z3(1, 1)).unwrap();
    let expected = a.element(&[(0, one.clone()), (4, -(&one + &w)), (8, w.clone())]);
    assert!(is_identity(&a, &expected));
    assert_eq!(a.one(), expected);
    let b = deformed_matrices(3, &z3(2, -1)).unwrap();
    let half = Scalar::from_ratio(3, -1, 2);
    let expected = b.element(&[(0, one.clone()), (4, &half + &(&half * &w)), (8, &Scalar::from_int(3, 2) * &w)]);
    assert!(is_identity(&b, &expected));
}

#[test]
fn triangular_is_not_quasicrossed_but_full_is() {
    let phi = z3(1, 1);
    let t = triangular_deformed(3, &phi).unwrap();
    assert_eq!(t.dim(), 6);
    assert!(t.verify_quasiassociativity().passed());
    match t.is_quasicrossed_product(0) {
        QuasicrossedOutcome::NoFound { degree, exact } => {
            assert!(exact);
            assert_eq!(t.component(degree).len(), 1);
        }
        other => panic!("{other:?}"),
    }
    assert!(!t.is_strongly_graded());
    let m = deformed_matrices(3, &phi).unwrap();
    let QuasicrossedOutcome::Yes(units) = m.is_quasicrossed_product(0) else { panic!() };
    for (g, u) in m.group().elements().zip(&units) {
        assert_eq!(m.degree_of(u).unwrap(), g);
        let l = m.left_inverse(u).unwrap();
        assert_eq!(m.mul(&l, u), m.one());
    }
}

#[test]
fn chessboard() {
    let a = chessboard_matrices(1, 1, 1).unwrap();
    assert_eq!(a.names(), &["E11", "E12", "E21", "E22"]);
    assert_eq!(a.degrees(), &[0, 1, 1, 0]);
    assert!(a.verify_quasiassociativity().passed());
    assert_eq!(*a.cocycle(), antiassociative_cocycle(1));
    // E21·E12 = −E22
    assert_eq!(a.mul_basis(2, 1), a.basis_element(3).neg());
    assert_eq!(a.mul_basis(1, 2), a.basis_element(0));
    let big = chessboard_matrices(2, 2, 1).unwrap();
    assert_eq!(big.dim(), 16);
    assert!(big.verify_quasiassociativity().passed());
    assert!(is_identity(&big, &big.one()));
    assert!(chessboard_matrices(0, 2, 1).is_err());
}

#[test]
fn matrices_over_delta() {
    // σ = conjugation on ℚ(i), a = i: a/σ(a) = −1, so Δ is antiassociative
    let anti = DeltaParams { conductor: 4, s: -1, a: Scalar::root_of_unity(4, 1) };
    let delta = antiassoc_division(&anti).unwrap();
    assert_eq!(delta.dim(), 4);
    assert_eq!(delta.conductor(), 1);
    assert_eq!(*delta.cocycle(), antiassociative_cocycle(1));
    assert!(delta.verify_quasiassociativity().passed());
    let mat = mat_over_delta(2, &anti).unwrap();
    assert_eq!(mat.dim(), 16);
    assert!(mat.verify_quasiassociativity().passed());
    assert!(is_identity(&mat, &mat.one()));
    // σ = id, a = 1: associative
    let plain = DeltaParams { conductor: 3, s: 1, a: Scalar::one(3) };
    let d = antiassoc_division(&plain).unwrap();
    assert_eq!(d.dim(), 2);
    assert!(d.cocycle().is_trivial());
    // every nonzero homogeneous element of Δ is invertible
    for i in 0..delta.dim() {
        assert!(delta.is_unit(&delta.basis_element(i)).unwrap());
    }
    let bad_s = DeltaParams { conductor: 5, s: 2, a: Scalar::one(5) };
    assert!(mat_over_delta(1, &bad_s).is_err());
    let zero = DeltaParams { conductor: 4, s: -1, a: Scalar::zero(4) };
    assert!(matches!(mat_over_delta(1, &zero), Err(ConstructionError::ZeroParameter)));
    // a/σ(a) = ζ₈² is not ±1
    let bad_a = DeltaParams { conductor: 8, s: -1, a: Scalar::root_of_unity(8, 1) };
    assert!(mat_over_delta(1, &bad_a).is_err());
}

#[test]
fn size_and_group_checks() {
    assert!(matches!(deformed_matrices(0, &z3(1, 1)), Err(ConstructionError::ZeroSize)));
    assert!(matches!(deformed_matrices(4, &z3(1, 1)), Err(ConstructionError::WrongGroup(4))));
}
