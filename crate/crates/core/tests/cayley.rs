use quasialg::cayley::*;
use quasialg::cochains::{clifford_cochain, coboundary_of, complex_cochain, octonion_cochain, quaternion_cochain, Cochain2};
use quasialg::dga::{complex, octonions, quaternions, DeformedGroupAlgebra};
use quasialg::gmodules::kf_z3;
use quasialg::groups::FiniteGroup;
use quasialg::scalars::Scalar;
use quasialg::GradedQuasialgebra;

fn minus_one() -> Scalar {
    Scalar::from_int(1, -1)
}

/// Structure tables agree after relabelling the doubled basis by Ḡ.
fn same_after_relabel(doubled: &GradedQuasialgebra, kfg: &GradedQuasialgebra) -> bool {
    let perm = doubled_basis_to_group(doubled.dim() / 2);
    (0..doubled.dim()).all(|p| {
        (0..doubled.dim()).all(|q| {
            let ours: Vec<(usize, Scalar)> = doubled.mul_basis(p, q).terms().map(|(k, c)| (perm[k], c.clone())).collect();
            let theirs: Vec<(usize, Scalar)> = kfg.mul_basis(perm[p], perm[q]).terms().map(|(k, c)| (k, c.clone())).collect();
            ours == theirs
        })
    })
}

#[test]
fn cochain_chain_reproduces_quaternions_and_octonions() {
    let c = complex_cochain();
    let (g4, f4, s4) = cd_double_cochain(&c, &conjugation_signs(c.group(), 1), &minus_one()).unwrap();
    assert_eq!(g4.describe(), "Z2 x Z2");
    assert_eq!(f4.values().len(), 16);
    assert_eq!(f4, quaternion_cochain());
    assert_eq!(s4, conjugation_signs(&g4, 1));
    let (g8, f8, _) = cd_double_cochain(&f4, &s4, &minus_one()).unwrap();
    assert_eq!(f8.values().len(), 64);
    assert_eq!(f8, octonion_cochain());
    assert_eq!(g8.order(), 8);
}

#[test]
fn algebra_doubling_matches_cochain_doubling() {
    for f in [complex_cochain(), quaternion_cochain()] {
        let a = DeformedGroupAlgebra::build(&f);
        let s = conjugation_signs(f.group(), 1);
        let doubled = cd_double_algebra(&a, &Involution::diagonal(&s), &minus_one()).unwrap();
        assert!(doubled.input_report.is_strong());
        let (_, fbar, _) = cd_double_cochain(&f, &s, &minus_one()).unwrap();
        let kfg = DeformedGroupAlgebra::build(&fbar);
        assert!(same_after_relabel(&doubled.algebra, kfg.algebra()));
        assert_eq!(doubled.algebra.cocycle(), kfg.cocycle());
        assert!(doubled.algebra.verify_quasiassociativity().passed());
        let report = alpha_doubling_check(&f, &s, &minus_one()).unwrap();
        assert_eq!(report.pairs_checked, 4 * f.group().order().pow(2));
        assert!(report.failures.is_empty());
    }
}

#[test]
fn doubled_involution_is_strong_on_the_result() {
    let h = quaternions();
    let s = conjugation_signs(h.group(), 1);
    let d = cd_double_algebra(&h, &Involution::diagonal(&s), &minus_one()).unwrap();
    assert!(is_strong_involution(&d.algebra, &d.involution).unwrap().is_strong());
}

#[test]
fn conjugation_is_strong_on_composition_algebras() {
    for a in [complex(), quaternions(), octonions()] {
        let s = conjugation_signs(a.group(), 1);
        assert!(is_strong_involution(&a, &Involution::diagonal(&s)).unwrap().is_strong());
    }
}

#[test]
fn identity_on_quaternions_is_not_strong() {
    let h = quaternions();
    let r = is_strong_involution(&h, &Involution::identity(&h)).unwrap();
    assert!(!r.is_antiautomorphism());
    assert!(!r.is_strong());
    // i + ς(i) = 2i is not a scalar
    assert!(r.sum.contains(&h.index_of("e10").unwrap()));
    let f = quaternion_cochain();
    assert!(matches!(
        cd_double_cochain(&f, &vec![Scalar::one(1); 4], &minus_one()),
        Err(CayleyError::NotStrong(_))
    ));
}

#[test]
fn sign_involution_on_kf_z3() {
    // s(e) = 1, s(e₁) = s(e₂) = −1
    let a = kf_z3();
    let s = vec![Scalar::one(1), minus_one(), minus_one()];
    let r = is_strong_involution(&a, &Involution::diagonal(&s)).unwrap();
    assert!(!r.is_antiautomorphism());
    assert!(r.antiautomorphism.contains(&(1, 1)));
    assert!(!r.norm.is_empty());
}

#[test]
fn errors() {
    let h = quaternions();
    let bad = Involution::diagonal(&[Scalar::one(1), Scalar::from_int(1, 2), Scalar::one(1), Scalar::one(1)]);
    assert!(matches!(is_strong_involution(&h, &bad), Err(CayleyError::NotInvolution(1))));
    assert!(matches!(is_strong_involution(&h, &Involution::diagonal(&[Scalar::one(1)])), Err(CayleyError::WrongSize)));
    let s = conjugation_signs(h.group(), 1);
    assert!(matches!(cd_double_algebra(&h, &Involution::diagonal(&s), &Scalar::zero(1)), Err(CayleyError::ZeroEpsilon)));
    assert!(matches!(cd_double_cochain(&clifford_cochain(2), &s[..3], &minus_one()), Err(CayleyError::WrongSize)));
    let s3 = vec![vec![0, 1, 2, 3, 4, 5], vec![1, 0, 4, 5, 2, 3], vec![2, 5, 0, 4, 3, 1], vec![3, 4, 5, 0, 1, 2], vec![4, 3, 1, 2, 5, 0], vec![5, 2, 3, 1, 0, 4]];
    let g = FiniteGroup::from_table(s3, 0).unwrap();
    let f = Cochain2::trivial(&g, 1);
    assert!(matches!(cd_double_cochain(&f, &conjugation_signs(&g, 1), &minus_one()), Err(CayleyError::NotAbelian)));
}

#[test]
fn doubling_octonions_gives_sedenions() {
    let o = octonions();
    let s = conjugation_signs(o.group(), 1);
    let d = cd_double_algebra(&o, &Involution::diagonal(&s), &minus_one()).unwrap();
    assert_eq!(d.algebra.dim(), 16);
    assert!(d.algebra.verify_quasiassociativity().passed());
    let (_, fbar, _) = cd_double_cochain(&octonion_cochain(), &s, &minus_one()).unwrap();
    assert_eq!(*d.algebra.cocycle(), coboundary_of(&fbar));
    assert!(same_after_relabel(&d.algebra, DeformedGroupAlgebra::build(&fbar).algebra()));
}
