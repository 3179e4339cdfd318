use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quasialg::algebra::QuasicrossedOutcome;
use quasialg::cochains::{Cochain2, Cocycle3};
use quasialg::crossed::*;
use quasialg::dga::{clifford, complex, octonions, quaternions, DeformedGroupAlgebra};
use quasialg::gmodules::kf_z3;
use quasialg::groups::FiniteGroup;
use quasialg::linalg::{identity, Vector};
use quasialg::scalars::Scalar;
use quasialg::GradedQuasialgebra;

fn round_trip_algebras() -> Vec<(&'static str, DeformedGroupAlgebra)> {
    vec![
        ("complex", complex()),
        ("quaternions", quaternions()),
        ("octonions", octonions()),
        ("clifford3", clifford(3)),
        ("kf-z3", kf_z3()),
    ]
}

fn basis_units(a: &GradedQuasialgebra) -> Vec<quasialg::Element> {
    a.group().elements().map(|g| a.basis_element(a.component(g)[0])).collect()
}

#[test]
fn extract_then_build_round_trips() {
    for (name, d) in round_trip_algebras() {
        let a = d.algebra();
        let s = extract_system(a, &basis_units(a)).unwrap();
        assert!(s.verify().unwrap().passed(), "{name}");
        let back = s.build_product();
        assert_eq!(back.structure_table(), a.structure_table(), "{name}");
        assert!(back.same_structure(a));
        // with basis units σ = id and α = F
        for g in a.group().elements() {
            for h in a.group().elements() {
                assert_eq!(s.alpha(g, h), &vec![d.cochain().get(g, h).clone()]);
            }
        }
        assert_eq!(d.as_system(), s);
    }
}

#[test]
fn seeded_units_give_isomorphic_products() {
    for (name, d) in round_trip_algebras() {
        let a = d.algebra();
        let QuasicrossedOutcome::Yes(units) = a.is_quasicrossed_product(3) else { panic!("{name}") };
        let s = extract_system(a, &units).unwrap();
        assert!(s.verify().unwrap().passed());
        let pe = are_equivalent_products(a, &s.build_product(), 0).unwrap();
        assert!(pe.verified, "{name}");
    }
}

fn scalar_system(g: &FiniteGroup, m: u32, alpha: impl Fn(usize, usize) -> Scalar) -> QuasicrossedSystem {
    let n = g.order();
    let sigma = vec![identity(m, 1); n];
    let alpha: Vec<Vector> = (0..n * n).map(|i| vec![alpha(i / n, i % n)]).collect();
    QuasicrossedSystem::new(g, AssociativeAlgebra::field(m), Cocycle3::trivial(g, m), sigma, alpha).unwrap()
}

#[test]
fn conductor_changes_the_answer() {
    let g = FiniteGroup::cyclic(2);
    for (m, expect_equivalent) in [(1, false), (4, true)] {
        let twisted = scalar_system(&g, m, |a, b| Scalar::from_int(m, if a == 1 && b == 1 { -1 } else { 1 }));
        let plain = scalar_system(&g, m, |_, _| Scalar::one(m));
        match are_equivalent_systems(&twisted, &plain).unwrap() {
            EquivalenceOutcome::Equivalent(u) => {
                assert!(expect_equivalent);
                assert_eq!(u[1], vec![Scalar::root_of_unity(4, 1)]);
                assert!(is_equivalence_witness(&twisted, &plain, &u));
            }
            EquivalenceOutcome::Inequivalent => assert!(!expect_equivalent),
            other => panic!("{other:?}"),
        }
    }
}

#[test]
fn random_mu8_coboundaries_are_recognized() {
    let g = FiniteGroup::elementary_abelian_2(3);
    let m = 8;
    let f = quasialg::cochains::octonion_cochain().with_conductor(m).unwrap();
    let base = DeformedGroupAlgebra::build(&f).as_system();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..20 {
        let u: Vec<Scalar> =
            g.elements().map(|x| if x == 0 { Scalar::one(m) } else { Scalar::root_of_unity(m, rng.gen_range(0..8)) }).collect();
        let mut perturbed = base.clone();
        for a in g.elements() {
            for b in g.elements() {
                let v = &(&(&u[a] * &u[b]) / &u[g.mul(a, b)]) * &base.alpha(a, b)[0];
                *perturbed.alpha_mut(a, b) = vec![v];
            }
        }
        assert!(perturbed.verify().unwrap().passed());
        let EquivalenceOutcome::Equivalent(w) = are_equivalent_systems(&perturbed, &base).unwrap() else { panic!() };
        assert!(is_equivalence_witness(&perturbed, &base, &w));
        let pe = are_equivalent_products(&perturbed.build_product(), &base.build_product(), 0).unwrap();
        assert!(matches!(pe.outcome, EquivalenceOutcome::Equivalent(_)));
        assert!(pe.verified);
        assert!(pe.isomorphism.is_some());
    }
}

#[test]
fn coboundary_detection() {
    let g = FiniteGroup::cyclic(4);
    let m = 4;
    let u: Vec<Scalar> = (0..4).map(|k| Scalar::root_of_unity(m, k)).collect();
    let delta: Vec<Scalar> = (0..16).map(|i| &(&u[i / 4] * &u[i % 4]) / &u[g.mul(i / 4, i % 4)]).collect();
    let CoboundaryOutcome::Witness(w) = is_coboundary(&g, &delta) else { panic!() };
    for a in 0..4 {
        for b in 0..4 {
            assert_eq!(&(&w[a] * &w[b]) / &w[g.mul(a, b)], delta[a * 4 + b]);
        }
    }
    // δ(1,1) = −1 on ℤ₂ over ℚ has no square root
    let z2 = FiniteGroup::cyclic(2);
    let one = Scalar::one(1);
    let neg = Scalar::from_int(1, -1);
    assert_eq!(is_coboundary(&z2, &[one.clone(), one.clone(), one, neg]), CoboundaryOutcome::No);
    let two = Scalar::from_int(1, 2);
    assert_eq!(is_coboundary(&z2, &[two.clone(), two.clone(), two.clone(), two]), CoboundaryOutcome::Undecided);
}

#[test]
fn incompatible_systems_are_rejected() {
    let a = quaternions().as_system();
    let b = complex().as_system();
    assert!(matches!(are_equivalent_systems(&a, &b), Err(CrossedError::IncompatibleSystems(_))));
    // ℍ and 𝕂ℤ₂² share G, B and φ ≡ 1; F for ℍ is not symmetric, so it is no coboundary
    let f = Cochain2::trivial(&FiniteGroup::elementary_abelian_2(2), 1);
    let c = DeformedGroupAlgebra::build(&f).as_system();
    assert_eq!(are_equivalent_systems(&a, &c).unwrap(), EquivalenceOutcome::Inequivalent);
    let trivial8 = DeformedGroupAlgebra::build(&Cochain2::trivial(&FiniteGroup::elementary_abelian_2(3), 1)).as_system();
    assert!(matches!(are_equivalent_systems(&octonions().as_system(), &trivial8), Err(CrossedError::IncompatibleSystems(_))));
}

#[test]
fn broken_systems_report_witnesses() {
    let mut s = quaternions().as_system();
    *s.alpha_mut(1, 2) = vec![Scalar::from_int(1, 5)];
    let r = s.verify().unwrap();
    assert!(!r.twisted_cocycle.is_empty());
    assert!(r.normalization.is_empty());
    let mut t = quaternions().as_system();
    *t.alpha_mut(0, 1) = vec![Scalar::from_int(1, -1)];
    assert_eq!(t.verify().unwrap().normalization, vec![1]);
    let mut z = quaternions().as_system();
    *z.alpha_mut(1, 1) = vec![Scalar::zero(1)];
    assert!(matches!(z.verify(), Err(CrossedError::NonUnitAlpha(1, 1))));
}

#[test]
fn matrix_base_systems() {
    // B = Mat₂(ℚ), G = ℤ₂, σ(1) = conjugation by diag(1,−1), α ≡ 1
    let g = FiniteGroup::cyclic(2);
    let b = AssociativeAlgebra::matrix_algebra(2, 1);
    assert_eq!(b.dim(), 4);
    let one = Scalar::one(1);
    let neg = Scalar::from_int(1, -1);
    let z = Scalar::zero(1);
    let conj = vec![
        vec![one.clone(), z.clone(), z.clone(), z.clone()],
        vec![z.clone(), neg.clone(), z.clone(), z.clone()],
        vec![z.clone(), z.clone(), neg.clone(), z.clone()],
        vec![z.clone(), z.clone(), z.clone(), one.clone()],
    ];
    assert!(b.is_automorphism(&conj));
    let sigma = vec![identity(1, 4), conj];
    let alpha = vec![b.one(); 4];
    let s = QuasicrossedSystem::new(&g, b.clone(), Cocycle3::trivial(&g, 1), sigma, alpha).unwrap();
    let c = s.build_product();
    assert_eq!(c.dim(), 8);
    assert!(c.verify_quasiassociativity().passed());
    let QuasicrossedOutcome::Yes(units) = c.is_quasicrossed_product(0) else { panic!() };
    let again = extract_system(&c, &units).unwrap();
    assert!(again.verify().unwrap().passed());
    let x = b.basis(1);
    assert_eq!(b.inverse(&x), None);
    assert_eq!(b.inverse(&b.one()), Some(b.one()));
}

#[test]
fn strategy_registry() {
    let reg = EquivalenceRegistry::default();
    assert!(!reg.names().is_empty());
    let mut custom = EquivalenceRegistry::empty();
    for name in reg.names() {
        let _ = reg.get(name).unwrap();
    }
    custom.register(Box::new(IdentityStrategy)).unwrap();
    assert!(custom.register(Box::new(IdentityStrategy)).is_err());
    let s = quaternions().as_system();
    let (outcome, name) = are_equivalent_systems_with(&custom, &s, &s).unwrap();
    assert!(matches!(outcome, EquivalenceOutcome::Equivalent(_)));
    assert_eq!(name, custom.names()[0]);
}
