use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use quasialg::algebra::{AlgebraError, QuasicrossedOutcome};
use quasialg::cochains::{cyclic_cocycle, Cocycle3};
use quasialg::constructions::{chessboard_matrices, deformed_matrices};
use quasialg::dga::{clifford, octonions, quaternions};
use quasialg::groups::FiniteGroup;
use quasialg::linalg::mat_mul;
use quasialg::scalars::Scalar;
use quasialg::{Element, GradedQuasialgebra};

fn unit_suite_algebras() -> Vec<(&'static str, GradedQuasialgebra)> {
    vec![
        ("quaternions", quaternions().algebra().clone()),
        ("octonions", octonions().algebra().clone()),
        ("clifford3", clifford(3).algebra().clone()),
        ("m4", deformed_matrices(4, &cyclic_cocycle(4, 1)).unwrap()),
        ("chessboard22", chessboard_matrices(2, 2, 1).unwrap()),
    ]
}

fn sample_units(a: &GradedQuasialgebra, per_degree: usize, seed: u64) -> Vec<(usize, Element)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for g in a.group().elements() {
        let mut found = 0;
        for _ in 0..8 * per_degree {
            if found == per_degree {
                break;
            }
            let u = a.random_homogeneous(g, &mut rng);
            if !u.is_zero() && a.is_unit(&u).unwrap() {
                out.push((g, u));
                found += 1;
            }
        }
    }
    out
}

#[test]
fn unit_laws() {
    let mut total = 0;
    for (name, a) in unit_suite_algebras() {
        let grp = a.group().clone();
        let phi = a.cocycle().clone();
        let inv = |g| grp.inverse(g);
        let one = a.one();
        let units = sample_units(&a, 6, 7);
        total += units.len();
        for (g, u) in &units {
            let (g, l, r) = (*g, a.left_inverse(u).unwrap(), a.right_inverse(u).unwrap());
            // the defining equations, checked by multiplication
            assert_eq!(a.mul(&l, u), one, "{name}");
            assert_eq!(a.mul(u, &r), one, "{name}");
            assert_eq!(a.degree_of(&l).unwrap(), inv(g));
            let c = phi.get(inv(g), g, inv(g));
            assert_eq!(r, l.scale(c), "{name}: u_R⁻¹ = φ(g⁻¹,g,g⁻¹) u_L⁻¹");
            // the four identities for inverses of inverses
            assert_eq!(a.right_inverse(&l).unwrap(), *u);
            assert_eq!(a.left_inverse(&l).unwrap(), u.scale(c));
            assert_eq!(a.left_inverse(&r).unwrap(), *u);
            assert_eq!(a.right_inverse(&r).unwrap(), u.scale(&c.inv()));
            if g == grp.identity() {
                assert_eq!(l, r, "{name}: degree-e units have one inverse");
            }
            assert_eq!(a.right_multiplication_rank(u).unwrap(), a.component(grp.identity()).len());
            assert_eq!(a.component(g).len(), a.component(grp.identity()).len());
        }
        for (g, u) in units.iter().take(6) {
            for (h, w) in units.iter().step_by(2).take(6) {
                let (g, h) = (*g, *h);
                let uw = a.mul(u, w);
                let gh = grp.mul(g, h);
                let (ul, ur, wl, wr) =
                    (a.left_inverse(u).unwrap(), a.right_inverse(u).unwrap(), a.left_inverse(w).unwrap(), a.right_inverse(w).unwrap());
                let cl = phi.get(inv(g), g, h) / phi.get(inv(h), inv(g), gh);
                assert_eq!(a.left_inverse(&uw).unwrap(), a.mul(&wl, &ul).scale(&cl), "{name}: (uw)_L⁻¹");
                let cr = phi.get(h, inv(h), inv(g)) / phi.get(g, h, grp.mul(inv(h), inv(g)));
                assert_eq!(a.right_inverse(&uw).unwrap(), a.mul(&wr, &ur).scale(&cr), "{name}: (uw)_R⁻¹");
                let composed = mat_mul(&a.mu_matrix(u).unwrap(), &a.mu_matrix(w).unwrap());
                assert_eq!(a.mu_matrix(&uw).unwrap(), composed, "{name}: μ(uw) = μ(u)μ(w)");
            }
        }
    }
    assert!(total >= 100, "only {total} units sampled");
}

/// Σ x_i², the Euclidean norm in the group basis.
fn norm(a: &GradedQuasialgebra, x: &Element) -> Scalar {
    a.to_vector(x).iter().fold(Scalar::zero(a.conductor()), |acc, c| &acc + &(c * c))
}

fn int_element(a: &GradedQuasialgebra, coeffs: &[i64]) -> Element {
    let v: Vec<Scalar> = coeffs.iter().map(|&c| Scalar::from_int(a.conductor(), c)).collect();
    a.from_vector(&v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    // Hurwitz: ℍ and 𝕆 are composition algebras and 𝕆 is alternative.
    #[test]
    fn octonions_compose(x in prop::collection::vec(-3i64..=3, 8), y in prop::collection::vec(-3i64..=3, 8)) {
        let o = octonions();
        let a = o.algebra();
        let (x, y) = (int_element(a, &x), int_element(a, &y));
        prop_assert_eq!(norm(a, &a.mul(&x, &y)), &norm(a, &x) * &norm(a, &y));
        prop_assert_eq!(a.mul(&a.mul(&x, &x), &y), a.mul(&x, &a.mul(&x, &y)));
        prop_assert_eq!(a.mul(&a.mul(&y, &x), &x), a.mul(&y, &a.mul(&x, &x)));
    }

    #[test]
    fn quaternions_compose_and_associate(x in prop::collection::vec(-3i64..=3, 4), y in prop::collection::vec(-3i64..=3, 4), z in prop::collection::vec(-3i64..=3, 4)) {
        let q = quaternions();
        let a = q.algebra();
        let (x, y, z) = (int_element(a, &x), int_element(a, &y), int_element(a, &z));
        prop_assert_eq!(norm(a, &a.mul(&x, &y)), &norm(a, &x) * &norm(a, &y));
        prop_assert_eq!(a.mul(&a.mul(&x, &y), &z), a.mul(&x, &a.mul(&y, &z)));
    }

    #[test]
    fn quasiassociativity_on_random_homogeneous(seed in 0u64..1000) {
        let a = deformed_matrices(3, &cyclic_cocycle(3, 1)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = a.group().clone();
        let (x, y, z) = (1, 2, 2);
        let (u, v, w) = (a.random_homogeneous(x, &mut rng), a.random_homogeneous(y, &mut rng), a.random_homogeneous(z, &mut rng));
        let lhs = a.mul(&a.mul(&u, &v), &w);
        let rhs = a.mul(&u, &a.mul(&v, &w)).scale(a.cocycle().get(x, y, z));
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(g.mul(x, g.mul(y, z)), 2);
    }
}

#[test]
fn basic_operations() {
    let h = quaternions();
    let a = h.algebra();
    assert_eq!(a.dim(), 4);
    assert_eq!(a.names(), &["e00", "e01", "e10", "e11"]);
    let i = a.basis_element(a.index_of("e10").unwrap());
    let j = a.basis_element(a.index_of("e01").unwrap());
    let k = a.mul(&i, &j);
    assert_eq!(a.mul(&i, &i), a.one().neg());
    assert_eq!(a.mul(&j, &i), k.neg());
    assert_eq!(a.degree_of(&k).unwrap(), 3);
    assert!(matches!(a.degree_of(&i.add(&j)), Err(AlgebraError::NotHomogeneous)));
    assert_eq!(a.homogeneous_components(&i.add(&j)).len(), 2);
    assert!(a.is_unit(&i.add(&j)).is_err());
    assert!(a.left_inverse(&a.zero()).is_err());
    let other = octonions();
    assert!(a.multiply(&i, &other.algebra().one()).is_err());
}

#[test]
fn construction_rejects_bad_input() {
    let g = FiniteGroup::cyclic(2);
    let phi = Cocycle3::trivial(&g, 1);
    let one = Scalar::one(1);
    let names = vec!["a".to_string(), "b".to_string()];
    // a·a = b violates the grading when both have degree 1
    let table = vec![vec![(0, one.clone())], vec![], vec![], vec![(1, one.clone())]];
    let bad = GradedQuasialgebra::new(&g, names.clone(), vec![1, 1], table, phi.clone());
    assert!(bad.is_err());
    let wrong_degree = GradedQuasialgebra::new(&g, names, vec![0, 5], vec![vec![]; 4], phi);
    assert!(wrong_degree.is_err());
}

#[test]
fn quasicrossed_and_strong_grading() {
    for (name, a) in unit_suite_algebras() {
        match a.is_quasicrossed_product(0) {
            QuasicrossedOutcome::Yes(units) => {
                assert!(a.is_strongly_graded(), "{name}");
                for (g, u) in a.group().elements().zip(&units) {
                    assert_eq!(a.degree_of(u).unwrap(), g);
                    assert!(a.is_unit(u).unwrap());
                }
            }
            other => panic!("{name}: {other:?}"),
        }
    }
}
