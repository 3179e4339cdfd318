use proptest::prelude::*;
use quasialg::cochains::*;
use quasialg::groups::FiniteGroup;
use quasialg::scalars::Scalar;

fn bits(g: &FiniteGroup, x: usize) -> Vec<u32> {
    g.residues(x).unwrap()
}

fn pm(e: u32) -> Scalar {
    Scalar::from_int(1, if e.is_multiple_of(2) { 1 } else { -1 })
}

/// Cocycle identity checked straight from the definition, no shared code.
fn oracle_is_cocycle(phi: &Cocycle3) -> bool {
    let g = phi.group();
    let e = g.identity();
    let m = |a, b| g.mul(a, b);
    g.elements().all(|a| {
        g.elements().all(|b| {
            phi.get(a, e, b).is_one()
                && g.elements().all(|c| {
                    g.elements().all(|d| {
                        phi.get(b, c, d) * phi.get(a, m(b, c), d) * phi.get(a, b, c)
                            == phi.get(a, b, m(c, d)) * phi.get(m(a, b), c, d)
                    })
                })
        })
    })
}

#[test]
fn cochain_tables_follow_the_formulas() {
    let q = quaternion_cochain();
    let g = q.group().clone();
    for a in g.elements() {
        for b in g.elements() {
            let (x, y) = (bits(&g, a), bits(&g, b));
            assert_eq!(*q.get(a, b), pm(x[0] * y[0] + (x[0] + x[1]) * y[1]));
        }
    }
    let o = octonion_cochain();
    let g = o.group().clone();
    for a in g.elements() {
        for b in g.elements() {
            let (x, y) = (bits(&g, a), bits(&g, b));
            let upper = x[0] * (y[0] + y[1] + y[2]) + x[1] * (y[1] + y[2]) + x[2] * y[2];
            let cubic = y[0] * x[1] * x[2] + x[0] * y[1] * x[2] + x[0] * x[1] * y[2];
            assert_eq!(*o.get(a, b), pm(upper + cubic));
        }
    }
    let c = complex_cochain();
    assert_eq!(c.values(), &[pm(0), pm(0), pm(0), pm(1)]);
    assert_eq!(clifford_cochain(2), quaternion_cochain());
}

#[test]
fn octonion_coboundary_is_a_cocycle() {
    let phi = coboundary_of(&octonion_cochain());
    let report = verify_cocycle(phi.group(), phi.values()).unwrap();
    assert_eq!(report.quadruples_checked, 4096);
    assert!(report.passed());
    assert!(oracle_is_cocycle(&phi));
    assert!(cocycle_identities_check(&phi).is_empty());
    // 𝕆 is not associative, so its coboundary is nontrivial; ℍ is associative
    assert!(!phi.is_trivial());
    assert!(coboundary_of(&quaternion_cochain()).is_trivial());
    // φ(e₁,e₂,e₃) = −1 on the standard basis of ℤ₂³
    assert_eq!(*phi.get(4, 2, 1), Scalar::from_int(1, -1));
}

#[test]
fn z3_family() {
    let m = 3;
    let w = Scalar::root_of_unity(m, 1);
    let (a, b) = (Scalar::from_int(m, 2), Scalar::from_ratio(m, -1, 3));
    let phi = z3_cocycle(&a, &b, &w).unwrap();
    assert!(oracle_is_cocycle(&phi));
    assert!(cocycle_identities_check(&phi).is_empty());
    assert_eq!(*phi.get(1, 1, 1), a);
    assert_eq!(*phi.get(1, 1, 2), b);
    assert_eq!(*phi.get(1, 2, 1), (&w * &a).inv());
    assert_eq!(*phi.get(2, 2, 2), &w / &a);
    assert!(z3_cocycle(&a, &b, &Scalar::from_int(m, 2)).is_err());
    assert!(z3_cocycle(&Scalar::zero(m), &b, &w).is_err());
}

#[test]
fn broken_tables_are_reported() {
    let g = FiniteGroup::cyclic(3);
    let w = Scalar::root_of_unity(3, 1);
    let mut values = z3_cocycle_values(&Scalar::one(3), &Scalar::one(3), &w);
    values[5] = Scalar::from_int(3, 7);
    let r = verify_cocycle(&g, &values).unwrap();
    assert!(!r.passed());
    assert!(!r.violations.is_empty());
    assert!(Cocycle3::new(&g, values).is_err());
    let mut normal = vec![Scalar::one(1); 8];
    normal[5] = Scalar::from_int(1, -1); // φ(1,0,1)
    let r = verify_cocycle(&FiniteGroup::cyclic(2), &normal).unwrap();
    assert_eq!(r.normalization.len(), 1);
    assert!(verify_cocycle(&g, &[Scalar::one(3)]).is_err());
    assert!(Cochain2::new(&g, vec![Scalar::zero(3); 9]).is_err());
}

#[test]
fn cyclic_and_antiassociative() {
    for n in 2..=5 {
        for k in 0..n as i64 {
            assert!(oracle_is_cocycle(&cyclic_cocycle(n, k)));
        }
    }
    let anti = antiassociative_cocycle(1);
    assert!(oracle_is_cocycle(&anti));
    assert_eq!(anti.values().iter().filter(|v| !v.is_one()).count(), 1);
}

fn cochain_on(factors: Vec<u32>, m: u32) -> impl Strategy<Value = Cochain2> {
    let g = FiniteGroup::product_of_cyclic(&factors).unwrap();
    let n = g.order();
    prop::collection::vec((0i64..8, 1i64..=3), n * n).prop_map(move |raw| {
        let e = g.identity();
        Cochain2::from_fn(&g, |a, b| {
            if a == e || b == e {
                return Scalar::one(m);
            }
            let (k, c) = raw[a * n + b];
            &Scalar::root_of_unity(m, k) * &Scalar::from_int(m, c)
        })
        .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn coboundaries_are_cocycles(f in prop_oneof![
        cochain_on(vec![2, 2], 4),
        cochain_on(vec![3], 3),
        cochain_on(vec![6], 1),
        cochain_on(vec![2, 2, 2], 8),
    ]) {
        let phi = coboundary_of(&f);
        prop_assert!(oracle_is_cocycle(&phi));
        prop_assert!(cocycle_identities_check(&phi).is_empty());
    }

    #[test]
    fn z3_family_is_always_a_cocycle(a in 1i64..5, b in -4i64..4, k in 0i64..3) {
        prop_assume!(b != 0);
        let phi = z3_cocycle(&Scalar::from_int(3, a), &Scalar::from_int(3, b), &Scalar::root_of_unity(3, k)).unwrap();
        prop_assert!(oracle_is_cocycle(&phi));
    }
}
