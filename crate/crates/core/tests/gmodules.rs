use quasialg::builtins::BuiltinRegistry;
use quasialg::gmodules::*;
use quasialg::scalars::Scalar;

fn vec_of(m: u32, xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|&x| Scalar::from_int(m, x)).collect()
}

#[test]
fn chessboard_module_fails_compatibility_at_one_triple() {
    let module = chessboard_mn_module();
    let a = module.algebra();
    assert!(module.verify_left_module().unwrap().passed());
    assert!(module.verify_right_module().unwrap().passed());
    let r = module.verify_bimodule().unwrap();
    assert!(!r.passed());
    let (e21, e12) = (a.index_of("E21").unwrap(), a.index_of("E12").unwrap());
    let n = module.index_of("n").unwrap();
    // (E21 n) E12 = m E12 = n while E21 (n E12) = 0
    let w = r.failures.iter().find(|f| f.triple == [e21, n, e12]).expect("witness");
    assert_eq!(w.lhs, vec_of(1, &[0, 1]));
    assert_eq!(w.rhs, vec_of(1, &[0, 0]));
    let x21 = a.basis_element(e21);
    let x12 = a.basis_element(e12);
    let bn = module.basis_vector(n);
    let lhs = module.act_right(&module.act_left(&x21, &bn).unwrap(), &x12).unwrap();
    assert_eq!(module.format(&lhs), "n");
    assert!(module.act_right(&bn, &x12).unwrap().iter().all(|c| c.is_zero()));
}

#[test]
fn z3_signed_module() {
    let module = quasialg::gmodules::z3_signed_module();
    assert!(module.verify_bimodule().unwrap().passed());
    assert!(module.verify_right_module().unwrap().passed());
    let left = module.verify_left_module().unwrap();
    assert_eq!(left.failures.len(), 6);
    let swapped = z3_signed_module_swapped();
    assert!(swapped.verify_bimodule().unwrap().passed());
    assert!(swapped.verify_left_module().unwrap().passed());
    assert!(!swapped.verify_right_module().unwrap().passed());
}

#[test]
fn every_builtin_is_a_bimodule_over_itself() {
    let reg = BuiltinRegistry::default();
    let specs = [
        "complex",
        "quaternions",
        "octonions",
        "clifford:3",
        "group-algebra:4",
        "kf-z3",
        "deformed-matrices:3,1",
        "triangular:3",
        "chessboard:2,1",
        "mat-delta:2",
    ];
    assert_eq!(specs.len(), reg.iter().count());
    for spec in specs {
        let a = reg.build(spec, None).unwrap().algebra;
        let module = GradedModule::regular(&a);
        assert!(module.verify_left_module().unwrap().passed(), "{spec}");
        assert!(module.verify_right_module().unwrap().passed(), "{spec}");
        assert!(module.verify_bimodule().unwrap().passed(), "{spec}");
    }
}

#[test]
fn submodules() {
    let module = chessboard_mn_module();
    let m = module.basis_vector(0);
    let n = module.basis_vector(1);
    assert!(!module.is_graded_submodule(std::slice::from_ref(&m)).unwrap());
    assert!(module.is_graded_submodule(&[m.clone(), n.clone()]).unwrap());
    assert!(module.is_graded_submodule(&[]).unwrap());
    let mixed: Vec<Scalar> = m.iter().zip(&n).map(|(x, y)| x + y).collect();
    assert_eq!(module.is_graded_submodule(&[mixed]), Err(ModuleError::NotHomogeneous));
}

#[test]
fn construction_errors() {
    let a = quasialg::dga::complex().algebra().clone();
    let names = vec!["v".to_string()];
    assert_eq!(GradedModule::new(&a, names.clone(), vec![], None, None).unwrap_err(), ModuleError::WrongShape);
    assert_eq!(GradedModule::new(&a, names.clone(), vec![7], None, None).unwrap_err(), ModuleError::BadDegree(7));
    // i.v would have to sit in degree 1
    let left = vec![vec![(0, Scalar::one(1))], vec![(0, Scalar::one(1))]];
    assert!(matches!(
        GradedModule::new(&a, names.clone(), vec![0], Some(left), None),
        Err(ModuleError::DegreeViolation { .. })
    ));
    let only_left = GradedModule::new(&a, names, vec![0], Some(vec![vec![(0, Scalar::one(1))], vec![]]), None).unwrap();
    assert_eq!(only_left.verify_right_module(), Err(ModuleError::MissingAction("right")));
}
