//! One line per acceptance criterion. Run with `--nocapture` to see them.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use quasialg::algebra::QuasicrossedOutcome;
use quasialg::analysis::{center, is_central_simple, is_semisimple_associative, is_simple, Decision, SimplicityOutcome};
use quasialg::builtins::BuiltinRegistry;
use quasialg::cayley::{conjugation_signs, cd_double_algebra, cd_double_cochain, doubled_basis_to_group, Involution};
use quasialg::cochains::{complex_cochain, cyclic_cocycle, octonion_cochain, quaternion_cochain, z3_cocycle, Cochain2, Cocycle3};
use quasialg::constructions::{chessboard_matrices, deformed_matrices, triangular_deformed};
use quasialg::crossed::*;
use quasialg::dga::{clifford, complex, group_algebra, octonions, quaternions, DeformedGroupAlgebra};
use quasialg::gmodules::{chessboard_mn_module, kf_z3, z3_signed_module, GradedModule};
use quasialg::groups::FiniteGroup;
use quasialg::linalg::{identity, mat_mul, Vector};
use quasialg::scalars::Scalar;
use quasialg::{Element, GradedQuasialgebra};
use quasialg_cli::resolve::resolve;

type Check = Result<(), String>;
type Criterion = (u32, fn() -> Check, Option<Duration>);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn cli(args: &[&str]) -> (String, u8) {
    let (out, err, code) = quasialg_cli::run(std::iter::once("quasialg").chain(args.iter().copied()));
    (out + &err, code)
}

/// Value of `key` inside `[block]` of a text report.
fn field(report: &str, block: &str, key: &str) -> Option<String> {
    let head = format!("[{block}]");
    let mut inside = false;
    for line in report.lines() {
        if line.starts_with('[') {
            inside = line == head;
        } else if inside {
            if let Some(v) = line.strip_prefix(&format!("{key} = ")) {
                return Some(v.to_string());
            }
        }
    }
    None
}

fn minus_one() -> Scalar {
    Scalar::from_int(1, -1)
}

fn criterion_1() -> Check {
    let (out, code) = cli(&["verify", "--builtin", "octonions"]);
    ensure!(code == 0, "verify exited with {code}");
    let want = [
        ("octonions.cocycle", "quadruples_checked", "4096"),
        ("octonions.cocycle", "result", "pass"),
        ("octonions.quasiassociativity", "triples_checked", "512"),
        ("octonions.quasiassociativity", "result", "pass"),
        ("octonions.trivial_cocycle", "associative", "false"),
    ];
    for (b, k, v) in want {
        ensure!(field(&out, b, k).as_deref() == Some(v), "[{b}] {k} != {v}");
    }
    // recompute the reported witness directly
    let w = field(&out, "octonions.trivial_cocycle", "witness").ok_or("no witness")?;
    let names: Vec<&str> = w.trim_matches(['(', ')']).split(", ").collect();
    let o = octonions();
    let x: Vec<Element> = names.iter().map(|n| o.basis_element(o.index_of(n).unwrap())).collect();
    ensure!(o.mul(&o.mul(&x[0], &x[1]), &x[2]) != o.mul(&x[0], &o.mul(&x[1], &x[2])), "witness {w} associates");
    Ok(())
}

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

fn criterion_2() -> Check {
    let c = complex_cochain();
    let (_, f4, s4) = cd_double_cochain(&c, &conjugation_signs(c.group(), 1), &minus_one()).map_err(|e| e.to_string())?;
    ensure!(f4.values().len() == 16 && f4 == quaternion_cochain(), "doubling C does not give the H cochain");
    let (_, f8, _) = cd_double_cochain(&f4, &s4, &minus_one()).map_err(|e| e.to_string())?;
    ensure!(f8.values().len() == 64 && f8 == octonion_cochain(), "doubling H does not give the O cochain");
    for f in [complex_cochain(), quaternion_cochain()] {
        let s = conjugation_signs(f.group(), 1);
        let a = DeformedGroupAlgebra::build(&f);
        let d = cd_double_algebra(&a, &Involution::diagonal(&s), &minus_one()).map_err(|e| e.to_string())?;
        let (_, fbar, _) = cd_double_cochain(&f, &s, &minus_one()).map_err(|e| e.to_string())?;
        ensure!(same_after_relabel(&d.algebra, DeformedGroupAlgebra::build(&fbar).algebra()), "tables differ from K_F̄ Ḡ");
    }
    Ok(())
}

fn criterion_3() -> Check {
    let algebras = vec![
        quaternions().algebra().clone(),
        octonions().algebra().clone(),
        clifford(3).algebra().clone(),
        deformed_matrices(4, &cyclic_cocycle(4, 1)).map_err(|e| e.to_string())?,
        chessboard_matrices(2, 2, 1).map_err(|e| e.to_string())?,
    ];
    let mut total = 0;
    for a in &algebras {
        let grp = a.group();
        let phi = a.cocycle();
        let inv = |g| grp.inverse(g);
        let one = a.one();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut units = Vec::new();
        for g in grp.elements() {
            let mut found = 0;
            for _ in 0..48 {
                if found == 6 {
                    break;
                }
                let u = a.random_homogeneous(g, &mut rng);
                if !u.is_zero() && a.is_unit(&u).unwrap() {
                    units.push((g, u));
                    found += 1;
                }
            }
        }
        total += units.len();
        for (g, u) in &units {
            let g = *g;
            let (l, r) = (a.left_inverse(u).unwrap(), a.right_inverse(u).unwrap());
            let c = phi.get(inv(g), g, inv(g));
            ensure!(a.mul(&l, u) == one && a.mul(u, &r) == one, "inverse equations");
            ensure!(a.degree_of(&l).unwrap() == inv(g), "inverse degree");
            ensure!(r == l.scale(c), "u_R⁻¹ = φ u_L⁻¹");
            ensure!(a.right_inverse(&l).unwrap() == *u && a.left_inverse(&r).unwrap() == *u, "inverse of inverse");
            ensure!(a.left_inverse(&l).unwrap() == u.scale(c), "(u_L⁻¹)_L⁻¹");
            ensure!(a.right_inverse(&r).unwrap() == u.scale(&c.inv()), "(u_R⁻¹)_R⁻¹");
            ensure!(a.right_multiplication_rank(u).unwrap() == a.component(grp.identity()).len(), "rank of R_u");
        }
        for (g, u) in units.iter().take(6) {
            for (h, w) in units.iter().step_by(2).take(6) {
                let (g, h) = (*g, *h);
                let uw = a.mul(u, w);
                let gh = grp.mul(g, h);
                let cl = phi.get(inv(g), g, h) / phi.get(inv(h), inv(g), gh);
                let wl_ul = a.mul(&a.left_inverse(w).unwrap(), &a.left_inverse(u).unwrap());
                ensure!(a.left_inverse(&uw).unwrap() == wl_ul.scale(&cl), "(uw)_L⁻¹");
                let cr = phi.get(h, inv(h), inv(g)) / phi.get(g, h, grp.mul(inv(h), inv(g)));
                let wr_ur = a.mul(&a.right_inverse(w).unwrap(), &a.right_inverse(u).unwrap());
                ensure!(a.right_inverse(&uw).unwrap() == wr_ur.scale(&cr), "(uw)_R⁻¹");
                let composed = mat_mul(&a.mu_matrix(u).unwrap(), &a.mu_matrix(w).unwrap());
                ensure!(a.mu_matrix(&uw).unwrap() == composed, "μ(uw) = μ(u)μ(w)");
            }
        }
    }
    ensure!(total >= 100, "only {total} units");
    Ok(())
}

fn criterion_4() -> Check {
    for d in [complex(), quaternions(), octonions(), clifford(3), kf_z3()] {
        let a = d.algebra();
        let units: Vec<Element> = a.group().elements().map(|g| a.basis_element(a.component(g)[0])).collect();
        let s = extract_system(a, &units).map_err(|e| e.to_string())?;
        ensure!(s.verify().map_err(|e| e.to_string())?.passed(), "extracted system fails its conditions");
        ensure!(s.build_product().structure_table() == a.structure_table(), "round trip changed the table");
    }
    Ok(())
}

fn scalar_system(g: &FiniteGroup, m: u32, twisted: bool) -> QuasicrossedSystem {
    let n = g.order();
    let alpha: Vec<Vector> =
        (0..n * n).map(|i| vec![Scalar::from_int(m, if twisted && i == n * n - 1 { -1 } else { 1 })]).collect();
    QuasicrossedSystem::new(g, AssociativeAlgebra::field(m), Cocycle3::trivial(g, m), vec![identity(m, 1); n], alpha).unwrap()
}

fn criterion_5() -> Check {
    let g = FiniteGroup::elementary_abelian_2(3);
    let m = 8;
    let base = DeformedGroupAlgebra::build(&octonion_cochain().with_conductor(m).unwrap()).as_system();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..20 {
        use rand::Rng;
        let u: Vec<Scalar> =
            g.elements().map(|x| if x == 0 { Scalar::one(m) } else { Scalar::root_of_unity(m, rng.gen_range(0..8)) }).collect();
        let mut p = base.clone();
        for a in g.elements() {
            for b in g.elements() {
                *p.alpha_mut(a, b) = vec![&(&(&u[a] * &u[b]) / &u[g.mul(a, b)]) * &base.alpha(a, b)[0]];
            }
        }
        let EquivalenceOutcome::Equivalent(w) = are_equivalent_systems(&p, &base).map_err(|e| e.to_string())? else {
            return Err("perturbed system not recognized".into());
        };
        ensure!(is_equivalence_witness(&p, &base, &w), "witness does not verify");
        let pe = are_equivalent_products(&p.build_product(), &base.build_product(), 0).map_err(|e| e.to_string())?;
        ensure!(pe.verified && pe.isomorphism.is_some(), "product isomorphism not verified");
    }
    let z2 = FiniteGroup::cyclic(2);
    let outcome = |m| are_equivalent_systems(&scalar_system(&z2, m, true), &scalar_system(&z2, m, false)).unwrap();
    ensure!(outcome(1) == EquivalenceOutcome::Inequivalent, "conductor 1 should be inequivalent");
    let EquivalenceOutcome::Equivalent(u) = outcome(4) else { return Err("conductor 4 should be equivalent".into()) };
    ensure!(u[1] == vec![Scalar::root_of_unity(4, 1)], "witness u(1) = {:?}", u[1]);
    let (t, p) = (scalar_system(&z2, 4, true), scalar_system(&z2, 4, false));
    let pe = are_equivalent_products(&t.build_product(), &p.build_product(), 0).map_err(|e| e.to_string())?;
    ensure!(pe.verified, "conductor 4 product isomorphism");
    Ok(())
}

fn criterion_6() -> Check {
    let md = chessboard_mn_module();
    let a = md.algebra();
    ensure!(md.verify_left_module().unwrap().passed(), "left");
    ensure!(md.verify_right_module().unwrap().passed(), "right");
    let r = md.verify_bimodule().unwrap();
    let (e21, e12, n) = (a.index_of("E21").unwrap(), a.index_of("E12").unwrap(), md.index_of("n").unwrap());
    let w = r.failures.iter().find(|f| f.triple == [e21, n, e12]).ok_or("missing (E21, n, E12)")?;
    ensure!(md.format(&w.lhs) == "n" && w.rhs.iter().all(Scalar::is_zero), "witness values");
    ensure!(z3_signed_module().verify_bimodule().unwrap().passed(), "z3 bimodule");
    let reg = BuiltinRegistry::default();
    for b in reg.iter() {
        let spec = match b.name() {
            "clifford" => "clifford:3".to_string(),
            "group-algebra" => "group-algebra:3".into(),
            "deformed-matrices" | "triangular" => format!("{}:3", b.name()),
            "chessboard" => "chessboard:1,2".into(),
            "mat-delta" => "mat-delta:2".into(),
            other => other.into(),
        };
        let alg = reg.build(&spec, None).map_err(|e| e.to_string())?.algebra;
        let reg_mod = GradedModule::regular(&alg);
        let ok = reg_mod.verify_left_module().unwrap().passed()
            && reg_mod.verify_right_module().unwrap().passed()
            && reg_mod.verify_bimodule().unwrap().passed();
        ensure!(ok, "{spec} is not a bimodule over itself");
    }
    Ok(())
}

fn criterion_7() -> Check {
    ensure!(is_simple(kf_z3().algebra()).is_simple(), "K_F Z3 simple");
    let kz2 = group_algebra(&FiniteGroup::cyclic(2), 1);
    let SimplicityOutcome::NotSimple { ideal, .. } = is_simple(kz2.algebra()) else { return Err("K Z2 simple".into()) };
    let e_plus_g = kz2.basis_element(0).add(&kz2.basis_element(1));
    ensure!(ideal.dim() == 1 && ideal.contains(&e_plus_g), "ideal is {}", ideal.format());
    for d in [octonions(), quaternions()] {
        ensure!(is_central_simple(d.algebra()) == Decision::Yes, "central simple");
        ensure!(center(d.algebra()).dim() == 1, "center");
    }
    let reg = BuiltinRegistry::default();
    for spec in ["complex", "quaternions", "octonions", "clifford:2", "kf-z3", "deformed-matrices:3", "chessboard:2,1", "mat-delta:2"] {
        let a = reg.build(spec, None).unwrap().algebra;
        if is_simple(&a).is_simple() {
            let ae = AssociativeAlgebra::identity_component(&a).map_err(|e| e.to_string())?;
            ensure!(is_semisimple_associative(&ae), "{spec}: A_e not semisimple");
        }
    }
    Ok(())
}

fn z3_phi() -> Cocycle3 {
    z3_cocycle(&Scalar::from_int(3, 1), &Scalar::from_int(3, 1), &Scalar::root_of_unity(3, 1)).unwrap()
}

fn criterion_8() -> Check {
    let t = triangular_deformed(3, &z3_phi()).map_err(|e| e.to_string())?;
    match t.is_quasicrossed_product(0) {
        QuasicrossedOutcome::NoFound { degree, exact: true } if t.component(degree).len() == 1 => {}
        other => return Err(format!("T3: {other:?}")),
    }
    let m = deformed_matrices(3, &z3_phi()).map_err(|e| e.to_string())?;
    let QuasicrossedOutcome::Yes(units) = m.is_quasicrossed_product(0) else { return Err("M3 not quasicrossed".into()) };
    for (g, u) in m.group().elements().zip(&units) {
        ensure!(m.degree_of(u).unwrap() == g && m.is_unit(u).unwrap(), "unit in degree {g}");
    }
    Ok(())
}

fn criterion_9() -> Check {
    let reg = BuiltinRegistry::default();
    let mut algebras: Vec<(String, GradedQuasialgebra)> = [
        "complex", "quaternions", "octonions", "clifford:1", "clifford:2", "clifford:3", "clifford:4",
        "group-algebra:2", "group-algebra:5", "kf-z3", "deformed-matrices:2", "deformed-matrices:3",
        "deformed-matrices:4,3", "triangular:2", "triangular:3", "chessboard:1,1", "chessboard:2,1",
        "chessboard:2,2", "mat-delta:1", "mat-delta:2",
    ]
    .iter()
    .map(|s| (s.to_string(), reg.build(s, None).unwrap().algebra))
    .collect();
    let s3 = FiniteGroup::from_table(
        vec![vec![0, 1, 2, 3, 4, 5], vec![1, 0, 4, 5, 2, 3], vec![2, 5, 0, 4, 3, 1], vec![3, 4, 5, 0, 1, 2], vec![4, 3, 1, 2, 5, 0], vec![5, 2, 3, 1, 0, 4]],
        0,
    )
    .unwrap();
    algebras.push(("QS3".into(), DeformedGroupAlgebra::build(&Cochain2::trivial(&s3, 1)).algebra().clone()));
    algebras.push(("z3 matrices".into(), deformed_matrices(3, &z3_phi()).unwrap()));
    let mut yes = 0;
    for (name, a) in &algebras {
        for seed in [0, 1] {
            if let QuasicrossedOutcome::Yes(_) = a.is_quasicrossed_product(seed) {
                yes += 1;
                ensure!(a.is_strongly_graded(), "{name} is quasicrossed but not strongly graded");
            }
        }
    }
    ensure!(yes >= 30, "only {yes} positive cases");
    Ok(())
}

fn criterion_10() -> Check {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests");
    let mut files: Vec<PathBuf> = std::fs::read_dir(root.join("fixtures"))
        .map_err(|e| e.to_string())?
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "qa"))
        .collect();
    files.sort();
    ensure!(!files.is_empty(), "no fixtures");
    for f in &files {
        let text = std::fs::read_to_string(f).map_err(|e| e.to_string())?;
        let doc = quasialg_cli::dsl::parse(&text).map_err(|e| format!("{}: {e}", f.display()))?;
        resolve(&doc, &BuiltinRegistry::default()).map_err(|e| format!("{}: {e}", f.display()))?;
        let (out, code) = cli(&["--seed", "0", "--jobs", "1", "report", f.to_str().unwrap()]);
        ensure!(code <= 1, "{}: exit {code}", f.display());
        let golden = root.join("golden").join(f.file_stem().unwrap()).with_extension("report");
        let expected = std::fs::read_to_string(&golden).map_err(|e| format!("{}: {e}", golden.display()))?;
        ensure!(out == expected, "{} differs from its golden file", f.display());
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        (1, criterion_1, Some(Duration::from_secs(1))),
        (2, criterion_2, Some(Duration::from_secs(1))),
        (3, criterion_3, Some(Duration::from_secs(5))),
        (4, criterion_4, None),
        (5, criterion_5, None),
        (6, criterion_6, None),
        (7, criterion_7, None),
        (8, criterion_8, None),
        (9, criterion_9, None),
        (10, criterion_10, None),
    ];
    let mut failed = Vec::new();
    for (n, check, limit) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let result = match (result, limit) {
            (Ok(()), Some(l)) if took > l => Err(format!("took {took:.2?}, limit {l:?}")),
            (r, _) => r,
        };
        match &result {
            Ok(()) => println!("criterion {n:2}: PASS ({took:.2?})"),
            Err(why) => {
                println!("criterion {n:2}: FAIL ({took:.2?}) {why}");
                failed.push(n);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
