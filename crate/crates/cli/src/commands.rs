use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use quasialg::algebra::{GradedQuasialgebra, QuasicrossedOutcome};
use quasialg::analysis::{self, SimplicityOutcome};
use quasialg::builtins::BuiltinRegistry;
use quasialg::cayley::{self, Involution, StrongInvolutionReport};
use quasialg::cochains::{cocycle_identities_check, coboundary_of, verify_cocycle, Cochain2, Cocycle3};
use quasialg::crossed::{self, AssociativeAlgebra, EquivalenceOutcome, QuasicrossedSystem};
use quasialg::gmodules::{GradedModule, ModuleReport};
use quasialg::groups::FiniteGroup;
use quasialg::linalg::Vector;
use quasialg::scalars::Scalar;
use quasialg::Element;

use crate::dsl::{self, DslError};
use crate::report::{Block, Report};
use crate::resolve::{self, Resolved};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_UNDECIDED: u8 = 2;
pub const EXIT_INPUT: u8 = 3;

/// Witnesses printed per failing check.
const MAX_WITNESSES: usize = 5;

#[derive(Parser, Debug)]
#[command(name = "quasialg", version, about = "Exact computations with graded quasialgebras")]
pub struct Cli {
    /// Seed for every randomized search.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for the exhaustive sweeps (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Emit one JSON document instead of `key = value` blocks.
    #[arg(long, global = true)]
    pub machine: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct SourceArgs {
    /// A builtin algebra, e.g. `octonions`, `clifford:3`, `chessboard:1,1`.
    #[arg(long)]
    pub builtin: Option<String>,
    /// Definition file whose first [cocycle] replaces the builtin's default.
    #[arg(long)]
    pub cocycle: Option<PathBuf>,
    /// Which [algebra] section of the file to use (default: the first).
    #[arg(long)]
    pub algebra: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Cochain,
    Algebra,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build an algebra and print it as a definition file.
    Build {
        file: Option<PathBuf>,
        #[command(flatten)]
        src: SourceArgs,
    },
    /// Check the cocycle, quasiassociativity and the coboundary relation.
    Verify {
        file: Option<PathBuf>,
        #[command(flatten)]
        src: SourceArgs,
    },
    /// Multiply two elements: `mul [FILE] X Y`.
    Mul {
        #[arg(num_args = 2..=3, required = true)]
        operands: Vec<String>,
        #[command(flatten)]
        src: SourceArgs,
    },
    /// Left and right inverses of a homogeneous element: `invert [FILE] X`.
    Invert {
        #[arg(num_args = 1..=2, required = true)]
        operands: Vec<String>,
        #[command(flatten)]
        src: SourceArgs,
    },
    /// The center and whether it is K·1.
    Center {
        file: Option<PathBuf>,
        #[command(flatten)]
        src: SourceArgs,
    },
    /// Decide simplicity, with a witness ideal when not simple.
    Simple {
        file: Option<PathBuf>,
        #[command(flatten)]
        src: SourceArgs,
    },
    /// Cayley–Dickson doubling with a diagonal involution.
    CdDouble {
        file: Option<PathBuf>,
        #[command(flatten)]
        src: SourceArgs,
        /// Signs of the involution on the basis, e.g. "1,-1,-1,-1" (default: conjugation).
        #[arg(long, allow_hyphen_values = true)]
        s: Option<String>,
        #[arg(long, allow_hyphen_values = true, default_value = "-1")]
        epsilon: String,
        #[arg(long, value_enum, default_value = "algebra")]
        level: Level,
    },
    /// Compare the first [system] (or [algebra]) of two files.
    Equiv { first: PathBuf, second: PathBuf },
    /// Run every check on everything defined in a file.
    Report { file: PathBuf },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{path}: {err}")]
    Dsl { path: String, err: DslError },
    #[error("{path}: {err}")]
    Io { path: String, err: std::io::Error },
}

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

pub struct Outcome {
    pub report: Report,
    pub exit: u8,
}

pub fn load_file(path: &Path, builtins: &BuiltinRegistry) -> Result<Resolved, CliError> {
    let text = std::fs::read_to_string(path).map_err(|err| CliError::Io { path: path.display().to_string(), err })?;
    let doc = dsl::parse(&text).map_err(|err| CliError::Dsl { path: path.display().to_string(), err })?;
    resolve::resolve(&doc, builtins).map_err(|err| CliError::Dsl { path: path.display().to_string(), err })
}

/// The algebra a command works on.
pub struct Source {
    pub name: String,
    pub algebra: GradedQuasialgebra,
    pub cochain: Option<Cochain2>,
}

/// Turns a builtin spec like `chessboard:1,1` into a section name.
fn identifier(spec: &str) -> String {
    spec.chars().map(|c| if c.is_alphanumeric() || c == '-' { c } else { '-' }).collect()
}

fn load_source(file: Option<&Path>, src: &SourceArgs, builtins: &BuiltinRegistry) -> Result<Source, CliError> {
    match (file, &src.builtin) {
        (Some(_), Some(_)) => Err(input("give either a file or --builtin, not both")),
        (None, None) => Err(input("no algebra given: pass a file or --builtin")),
        (None, Some(spec)) => {
            if src.algebra.is_some() {
                return Err(input("--algebra selects a section of a file"));
            }
            let cocycle = match &src.cocycle {
                Some(p) => {
                    let r = load_file(p, builtins)?;
                    Some(r.cocycles.into_iter().next().ok_or_else(|| input(format!("{}: no [cocycle] section", p.display())))?.1)
                }
                None => None,
            };
            let built = builtins.build(spec, cocycle.as_ref()).map_err(|e| {
                let known: Vec<&str> = builtins.iter().map(|b| b.usage()).collect();
                input(format!("{e} (builtins: {})", known.join(", ")))
            })?;
            Ok(Source { name: identifier(spec), algebra: built.algebra, cochain: built.cochain })
        }
        (Some(path), None) => {
            if src.cocycle.is_some() {
                return Err(input("--cocycle applies to --builtin"));
            }
            let r = load_file(path, builtins)?;
            if let Some(want) = &src.algebra {
                let a = r.algebras.into_iter().find(|a| &a.name == want).ok_or_else(|| input(format!("no [algebra {want}]")))?;
                return Ok(Source { name: a.name, algebra: a.algebra, cochain: a.cochain });
            }
            if let Some(a) = r.algebras.into_iter().next() {
                return Ok(Source { name: a.name, algebra: a.algebra, cochain: a.cochain });
            }
            if let Some((name, s)) = r.systems.into_iter().next() {
                let report = s.verify().map_err(|e| input(e.to_string()))?;
                if !report.passed() {
                    return Err(input(format!("[system {name}] is not a quasicrossed system: {report}")));
                }
                return Ok(Source { name, algebra: s.build_product(), cochain: None });
            }
            Err(input(format!("{}: no [algebra] or [system] section", path.display())))
        }
    }
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

fn names(a: &GradedQuasialgebra, idx: &[usize]) -> String {
    idx.iter().map(|&i| a.name(i)).collect::<Vec<_>>().join(", ")
}

fn labels(g: &FiniteGroup, xs: &[usize]) -> String {
    xs.iter().map(|&x| g.label(x)).collect::<Vec<_>>().join(",")
}

fn list<T>(items: &[T], f: impl Fn(&T) -> String) -> String {
    let mut parts: Vec<String> = items.iter().take(MAX_WITNESSES).map(f).collect();
    if items.len() > MAX_WITNESSES {
        parts.push("…".into());
    }
    parts.join("; ")
}

fn group_block(g: &FiniteGroup) -> Block {
    let mut b = Block::new("group");
    match g.factors() {
        Some(_) => b.push("product", g.describe()),
        None => {
            let rows: Vec<String> = g
                .table()
                .iter()
                .map(|r| format!("[{}]", r.iter().map(usize::to_string).collect::<Vec<_>>().join(", ")))
                .collect();
            b.push("table", format!("[{}]", rows.join(", ")))
        }
    };
    b
}

fn table_value<'a>(g: &FiniteGroup, arity: usize, values: impl Iterator<Item = (usize, &'a Scalar)>) -> String {
    let n = g.order();
    let entries: Vec<String> = values
        .filter(|(_, v)| !v.is_one())
        .map(|(i, v)| {
            let idx: Vec<usize> = (0..arity).rev().map(|p| (i / n.pow(p as u32)) % n).collect();
            format!("({}): {v}", labels(g, &idx))
        })
        .collect();
    format!("{{ {} }}", entries.join(", "))
}

fn cochain_block(name: &str, f: &Cochain2) -> Block {
    let mut b = Block::new(format!("cochain {name}"));
    if f.values().iter().all(Scalar::is_one) {
        b.push("builtin", "trivial");
    } else {
        b.push("table", table_value(f.group(), 2, f.values().iter().enumerate()));
    }
    b
}

fn cocycle_block(name: &str, phi: &Cocycle3) -> Block {
    let mut b = Block::new(format!("cocycle {name}"));
    if phi.is_trivial() {
        b.push("builtin", "trivial");
    } else {
        b.push("table", table_value(phi.group(), 3, phi.values().iter().enumerate()));
    }
    b
}

/// The algebra as a definition file.
fn definition_blocks(src: &Source) -> Vec<Block> {
    let a = &src.algebra;
    let mut header = Block::new("");
    header.push("conductor", a.conductor());
    let mut blocks = vec![header, group_block(a.group())];
    let mut alg = Block::new(format!("algebra {}", src.name));
    match &src.cochain {
        Some(f) => {
            let fname = format!("{}-F", src.name);
            blocks.push(cochain_block(&fname, f));
            alg.push("deformed", fname);
        }
        None => {
            let pname = format!("{}-phi", src.name);
            blocks.push(cocycle_block(&pname, a.cocycle()));
            let basis: Vec<String> = (0..a.dim()).map(|i| format!("{}:{}", a.name(i), a.group().label(a.degree(i)))).collect();
            alg.push("basis", basis.join(", "));
            alg.push("cocycle", pname);
            for i in 0..a.dim() {
                for j in 0..a.dim() {
                    let p = a.mul_basis(i, j);
                    if !p.is_zero() {
                        alg.push(format!("{}*{}", a.name(i), a.name(j)), a.format(&p));
                    }
                }
            }
        }
    }
    blocks.push(alg);
    blocks
}

fn summary_block(title: String, a: &GradedQuasialgebra) -> Block {
    let mut b = Block::new(title);
    b.push("group", a.group().describe())
        .push("conductor", a.conductor())
        .push("dim", a.dim())
        .push("identity", a.format(&a.one()))
        .push("cocycle_trivial", a.cocycle().is_trivial());
    b
}

fn cocycle_check(prefix: &str, phi: &Cocycle3) -> (Block, bool) {
    let g = phi.group();
    let rep = verify_cocycle(g, phi.values()).expect("validated table has the right size");
    let ident = cocycle_identities_check(phi);
    let ok = rep.passed() && ident.is_empty();
    let mut b = Block::new(format!("{prefix}cocycle"));
    b.push("quadruples_checked", rep.quadruples_checked)
        .push("violations", rep.violations.len())
        .push("normalization_failures", rep.normalization.len())
        .push("identity_failures", ident.len());
    if !rep.violations.is_empty() {
        b.push("witnesses", list(&rep.violations, |q| format!("({})", labels(g, q))));
    }
    if !ident.is_empty() {
        b.push("identity_witnesses", list(&ident, |f| format!("{} at ({})", f.item, labels(g, &[f.g, f.h]))));
    }
    b.push("result", pass(ok));
    (b, ok)
}

fn quasi_check(prefix: &str, a: &GradedQuasialgebra) -> (Block, bool) {
    let rep = a.verify_quasiassociativity();
    let mut b = Block::new(format!("{prefix}quasiassociativity"));
    b.push("triples_checked", rep.triples_checked).push("failures", rep.failures.len());
    if !rep.passed() {
        b.push("witnesses", list(&rep.failures, |f| format!("({})", names(a, &f.triple))));
    }
    b.push("result", pass(rep.passed()));
    (b, rep.passed())
}

fn trivial_cocycle_block(prefix: &str, a: &GradedQuasialgebra) -> Block {
    let rep = a.verify_quasiassociativity_with(&Cocycle3::trivial(a.group(), a.conductor()));
    let mut b = Block::new(format!("{prefix}trivial_cocycle"));
    b.push("associative", rep.passed());
    if let Some(f) = rep.failures.first() {
        b.push("witness", format!("({})", names(a, &f.triple)))
            .push("lhs", a.format(&f.lhs))
            .push("rhs", a.format(&f.rhs));
    }
    b
}

fn verify_blocks(src: &Source) -> (Vec<Block>, bool) {
    let a = &src.algebra;
    let prefix = format!("{}.", src.name);
    let mut blocks = vec![summary_block(format!("algebra {}", src.name), a)];
    let (cb, c_ok) = cocycle_check(&prefix, a.cocycle());
    let (qb, q_ok) = quasi_check(&prefix, a);
    blocks.push(cb);
    blocks.push(qb);
    let mut ok = c_ok && q_ok;
    if let Some(f) = &src.cochain {
        let matches = coboundary_of(f) == *a.cocycle();
        let mut b = Block::new(format!("{prefix}coboundary"));
        b.push("matches_cocycle", matches).push("result", pass(matches));
        blocks.push(b);
        ok &= matches;
    }
    blocks.push(trivial_cocycle_block(&prefix, a));
    (blocks, ok)
}

fn units_block(prefix: &str, a: &GradedQuasialgebra, seed: u64) -> (Block, bool) {
    let g = a.group();
    let mut b = Block::new(format!("{prefix}units"));
    let outcome = a.is_quasicrossed_product(seed);
    let strong = a.is_strongly_graded();
    let yes = matches!(outcome, QuasicrossedOutcome::Yes(_));
    match &outcome {
        QuasicrossedOutcome::Yes(units) => {
            b.push("quasicrossed_product", "yes");
            for (x, u) in g.elements().zip(units) {
                b.push(format!("unit.{}", g.label(x)), a.format(u));
            }
        }
        QuasicrossedOutcome::NoFound { degree, exact } => {
            b.push("quasicrossed_product", "no_found")
                .push("degree", g.label(*degree))
                .push("exact", exact);
        }
        QuasicrossedOutcome::NotApplicable { degree } => {
            b.push("quasicrossed_product", "not_applicable").push("empty_degree", g.label(*degree));
        }
    }
    b.push("strongly_graded", strong);
    let failures = a.strong_grading_failures();
    if !failures.is_empty() {
        b.push("strong_grading_failures", labels(g, &failures));
    }
    // a quasicrossed product is always strongly graded
    let consistent = !yes || strong;
    b.push("consistent", consistent);
    (b, consistent)
}

fn center_block(prefix: &str, a: &GradedQuasialgebra) -> (Block, bool) {
    let c = analysis::center(a);
    let central = c.dim() == 1 && c.contains(&a.one());
    let mut b = Block::new(format!("{prefix}center"));
    b.push("dim", c.dim()).push("basis", c.format()).push("central", central);
    (b, central)
}

fn simplicity_blocks(prefix: &str, a: &GradedQuasialgebra, seed: u64) -> (Vec<Block>, SimplicityOutcome) {
    let outcome = analysis::is_simple(a);
    let mut b = Block::new(format!("{prefix}simplicity"));
    describe_simplicity(&mut b, &outcome);
    let mut gb = Block::new(format!("{prefix}graded_simplicity"));
    describe_simplicity(&mut gb, &analysis::is_graded_simple(a, seed));
    let mut eb = Block::new(format!("{prefix}identity_component"));
    match AssociativeAlgebra::identity_component(a) {
        Ok(ae) => {
            eb.push("dim", ae.dim()).push("semisimple", analysis::is_semisimple_associative(&ae));
        }
        Err(e) => {
            eb.push("error", e);
        }
    }
    (vec![b, gb, eb], outcome)
}

fn describe_simplicity(b: &mut Block, outcome: &SimplicityOutcome) {
    match outcome {
        SimplicityOutcome::Simple { method } => {
            b.push("result", "simple").push("method", method);
        }
        SimplicityOutcome::NotSimple { ideal, reason } => {
            b.push("result", "not_simple").push("ideal", ideal.format()).push("ideal_dim", ideal.dim()).push("reason", reason);
        }
        SimplicityOutcome::Undecided(why) => {
            b.push("result", "undecided").push("reason", why);
        }
    }
}

fn module_blocks(prefix: &str, m: &GradedModule) -> (Vec<Block>, [Option<bool>; 3]) {
    let mut blocks = Vec::new();
    let mut results = [None; 3];
    let algebra = m.algebra();
    let checks: [(&str, Result<ModuleReport, _>, bool); 3] = [
        ("left", m.verify_left_module(), true),
        ("right", m.verify_right_module(), false),
        ("bimodule", m.verify_bimodule(), false),
    ];
    for (k, (side, rep, left)) in checks.into_iter().enumerate() {
        let mut b = Block::new(format!("{prefix}{side}"));
        match rep {
            Ok(r) => {
                b.push("checked", r.checked).push("failures", r.failures.len());
                if !r.failures.is_empty() {
                    let fmt_triple = |t: &[usize; 3]| match side {
                        "left" => format!("({}, {}, {})", algebra.name(t[0]), algebra.name(t[1]), m.names()[t[2]]),
                        "right" => format!("({}, {}, {})", m.names()[t[0]], algebra.name(t[1]), algebra.name(t[2])),
                        _ => format!("({}, {}, {})", algebra.name(t[0]), m.names()[t[1]], algebra.name(t[2])),
                    };
                    b.push("witnesses", list(&r.failures, |f| fmt_triple(&f.triple)));
                    let f = &r.failures[0];
                    b.push("first_lhs", m.format(&f.lhs)).push("first_rhs", m.format(&f.rhs));
                }
                if !r.unit_failures.is_empty() {
                    let unit = if left { "1.v = v" } else { "v.1 = v" };
                    b.push("unit_failures", format!("{unit} fails for {}", list(&r.unit_failures, |v| m.names()[*v].clone())));
                }
                b.push("result", pass(r.passed()));
                results[k] = Some(r.passed());
            }
            Err(e) => {
                b.push("result", "not_applicable").push("reason", e);
            }
        }
        blocks.push(b);
    }
    (blocks, results)
}

fn system_blocks(name: &str, s: &QuasicrossedSystem) -> (Vec<Block>, bool) {
    let mut b = Block::new(format!("system {name}"));
    b.push("group", s.group().describe()).push("base_dim", s.base().dim());
    let rep = match s.verify() {
        Ok(r) => r,
        Err(e) => {
            b.push("result", "fail").push("error", e);
            return (vec![b], false);
        }
    };
    let g = s.group();
    b.push("conjugation_failures", rep.conjugation.len())
        .push("twisted_cocycle_failures", rep.twisted_cocycle.len())
        .push("normalization_failures", rep.normalization.len());
    if !rep.twisted_cocycle.is_empty() {
        b.push("twisted_cocycle_witnesses", list(&rep.twisted_cocycle, |(x, y, z)| format!("({})", labels(g, &[*x, *y, *z]))));
    }
    if !rep.conjugation.is_empty() {
        b.push("conjugation_witnesses", list(&rep.conjugation, |(x, y, i)| format!("({}; {})", labels(g, &[*x, *y]), s.base().names()[*i])));
    }
    b.push("result", pass(rep.passed()));
    if !rep.passed() {
        return (vec![b], false);
    }
    let product = s.build_product();
    let mut pb = Block::new(format!("{name}.product"));
    let q = product.verify_quasiassociativity();
    pb.push("dim", product.dim()).push("quasiassociativity", pass(q.passed()));
    (vec![b, pb], q.passed())
}

fn parse_element(a: &GradedQuasialgebra, text: &str) -> Result<Element, CliError> {
    let one = a.to_vector(&a.one());
    let v = resolve::combination(a.conductor(), text, a.names(), Some(&one), dsl::Loc::default())
        .map_err(|e| input(format!("cannot read `{text}`: {}", e.kind)))?;
    Ok(a.from_vector(&v))
}

fn split_operands(file: &mut Option<PathBuf>, operands: &[String], want: usize, src: &SourceArgs) -> Result<Vec<String>, CliError> {
    let extra = operands.len() - want;
    match (extra, &src.builtin) {
        (0, _) => Ok(operands.to_vec()),
        (1, None) => {
            *file = Some(PathBuf::from(&operands[0]));
            Ok(operands[1..].to_vec())
        }
        _ => Err(input(format!("expected {want} operand(s) after the algebra"))),
    }
}

fn parse_signs(text: &str, m: u32) -> Result<Vec<Scalar>, CliError> {
    text.split(',').map(|s| Scalar::parse(m, s.trim()).map_err(|e| input(format!("--s: {e}")))).collect()
}

fn strong_report_entries(b: &mut Block, a: &GradedQuasialgebra, r: &StrongInvolutionReport) {
    b.push("antiautomorphism", pass(r.is_antiautomorphism()));
    if !r.antiautomorphism.is_empty() {
        b.push("antiautomorphism_witnesses", list(&r.antiautomorphism, |(i, j)| format!("({}, {})", a.name(*i), a.name(*j))));
    }
    b.push("trace_condition", pass(r.sum.is_empty()));
    b.push("norm_condition", pass(r.norm.is_empty() && r.polarization.is_empty()));
    if !r.norm.is_empty() {
        b.push("norm_witnesses", list(&r.norm, |i| a.name(*i).to_string()));
    }
    b.push("strong", r.is_strong());
}

fn cd_double(src: &Source, s: Option<&str>, epsilon: &str, level: Level) -> Result<Outcome, CliError> {
    let a = &src.algebra;
    let m = a.conductor();
    let eps = Scalar::parse(m, epsilon).map_err(|e| input(format!("--epsilon: {e}")))?;
    let mut report = Report::new("cd-double");
    match level {
        Level::Cochain => {
            let f = src.cochain.as_ref().ok_or_else(|| input("--level cochain needs a deformed group algebra K_F G"))?;
            let signs = match s {
                Some(t) => parse_signs(t, m)?,
                None => cayley::conjugation_signs(f.group(), m),
            };
            if signs.len() != f.group().order() {
                return Err(input(format!("--s needs {} signs", f.group().order())));
            }
            let check = cayley::is_strong_involution(a, &Involution::diagonal(&signs)).map_err(|e| input(e.to_string()))?;
            let mut inv = Block::new("involution");
            inv.push("s", signs.iter().map(Scalar::to_string).collect::<Vec<_>>().join(","));
            strong_report_entries(&mut inv, a, &check);
            if !check.is_strong() {
                report.add(inv);
                return Ok(Outcome { report, exit: EXIT_NEGATIVE });
            }
            let (gbar, fbar, sbar) = cayley::cd_double_cochain(f, &signs, &eps).map_err(|e| input(e.to_string()))?;
            let alpha = cayley::alpha_doubling_check(f, &signs, &eps).map_err(|e| input(e.to_string()))?;
            let doubled = quasialg::dga::DeformedGroupAlgebra::build(&fbar);
            let name = format!("{}-double", src.name);
            let out = Source { name: name.clone(), algebra: doubled.algebra().clone(), cochain: Some(fbar) };
            for b in definition_blocks(&out) {
                report.add(b);
            }
            report.add(inv);
            let mut d = Block::new("doubling");
            d.push("group", gbar.describe())
                .push("epsilon", &eps)
                .push("s_bar", sbar.iter().map(Scalar::to_string).collect::<Vec<_>>().join(","))
                .push("alpha_pairs_checked", alpha.pairs_checked)
                .push("alpha_failures", alpha.failures.len());
            let (qb, q_ok) = quasi_check(&format!("{name}."), doubled.algebra());
            report.add(d);
            report.add(qb);
            let ok = alpha.failures.is_empty() && q_ok;
            Ok(Outcome { report, exit: if ok { EXIT_OK } else { EXIT_NEGATIVE } })
        }
        Level::Algebra => {
            let inv = match s {
                Some(t) => {
                    let signs = parse_signs(t, m)?;
                    if signs.len() != a.dim() {
                        return Err(input(format!("--s needs {} signs", a.dim())));
                    }
                    Involution::diagonal(&signs)
                }
                None => match &src.cochain {
                    Some(f) => Involution::diagonal(&cayley::conjugation_signs(f.group(), m)),
                    None => return Err(input("--s is required unless the algebra is K_F G")),
                },
            };
            let doubled = cayley::cd_double_algebra(a, &inv, &eps).map_err(|e| input(e.to_string()))?;
            let mut ib = Block::new("involution");
            strong_report_entries(&mut ib, a, &doubled.input_report);
            let name = format!("{}-double", src.name);
            let out = Source { name: name.clone(), algebra: doubled.algebra.clone(), cochain: None };
            for b in definition_blocks(&out) {
                report.add(b);
            }
            report.add(ib);
            let (qb, q_ok) = quasi_check(&format!("{name}."), &doubled.algebra);
            report.add(qb);
            Ok(Outcome { report, exit: if q_ok { EXIT_OK } else { EXIT_NEGATIVE } })
        }
    }
}

fn format_base(b: &AssociativeAlgebra, v: &Vector) -> String {
    b.format(v)
}

fn equiv(first: &Path, second: &Path, seed: u64, builtins: &BuiltinRegistry) -> Result<Outcome, CliError> {
    let r1 = load_file(first, builtins)?;
    let r2 = load_file(second, builtins)?;
    let mut report = Report::new("equiv");
    match (r1.systems.first(), r2.systems.first()) {
        (Some((n1, s1)), Some((n2, s2))) => {
            for (n, s) in [(n1, s1), (n2, s2)] {
                let rep = s.verify().map_err(|e| input(format!("[system {n}]: {e}")))?;
                if !rep.passed() {
                    return Err(input(format!("[system {n}] is not a quasicrossed system: {rep}")));
                }
            }
            let (outcome, strategy) = crossed::are_equivalent_systems_with(&Default::default(), s1, s2)
                .map_err(|e| input(e.to_string()))?;
            let mut b = Block::new("systems");
            b.push("first", n1).push("second", n2).push("strategy", strategy);
            let exit = outcome_entries(&mut b, &outcome, s1.group(), |v| format_base(s1.base(), v));
            report.add(b);
            if exit == EXIT_OK {
                let pe = crossed::are_equivalent_products(&s1.build_product(), &s2.build_product(), seed)
                    .map_err(|e| input(e.to_string()))?;
                let mut pb = Block::new("products");
                pb.push("isomorphism_verified", pe.verified);
                report.add(pb);
                if !pe.verified {
                    return Ok(Outcome { report, exit: EXIT_NEGATIVE });
                }
            }
            Ok(Outcome { report, exit })
        }
        (None, None) => {
            let a1 = r1.algebras.first().ok_or_else(|| input(format!("{}: no [system] or [algebra]", first.display())))?;
            let a2 = r2.algebras.first().ok_or_else(|| input(format!("{}: no [system] or [algebra]", second.display())))?;
            let pe = crossed::are_equivalent_products(&a1.algebra, &a2.algebra, seed).map_err(|e| input(e.to_string()))?;
            let mut b = Block::new("products");
            b.push("first", &a1.name).push("second", &a2.name).push("strategy", pe.strategy);
            let base = AssociativeAlgebra::identity_component(&a1.algebra).map_err(|e| input(e.to_string()))?;
            let mut exit = outcome_entries(&mut b, &pe.outcome, a1.algebra.group(), |v| format_base(&base, v));
            if exit == EXIT_OK {
                b.push("isomorphism_verified", pe.verified);
                if !pe.verified {
                    exit = EXIT_NEGATIVE;
                }
            }
            report.add(b);
            Ok(Outcome { report, exit })
        }
        _ => Err(input("both files need a [system], or both an [algebra]")),
    }
}

fn outcome_entries(b: &mut Block, o: &EquivalenceOutcome, g: &FiniteGroup, fmt: impl Fn(&Vector) -> String) -> u8 {
    match o {
        EquivalenceOutcome::Equivalent(u) => {
            b.push("result", "equivalent");
            for (x, ux) in g.elements().zip(u) {
                b.push(format!("u.{}", g.label(x)), fmt(ux));
            }
            EXIT_OK
        }
        EquivalenceOutcome::Inequivalent => {
            b.push("result", "inequivalent");
            EXIT_NEGATIVE
        }
        EquivalenceOutcome::Undecided(why) => {
            b.push("result", "undecided").push("reason", why);
            EXIT_UNDECIDED
        }
    }
}

fn full_report(path: &Path, seed: u64, builtins: &BuiltinRegistry) -> Result<Outcome, CliError> {
    let r = load_file(path, builtins)?;
    let mut report = Report::new("report");
    let mut ok = true;
    let mut header = Block::new("file");
    header
        .push("conductor", r.conductor)
        .push("group", r.group.as_ref().map_or("none".into(), FiniteGroup::describe))
        .push("cochains", r.cochains.len())
        .push("cocycles", r.cocycles.len())
        .push("algebras", r.algebras.len())
        .push("systems", r.systems.len())
        .push("modules", r.modules.len());
    report.add(header);
    for (name, phi) in &r.cocycles {
        let (b, c_ok) = cocycle_check(&format!("{name}."), phi);
        ok &= c_ok;
        report.add(b);
    }
    for a in &r.algebras {
        let src = Source { name: a.name.clone(), algebra: a.algebra.clone(), cochain: a.cochain.clone() };
        let prefix = format!("{}.", a.name);
        let (blocks, v_ok) = verify_blocks(&src);
        ok &= v_ok;
        blocks.into_iter().for_each(|b| report.add(b));
        let (ub, u_ok) = units_block(&prefix, &a.algebra, seed);
        ok &= u_ok;
        report.add(ub);
        report.add(center_block(&prefix, &a.algebra).0);
        simplicity_blocks(&prefix, &a.algebra, seed).0.into_iter().for_each(|b| report.add(b));
        let (mb, _) = module_blocks(&format!("{}self_", prefix), &GradedModule::regular(&a.algebra));
        mb.into_iter().for_each(|b| report.add(b));
    }
    for (name, s) in &r.systems {
        let (blocks, s_ok) = system_blocks(name, s);
        ok &= s_ok;
        blocks.into_iter().for_each(|b| report.add(b));
    }
    // pairwise equivalence is informational and does not affect the exit code
    let passing: Vec<_> = r.systems.iter().filter(|(_, s)| s.verify().is_ok_and(|v| v.passed())).collect();
    for (i, (n1, s1)) in passing.iter().enumerate() {
        for (n2, s2) in &passing[i + 1..] {
            let mut b = Block::new(format!("equiv {n1} {n2}"));
            match crossed::are_equivalent_systems_with(&Default::default(), s1, s2) {
                Ok((outcome, strategy)) => {
                    b.push("strategy", strategy);
                    outcome_entries(&mut b, &outcome, s1.group(), |v| format_base(s1.base(), v));
                }
                Err(e) => {
                    b.push("compatible", false).push("reason", e);
                }
            }
            report.add(b);
        }
    }
    for (name, md) in &r.modules {
        let mut b = Block::new(format!("module {name}"));
        b.push("dim", md.dim())
            .push("left_action", md.left_table().is_some())
            .push("right_action", md.right_table().is_some());
        report.add(b);
        module_blocks(&format!("{name}."), md).0.into_iter().for_each(|b| report.add(b));
    }
    Ok(Outcome { report, exit: if ok { EXIT_OK } else { EXIT_NEGATIVE } })
}

pub fn execute(cli: &Cli, builtins: &BuiltinRegistry) -> Result<Outcome, CliError> {
    let seed = cli.seed;
    match &cli.command {
        Command::Build { file, src } => {
            let s = load_source(file.as_deref(), src, builtins)?;
            let mut report = Report::new("build");
            definition_blocks(&s).into_iter().for_each(|b| report.add(b));
            Ok(Outcome { report, exit: EXIT_OK })
        }
        Command::Verify { file, src } => {
            let s = load_source(file.as_deref(), src, builtins)?;
            let mut report = Report::new("verify");
            let (blocks, ok) = verify_blocks(&s);
            blocks.into_iter().for_each(|b| report.add(b));
            Ok(Outcome { report, exit: if ok { EXIT_OK } else { EXIT_NEGATIVE } })
        }
        Command::Mul { operands, src } => {
            let mut file = None;
            let ops = split_operands(&mut file, operands, 2, src)?;
            let s = load_source(file.as_deref(), src, builtins)?;
            let a = &s.algebra;
            let x = parse_element(a, &ops[0])?;
            let y = parse_element(a, &ops[1])?;
            let mut b = Block::new("product");
            b.push("x", a.format(&x)).push("y", a.format(&y)).push("xy", a.format(&a.mul(&x, &y)));
            let mut report = Report::new("mul");
            report.add(b);
            Ok(Outcome { report, exit: EXIT_OK })
        }
        Command::Invert { operands, src } => {
            let mut file = None;
            let ops = split_operands(&mut file, operands, 1, src)?;
            let s = load_source(file.as_deref(), src, builtins)?;
            let a = &s.algebra;
            let x = parse_element(a, &ops[0])?;
            let g = a.degree_of(&x).map_err(|e| input(format!("{}: {e}", ops[0])))?;
            let mut b = Block::new("inverse");
            b.push("x", a.format(&x)).push("degree", a.group().label(g));
            let exit = match (a.left_inverse(&x), a.right_inverse(&x)) {
                (Ok(l), Ok(r)) => {
                    b.push("unit", true).push("left_inverse", a.format(&l)).push("right_inverse", a.format(&r));
                    EXIT_OK
                }
                _ => {
                    b.push("unit", false);
                    EXIT_NEGATIVE
                }
            };
            let mut report = Report::new("invert");
            report.add(b);
            Ok(Outcome { report, exit })
        }
        Command::Center { file, src } => {
            let s = load_source(file.as_deref(), src, builtins)?;
            let (b, central) = center_block("", &s.algebra);
            let mut report = Report::new("center");
            report.add(b);
            Ok(Outcome { report, exit: if central { EXIT_OK } else { EXIT_NEGATIVE } })
        }
        Command::Simple { file, src } => {
            let s = load_source(file.as_deref(), src, builtins)?;
            let (blocks, outcome) = simplicity_blocks("", &s.algebra, seed);
            let mut report = Report::new("simple");
            blocks.into_iter().for_each(|b| report.add(b));
            let exit = match outcome {
                SimplicityOutcome::Simple { .. } => EXIT_OK,
                SimplicityOutcome::NotSimple { .. } => EXIT_NEGATIVE,
                SimplicityOutcome::Undecided(_) => EXIT_UNDECIDED,
            };
            Ok(Outcome { report, exit })
        }
        Command::CdDouble { file, src, s, epsilon, level } => {
            let source = load_source(file.as_deref(), src, builtins)?;
            cd_double(&source, s.as_deref(), epsilon, *level)
        }
        Command::Equiv { first, second } => equiv(first, second, seed, builtins),
        Command::Report { file } => full_report(file, seed, builtins),
    }
}

/// Parses arguments, runs the command and renders its report.
/// Returns (stdout, stderr, exit code).
pub fn run<I, T>(args: I) -> (String, String, u8)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() { (String::new(), text, code) } else { (text, String::new(), code) };
        }
    };
    let builtins = BuiltinRegistry::default();
    let go = || execute(&cli, &builtins);
    let result = match cli.jobs {
        Some(0) => Err(input("--jobs must be at least 1")),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(go),
            Err(e) => Err(input(e.to_string())),
        },
        None => go(),
    };
    match result {
        Ok(o) => {
            let out = if cli.machine { o.report.to_json() } else { o.report.to_text() };
            (out, String::new(), o.exit)
        }
        Err(e) => (String::new(), format!("error: {e}\n"), EXIT_INPUT),
    }
}
