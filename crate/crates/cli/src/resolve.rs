//! Turns a parsed [`Document`] into groups, cochains, algebras, systems and modules.

use std::collections::HashMap;

use quasialg::algebra::{GradedQuasialgebra, StructureTable};
use quasialg::builtins::BuiltinRegistry;
use quasialg::cochains::{self, coboundary_of, Cochain2, Cocycle3};
use quasialg::crossed::{AssociativeAlgebra, QuasicrossedSystem};
use quasialg::dga::DeformedGroupAlgebra;
use quasialg::gmodules::GradedModule;
use quasialg::groups::{FiniteGroup, GroupElement};
use quasialg::linalg::{self, Matrix, Vector};
use quasialg::scalars::Scalar;

use crate::dsl::{split_top, Document, DslError, DslErrorKind, Entry, Loc, Section, SectionKind};

#[derive(Clone, Debug)]
pub struct NamedAlgebra {
    pub name: String,
    pub algebra: GradedQuasialgebra,
    /// Set when the algebra is K_F G for a known F.
    pub cochain: Option<Cochain2>,
}

#[derive(Clone, Debug)]
pub struct Resolved {
    pub conductor: u32,
    pub group: Option<FiniteGroup>,
    pub cochains: Vec<(String, Cochain2)>,
    pub cocycles: Vec<(String, Cocycle3)>,
    pub algebras: Vec<NamedAlgebra>,
    /// Systems are kept unvalidated so that `verify` can report violations.
    pub systems: Vec<(String, QuasicrossedSystem)>,
    pub modules: Vec<(String, GradedModule)>,
}

fn invalid(loc: Loc, msg: impl Into<String>) -> DslError {
    DslError::at(loc, DslErrorKind::Invalid(msg.into()))
}

fn syntax(loc: Loc, msg: impl Into<String>) -> DslError {
    DslError::at(loc, DslErrorKind::Syntax(msg.into()))
}

fn unknown(loc: Loc, name: &str) -> DslError {
    DslError::at(loc, DslErrorKind::UnknownReference(name.into()))
}

fn required<'a>(section: &'a Section, key: &str) -> Result<&'a Entry, DslError> {
    section.get(key).ok_or_else(|| syntax(section.loc, format!("[{}] needs `{key}`", section.title())))
}

fn check_keys(section: &Section, allowed: &[&str], extra: impl Fn(&str) -> bool) -> Result<(), DslError> {
    for e in &section.entries {
        if !allowed.contains(&e.key.as_str()) && !extra(&e.key) {
            return Err(syntax(e.key_loc, format!("unknown key `{}` in [{}]", e.key, section.title())));
        }
    }
    Ok(())
}

pub fn scalar(m: u32, text: &str, loc: Loc) -> Result<Scalar, DslError> {
    Scalar::parse(m, text).map_err(|e| syntax(loc, e.to_string()))
}

/// A linear combination `c*name + name + (p + q*z^1)*name + c`. A term
/// without a name is a multiple of `unit` when one is given.
pub fn combination(
    m: u32,
    text: &str,
    names: &[String],
    unit: Option<&Vector>,
    loc: Loc,
) -> Result<Vector, DslError> {
    let mut out = linalg::zero_vector(m, names.len());
    let index = |n: &str| names.iter().position(|x| x == n);
    let add_constant = |out: &mut Vector, c: Scalar| -> Result<(), DslError> {
        let u = unit.ok_or_else(|| syntax(loc, "a term needs a basis name"))?;
        for (o, x) in out.iter_mut().zip(u) {
            *o += &(&c * x);
        }
        Ok(())
    };
    for term in split_top(text, '+') {
        let t = term.trim();
        if t.is_empty() {
            return Err(syntax(loc, format!("empty term in `{text}`")));
        }
        if t.starts_with('(') {
            let mut d = 0;
            let mut end = None;
            for (i, c) in t.char_indices() {
                match c {
                    '(' => d += 1,
                    ')' => {
                        d -= 1;
                        if d == 0 {
                            end = Some(i);
                            break;
                        }
                    }
                    _ => {}
                }
            }
            let end = end.ok_or_else(|| syntax(loc, format!("unbalanced `(` in `{t}`")))?;
            let c = scalar(m, &t[1..end], loc)?;
            let rest = t[end + 1..].trim();
            if rest.is_empty() {
                add_constant(&mut out, c)?;
                continue;
            }
            let name = rest.strip_prefix('*').map(str::trim).ok_or_else(|| syntax(loc, format!("expected `*` in `{t}`")))?;
            let i = index(name).ok_or_else(|| unknown(loc, name))?;
            out[i] += &c;
        } else if let Some(i) = index(t) {
            out[i] += &Scalar::one(m);
        } else if let Some(i) = t.strip_prefix('-').and_then(|n| index(n.trim())) {
            out[i] -= &Scalar::one(m);
        } else if let Some((c, name)) = t.rsplit_once('*').filter(|(_, n)| index(n.trim()).is_some()) {
            let i = index(name.trim()).unwrap();
            out[i] += &scalar(m, c, loc)?;
        } else if let Ok(c) = Scalar::parse(m, t) {
            add_constant(&mut out, c)?;
        } else {
            let name = t.rsplit('*').next().unwrap_or(t).trim();
            return Err(unknown(loc, name));
        }
    }
    Ok(out)
}

fn element_labels(g: &FiniteGroup) -> HashMap<String, GroupElement> {
    g.elements().map(|x| (g.label(x), x)).collect()
}

fn label(labels: &HashMap<String, GroupElement>, s: &str, loc: Loc) -> Result<GroupElement, DslError> {
    labels.get(s.trim()).copied().ok_or_else(|| unknown(loc, s.trim()))
}

/// `(a,b,…)` of group labels.
fn tuple(labels: &HashMap<String, GroupElement>, s: &str, arity: usize, loc: Loc) -> Result<Vec<GroupElement>, DslError> {
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .ok_or_else(|| syntax(loc, format!("expected a tuple, got `{s}`")))?;
    let parts: Vec<&str> = inner.split(',').collect();
    if parts.len() != arity {
        return Err(syntax(loc, format!("expected {arity} entries in `{s}`")));
    }
    parts.iter().map(|p| label(labels, p, loc)).collect()
}

/// `{ key: value, … }`.
fn map_entries(s: &str, loc: Loc) -> Result<Vec<(String, String)>, DslError> {
    let inner = s
        .trim()
        .strip_prefix('{')
        .and_then(|x| x.strip_suffix('}'))
        .ok_or_else(|| syntax(loc, "expected `{ … }`"))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    split_top(inner, ',')
        .into_iter()
        .map(|item| {
            let kv = split_top(item, ':');
            if kv.len() != 2 {
                return Err(syntax(loc, format!("expected `key: value`, got `{}`", item.trim())));
            }
            Ok((kv[0].trim().to_string(), kv[1].trim().to_string()))
        })
        .collect()
}

/// `[[a, b], [c, d]]`.
fn nested_list(s: &str, loc: Loc) -> Result<Vec<Vec<String>>, DslError> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|x| x.strip_suffix(']'))
        .ok_or_else(|| syntax(loc, "expected `[[…], …]`"))?;
    split_top(inner, ',')
        .into_iter()
        .map(|row| {
            let r = row
                .trim()
                .strip_prefix('[')
                .and_then(|x| x.strip_suffix(']'))
                .ok_or_else(|| syntax(loc, format!("expected a row `[…]`, got `{}`", row.trim())))?;
            Ok(split_top(r, ',').into_iter().map(|x| x.trim().to_string()).collect())
        })
        .collect()
}

fn parse_group(section: &Section) -> Result<FiniteGroup, DslError> {
    check_keys(section, &["product", "table", "identity"], |_| false)?;
    match (section.get("product"), section.get("table")) {
        (Some(p), None) => {
            if section.get("identity").is_some() {
                return Err(syntax(p.key_loc, "`identity` only applies to `table`"));
            }
            let factors = p
                .value
                .split('x')
                .map(|f| {
                    f.trim()
                        .strip_prefix('Z')
                        .and_then(|n| n.parse::<u32>().ok())
                        .filter(|&n| n > 0)
                        .ok_or_else(|| syntax(p.value_loc, format!("expected `Zn`, got `{}`", f.trim())))
                })
                .collect::<Result<Vec<_>, _>>()?;
            FiniteGroup::product_of_cyclic(&factors).map_err(|e| invalid(p.value_loc, e.to_string()))
        }
        (None, Some(t)) => {
            let rows = nested_list(&t.value, t.value_loc)?
                .into_iter()
                .map(|r| {
                    r.iter()
                        .map(|x| x.parse::<usize>().map_err(|_| syntax(t.value_loc, format!("`{x}` is not an index"))))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            let identity = match section.get("identity") {
                Some(id) => id.value.parse::<usize>().map_err(|_| syntax(id.value_loc, "identity must be an index"))?,
                None => (0..rows.len())
                    .find(|&e| rows[e].iter().copied().eq(0..rows.len()))
                    .ok_or_else(|| invalid(t.value_loc, "the table has no identity row"))?,
            };
            FiniteGroup::from_table(rows, identity).map_err(|e| invalid(t.value_loc, e.to_string()))
        }
        _ => Err(syntax(section.loc, "[group] needs exactly one of `product` or `table`")),
    }
}

fn same_group(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    a == b
}

fn lift_cochain(f: Cochain2, m: u32, loc: Loc) -> Result<Cochain2, DslError> {
    f.with_conductor(m).ok_or_else(|| invalid(loc, format!("values do not lie in Q(zeta_{m})")))
}

fn parse_cochain(section: &Section, g: &FiniteGroup, m: u32) -> Result<Cochain2, DslError> {
    check_keys(section, &["builtin", "table"], |_| false)?;
    match (section.get("builtin"), section.get("table")) {
        (Some(b), None) => {
            let f = match b.value.split_once(':') {
                None if b.value == "complex" => cochains::complex_cochain(),
                None if b.value == "quaternion" => cochains::quaternion_cochain(),
                None if b.value == "octonion" => cochains::octonion_cochain(),
                None if b.value == "trivial" => Cochain2::trivial(g, m),
                Some(("clifford", n)) => {
                    let n = n.parse::<usize>().ok().filter(|n| (1..=6).contains(n));
                    cochains::clifford_cochain(n.ok_or_else(|| syntax(b.value_loc, "clifford:N needs 1 <= N <= 6"))?)
                }
                _ => return Err(unknown(b.value_loc, &b.value)),
            };
            if !same_group(f.group(), g) {
                return Err(invalid(b.value_loc, format!("builtin `{}` lives on {}, not on {}", b.value, f.group().describe(), g.describe())));
            }
            lift_cochain(f, m, b.value_loc)
        }
        (None, Some(t)) => {
            let labels = element_labels(g);
            let n = g.order();
            let mut values = vec![Scalar::one(m); n * n];
            for (k, v) in map_entries(&t.value, t.value_loc)? {
                let idx = tuple(&labels, &k, 2, t.value_loc)?;
                values[idx[0] * n + idx[1]] = scalar(m, &v, t.value_loc)?;
            }
            Cochain2::new(g, values).map_err(|e| invalid(t.value_loc, e.to_string()))
        }
        _ => Err(syntax(section.loc, "[cochain] needs exactly one of `builtin` or `table`")),
    }
}

fn parse_cocycle(section: &Section, g: &FiniteGroup, m: u32, cochains: &[(String, Cochain2)]) -> Result<Cocycle3, DslError> {
    check_keys(section, &["builtin", "table", "coboundary", "alpha", "beta", "omega"], |_| false)?;
    let given: Vec<&Entry> = ["builtin", "table", "coboundary"].iter().filter_map(|k| section.get(k)).collect();
    if given.len() != 1 {
        return Err(syntax(section.loc, "[cocycle] needs exactly one of `builtin`, `table` or `coboundary`"));
    }
    let e = given[0];
    let z3_keys = ["alpha", "beta", "omega"].iter().filter_map(|k| section.get(k)).count();
    if z3_keys > 0 && !(e.key == "builtin" && e.value == "z3") {
        return Err(syntax(section.loc, "`alpha`, `beta`, `omega` only apply to `builtin = z3`"));
    }
    let phi = match e.key.as_str() {
        "coboundary" => {
            let f = cochains.iter().find(|(n, _)| *n == e.value).ok_or_else(|| unknown(e.value_loc, &e.value))?;
            coboundary_of(&f.1)
        }
        "table" => {
            let labels = element_labels(g);
            let n = g.order();
            let mut values = vec![Scalar::one(m); n * n * n];
            for (k, v) in map_entries(&e.value, e.value_loc)? {
                let idx = tuple(&labels, &k, 3, e.value_loc)?;
                values[(idx[0] * n + idx[1]) * n + idx[2]] = scalar(m, &v, e.value_loc)?;
            }
            return Cocycle3::new(g, values).map_err(|err| invalid(e.value_loc, err.to_string()));
        }
        _ => {
            let phi = match e.value.split_once(':') {
                None if e.value == "trivial" => Cocycle3::trivial(g, m),
                None if e.value == "antiassociative" => cochains::antiassociative_cocycle(m),
                None if e.value == "z3" => {
                    let get = |k: &str| -> Result<Scalar, DslError> {
                        let x = required(section, k)?;
                        scalar(m, &x.value, x.value_loc)
                    };
                    cochains::z3_cocycle(&get("alpha")?, &get("beta")?, &get("omega")?)
                        .map_err(|err| invalid(e.value_loc, err.to_string()))?
                }
                Some(("cyclic", k)) => {
                    let k = k.parse::<i64>().map_err(|_| syntax(e.value_loc, "cyclic:K needs an integer K"))?;
                    let n = g.order() as u32;
                    if g.factors() != Some(&[n][..]) {
                        return Err(invalid(e.value_loc, "cyclic:K needs a cyclic group"));
                    }
                    cochains::cyclic_cocycle(n, k)
                }
                _ => return Err(unknown(e.value_loc, &e.value)),
            };
            if !same_group(phi.group(), g) {
                return Err(invalid(e.value_loc, format!("builtin `{}` lives on {}", e.value, phi.group().describe())));
            }
            phi.with_conductor(m).ok_or_else(|| invalid(e.value_loc, format!("values do not lie in Q(zeta_{m})")))?
        }
    };
    if phi.conductor() != m {
        return Err(invalid(e.value_loc, format!("cocycle has conductor {}, file declares {m}", phi.conductor())));
    }
    Ok(phi)
}

/// `name:label, name:label, …`.
fn basis_list(
    entry: &Entry,
    labels: &HashMap<String, GroupElement>,
) -> Result<(Vec<String>, Vec<GroupElement>), DslError> {
    let mut names = Vec::new();
    let mut degrees = Vec::new();
    for item in entry.value.split(',') {
        let (n, d) = item
            .split_once(':')
            .ok_or_else(|| syntax(entry.value_loc, format!("expected `name:degree`, got `{}`", item.trim())))?;
        let n = n.trim().to_string();
        if names.contains(&n) {
            return Err(invalid(entry.value_loc, format!("basis name `{n}` repeated")));
        }
        if n.is_empty() || n.contains(['*', '(', ')', '+']) || Scalar::parse(1, &n).is_ok() {
            return Err(syntax(entry.value_loc, format!("`{n}` cannot be used as a basis name")));
        }
        degrees.push(label(labels, d, entry.value_loc)?);
        names.push(n);
    }
    Ok((names, degrees))
}

fn parse_algebra(
    section: &Section,
    doc: &Document,
    group: Option<&FiniteGroup>,
    cochains: &[(String, Cochain2)],
    cocycles: &[(String, Cocycle3)],
    builtins: &BuiltinRegistry,
) -> Result<NamedAlgebra, DslError> {
    let name = section.name.clone().unwrap_or_default();
    let m = doc.conductor;
    if let Some(b) = section.get("builtin") {
        check_keys(section, &["builtin"], |_| false)?;
        let built = builtins.build(&b.value, None).map_err(|e| invalid(b.value_loc, e.to_string()))?;
        if built.algebra.conductor() != m {
            return Err(invalid(b.value_loc, format!("builtin has conductor {}, file declares {m}", built.algebra.conductor())));
        }
        return Ok(NamedAlgebra { name, algebra: built.algebra, cochain: built.cochain });
    }
    if let Some(d) = section.get("deformed") {
        check_keys(section, &["deformed"], |_| false)?;
        let f = cochains.iter().find(|(n, _)| *n == d.value).ok_or_else(|| unknown(d.value_loc, &d.value))?;
        let dga = DeformedGroupAlgebra::build(&f.1);
        return Ok(NamedAlgebra { name, algebra: dga.algebra().clone(), cochain: Some(f.1.clone()) });
    }
    check_keys(section, &["basis", "cocycle"], |k| k.contains('*'))?;
    let g = group.ok_or_else(|| syntax(section.loc, "an explicit algebra needs a [group] section"))?;
    let labels = element_labels(g);
    let basis = required(section, "basis")?;
    let (names, degrees) = basis_list(basis, &labels)?;
    let n = names.len();
    let mut table: StructureTable = vec![Vec::new(); n * n];
    for e in section.entries.iter().filter(|e| e.key.contains('*')) {
        let (x, y) = e.key.split_once('*').unwrap();
        let i = names.iter().position(|s| s == x.trim()).ok_or_else(|| unknown(e.key_loc, x.trim()))?;
        let j = names.iter().position(|s| s == y.trim()).ok_or_else(|| unknown(e.key_loc, y.trim()))?;
        let v = combination(m, &e.value, &names, None, e.value_loc)?;
        table[i * n + j] = v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
    }
    let algebra = match section.get("cocycle") {
        Some(c) => {
            let phi = cocycles.iter().find(|(k, _)| *k == c.value).ok_or_else(|| unknown(c.value_loc, &c.value))?;
            GradedQuasialgebra::new(g, names, degrees, table, phi.1.clone())
        }
        None => GradedQuasialgebra::with_inferred_cocycle(g, names, degrees, table, m),
    }
    .map_err(|e| invalid(section.loc, format!("[{}]: {e}", section.title())))?;
    Ok(NamedAlgebra { name, algebra, cochain: None })
}

fn parse_system(
    section: &Section,
    doc: &Document,
    group: Option<&FiniteGroup>,
    cocycles: &[(String, Cocycle3)],
    algebras: &[NamedAlgebra],
) -> Result<QuasicrossedSystem, DslError> {
    let m = doc.conductor;
    check_keys(section, &["base", "cocycle"], |k| k.starts_with("sigma ") || k.starts_with("alpha "))?;
    let g = group.ok_or_else(|| syntax(section.loc, "[system] needs a [group] section"))?;
    let labels = element_labels(g);
    let base_e = required(section, "base")?;
    let base = match base_e.value.split_once(':') {
        None if base_e.value == "field" => AssociativeAlgebra::field(m),
        Some(("matrix", k)) => {
            let k = k.parse::<usize>().ok().filter(|&k| (1..=4).contains(&k));
            AssociativeAlgebra::matrix_algebra(k.ok_or_else(|| syntax(base_e.value_loc, "matrix:N needs 1 <= N <= 4"))?, m)
        }
        _ => {
            let a = algebras.iter().find(|a| a.name == base_e.value).ok_or_else(|| unknown(base_e.value_loc, &base_e.value))?;
            AssociativeAlgebra::identity_component(&a.algebra).map_err(|e| invalid(base_e.value_loc, e.to_string()))?
        }
    };
    let cocycle = match section.get("cocycle") {
        Some(c) => cocycles.iter().find(|(k, _)| *k == c.value).ok_or_else(|| unknown(c.value_loc, &c.value))?.1.clone(),
        None => Cocycle3::trivial(g, m),
    };
    if cocycle.group() != g {
        return Err(invalid(section.loc, "the cocycle lives on a different group"));
    }
    let n = g.order();
    let d = base.dim();
    let mut sigma: Vec<Matrix> = vec![linalg::identity(m, d); n];
    let mut alpha: Vec<Vector> = vec![base.one(); n * n];
    for e in &section.entries {
        if let Some(x) = e.key.strip_prefix("sigma ") {
            let gx = label(&labels, x, e.key_loc)?;
            let rows = nested_list(&e.value, e.value_loc)?;
            if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                return Err(invalid(e.value_loc, format!("sigma must be a {d} x {d} matrix")));
            }
            sigma[gx] = rows
                .iter()
                .map(|r| r.iter().map(|x| scalar(m, x, e.value_loc)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
        } else if let Some(x) = e.key.strip_prefix("alpha ") {
            let idx = tuple(&labels, x, 2, e.key_loc)?;
            let one = base.one();
            alpha[idx[0] * n + idx[1]] = combination(m, &e.value, base.names(), Some(&one), e.value_loc)?;
        }
    }
    Ok(QuasicrossedSystem::from_parts(g, base, cocycle, sigma, alpha))
}

fn parse_module(section: &Section, doc: &Document, algebras: &[NamedAlgebra]) -> Result<GradedModule, DslError> {
    let m = doc.conductor;
    check_keys(section, &["algebra", "basis", "actions"], |k| k.starts_with("left:") || k.starts_with("right:"))?;
    let a_e = required(section, "algebra")?;
    let a = &algebras.iter().find(|a| a.name == a_e.value).ok_or_else(|| unknown(a_e.value_loc, &a_e.value))?.algebra;
    let labels = element_labels(a.group());
    let (names, degrees) = basis_list(required(section, "basis")?, &labels)?;
    let (na, nv) = (a.dim(), names.len());
    let mut left: Option<StructureTable> = None;
    let mut right: Option<StructureTable> = None;
    if let Some(acts) = section.get("actions") {
        for side in acts.value.split(',').map(str::trim) {
            match side {
                "left" => left = Some(vec![Vec::new(); na * nv]),
                "right" => right = Some(vec![Vec::new(); na * nv]),
                "none" => {}
                other => return Err(syntax(acts.value_loc, format!("unknown action `{other}`"))),
            }
        }
    }
    for e in &section.entries {
        let (is_left, body) = if let Some(b) = e.key.strip_prefix("left:") {
            (true, b)
        } else if let Some(b) = e.key.strip_prefix("right:") {
            (false, b)
        } else {
            continue;
        };
        let (x, y) = body.split_once('*').ok_or_else(|| syntax(e.key_loc, "expected `left: x*v` or `right: v*x`"))?;
        let (x, y) = (x.trim(), y.trim());
        let (alg_name, mod_name) = if is_left { (x, y) } else { (y, x) };
        let i = a.index_of(alg_name).ok_or_else(|| unknown(e.key_loc, alg_name))?;
        let v = names.iter().position(|s| s == mod_name).ok_or_else(|| unknown(e.key_loc, mod_name))?;
        let val: Vec<(usize, Scalar)> = combination(m, &e.value, &names, None, e.value_loc)?
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        if is_left {
            left.get_or_insert_with(|| vec![Vec::new(); na * nv])[i * nv + v] = val;
        } else {
            right.get_or_insert_with(|| vec![Vec::new(); na * nv])[v * na + i] = val;
        }
    }
    GradedModule::new(a, names, degrees, left, right).map_err(|e| invalid(section.loc, format!("[{}]: {e}", section.title())))
}

pub fn resolve(doc: &Document, builtins: &BuiltinRegistry) -> Result<Resolved, DslError> {
    let m = doc.conductor;
    let group = doc.sections_of(SectionKind::Group).next().map(parse_group).transpose()?;
    let need_group = |s: &Section| group.as_ref().ok_or_else(|| syntax(s.loc, format!("[{}] needs a [group] section", s.title())));
    let name = |s: &Section| s.name.clone().unwrap_or_default();
    let mut out = Resolved {
        conductor: m,
        group: group.clone(),
        cochains: Vec::new(),
        cocycles: Vec::new(),
        algebras: Vec::new(),
        systems: Vec::new(),
        modules: Vec::new(),
    };
    for s in doc.sections_of(SectionKind::Cochain) {
        let f = parse_cochain(s, need_group(s)?, m)?;
        out.cochains.push((name(s), f));
    }
    for s in doc.sections_of(SectionKind::Cocycle) {
        let phi = parse_cocycle(s, need_group(s)?, m, &out.cochains)?;
        out.cocycles.push((name(s), phi));
    }
    for s in doc.sections_of(SectionKind::Algebra) {
        let a = parse_algebra(s, doc, group.as_ref(), &out.cochains, &out.cocycles, builtins)?;
        out.algebras.push(a);
    }
    for s in doc.sections_of(SectionKind::System) {
        let sys = parse_system(s, doc, group.as_ref(), &out.cocycles, &out.algebras)?;
        out.systems.push((name(s), sys));
    }
    for s in doc.sections_of(SectionKind::Module) {
        let md = parse_module(s, doc, &out.algebras)?;
        out.modules.push((name(s), md));
    }
    Ok(out)
}
