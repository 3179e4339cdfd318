//! Quasicrossed systems (G, B, φ, σ, α), the product they define, extraction
//! of a system from a quasicrossed product, and equivalence of systems.
//!
//! Elements of B are dense coefficient vectors. σ(g) is a matrix whose
//! columns are the images of the basis vectors of B.

use std::fmt;

use thiserror::Error;

use crate::algebra::{AlgebraError, GradedQuasialgebra, QuasicrossedOutcome, StructureTable};
use crate::cochains::Cocycle3;
use crate::groups::{FiniteGroup, GroupElement};
use crate::linalg::{self, Matrix, Solution, Vector};
use crate::scalars::{roots_of_unity_order, Scalar};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CrossedError {
    #[error("base algebra is not associative at basis triple {0:?}")]
    NotAssociative([usize; 3]),
    #[error("base algebra has no identity")]
    NoIdentity,
    #[error("alpha({0},{1}) is not a unit of the base algebra")]
    NonUnitAlpha(GroupElement, GroupElement),
    #[error("sigma({0}) is not an automorphism of the base algebra")]
    NonAutomorphismSigma(GroupElement),
    #[error("system data has the wrong shape: {0}")]
    WrongShape(String),
    #[error("system violates its axioms: {0}")]
    Violations(SystemReport),
    #[error("not a quasicrossed product: {0}")]
    NotQuasicrossed(String),
    #[error("systems are not comparable: {0}")]
    IncompatibleSystems(String),
    #[error("identity components differ as algebras")]
    IncompatibleBase,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A unital associative algebra with an explicit basis. Equality compares
/// structure constants only; basis names are labels.
#[derive(Clone, Debug)]
pub struct AssociativeAlgebra {
    m: u32,
    names: Vec<String>,
    table: StructureTable,
    one: Vector,
}

impl PartialEq for AssociativeAlgebra {
    fn eq(&self, other: &AssociativeAlgebra) -> bool {
        self.m == other.m && self.table == other.table
    }
}

impl AssociativeAlgebra {
    /// Checks associativity on every basis triple and solves for the identity.
    pub fn new(names: Vec<String>, table: StructureTable, m: u32) -> Result<AssociativeAlgebra, CrossedError> {
        let n = names.len();
        if n == 0 || table.len() != n * n {
            return Err(CrossedError::WrongShape("structure table size".into()));
        }
        let mut alg = AssociativeAlgebra { m, names, table, one: linalg::zero_vector(m, n) };
        for i in 0..n {
            for j in 0..n {
                let ij = alg.mul(&alg.basis(i), &alg.basis(j));
                for k in 0..n {
                    let jk = alg.mul(&alg.basis(j), &alg.basis(k));
                    if alg.mul(&ij, &alg.basis(k)) != alg.mul(&alg.basis(i), &jk) {
                        return Err(CrossedError::NotAssociative([i, j, k]));
                    }
                }
            }
        }
        // identity: Σ c_i b_i with (Σ c_i b_i) b_j = b_j and b_j (Σ c_i b_i) = b_j
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for j in 0..n {
            let left: Vec<Vector> = (0..n).map(|i| alg.mul(&alg.basis(i), &alg.basis(j))).collect();
            let right: Vec<Vector> = (0..n).map(|i| alg.mul(&alg.basis(j), &alg.basis(i))).collect();
            for cols in [left, right] {
                for k in 0..n {
                    rows.push(cols.iter().map(|c| c[k].clone()).collect());
                    rhs.push(if k == j { Scalar::one(m) } else { Scalar::zero(m) });
                }
            }
        }
        alg.one = match linalg::solve(m, &rows, &rhs, n) {
            Solution::Unique(v) | Solution::Many(v, _) => v,
            Solution::Inconsistent => return Err(CrossedError::NoIdentity),
        };
        Ok(alg)
    }

    /// The base field 𝕂 itself, basis `{1}`.
    pub fn field(m: u32) -> AssociativeAlgebra {
        AssociativeAlgebra::new(vec!["1".into()], vec![vec![(0, Scalar::one(m))]], m).expect("field")
    }

    /// Mat_n(𝕂) with basis E11, E12, … in row-major order.
    pub fn matrix_algebra(n: usize, m: u32) -> AssociativeAlgebra {
        let names = (0..n * n).map(|i| format!("E{}{}", i / n + 1, i % n + 1)).collect();
        let table = (0..n.pow(4))
            .map(|idx| {
                let (a, b) = (idx / (n * n), idx % (n * n));
                let (i, j, k, l) = (a / n, a % n, b / n, b % n);
                if j == k {
                    vec![(i * n + l, Scalar::one(m))]
                } else {
                    vec![]
                }
            })
            .collect();
        AssociativeAlgebra::new(names, table, m).expect("matrix algebra")
    }

    /// The identity component A_e of a graded quasialgebra, in component order.
    pub fn identity_component(a: &GradedQuasialgebra) -> Result<AssociativeAlgebra, CrossedError> {
        let e = a.group().identity();
        let comp = a.component(e);
        let pos = |k: usize| comp.iter().position(|&c| c == k).expect("graded product");
        let names = comp.iter().map(|&i| a.name(i).to_string()).collect();
        let table = comp
            .iter()
            .flat_map(|&i| comp.iter().map(move |&j| (i, j)))
            .map(|(i, j)| a.structure(i, j).iter().map(|(k, c)| (pos(*k), c.clone())).collect())
            .collect();
        AssociativeAlgebra::new(names, table, a.conductor())
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn structure_table(&self) -> &StructureTable {
        &self.table
    }

    pub fn one(&self) -> Vector {
        self.one.clone()
    }

    pub fn zero(&self) -> Vector {
        linalg::zero_vector(self.m, self.dim())
    }

    pub fn basis(&self, i: usize) -> Vector {
        linalg::unit_vector(self.m, self.dim(), i)
    }

    pub fn scalar(&self, c: &Scalar) -> Vector {
        self.one.iter().map(|x| x * c).collect()
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut out = self.zero();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in &self.table[i * n + j] {
                    out[*k] += &(&ab * c);
                }
            }
        }
        out
    }

    /// Two-sided inverse, if any.
    pub fn inverse(&self, x: &[Scalar]) -> Option<Vector> {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.mul(x, &self.basis(j))).collect();
        let a = linalg::transpose(&cols);
        match linalg::solve(self.m, &a, &self.one, n) {
            Solution::Unique(v) if self.mul(&v, x) == self.one => Some(v),
            _ => None,
        }
    }

    pub fn is_unit(&self, x: &[Scalar]) -> bool {
        self.inverse(x).is_some()
    }

    /// Invertible and multiplicative on basis pairs.
    pub fn is_automorphism(&self, t: &Matrix) -> bool {
        let n = self.dim();
        if t.len() != n || t.iter().any(|r| r.len() != n) || linalg::inverse(self.m, t).is_none() {
            return false;
        }
        (0..n).all(|i| {
            (0..n).all(|j| {
                let lhs = linalg::mat_vec(t, &self.mul(&self.basis(i), &self.basis(j)));
                let rhs = self.mul(&linalg::mat_vec(t, &self.basis(i)), &linalg::mat_vec(t, &self.basis(j)));
                lhs == rhs
            })
        })
    }

    pub fn format(&self, x: &[Scalar]) -> String {
        crate::algebra::format_terms(
            x.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (self.names[i].as_str(), c)),
        )
    }
}

/// Violations of the system axioms, each with its witness.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SystemReport {
    /// (g, h, basis index of x) where σ(g)σ(h)(x) ≠ α(g,h)σ(gh)(x)α(g,h)⁻¹.
    pub conjugation: Vec<(GroupElement, GroupElement, usize)>,
    /// (g, h, k) where α(g,h)α(gh,k) ≠ φ(g,h,k)σ(g)(α(h,k))α(g,hk).
    pub twisted_cocycle: Vec<(GroupElement, GroupElement, GroupElement)>,
    /// g where α(g,e) ≠ 1 or α(e,g) ≠ 1.
    pub normalization: Vec<GroupElement>,
}

impl SystemReport {
    pub fn passed(&self) -> bool {
        self.conjugation.is_empty() && self.twisted_cocycle.is_empty() && self.normalization.is_empty()
    }
}

impl fmt::Display for SystemReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} conjugation, {} twisted cocycle, {} normalization failure(s)",
            self.conjugation.len(),
            self.twisted_cocycle.len(),
            self.normalization.len()
        )
    }
}

/// (G, B, φ, σ, α). Values built with [`QuasicrossedSystem::new`] satisfy
/// every axiom; [`QuasicrossedSystem::from_parts`] keeps raw data for checking.
#[derive(Clone, Debug, PartialEq)]
pub struct QuasicrossedSystem {
    group: FiniteGroup,
    base: AssociativeAlgebra,
    cocycle: Cocycle3,
    sigma: Vec<Matrix>,
    alpha: Vec<Vector>,
}

impl QuasicrossedSystem {
    /// `sigma[g]` is σ(g); `alpha[g * |G| + h]` is α(g,h).
    pub fn from_parts(
        group: &FiniteGroup,
        base: AssociativeAlgebra,
        cocycle: Cocycle3,
        sigma: Vec<Matrix>,
        alpha: Vec<Vector>,
    ) -> QuasicrossedSystem {
        QuasicrossedSystem { group: group.clone(), base, cocycle, sigma, alpha }
    }

    pub fn new(
        group: &FiniteGroup,
        base: AssociativeAlgebra,
        cocycle: Cocycle3,
        sigma: Vec<Matrix>,
        alpha: Vec<Vector>,
    ) -> Result<QuasicrossedSystem, CrossedError> {
        let s = QuasicrossedSystem::from_parts(group, base, cocycle, sigma, alpha);
        let report = s.verify()?;
        if report.passed() {
            Ok(s)
        } else {
            Err(CrossedError::Violations(report))
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn base(&self) -> &AssociativeAlgebra {
        &self.base
    }

    pub fn cocycle(&self) -> &Cocycle3 {
        &self.cocycle
    }

    pub fn sigma(&self, g: GroupElement) -> &Matrix {
        &self.sigma[g]
    }

    pub fn alpha(&self, g: GroupElement, h: GroupElement) -> &Vector {
        &self.alpha[g * self.group.order() + h]
    }

    pub fn alpha_mut(&mut self, g: GroupElement, h: GroupElement) -> &mut Vector {
        let n = self.group.order();
        &mut self.alpha[g * n + h]
    }

    pub fn apply_sigma(&self, g: GroupElement, x: &[Scalar]) -> Vector {
        linalg::mat_vec(&self.sigma[g], x)
    }

    /// Checks that each σ(g) is an automorphism and each α(g,h) a unit, then
    /// lists every failure of the conjugation, twisted cocycle and
    /// normalization conditions.
    pub fn verify(&self) -> Result<SystemReport, CrossedError> {
        let grp = &self.group;
        let n = grp.order();
        let b = &self.base;
        if self.sigma.len() != n || self.alpha.len() != n * n {
            return Err(CrossedError::WrongShape("sigma/alpha tables do not match the group".into()));
        }
        if self.cocycle.group() != grp {
            return Err(CrossedError::WrongShape("cocycle group differs".into()));
        }
        if self.alpha.iter().any(|a| a.len() != b.dim()) {
            return Err(CrossedError::WrongShape("alpha value has wrong length".into()));
        }
        for g in grp.elements() {
            if !b.is_automorphism(&self.sigma[g]) {
                return Err(CrossedError::NonAutomorphismSigma(g));
            }
        }
        let mut alpha_inv = Vec::with_capacity(n * n);
        for g in grp.elements() {
            for h in grp.elements() {
                alpha_inv.push(b.inverse(self.alpha(g, h)).ok_or(CrossedError::NonUnitAlpha(g, h))?);
            }
        }
        let mut report = SystemReport::default();
        for g in grp.elements() {
            for h in grp.elements() {
                let gh = grp.mul(g, h);
                let a = self.alpha(g, h);
                for x in 0..b.dim() {
                    let bx = b.basis(x);
                    let lhs = self.apply_sigma(g, &self.apply_sigma(h, &bx));
                    let rhs = b.mul(&b.mul(a, &self.apply_sigma(gh, &bx)), &alpha_inv[g * n + h]);
                    if lhs != rhs {
                        report.conjugation.push((g, h, x));
                    }
                }
                for k in grp.elements() {
                    let lhs = b.mul(a, self.alpha(gh, k));
                    let rhs = b.mul(&self.apply_sigma(g, self.alpha(h, k)), self.alpha(g, grp.mul(h, k)));
                    let phi = self.cocycle.get(g, h, k);
                    let rhs: Vector = rhs.iter().map(|c| c * phi).collect();
                    if lhs != rhs {
                        report.twisted_cocycle.push((g, h, k));
                    }
                }
            }
        }
        let e = grp.identity();
        for g in grp.elements() {
            if *self.alpha(g, e) != b.one() || *self.alpha(e, g) != b.one() {
                report.normalization.push(g);
            }
        }
        Ok(report)
    }

    /// The algebra C = ⊕_g B·ḡ with (xḡ)(yh̄) = xσ(g)(y)α(g,h)·(gh)‾.
    /// Basis index g·dim B + i stands for b_i ḡ.
    pub fn build_product(&self) -> GradedQuasialgebra {
        let grp = &self.group;
        let b = &self.base;
        let d = b.dim();
        let n = grp.order();
        let names: Vec<String> = if d == 1 {
            crate::dga::group_basis_names(grp)
        } else {
            grp.elements()
                .flat_map(|g| b.names().iter().map(move |x| format!("{x}_g{}", grp.label(g))))
                .collect()
        };
        let degrees = grp.elements().flat_map(|g| std::iter::repeat_n(g, d)).collect();
        let mut table = Vec::with_capacity((n * d).pow(2));
        for p in 0..n * d {
            let (g, i) = (p / d, p % d);
            for q in 0..n * d {
                let (h, j) = (q / d, q % d);
                let coeff = b.mul(&b.mul(&b.basis(i), &self.apply_sigma(g, &b.basis(j))), self.alpha(g, h));
                let gh = grp.mul(g, h);
                table.push(
                    coeff.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (gh * d + k, c)).collect(),
                );
            }
        }
        GradedQuasialgebra::new(grp, names, degrees, table, self.cocycle.clone()).expect("product of a valid system")
    }
}

/// Reads off (G, A_e, φ, σ, α) from a family of graded units with ē = 1:
/// σ(g)(x) = ḡxḡ_R⁻¹ and α(g,h) = (ḡh̄)((gh)‾)_R⁻¹.
pub fn extract_system(a: &GradedQuasialgebra, units: &[crate::Element]) -> Result<QuasicrossedSystem, CrossedError> {
    let grp = a.group();
    let e = grp.identity();
    if units.len() != grp.order() {
        return Err(CrossedError::NotQuasicrossed("need one unit per group element".into()));
    }
    if units[e] != a.one() {
        return Err(CrossedError::NotQuasicrossed("the identity's unit must be 1".into()));
    }
    let mut right_inv = Vec::with_capacity(units.len());
    for (g, u) in units.iter().enumerate() {
        if a.degree_of(u).ok() != Some(g) {
            return Err(CrossedError::NotQuasicrossed(format!("unit for {} has the wrong degree", grp.label(g))));
        }
        if !a.is_unit(u)? {
            return Err(CrossedError::NotQuasicrossed(format!("element of degree {} is not a unit", grp.label(g))));
        }
        right_inv.push(a.right_inverse(u)?);
    }
    let base = AssociativeAlgebra::identity_component(a)?;
    let sigma = grp
        .elements()
        .map(|g| {
            let cols: Vec<Vector> = a
                .component(e)
                .iter()
                .map(|&i| a.component_vector(&a.mul(&a.mul(&units[g], &a.basis_element(i)), &right_inv[g]), e))
                .collect();
            linalg::transpose(&cols)
        })
        .collect();
    let mut alpha = Vec::with_capacity(grp.order().pow(2));
    for g in grp.elements() {
        for h in grp.elements() {
            let x = a.mul(&a.mul(&units[g], &units[h]), &right_inv[grp.mul(g, h)]);
            alpha.push(a.component_vector(&x, e));
        }
    }
    QuasicrossedSystem::new(grp, base, a.cocycle().clone(), sigma, alpha)
}

/// Outcome of an equivalence search. The witness lists u(g) for g in group order.
#[derive(Clone, Debug, PartialEq)]
pub enum EquivalenceOutcome {
    Equivalent(Vec<Vector>),
    Inequivalent,
    Undecided(String),
}

/// Checks α'(g,h) = u(g)σ(g)(u(h))α(g,h)u(gh)⁻¹ and σ'(g) = i_{u(g)}∘σ(g) for all g, h.
pub fn is_equivalence_witness(s1: &QuasicrossedSystem, s2: &QuasicrossedSystem, u: &[Vector]) -> bool {
    let grp = &s1.group;
    let b = &s1.base;
    if u.len() != grp.order() || u[grp.identity()] != b.one() {
        return false;
    }
    let Some(inv) = u.iter().map(|x| b.inverse(x)).collect::<Option<Vec<_>>>() else {
        return false;
    };
    for g in grp.elements() {
        for x in 0..b.dim() {
            let bx = b.basis(x);
            let lhs = s2.apply_sigma(g, &bx);
            let rhs = b.mul(&b.mul(&u[g], &s1.apply_sigma(g, &bx)), &inv[g]);
            if lhs != rhs {
                return false;
            }
        }
        for h in grp.elements() {
            let rhs = b.mul(
                &b.mul(&b.mul(&u[g], &s1.apply_sigma(g, &u[h])), s1.alpha(g, h)),
                &inv[grp.mul(g, h)],
            );
            if *s2.alpha(g, h) != rhs {
                return false;
            }
        }
    }
    true
}

/// One way of looking for an equivalence witness. `None` means the strategy
/// does not apply to this pair.
pub trait EquivalenceStrategy: Send + Sync {
    fn name(&self) -> &'static str;
    fn attempt(&self, s1: &QuasicrossedSystem, s2: &QuasicrossedSystem) -> Option<EquivalenceOutcome>;
}

/// Strategies tried in registration order; the first definite answer wins.
pub struct EquivalenceRegistry {
    strategies: Vec<Box<dyn EquivalenceStrategy>>,
}

impl EquivalenceRegistry {
    pub fn empty() -> EquivalenceRegistry {
        EquivalenceRegistry { strategies: Vec::new() }
    }

    pub fn register(&mut self, s: Box<dyn EquivalenceStrategy>) -> Result<(), String> {
        if self.strategies.iter().any(|x| x.name() == s.name()) {
            return Err(format!("strategy {} already registered", s.name()));
        }
        self.strategies.push(s);
        Ok(())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.strategies.iter().map(|s| s.name()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&dyn EquivalenceStrategy> {
        self.strategies.iter().find(|s| s.name() == name).map(|s| s.as_ref())
    }

    /// Runs the strategies and returns the outcome with the deciding strategy's name.
    pub fn decide(&self, s1: &QuasicrossedSystem, s2: &QuasicrossedSystem) -> (EquivalenceOutcome, &'static str) {
        let mut last = None;
        for s in &self.strategies {
            match s.attempt(s1, s2) {
                Some(EquivalenceOutcome::Undecided(why)) => last = Some((why, s.name())),
                Some(outcome) => return (outcome, s.name()),
                None => {}
            }
        }
        match last {
            Some((why, name)) => (EquivalenceOutcome::Undecided(why), name),
            None => (EquivalenceOutcome::Undecided("no strategy applies".into()), "none"),
        }
    }
}

impl Default for EquivalenceRegistry {
    fn default() -> EquivalenceRegistry {
        let mut r = EquivalenceRegistry::empty();
        r.register(Box::new(IdentityStrategy)).unwrap();
        r.register(Box::new(RootsOfUnityStrategy)).unwrap();
        r.register(Box::new(PropagationStrategy)).unwrap();
        r
    }
}

/// Equal systems are equivalent via u ≡ 1.
pub struct IdentityStrategy;

impl EquivalenceStrategy for IdentityStrategy {
    fn name(&self) -> &'static str {
        "identity"
    }

    fn attempt(&self, s1: &QuasicrossedSystem, s2: &QuasicrossedSystem) -> Option<EquivalenceOutcome> {
        (s1 == s2).then(|| EquivalenceOutcome::Equivalent(vec![s1.base.one(); s1.group.order()]))
    }
}

/// Upper bound on candidate assignments tried by the exhaustive searches.
const SEARCH_LIMIT: usize = 1 << 20;

/// B = 𝕂 and every δ = α'/α a root of unity: exhaustive search of u on a
/// generating set over the roots of unity of 𝕂, with u propagated along
/// the group. Any solution is root-of-unity valued, so failure is proof.
pub struct RootsOfUnityStrategy;

impl EquivalenceStrategy for RootsOfUnityStrategy {
    fn name(&self) -> &'static str {
        "roots-of-unity"
    }

    fn attempt(&self, s1: &QuasicrossedSystem, s2: &QuasicrossedSystem) -> Option<EquivalenceOutcome> {
        if s1.base.dim() != 1 {
            return None;
        }
        let grp = &s1.group;
        let n = grp.order();
        let m = s1.base.conductor();
        let delta: Vec<Scalar> = (0..n * n).map(|i| &s2.alpha[i][0] / &s1.alpha[i][0]).collect();
        if delta.iter().any(|d| d.unit_log().is_none()) {
            return Some(EquivalenceOutcome::Undecided("alpha ratio takes a value outside the roots of unity".into()));
        }
        Some(match scalar_coboundary_search(grp, &delta, m) {
            Some(u) => EquivalenceOutcome::Equivalent(u.into_iter().map(|x| vec![x]).collect()),
            None => EquivalenceOutcome::Inequivalent,
        })
    }
}

/// Finds u with δ(g,h) = u(g)u(h)u(gh)⁻¹, u valued in the roots of unity.
fn scalar_coboundary_search(grp: &FiniteGroup, delta: &[Scalar], m: u32) -> Option<Vec<Scalar>> {
    let n = grp.order();
    let gens = grp.generators();
    let order = roots_of_unity_order(m) as usize;
    let total = order.checked_pow(gens.len() as u32).filter(|&t| t <= SEARCH_LIMIT)?;
    let roots: Vec<Scalar> = (0..order).map(|k| Scalar::unit_root(m, k as i64)).collect();
    let d = |g: usize, h: usize| &delta[g * n + h];
    for code in 0..total {
        let mut c = code;
        let choice: Vec<&Scalar> = gens
            .iter()
            .map(|_| {
                let k = c % order;
                c /= order;
                &roots[k]
            })
            .collect();
        // propagate u(xs) = u(x)u(s)/δ(x,s) from u(e) = 1
        let mut u: Vec<Option<Scalar>> = vec![None; n];
        u[grp.identity()] = Some(Scalar::one(m));
        let mut queue = vec![grp.identity()];
        while let Some(x) = queue.pop() {
            for (s, us) in gens.iter().zip(&choice) {
                let y = grp.mul(x, *s);
                if u[y].is_none() {
                    let ux = u[x].clone().unwrap();
                    u[y] = Some(&(&ux * *us) / d(x, *s));
                    queue.push(y);
                }
            }
        }
        let u: Vec<Scalar> = u.into_iter().map(Option::unwrap).collect();
        let ok = (0..n * n).all(|i| {
            let (g, h) = (i / n, i % n);
            &(&u[g] * &u[h]) / &u[grp.mul(g, h)] == delta[i]
        });
        if ok {
            return Some(u);
        }
    }
    None
}

/// Outcome of [`is_coboundary`].
#[derive(Clone, Debug, PartialEq)]
pub enum CoboundaryOutcome {
    Witness(Vec<Scalar>),
    No,
    Undecided,
}

/// Whether δ(g,h) = u(g)u(h)u(gh)⁻¹ for some u: G → 𝕂^× (the B = 𝕂 case, where σ is
/// necessarily the identity). Decided exactly when δ is root-of-unity valued.
pub fn is_coboundary(group: &FiniteGroup, delta: &[Scalar]) -> CoboundaryOutcome {
    let m = delta[0].conductor();
    if delta.iter().any(|d| d.unit_log().is_none()) {
        return CoboundaryOutcome::Undecided;
    }
    match scalar_coboundary_search(group, delta, m) {
        Some(u) => CoboundaryOutcome::Witness(u),
        None => CoboundaryOutcome::No,
    }
}

/// General B: u(s) on generators is restricted to the solution space of
/// u σ(s)(x) = σ'(s)(x) u; one-dimensional spaces are scanned over root-of-unity
/// multiples and the rest propagated. Never answers `Inequivalent`.
pub struct PropagationStrategy;

impl EquivalenceStrategy for PropagationStrategy {
    fn name(&self) -> &'static str {
        "propagation"
    }

    fn attempt(&self, s1: &QuasicrossedSystem, s2: &QuasicrossedSystem) -> Option<EquivalenceOutcome> {
        let grp = &s1.group;
        let b = &s1.base;
        let m = b.conductor();
        let d = b.dim();
        let gens = grp.generators();
        // candidate directions per generator
        let mut spaces = Vec::new();
        for &s in &gens {
            let mut rows: Matrix = Vec::new();
            for x in 0..d {
                let bx = b.basis(x);
                let left = s1.apply_sigma(s, &bx);
                let right = s2.apply_sigma(s, &bx);
                // columns: basis vectors b_j as u
                let cols: Vec<Vector> = (0..d)
                    .map(|j| {
                        let bj = b.basis(j);
                        let l = b.mul(&bj, &left);
                        let r = b.mul(&right, &bj);
                        l.iter().zip(&r).map(|(a, c)| a - c).collect()
                    })
                    .collect();
                rows.extend(linalg::transpose(&cols));
            }
            let space = linalg::nullspace(m, &rows, d);
            if space.is_empty() {
                return Some(EquivalenceOutcome::Inequivalent);
            }
            spaces.push(space);
        }
        let roots: Vec<Scalar> = (0..roots_of_unity_order(m)).map(|k| Scalar::unit_root(m, k as i64)).collect();
        let candidates: Vec<Vec<Vector>> = spaces
            .iter()
            .map(|sp| {
                let mut c = Vec::new();
                for v in sp {
                    for r in &roots {
                        c.push(v.iter().map(|x| x * r).collect());
                    }
                }
                if sp.len() > 1 {
                    let sum: Vector = (0..d).map(|i| sp.iter().fold(Scalar::zero(m), |a, v| a + &v[i])).collect();
                    c.push(sum);
                }
                c
            })
            .collect();
        let total = candidates.iter().try_fold(1usize, |acc, c| acc.checked_mul(c.len()).filter(|&t| t <= SEARCH_LIMIT));
        let Some(total) = total else {
            return Some(EquivalenceOutcome::Undecided("search space too large".into()));
        };
        for code in 0..total {
            let mut c = code;
            let choice: Vec<&Vector> = candidates
                .iter()
                .map(|cs| {
                    let k = c % cs.len();
                    c /= cs.len();
                    &cs[k]
                })
                .collect();
            if let Some(u) = propagate(s1, s2, &gens, &choice) {
                if is_equivalence_witness(s1, s2, &u) {
                    return Some(EquivalenceOutcome::Equivalent(u));
                }
            }
        }
        Some(EquivalenceOutcome::Undecided("no witness found by propagation".into()))
    }
}

/// u(xs) = α'(x,s)⁻¹ u(x) σ(x)(u(s)) α(x,s).
fn propagate(
    s1: &QuasicrossedSystem,
    s2: &QuasicrossedSystem,
    gens: &[GroupElement],
    choice: &[&Vector],
) -> Option<Vec<Vector>> {
    let grp = &s1.group;
    let b = &s1.base;
    let n = grp.order();
    let mut u: Vec<Option<Vector>> = vec![None; n];
    u[grp.identity()] = Some(b.one());
    let mut queue = vec![grp.identity()];
    while let Some(x) = queue.pop() {
        for (&s, us) in gens.iter().zip(choice) {
            let y = grp.mul(x, s);
            if u[y].is_none() {
                let ux = u[x].as_ref().unwrap();
                let a2inv = b.inverse(s2.alpha(x, s))?;
                let v = b.mul(&b.mul(&b.mul(&a2inv, ux), &s1.apply_sigma(x, us)), s1.alpha(x, s));
                u[y] = Some(v);
                queue.push(y);
            }
        }
    }
    u.into_iter().collect()
}

/// Decides equivalence of two systems over the same G, B and φ.
pub fn are_equivalent_systems(
    s1: &QuasicrossedSystem,
    s2: &QuasicrossedSystem,
) -> Result<EquivalenceOutcome, CrossedError> {
    are_equivalent_systems_with(&EquivalenceRegistry::default(), s1, s2).map(|(o, _)| o)
}

pub fn are_equivalent_systems_with(
    registry: &EquivalenceRegistry,
    s1: &QuasicrossedSystem,
    s2: &QuasicrossedSystem,
) -> Result<(EquivalenceOutcome, &'static str), CrossedError> {
    if s1.group != s2.group {
        return Err(CrossedError::IncompatibleSystems("different groups".into()));
    }
    if s1.base != s2.base {
        return Err(CrossedError::IncompatibleSystems("different base algebras".into()));
    }
    if s1.cocycle != s2.cocycle {
        return Err(CrossedError::IncompatibleSystems("different cocycles".into()));
    }
    let (outcome, name) = registry.decide(s1, s2);
    if let EquivalenceOutcome::Equivalent(u) = &outcome {
        assert!(is_equivalence_witness(s1, s2, u), "strategy {name} returned an invalid witness");
    }
    Ok((outcome, name))
}

/// Equivalence of two quasicrossed products, with the graded isomorphism.
#[derive(Clone, Debug)]
pub struct ProductEquivalence {
    pub outcome: EquivalenceOutcome,
    pub strategy: &'static str,
    /// Matrix of f: A2 → A1 (columns are images of A2's basis), when equivalent.
    pub isomorphism: Option<Matrix>,
    /// f is bijective and multiplicative on every basis pair.
    pub verified: bool,
}

/// Extracts systems with the units found by the seeded unit search and
/// compares them. On success builds f(x g̃) = x u(g) ḡ from A2 to A1 and checks it.
pub fn are_equivalent_products(
    a1: &GradedQuasialgebra,
    a2: &GradedQuasialgebra,
    seed: u64,
) -> Result<ProductEquivalence, CrossedError> {
    let units = |a: &GradedQuasialgebra| match a.is_quasicrossed_product(seed) {
        QuasicrossedOutcome::Yes(u) => Ok(u),
        other => Err(CrossedError::NotQuasicrossed(format!("{other:?}"))),
    };
    let (u1, u2) = (units(a1)?, units(a2)?);
    let s1 = extract_system(a1, &u1)?;
    let s2 = extract_system(a2, &u2)?;
    if s1.base != s2.base {
        return Err(CrossedError::IncompatibleBase);
    }
    let (outcome, strategy) = are_equivalent_systems_with(&EquivalenceRegistry::default(), &s1, &s2)?;
    let EquivalenceOutcome::Equivalent(u) = &outcome else {
        return Ok(ProductEquivalence { outcome, strategy, isomorphism: None, verified: false });
    };
    let grp = a1.group();
    let e = grp.identity();
    let m = a1.conductor();
    let b = s1.base();
    let cols: Vec<Vector> = (0..a2.dim())
        .map(|i| {
            let g = a2.degree(i);
            let x = a2.mul(&a2.basis_element(i), &a2.right_inverse(&u2[g]).expect("unit"));
            let xv = a2.component_vector(&x, e);
            let coeff = b.mul(&xv, &u[g]);
            let y = a1.from_component_vector(e, &coeff);
            a1.to_vector(&a1.mul(&y, &u1[g]))
        })
        .collect();
    let f = linalg::transpose(&cols);
    let image = |x: &crate::Element| a1.from_vector(&linalg::mat_vec(&f, &a2.to_vector(x)));
    let bijective = a1.dim() == a2.dim() && linalg::inverse(m, &f).is_some();
    let multiplicative = (0..a2.dim()).all(|i| {
        (0..a2.dim()).all(|j| {
            let lhs = image(&a2.mul_basis(i, j));
            lhs == a1.mul(&image(&a2.basis_element(i)), &image(&a2.basis_element(j)))
        })
    });
    Ok(ProductEquivalence { outcome, strategy, isomorphism: Some(f), verified: bijective && multiplicative })
}
