//! Graded quasialgebras given by structure constants.
//!
//! A [`GradedQuasialgebra`] has a named basis, each basis element homogeneous
//! of some degree in G, a sparse multiplication table on basis pairs, and a
//! cocycle φ. Quasiassociativity (x_g x_h)x_k = φ(g,h,k)·x_g(x_h x_k) is not
//! assumed; [`GradedQuasialgebra::verify_quasiassociativity`] checks it.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::cochains::{verify_cocycle, CochainError, Cocycle3};
use crate::groups::{FiniteGroup, GroupElement};
use crate::linalg::{self, Echelon, Matrix, Solution, Vector};
use crate::scalars::Scalar;

/// Number of random homogeneous combinations tried per component in unit searches.
pub const RANDOM_SAMPLES: usize = 32;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("not a unit: {0}")]
    NotAUnit(String),
    #[error("product {left}*{right} has a term {target} outside degree deg({left})deg({right})")]
    GradingViolation { left: String, right: String, target: String },
    #[error("no two-sided identity element exists")]
    NoIdentity,
    #[error("basis index {0} out of range")]
    BadIndex(usize),
    #[error("duplicate basis name {0}")]
    DuplicateName(String),
    #[error("degree {0} is not an element of the grading group")]
    GroupMismatch(GroupElement),
    #[error("cocycle is defined on a different group")]
    CocycleGroupMismatch,
    #[error("scalars use conductor {found}, expected {expected}")]
    ConductorMismatch { expected: u32, found: u32 },
    #[error("algebra has an empty basis")]
    EmptyBasis,
    #[error(transparent)]
    Cocycle(#[from] CochainError),
}

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// Sparse structure constants: `table[i * n + j]` is the product of basis
/// elements i and j as (index, coefficient) pairs sorted by index.
pub type StructureTable = Vec<Vec<(usize, Scalar)>>;

struct AlgebraData {
    id: u64,
    group: FiniteGroup,
    m: u32,
    names: Vec<String>,
    degrees: Vec<GroupElement>,
    table: StructureTable,
    cocycle: Cocycle3,
    one: Element,
    components: Vec<Vec<usize>>,
}

/// A finite-dimensional G-graded algebra with a cocycle.
#[derive(Clone)]
pub struct GradedQuasialgebra {
    data: Arc<AlgebraData>,
}

/// A sparse element of a specific algebra.
#[derive(Clone, PartialEq, Eq)]
pub struct Element {
    alg: u64,
    coeffs: BTreeMap<usize, Scalar>,
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.coeffs.iter().map(|(k, v)| (k, v.to_string()))).finish()
    }
}

impl Element {
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.coeffs.iter().map(|(k, v)| (*k, v))
    }

    pub fn coeff(&self, i: usize) -> Option<&Scalar> {
        self.coeffs.get(&i)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn same_algebra(&self, other: &Element) -> bool {
        self.alg == other.alg
    }

    fn with(alg: u64, coeffs: BTreeMap<usize, Scalar>) -> Element {
        Element { alg, coeffs }
    }

    pub fn add(&self, other: &Element) -> Element {
        assert_eq!(self.alg, other.alg, "elements belong to different algebras");
        let mut coeffs = self.coeffs.clone();
        for (k, v) in &other.coeffs {
            accumulate(&mut coeffs, *k, v.clone());
        }
        Element::with(self.alg, coeffs)
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        Element::with(self.alg, self.coeffs.iter().map(|(k, v)| (*k, -v)).collect())
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::with(self.alg, BTreeMap::new());
        }
        Element::with(self.alg, self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect())
    }
}

fn accumulate(map: &mut BTreeMap<usize, Scalar>, k: usize, v: Scalar) {
    if v.is_zero() {
        return;
    }
    match map.get_mut(&k) {
        Some(x) => {
            *x += &v;
            if x.is_zero() {
                map.remove(&k);
            }
        }
        None => {
            map.insert(k, v);
        }
    }
}

/// A basis triple where quasiassociativity fails.
#[derive(Clone, Debug, PartialEq)]
pub struct AssociatorFailure {
    pub triple: [usize; 3],
    /// (x_g x_h) x_k
    pub lhs: Element,
    /// φ(g,h,k)·x_g (x_h x_k)
    pub rhs: Element,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuasiassociativityReport {
    pub triples_checked: usize,
    pub failures: Vec<AssociatorFailure>,
}

impl QuasiassociativityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Result of searching for a graded unit in every homogeneous component.
#[derive(Clone, Debug, PartialEq)]
pub enum QuasicrossedOutcome {
    /// One unit per group element, in group order, with the identity's unit equal to 1.
    Yes(Vec<Element>),
    /// The search found no unit of degree `degree`. `exact` is true when
    /// absence is proven: the component is one-dimensional, or 1 ∉ A_g·A_{g⁻¹}.
    NoFound { degree: GroupElement, exact: bool },
    /// The component of degree `degree` is zero.
    NotApplicable { degree: GroupElement },
}

impl GradedQuasialgebra {
    /// Builds an algebra from structure constants. Checks the grading and
    /// conductors and solves for the identity; quasiassociativity is left to
    /// [`GradedQuasialgebra::verify_quasiassociativity`].
    pub fn new(
        group: &FiniteGroup,
        names: Vec<String>,
        degrees: Vec<GroupElement>,
        table: StructureTable,
        cocycle: Cocycle3,
    ) -> Result<GradedQuasialgebra, AlgebraError> {
        let n = names.len();
        if n == 0 {
            return Err(AlgebraError::EmptyBasis);
        }
        if degrees.len() != n || table.len() != n * n {
            return Err(AlgebraError::BadIndex(n));
        }
        if cocycle.group() != group {
            return Err(AlgebraError::CocycleGroupMismatch);
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(AlgebraError::DuplicateName(a.clone()));
            }
        }
        for &d in &degrees {
            group.check(d).map_err(|_| AlgebraError::GroupMismatch(d))?;
        }
        let m = cocycle.conductor();
        let mut clean = Vec::with_capacity(n * n);
        for (idx, entry) in table.into_iter().enumerate() {
            let (i, j) = (idx / n, idx % n);
            let target = group.mul(degrees[i], degrees[j]);
            let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (k, c) in entry {
                if k >= n {
                    return Err(AlgebraError::BadIndex(k));
                }
                if c.conductor() != m {
                    return Err(AlgebraError::ConductorMismatch { expected: m, found: c.conductor() });
                }
                accumulate(&mut acc, k, c);
            }
            if let Some((&k, _)) = acc.iter().find(|(k, _)| degrees[**k] != target) {
                return Err(AlgebraError::GradingViolation {
                    left: names[i].clone(),
                    right: names[j].clone(),
                    target: names[k].clone(),
                });
            }
            clean.push(acc.into_iter().collect::<Vec<_>>());
        }
        let mut components = vec![Vec::new(); group.order()];
        for (i, &d) in degrees.iter().enumerate() {
            components[d].push(i);
        }
        let id = NEXT_ID.fetch_add(1, Ordering::Relaxed);
        let mut data = AlgebraData {
            id,
            group: group.clone(),
            m,
            names,
            degrees,
            table: clean,
            cocycle,
            one: Element::with(id, BTreeMap::new()),
            components,
        };
        data.one = solve_identity(&data)?;
        Ok(GradedQuasialgebra { data: Arc::new(data) })
    }

    /// Like [`GradedQuasialgebra::new`], with φ read off the structure constants.
    pub fn with_inferred_cocycle(
        group: &FiniteGroup,
        names: Vec<String>,
        degrees: Vec<GroupElement>,
        table: StructureTable,
        m: u32,
    ) -> Result<GradedQuasialgebra, AlgebraError> {
        let provisional =
            GradedQuasialgebra::new(group, names.clone(), degrees.clone(), table.clone(), Cocycle3::trivial(group, m))?;
        let phi = provisional.infer_cocycle()?;
        GradedQuasialgebra::new(group, names, degrees, table, phi)
    }

    /// Same structure constants, different cocycle.
    pub fn with_cocycle(&self, cocycle: Cocycle3) -> Result<GradedQuasialgebra, AlgebraError> {
        GradedQuasialgebra::new(
            &self.data.group,
            self.data.names.clone(),
            self.data.degrees.clone(),
            self.data.table.clone(),
            cocycle,
        )
    }

    /// Reads φ(g,h,k) from the first basis triple of those degrees with
    /// x_g(x_h x_k) ≠ 0; degree triples without such a witness get 1. The
    /// resulting table must satisfy the cocycle axioms.
    pub fn infer_cocycle(&self) -> Result<Cocycle3, AlgebraError> {
        let grp = &self.data.group;
        let n = grp.order();
        let m = self.data.m;
        let mut values: Vec<Option<Scalar>> = vec![None; n * n * n];
        let dim = self.dim();
        for i in 0..dim {
            for j in 0..dim {
                let xy = self.mul_basis(i, j);
                for k in 0..dim {
                    let (g, h, l) = (self.data.degrees[i], self.data.degrees[j], self.data.degrees[k]);
                    let slot = (g * n + h) * n + l;
                    if values[slot].is_some() {
                        continue;
                    }
                    let rhs = self.mul(&self.basis_element(i), &self.mul_basis(j, k));
                    let Some((&p, c)) = rhs.coeffs.iter().next() else { continue };
                    let lhs = self.mul(&xy, &self.basis_element(k));
                    let ratio = lhs.coeff(p).map(|d| d / c);
                    if let Some(r) = ratio.filter(|r| !r.is_zero()) {
                        values[slot] = Some(r);
                    }
                }
            }
        }
        let values: Vec<Scalar> = values.into_iter().map(|v| v.unwrap_or_else(|| Scalar::one(m))).collect();
        let report = verify_cocycle(grp, &values)?;
        if !report.passed() {
            return Err(CochainError::NotCocycle(report).into());
        }
        Ok(Cocycle3::new_unchecked(grp, values))
    }

    pub fn id(&self) -> u64 {
        self.data.id
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.data.group
    }

    pub fn conductor(&self) -> u32 {
        self.data.m
    }

    pub fn dim(&self) -> usize {
        self.data.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.data.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.data.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.data.names.iter().position(|n| n == name)
    }

    pub fn degrees(&self) -> &[GroupElement] {
        &self.data.degrees
    }

    pub fn degree(&self, i: usize) -> GroupElement {
        self.data.degrees[i]
    }

    pub fn cocycle(&self) -> &Cocycle3 {
        &self.data.cocycle
    }

    /// Basis indices of degree g.
    pub fn component(&self, g: GroupElement) -> &[usize] {
        &self.data.components[g]
    }

    pub fn structure(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.data.table[i * self.dim() + j]
    }

    pub fn structure_table(&self) -> &StructureTable {
        &self.data.table
    }

    /// Same basis size, degrees and structure constants.
    pub fn same_structure(&self, other: &GradedQuasialgebra) -> bool {
        self.data.degrees == other.data.degrees && self.data.table == other.data.table
    }

    pub fn one(&self) -> Element {
        self.data.one.clone()
    }

    pub fn zero(&self) -> Element {
        Element::with(self.data.id, BTreeMap::new())
    }

    pub fn basis_element(&self, i: usize) -> Element {
        self.term(i, Scalar::one(self.data.m))
    }

    pub fn term(&self, i: usize, c: Scalar) -> Element {
        let mut coeffs = BTreeMap::new();
        accumulate(&mut coeffs, i, c);
        Element::with(self.data.id, coeffs)
    }

    pub fn element(&self, terms: &[(usize, Scalar)]) -> Element {
        let mut coeffs = BTreeMap::new();
        for (k, c) in terms {
            accumulate(&mut coeffs, *k, c.clone());
        }
        Element::with(self.data.id, coeffs)
    }

    pub fn scalar(&self, c: &Scalar) -> Element {
        self.one().scale(c)
    }

    pub fn to_vector(&self, x: &Element) -> Vector {
        let mut v = linalg::zero_vector(self.data.m, self.dim());
        for (k, c) in &x.coeffs {
            v[*k] = c.clone();
        }
        v
    }

    pub fn from_vector(&self, v: &[Scalar]) -> Element {
        let coeffs = v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect();
        Element::with(self.data.id, coeffs)
    }

    /// Coordinates of x restricted to the basis of A_g.
    pub fn component_vector(&self, x: &Element, g: GroupElement) -> Vector {
        self.component(g)
            .iter()
            .map(|i| x.coeff(*i).cloned().unwrap_or_else(|| Scalar::zero(self.data.m)))
            .collect()
    }

    pub fn from_component_vector(&self, g: GroupElement, v: &[Scalar]) -> Element {
        let terms: Vec<(usize, Scalar)> = self.component(g).iter().copied().zip(v.iter().cloned()).collect();
        self.element(&terms)
    }

    pub fn contains(&self, x: &Element) -> bool {
        x.alg == self.data.id
    }

    fn check(&self, x: &Element) -> Result<(), AlgebraError> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(AlgebraError::AlgebraMismatch)
        }
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> Element {
        Element::with(self.data.id, self.structure(i, j).iter().cloned().collect())
    }

    /// Bilinear extension of the structure constants.
    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element, AlgebraError> {
        self.check(a)?;
        self.check(b)?;
        let mut acc = BTreeMap::new();
        for (i, x) in &a.coeffs {
            for (j, y) in &b.coeffs {
                let entry = self.structure(*i, *j);
                if entry.is_empty() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in entry {
                    accumulate(&mut acc, *k, &xy * c);
                }
            }
        }
        Ok(Element::with(self.data.id, acc))
    }

    /// [`GradedQuasialgebra::multiply`] for elements known to belong here.
    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        self.multiply(a, b).expect("elements of this algebra")
    }

    /// Splits x into homogeneous components.
    pub fn homogeneous_components(&self, x: &Element) -> BTreeMap<GroupElement, Element> {
        let mut out: BTreeMap<GroupElement, BTreeMap<usize, Scalar>> = BTreeMap::new();
        for (k, c) in &x.coeffs {
            out.entry(self.data.degrees[*k]).or_default().insert(*k, c.clone());
        }
        out.into_iter().map(|(g, c)| (g, Element::with(self.data.id, c))).collect()
    }

    /// The degree of a nonzero homogeneous element.
    pub fn degree_of(&self, x: &Element) -> Result<GroupElement, AlgebraError> {
        self.check(x)?;
        let mut degs = x.coeffs.keys().map(|k| self.data.degrees[*k]);
        let Some(g) = degs.next() else {
            return Err(AlgebraError::NotHomogeneous);
        };
        if degs.all(|h| h == g) {
            Ok(g)
        } else {
            Err(AlgebraError::NotHomogeneous)
        }
    }

    /// Checks (x_g x_h)x_k = φ(g,h,k)·x_g(x_h x_k) on every basis triple.
    pub fn verify_quasiassociativity(&self) -> QuasiassociativityReport {
        self.verify_quasiassociativity_with(&self.data.cocycle)
    }

    /// Quasiassociativity against an arbitrary cocycle on the same group.
    pub fn verify_quasiassociativity_with(&self, phi: &Cocycle3) -> QuasiassociativityReport {
        let n = self.dim();
        let failures = (0..n)
            .into_par_iter()
            .flat_map_iter(|i| {
                let mut out = Vec::new();
                let xi = self.basis_element(i);
                for j in 0..n {
                    let xy = self.mul_basis(i, j);
                    for k in 0..n {
                        let lhs = self.mul(&xy, &self.basis_element(k));
                        let c = phi.get(self.degree(i), self.degree(j), self.degree(k));
                        let rhs = self.mul(&xi, &self.mul_basis(j, k)).scale(c);
                        if lhs != rhs {
                            out.push(AssociatorFailure { triple: [i, j, k], lhs, rhs });
                        }
                    }
                }
                out
            })
            .collect();
        QuasiassociativityReport { triples_checked: n * n * n, failures }
    }

    /// Solves v·u = 1 for v in the component of degree g⁻¹.
    pub fn left_inverse(&self, u: &Element) -> Result<Element, AlgebraError> {
        self.solve_inverse(u, true)
    }

    /// Solves u·v = 1 for v in the component of degree g⁻¹.
    pub fn right_inverse(&self, u: &Element) -> Result<Element, AlgebraError> {
        self.solve_inverse(u, false)
    }

    fn solve_inverse(&self, u: &Element, left: bool) -> Result<Element, AlgebraError> {
        let g = self.degree_of(u)?;
        let grp = &self.data.group;
        let ginv = grp.inverse(g);
        let e = grp.identity();
        let unknowns = self.component(ginv);
        if unknowns.is_empty() {
            return Err(AlgebraError::NotAUnit(format!("component of degree {} is zero", grp.label(ginv))));
        }
        // column c: product of the c-th basis vector of A_{g⁻¹} with u, in A_e coordinates
        let cols: Vec<Vector> = unknowns
            .iter()
            .map(|&b| {
                let x = self.basis_element(b);
                let p = if left { self.mul(&x, u) } else { self.mul(u, &x) };
                self.component_vector(&p, e)
            })
            .collect();
        let rows = self.component(e).len();
        let a: Matrix = (0..rows).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
        let rhs = self.component_vector(&self.one(), e);
        match linalg::solve(self.data.m, &a, &rhs, unknowns.len()) {
            Solution::Unique(v) => Ok(self.from_component_vector(ginv, &v)),
            Solution::Many(..) => Err(AlgebraError::NotAUnit("one-sided inverse is not unique".into())),
            Solution::Inconsistent => Err(AlgebraError::NotAUnit("no one-sided inverse".into())),
        }
    }

    pub fn is_unit(&self, u: &Element) -> Result<bool, AlgebraError> {
        self.degree_of(u)?;
        Ok(self.left_inverse(u).is_ok() && self.right_inverse(u).is_ok())
    }

    /// Degrees g for which 1 ∉ span(A_g·A_{g⁻¹}).
    pub fn strong_grading_failures(&self) -> Vec<GroupElement> {
        let grp = &self.data.group;
        let e = grp.identity();
        let one = self.component_vector(&self.one(), e);
        grp.elements()
            .filter(|&g| {
                let mut span = Echelon::new(self.component(e).len());
                for &i in self.component(g) {
                    for &j in self.component(grp.inverse(g)) {
                        span.insert(&self.component_vector(&self.mul_basis(i, j), e));
                    }
                }
                !span.contains(&one)
            })
            .collect()
    }

    pub fn is_strongly_graded(&self) -> bool {
        self.strong_grading_failures().is_empty()
    }

    /// Searches each component for a graded unit: basis elements first, then
    /// the sum of the component's basis, then [`RANDOM_SAMPLES`] seeded random
    /// combinations. One-dimensional components are settled first.
    pub fn is_quasicrossed_product(&self, seed: u64) -> QuasicrossedOutcome {
        let grp = &self.data.group;
        if let Some(g) = grp.elements().find(|&g| self.component(g).is_empty()) {
            return QuasicrossedOutcome::NotApplicable { degree: g };
        }
        // one-dimensional components first: there the answer is a proof
        for g in grp.elements() {
            let comp = self.component(g);
            if comp.len() == 1 && !self.is_unit(&self.basis_element(comp[0])).unwrap_or(false) {
                return QuasicrossedOutcome::NoFound { degree: g, exact: true };
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut units = Vec::with_capacity(grp.order());
        for g in grp.elements() {
            if g == grp.identity() {
                units.push(self.one());
                continue;
            }
            match self.find_unit(g, &mut rng) {
                Some(u) => units.push(u),
                None => {
                    // a unit of degree g would put 1 in A_g·A_{g⁻¹}
                    let exact = self.strong_grading_failures().contains(&g);
                    return QuasicrossedOutcome::NoFound { degree: g, exact };
                }
            }
        }
        QuasicrossedOutcome::Yes(units)
    }

    fn find_unit(&self, g: GroupElement, rng: &mut ChaCha8Rng) -> Option<Element> {
        let comp = self.component(g);
        let is_unit = |x: &Element| self.is_unit(x).unwrap_or(false);
        for &i in comp {
            let x = self.basis_element(i);
            if is_unit(&x) {
                return Some(x);
            }
        }
        if comp.len() > 1 {
            let all = self.element(&comp.iter().map(|&i| (i, Scalar::one(self.data.m))).collect::<Vec<_>>());
            if is_unit(&all) {
                return Some(all);
            }
            for _ in 0..RANDOM_SAMPLES {
                let x = self.random_homogeneous(g, rng);
                if !x.is_zero() && is_unit(&x) {
                    return Some(x);
                }
            }
        }
        None
    }

    /// A random element of A_g with coefficients from a small fixed pool.
    pub fn random_homogeneous(&self, g: GroupElement, rng: &mut impl Rng) -> Element {
        let m = self.data.m;
        let terms: Vec<(usize, Scalar)> =
            self.component(g).iter().map(|&i| (i, random_coefficient(m, rng))).collect();
        self.element(&terms)
    }

    /// μ(u)(x) = u x u_R⁻¹ for x ∈ A_e.
    pub fn mu(&self, u: &Element, x: &Element) -> Result<Element, AlgebraError> {
        self.check(x)?;
        let e = self.data.group.identity();
        if !x.is_zero() && self.degree_of(x)? != e {
            return Err(AlgebraError::NotHomogeneous);
        }
        let ur = self.right_inverse(u)?;
        self.left_inverse(u)?;
        Ok(self.mul(&self.mul(u, x), &ur))
    }

    /// Matrix of μ(u) on the basis of A_e (columns are images of basis vectors).
    pub fn mu_matrix(&self, u: &Element) -> Result<Matrix, AlgebraError> {
        let e = self.data.group.identity();
        let cols = self
            .component(e)
            .iter()
            .map(|&i| self.mu(u, &self.basis_element(i)).map(|y| self.component_vector(&y, e)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(linalg::transpose(&cols))
    }

    /// Rank of x ↦ x·u restricted to A_e.
    pub fn right_multiplication_rank(&self, u: &Element) -> Result<usize, AlgebraError> {
        let g = self.degree_of(u)?;
        let e = self.data.group.identity();
        let images: Vec<Vector> = self
            .component(e)
            .iter()
            .map(|&i| self.component_vector(&self.mul(&self.basis_element(i), u), g))
            .collect();
        Ok(Echelon::from_vectors(self.component(g).len(), &images).rank())
    }

    /// Terms joined by ` + `, each `name`, `c*name` or `(c)*name`.
    pub fn format(&self, x: &Element) -> String {
        format_terms(x.terms().map(|(k, c)| (self.name(k), c)))
    }
}

/// Shared pretty printer for sparse combinations.
pub fn format_terms<'a>(terms: impl Iterator<Item = (&'a str, &'a Scalar)>) -> String {
    let parts: Vec<String> = terms
        .map(|(name, c)| {
            if c.is_one() {
                name.to_string()
            } else if c.coeffs().iter().filter(|q| !num_traits::Zero::is_zero(*q)).count() == 1 {
                format!("{c}*{name}")
            } else {
                format!("({c})*{name}")
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Coefficients drawn from {±1, ±2, ±1/2, ±ζ_m^k}.
pub fn random_coefficient(m: u32, rng: &mut impl Rng) -> Scalar {
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    match rng.gen_range(0..4) {
        0 => Scalar::from_int(m, sign),
        1 => Scalar::from_int(m, 2 * sign),
        2 => Scalar::from_ratio(m, sign, 2),
        _ => Scalar::root_of_unity(m, rng.gen_range(0..m as i64)) * Scalar::from_int(m, sign),
    }
}

fn solve_identity(data: &AlgebraData) -> Result<Element, AlgebraError> {
    let n = data.names.len();
    let m = data.m;
    let comp = &data.components[data.group.identity()];
    if comp.is_empty() {
        return Err(AlgebraError::NoIdentity);
    }
    // unknown c_i for each i in A_e; equations: Σ c_i b_i b_j = b_j and Σ c_i b_j b_i = b_j
    let mut rows: Matrix = Vec::with_capacity(2 * n * n);
    let mut rhs = Vec::with_capacity(2 * n * n);
    for j in 0..n {
        for side in 0..2 {
            let mut block = vec![linalg::zero_vector(m, comp.len()); n];
            for (col, &i) in comp.iter().enumerate() {
                let entry = if side == 0 { &data.table[i * n + j] } else { &data.table[j * n + i] };
                for (k, c) in entry {
                    block[*k][col] = c.clone();
                }
            }
            for (k, row) in block.into_iter().enumerate() {
                rows.push(row);
                rhs.push(if k == j { Scalar::one(m) } else { Scalar::zero(m) });
            }
        }
    }
    let sol = match linalg::solve(m, &rows, &rhs, comp.len()) {
        Solution::Unique(v) | Solution::Many(v, _) => v,
        Solution::Inconsistent => return Err(AlgebraError::NoIdentity),
    };
    let coeffs = comp.iter().copied().zip(sol).filter(|(_, c)| !c.is_zero()).collect();
    Ok(Element::with(data.id, coeffs))
}

impl fmt::Debug for GradedQuasialgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedQuasialgebra(dim {}, group {})", self.dim(), self.data.group.describe())
    }
}
