//! 2-cochains F: G×G → 𝕂^× and 3-cocycles φ: G×G×G → 𝕂^×, stored as dense tables.

use rayon::prelude::*;
use thiserror::Error;

use crate::groups::{FiniteGroup, GroupElement};
use crate::scalars::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CochainError {
    #[error("table has {got} entries, expected {expected}")]
    WrongSize { expected: usize, got: usize },
    #[error("zero value at {0:?}")]
    ZeroValue(Vec<GroupElement>),
    #[error("not normalized at {0:?}")]
    NotNormalized(Vec<GroupElement>),
    #[error("values use conductor {found}, expected {expected}")]
    ConductorMismatch { expected: u32, found: u32 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("cocycle condition fails on {} quadruple(s) and normalization on {} pair(s)", .0.violations.len(), .0.normalization.len())]
    NotCocycle(CocycleReport),
    #[error("group must be abelian")]
    NotAbelian,
}

fn check_values(values: &[Scalar], expected: usize, dims: usize, n: usize) -> Result<u32, CochainError> {
    if values.len() != expected {
        return Err(CochainError::WrongSize { expected, got: values.len() });
    }
    let m = values[0].conductor();
    for (i, v) in values.iter().enumerate() {
        if v.conductor() != m {
            return Err(CochainError::ConductorMismatch { expected: m, found: v.conductor() });
        }
        if v.is_zero() {
            let mut idx = vec![0; dims];
            let mut r = i;
            for d in (0..dims).rev() {
                idx[d] = r % n;
                r /= n;
            }
            return Err(CochainError::ZeroValue(idx));
        }
    }
    Ok(m)
}

/// A normalized 2-cochain.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain2 {
    group: FiniteGroup,
    values: Vec<Scalar>,
}

impl Cochain2 {
    /// Validates nonzero entries and F(e,g) = F(g,e) = 1.
    pub fn new(group: &FiniteGroup, values: Vec<Scalar>) -> Result<Cochain2, CochainError> {
        let n = group.order();
        check_values(&values, n * n, 2, n)?;
        let e = group.identity();
        for g in group.elements() {
            if !values[e * n + g].is_one() {
                return Err(CochainError::NotNormalized(vec![e, g]));
            }
            if !values[g * n + e].is_one() {
                return Err(CochainError::NotNormalized(vec![g, e]));
            }
        }
        Ok(Cochain2 { group: group.clone(), values })
    }

    pub fn from_fn(
        group: &FiniteGroup,
        f: impl Fn(GroupElement, GroupElement) -> Scalar,
    ) -> Result<Cochain2, CochainError> {
        let n = group.order();
        let values = (0..n * n).map(|i| f(i / n, i % n)).collect();
        Cochain2::new(group, values)
    }

    pub fn trivial(group: &FiniteGroup, m: u32) -> Cochain2 {
        Cochain2 { group: group.clone(), values: vec![Scalar::one(m); group.order().pow(2)] }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn conductor(&self) -> u32 {
        self.values[0].conductor()
    }

    pub fn get(&self, g: GroupElement, h: GroupElement) -> &Scalar {
        &self.values[g * self.group.order() + h]
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    /// Pointwise product, e.g. F·δ.
    pub fn pointwise_mul(&self, other: &Cochain2) -> Result<Cochain2, CochainError> {
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        Cochain2::new(&self.group, values)
    }

    /// Re-embeds a rational-valued table at conductor `m`.
    pub fn with_conductor(&self, m: u32) -> Option<Cochain2> {
        let values = self.values.iter().map(|v| v.lift(m)).collect::<Option<Vec<_>>>()?;
        Some(Cochain2 { group: self.group.clone(), values })
    }
}

/// Every violation of the cocycle axioms found in a table.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CocycleReport {
    /// Quadruples (g,h,k,l) where the cocycle identity fails.
    pub violations: Vec<[GroupElement; 4]>,
    /// Pairs (g,h) with φ(g,e,h) ≠ 1.
    pub normalization: Vec<[GroupElement; 2]>,
    pub quadruples_checked: usize,
}

impl CocycleReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.normalization.is_empty()
    }
}

/// Checks φ(h,k,l)φ(g,hk,l)φ(g,h,k) = φ(g,h,kl)φ(gh,k,l) and φ(g,e,h) = 1
/// exhaustively. Sweeps run on the current rayon pool; the report order is
/// independent of the number of threads.
pub fn verify_cocycle(group: &FiniteGroup, values: &[Scalar]) -> Result<CocycleReport, CochainError> {
    let n = group.order();
    check_values(values, n * n * n, 3, n)?;
    let phi = |a: usize, b: usize, c: usize| &values[(a * n + b) * n + c];
    let violations: Vec<[usize; 4]> = (0..n)
        .into_par_iter()
        .flat_map_iter(|g| {
            let mut out = Vec::new();
            for h in 0..n {
                let gh = group.mul(g, h);
                for k in 0..n {
                    let hk = group.mul(h, k);
                    let left0 = phi(g, h, k);
                    for l in 0..n {
                        let lhs = phi(h, k, l) * phi(g, hk, l) * left0;
                        let rhs = phi(g, h, group.mul(k, l)) * phi(gh, k, l);
                        if lhs != rhs {
                            out.push([g, h, k, l]);
                        }
                    }
                }
            }
            out
        })
        .collect();
    let e = group.identity();
    let normalization = (0..n * n)
        .filter(|&i| !phi(i / n, e, i % n).is_one())
        .map(|i| [i / n, i % n])
        .collect();
    Ok(CocycleReport { violations, normalization, quadruples_checked: n.pow(4) })
}

/// A validated 3-cocycle.
#[derive(Clone, Debug, PartialEq)]
pub struct Cocycle3 {
    group: FiniteGroup,
    values: Vec<Scalar>,
}

impl Cocycle3 {
    pub fn new(group: &FiniteGroup, values: Vec<Scalar>) -> Result<Cocycle3, CochainError> {
        let report = verify_cocycle(group, &values)?;
        if !report.passed() {
            return Err(CochainError::NotCocycle(report));
        }
        Ok(Cocycle3 { group: group.clone(), values })
    }

    pub fn from_fn(
        group: &FiniteGroup,
        f: impl Fn(GroupElement, GroupElement, GroupElement) -> Scalar,
    ) -> Result<Cocycle3, CochainError> {
        let n = group.order();
        let values = (0..n * n * n).map(|i| f(i / (n * n), (i / n) % n, i % n)).collect();
        Cocycle3::new(group, values)
    }

    /// Wraps a table without validation. Callers must guarantee the axioms.
    pub(crate) fn new_unchecked(group: &FiniteGroup, values: Vec<Scalar>) -> Cocycle3 {
        Cocycle3 { group: group.clone(), values }
    }

    pub fn trivial(group: &FiniteGroup, m: u32) -> Cocycle3 {
        Cocycle3 { group: group.clone(), values: vec![Scalar::one(m); group.order().pow(3)] }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn conductor(&self) -> u32 {
        self.values[0].conductor()
    }

    pub fn get(&self, g: GroupElement, h: GroupElement, k: GroupElement) -> &Scalar {
        let n = self.group.order();
        &self.values[(g * n + h) * n + k]
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(Scalar::is_one)
    }

    pub fn with_conductor(&self, m: u32) -> Option<Cocycle3> {
        let values = self.values.iter().map(|v| v.lift(m)).collect::<Option<Vec<_>>>()?;
        Some(Cocycle3 { group: self.group.clone(), values })
    }
}

/// φ(g,h,k) = F(g,h)F(gh,k) / (F(h,k)F(g,hk)).
pub fn coboundary_of(f: &Cochain2) -> Cocycle3 {
    let g = f.group();
    let n = g.order();
    let values: Vec<Scalar> = (0..n * n * n)
        .into_par_iter()
        .map(|i| {
            let (a, b, c) = (i / (n * n), (i / n) % n, i % n);
            let num = f.get(a, b) * f.get(g.mul(a, b), c);
            let den = f.get(b, c) * f.get(a, g.mul(b, c));
            num / den
        })
        .collect();
    debug_assert!(verify_cocycle(g, &values).map(|r| r.passed()).unwrap_or(false));
    Cocycle3::new_unchecked(g, values)
}

/// A failed instance of one of the standard consequences of the cocycle axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityFailure {
    /// "i", "ii", "iii" or "iv".
    pub item: &'static str,
    pub g: GroupElement,
    pub h: GroupElement,
}

/// Checks for all g,h:
/// (i) φ(e,g,h) = φ(g,h,e) = 1;
/// (ii) φ(g,g⁻¹,g)φ(g⁻¹,g,h) = φ(g,g⁻¹,gh);
/// (iii) φ(g,g⁻¹,g)φ(g⁻¹,g,g⁻¹) = 1;
/// (iv) φ(h,h⁻¹,g⁻¹)φ(g,h,h⁻¹) = φ(g,h,h⁻¹g⁻¹)φ(gh,h⁻¹,g⁻¹).
pub fn cocycle_identities_check(phi: &Cocycle3) -> Vec<IdentityFailure> {
    let grp = phi.group();
    let e = grp.identity();
    let inv = |x| grp.inverse(x);
    let mul = |x, y| grp.mul(x, y);
    let p = |a, b, c| phi.get(a, b, c);
    let mut out = Vec::new();
    for g in grp.elements() {
        for h in grp.elements() {
            if !p(e, g, h).is_one() || !p(g, h, e).is_one() {
                out.push(IdentityFailure { item: "i", g, h });
            }
            if p(g, inv(g), g) * p(inv(g), g, h) != *p(g, inv(g), mul(g, h)) {
                out.push(IdentityFailure { item: "ii", g, h });
            }
            if h == e && !(p(g, inv(g), g) * p(inv(g), g, inv(g))).is_one() {
                out.push(IdentityFailure { item: "iii", g, h });
            }
            let lhs = p(h, inv(h), inv(g)) * p(g, h, inv(h));
            let rhs = p(g, h, mul(inv(h), inv(g))) * p(mul(g, h), inv(h), inv(g));
            if lhs != rhs {
                out.push(IdentityFailure { item: "iv", g, h });
            }
        }
    }
    out
}

fn sign(m: u32, exponent: u32) -> Scalar {
    Scalar::from_int(m, if exponent.is_multiple_of(2) { 1 } else { -1 })
}

fn bits(grp: &FiniteGroup, g: GroupElement) -> Vec<u32> {
    grp.residues(g).expect("cyclic product")
}

/// F(x,y) = (-1)^{xy} on ℤ₂.
pub fn complex_cochain() -> Cochain2 {
    clifford_cochain(1)
}

/// F(x,y) = (-1)^{x₁y₁ + (x₁+x₂)y₂} on ℤ₂².
pub fn quaternion_cochain() -> Cochain2 {
    let g = FiniteGroup::elementary_abelian_2(2);
    Cochain2::from_fn(&g, |a, b| {
        let (x, y) = (bits(&g, a), bits(&g, b));
        sign(1, x[0] * y[0] + (x[0] + x[1]) * y[1])
    })
    .expect("quaternion cochain")
}

/// F(x,y) = (-1)^{Σ_{i≤j} x_i y_j + y₁x₂x₃ + x₁y₂x₃ + x₁x₂y₃} on ℤ₂³.
pub fn octonion_cochain() -> Cochain2 {
    let g = FiniteGroup::elementary_abelian_2(3);
    Cochain2::from_fn(&g, |a, b| {
        let (x, y) = (bits(&g, a), bits(&g, b));
        let mut e = upper_sum(&x, &y);
        e += y[0] * x[1] * x[2] + x[0] * y[1] * x[2] + x[0] * x[1] * y[2];
        sign(1, e)
    })
    .expect("octonion cochain")
}

fn upper_sum(x: &[u32], y: &[u32]) -> u32 {
    let mut e = 0;
    for i in 0..x.len() {
        for j in i..y.len() {
            e += x[i] * y[j];
        }
    }
    e
}

/// F(x,y) = (-1)^{Σ_{i≤j} x_i y_j} on ℤ₂ⁿ.
pub fn clifford_cochain(n: usize) -> Cochain2 {
    let g = FiniteGroup::elementary_abelian_2(n);
    Cochain2::from_fn(&g, |a, b| sign(1, upper_sum(&bits(&g, a), &bits(&g, b)))).expect("clifford cochain")
}

/// Raw table of the ℤ₃ family, unvalidated. Entries with an identity argument are 1.
pub fn z3_cocycle_values(alpha: &Scalar, beta: &Scalar, omega: &Scalar) -> Vec<Scalar> {
    let m = alpha.conductor();
    let one = Scalar::one(m);
    let mut v = vec![one.clone(); 27];
    let at = |a: usize, b: usize, c: usize| (a * 3 + b) * 3 + c;
    v[at(1, 1, 1)] = alpha.clone();
    v[at(1, 1, 2)] = beta.clone();
    v[at(1, 2, 1)] = (omega * alpha).inv();
    v[at(1, 2, 2)] = omega / beta;
    v[at(2, 1, 1)] = alpha / &(beta * omega);
    v[at(2, 1, 2)] = alpha * omega;
    v[at(2, 2, 1)] = beta / &(omega * alpha);
    v[at(2, 2, 2)] = omega / alpha;
    v
}

/// The ℤ₃ cocycle family with parameters α, β ≠ 0 and ω³ = 1.
pub fn z3_cocycle(alpha: &Scalar, beta: &Scalar, omega: &Scalar) -> Result<Cocycle3, CochainError> {
    if alpha.is_zero() || beta.is_zero() {
        return Err(CochainError::InvalidParameter("alpha and beta must be nonzero".into()));
    }
    if !omega.pow(3).is_one() {
        return Err(CochainError::InvalidParameter(format!("omega = {omega} is not a cube root of unity")));
    }
    Cocycle3::new(&FiniteGroup::cyclic(3), z3_cocycle_values(alpha, beta, omega))
}

/// φ(a,b,c) = ζ_n^{k·a·⌊(b+c)/n⌋} on ℤ_n, at conductor n.
pub fn cyclic_cocycle(n: u32, k: i64) -> Cocycle3 {
    let g = FiniteGroup::cyclic(n);
    Cocycle3::from_fn(&g, |a, b, c| {
        let carry = ((b + c) / n as usize) as i64;
        Scalar::root_of_unity(n, k * a as i64 * carry)
    })
    .expect("cyclic cocycle")
}

/// φ(x,y,z) = (-1)^{xyz} on ℤ₂.
pub fn antiassociative_cocycle(m: u32) -> Cocycle3 {
    let g = FiniteGroup::cyclic(2);
    Cocycle3::from_fn(&g, |a, b, c| sign(m, (a * b * c) as u32)).expect("antiassociative cocycle")
}
