//! The Cayley–Dickson process, on algebras with an involution and on the
//! cochains of deformed group algebras.
//!
//! The doubled group is Ḡ = G × ℤ₂ with the flag as last coordinate, so the
//! element (g, flag) has index 2g + flag. The doubled algebra lists the basis
//! {b_i} first and then {v b_i}.

use thiserror::Error;

use crate::algebra::{AlgebraError, Element, GradedQuasialgebra};
use crate::cochains::{Cochain2, CochainError};
use crate::crossed::{extract_system, CrossedError};
use crate::dga::DeformedGroupAlgebra;
use crate::groups::{FiniteGroup, GroupElement, GroupError};
use crate::linalg::{self, Echelon, Matrix};
use crate::scalars::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CayleyError {
    #[error("map is not an involution: it does not square to the identity on basis element {0}")]
    NotInvolution(usize),
    #[error("involution is not strong")]
    NotStrong(StrongInvolutionReport),
    #[error("epsilon must be nonzero")]
    ZeroEpsilon,
    #[error("group must be abelian")]
    NotAbelian,
    #[error("involution has the wrong size")]
    WrongSize,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Cochain(#[from] CochainError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Crossed(#[from] CrossedError),
}

/// A linear map ς on an algebra, stored as a matrix (columns are images of basis elements).
#[derive(Clone, Debug, PartialEq)]
pub struct Involution {
    matrix: Matrix,
}

impl Involution {
    pub fn from_matrix(matrix: Matrix) -> Involution {
        Involution { matrix }
    }

    /// ς(b_i) = s_i b_i.
    pub fn diagonal(s: &[Scalar]) -> Involution {
        let m = s[0].conductor();
        let n = s.len();
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| if i == j { s[i].clone() } else { Scalar::zero(m) }).collect())
            .collect();
        Involution { matrix }
    }

    pub fn identity(a: &GradedQuasialgebra) -> Involution {
        Involution { matrix: linalg::identity(a.conductor(), a.dim()) }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, a: &GradedQuasialgebra, x: &Element) -> Element {
        a.from_vector(&linalg::mat_vec(&self.matrix, &a.to_vector(x)))
    }
}

/// Per-condition outcome of the strong involution test, with witnesses as basis indices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StrongInvolutionReport {
    /// (i, j) with ς(b_i b_j) ≠ ς(b_j)ς(b_i).
    pub antiautomorphism: Vec<(usize, usize)>,
    /// i with b_i + ς(b_i) ∉ 𝕂1.
    pub sum: Vec<usize>,
    /// i with b_i ς(b_i) ∉ 𝕂1.
    pub norm: Vec<usize>,
    /// i < j with b_i ς(b_j) + b_j ς(b_i) ∉ 𝕂1.
    pub polarization: Vec<(usize, usize)>,
}

impl StrongInvolutionReport {
    pub fn is_antiautomorphism(&self) -> bool {
        self.antiautomorphism.is_empty()
    }

    pub fn is_strong(&self) -> bool {
        self.antiautomorphism.is_empty() && self.sum.is_empty() && self.norm.is_empty() && self.polarization.is_empty()
    }
}

/// Tests ς² = id (error otherwise), the antiautomorphism property, and
/// a + ς(a), a·ς(a) ∈ 𝕂1. The quadratic condition is checked on basis
/// elements and by polarization on basis pairs, which covers all a.
pub fn is_strong_involution(a: &GradedQuasialgebra, inv: &Involution) -> Result<StrongInvolutionReport, CayleyError> {
    let n = a.dim();
    if inv.matrix.len() != n || inv.matrix.iter().any(|r| r.len() != n) {
        return Err(CayleyError::WrongSize);
    }
    let images: Vec<Element> = (0..n).map(|i| inv.apply(a, &a.basis_element(i))).collect();
    for (i, img) in images.iter().enumerate() {
        if inv.apply(a, img) != a.basis_element(i) {
            return Err(CayleyError::NotInvolution(i));
        }
    }
    let scalars = Echelon::from_vectors(n, [&a.to_vector(&a.one())]);
    let in_k1 = |x: &Element| scalars.contains(&a.to_vector(x));
    let mut report = StrongInvolutionReport::default();
    for i in 0..n {
        for j in 0..n {
            if inv.apply(a, &a.mul_basis(i, j)) != a.mul(&images[j], &images[i]) {
                report.antiautomorphism.push((i, j));
            }
        }
        let bi = a.basis_element(i);
        if !in_k1(&bi.add(&images[i])) {
            report.sum.push(i);
        }
        if !in_k1(&a.mul(&bi, &images[i])) {
            report.norm.push(i);
        }
        for j in i + 1..n {
            let bj = a.basis_element(j);
            if !in_k1(&a.mul(&bi, &images[j]).add(&a.mul(&bj, &images[i]))) {
                report.polarization.push((i, j));
            }
        }
    }
    Ok(report)
}

/// Output of the algebra-level doubling.
#[derive(Clone, Debug)]
pub struct Doubled {
    pub algebra: GradedQuasialgebra,
    /// ς̄(a + vb) = ς(a) − vb.
    pub involution: Involution,
    /// Strongness of the input involution (the product is defined regardless).
    pub input_report: StrongInvolutionReport,
}

/// Ḡ = G × ℤ₂.
pub fn doubled_group(g: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
    FiniteGroup::direct_product(g, &FiniteGroup::cyclic(2))
}

/// (a+vb)(c+vd) = (ac + εdς(b)) + v(ς(a)d + cb), graded by Ḡ with
/// deg(b) = (deg b, 0) and deg(vb) = (deg b, 1). The cocycle of the result is
/// read off its structure constants; if no cocycle fits, φ ≡ 1 is attached.
pub fn cd_double_algebra(a: &GradedQuasialgebra, inv: &Involution, epsilon: &Scalar) -> Result<Doubled, CayleyError> {
    if epsilon.is_zero() {
        return Err(CayleyError::ZeroEpsilon);
    }
    let input_report = is_strong_involution(a, inv)?;
    let n = a.dim();
    let m = a.conductor();
    let gbar = doubled_group(a.group())?;
    let names: Vec<String> =
        a.names().iter().cloned().chain(a.names().iter().map(|x| format!("v{x}"))).collect();
    let degrees: Vec<GroupElement> =
        (0..2 * n).map(|p| 2 * a.degree(p % n) + p / n).collect();
    let shift = |x: Element, flag: usize| -> Vec<(usize, Scalar)> {
        x.terms().map(|(k, c)| (k + flag * n, c.clone())).collect()
    };
    let images: Vec<Element> = (0..n).map(|i| inv.apply(a, &a.basis_element(i))).collect();
    let mut table = Vec::with_capacity(4 * n * n);
    for p in 0..2 * n {
        for q in 0..2 * n {
            let (i, j) = (p % n, q % n);
            let (bi, bj) = (a.basis_element(i), a.basis_element(j));
            let entry = match (p / n, q / n) {
                (0, 0) => shift(a.mul_basis(i, j), 0),
                (0, 1) => shift(a.mul(&images[i], &bj), 1),
                (1, 0) => shift(a.mul(&bj, &bi), 1),
                _ => shift(a.mul(&bj, &images[i]).scale(epsilon), 0),
            };
            table.push(entry);
        }
    }
    let algebra = match GradedQuasialgebra::with_inferred_cocycle(&gbar, names.clone(), degrees.clone(), table.clone(), m)
    {
        Ok(x) => x,
        // no cocycle fits: keep φ ≡ 1 so the verifier can report the associators
        Err(AlgebraError::Cocycle(CochainError::NotCocycle(_))) => {
            GradedQuasialgebra::new(&gbar, names, degrees, table, crate::cochains::Cocycle3::trivial(&gbar, m))?
        }
        Err(e) => return Err(e.into()),
    };
    let matrix = (0..2 * n)
        .map(|r| {
            (0..2 * n)
                .map(|c| match (r < n, c < n) {
                    (true, true) => inv.matrix[r][c].clone(),
                    (false, false) if r == c => Scalar::from_int(m, -1),
                    _ => Scalar::zero(m),
                })
                .collect()
        })
        .collect();
    Ok(Doubled { algebra, involution: Involution::from_matrix(matrix), input_report })
}

/// Maps doubled-algebra basis index p (flag p / n, element p % n) to the
/// Ḡ element 2·(p % n) + flag, which is the basis index of K_F̄ Ḡ.
pub fn doubled_basis_to_group(n: usize) -> Vec<usize> {
    (0..2 * n).map(|p| 2 * (p % n) + p / n).collect()
}

/// F̄(x,y) = F(x,y), F̄(x,vy) = s(x)F(x,y), F̄(vx,y) = F(y,x),
/// F̄(vx,vy) = εs(x)F(y,x); s̄(x) = s(x), s̄(vx) = −1.
pub fn cd_double_cochain(
    f: &Cochain2,
    s: &[Scalar],
    epsilon: &Scalar,
) -> Result<(FiniteGroup, Cochain2, Vec<Scalar>), CayleyError> {
    let g = f.group();
    if !g.is_abelian() {
        return Err(CayleyError::NotAbelian);
    }
    if epsilon.is_zero() {
        return Err(CayleyError::ZeroEpsilon);
    }
    if s.len() != g.order() {
        return Err(CayleyError::WrongSize);
    }
    let report = is_strong_involution(&DeformedGroupAlgebra::build(f), &Involution::diagonal(s))?;
    if !report.is_strong() {
        return Err(CayleyError::NotStrong(report));
    }
    let gbar = doubled_group(g)?;
    let m = f.conductor();
    let fbar = Cochain2::from_fn(&gbar, |a, b| {
        let (x, fx, y, fy) = (a / 2, a % 2, b / 2, b % 2);
        match (fx, fy) {
            (0, 0) => f.get(x, y).clone(),
            (0, _) => &s[x] * f.get(x, y),
            (_, 0) => f.get(y, x).clone(),
            _ => &(epsilon * &s[x]) * f.get(y, x),
        }
    })?;
    let sbar = gbar.elements().map(|a| if a % 2 == 0 { s[a / 2].clone() } else { Scalar::from_int(m, -1) }).collect();
    Ok((gbar, fbar, sbar))
}

/// Failed instances of the relations between the doubled algebra's α and F.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaDoublingReport {
    pub pairs_checked: usize,
    /// Ḡ pairs (x̄, ȳ) where the matching relation fails.
    pub failures: Vec<(GroupElement, GroupElement)>,
}

/// Doubles K_F G with ς = diag(s), extracts ᾱ with the basis elements as
/// units, and checks ᾱ(x,y) = F(x,y), ᾱ(x,vy) = s(x)F(x,y), ᾱ(vx,y) = F(y,x),
/// ᾱ(vx,vy) = εs(x)F(y,x).
pub fn alpha_doubling_check(f: &Cochain2, s: &[Scalar], epsilon: &Scalar) -> Result<AlphaDoublingReport, CayleyError> {
    let a = DeformedGroupAlgebra::build(f);
    let doubled = cd_double_algebra(&a, &Involution::diagonal(s), epsilon)?;
    let d = &doubled.algebra;
    let n = a.dim();
    let gbar = d.group();
    // unit for Ḡ element 2x + flag is the basis element flag·n + x
    let units: Vec<Element> = gbar.elements().map(|q| d.basis_element((q % 2) * n + q / 2)).collect();
    let system = extract_system(d, &units)?;
    let mut failures = Vec::new();
    for p in gbar.elements() {
        for q in gbar.elements() {
            let (x, fx, y, fy) = (p / 2, p % 2, q / 2, q % 2);
            let expected = match (fx, fy) {
                (0, 0) => f.get(x, y).clone(),
                (0, _) => &s[x] * f.get(x, y),
                (_, 0) => f.get(y, x).clone(),
                _ => &(epsilon * &s[x]) * f.get(y, x),
            };
            if system.alpha(p, q)[0] != expected {
                failures.push((p, q));
            }
        }
    }
    Ok(AlphaDoublingReport { pairs_checked: gbar.order().pow(2), failures })
}

/// s(e) = 1 and s(g) = −1 otherwise: the standard conjugation on K_F G.
pub fn conjugation_signs(g: &FiniteGroup, m: u32) -> Vec<Scalar> {
    g.elements().map(|x| Scalar::from_int(m, if x == g.identity() { 1 } else { -1 })).collect()
}
