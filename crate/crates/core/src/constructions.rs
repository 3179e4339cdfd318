//! Matrix-based graded quasialgebras: deformed matrices M_{n,φ}, their
//! triangular subalgebras, chess-board graded matrices, and Mat_n(Δ) over a
//! ℤ₂-graded division algebra Δ = Δ₀ ⊕ Δ₀u.

use thiserror::Error;

use crate::algebra::{AlgebraError, GradedQuasialgebra, StructureTable};
use crate::cochains::{antiassociative_cocycle, Cocycle3};
use crate::groups::FiniteGroup;
use crate::scalars::{euler_phi, Scalar};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstructionError {
    #[error("size must be at least 1")]
    ZeroSize,
    #[error("parameter must be nonzero")]
    ZeroParameter,
    #[error("cocycle must live on Z{0}")]
    WrongGroup(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

fn matrix_name(n: usize, i: usize, j: usize) -> String {
    if n < 10 {
        format!("E{}{}", i + 1, j + 1)
    } else {
        format!("E{}_{}", i + 1, j + 1)
    }
}

/// Residue of matrix label a (0-based).
fn residue(n: usize, a: usize) -> usize {
    (n - a) % n
}

/// Structure constant of E_ab·E_bc in M_{n,φ}: with residues i, k, j of the
/// labels a, b, c, it is φ(i,−k,k−j)/φ(−k,k,−j).
fn deformed_coefficient(phi: &Cocycle3, n: usize, a: usize, b: usize, c: usize) -> Scalar {
    let (i, k, j) = (residue(n, a), residue(n, b), residue(n, c));
    let neg = |x: usize| (n - x) % n;
    let num = phi.get(i, neg(k), (k + n - j) % n);
    let den = phi.get(neg(k), k, neg(j));
    num / den
}

fn deformed(n: usize, phi: &Cocycle3, keep: impl Fn(usize, usize) -> bool) -> Result<GradedQuasialgebra, ConstructionError> {
    if n == 0 {
        return Err(ConstructionError::ZeroSize);
    }
    let grp = phi.group();
    if grp.order() != n || grp.factors() != Some(&[n as u32][..]) {
        return Err(ConstructionError::WrongGroup(n));
    }
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| keep(a, b)).collect();
    let index = |a: usize, b: usize| cells.iter().position(|&x| x == (a, b));
    let names = cells.iter().map(|&(a, b)| matrix_name(n, a, b)).collect();
    let degrees = cells.iter().map(|&(a, b)| (b + n - a) % n).collect();
    let mut table: StructureTable = Vec::with_capacity(cells.len().pow(2));
    for &(a, b) in &cells {
        for &(b2, c) in &cells {
            if b != b2 {
                table.push(vec![]);
                continue;
            }
            let k = index(a, c).expect("closed under products");
            table.push(vec![(k, deformed_coefficient(phi, n, a, b, c))]);
        }
    }
    Ok(GradedQuasialgebra::new(grp, names, degrees, table, phi.clone())?)
}

/// M_{n,φ}: n×n matrices over ℤ_n with (XY)_ij = Σ_k φ(i,−k,k−j)/φ(−k,k,−j) X_ik Y_kj.
/// Matrix label a is read as the residue −a inside φ; E_ab has degree b − a.
pub fn deformed_matrices(n: usize, phi: &Cocycle3) -> Result<GradedQuasialgebra, ConstructionError> {
    deformed(n, phi, |_, _| true)
}

/// The upper triangular part {E_ab : a ≤ b} of M_{n,φ}.
pub fn triangular_deformed(n: usize, phi: &Cocycle3) -> Result<GradedQuasialgebra, ConstructionError> {
    deformed(n, phi, |a, b| a <= b)
}

/// (n+m)×(n+m) matrices graded by ℤ₂ (diagonal blocks even, off-diagonal odd)
/// with E_ik·E_kj = −E_ij when i, j lie in the second block and k in the
/// first, and +E_ij otherwise. φ(x,y,z) = (−1)^{xyz}.
pub fn chessboard_matrices(n: usize, m: usize, conductor: u32) -> Result<GradedQuasialgebra, ConstructionError> {
    if n == 0 || m == 0 {
        return Err(ConstructionError::ZeroSize);
    }
    let d = n + m;
    let names = (0..d * d).map(|p| matrix_name(d, p / d, p % d)).collect();
    let degrees = (0..d * d).map(|p| usize::from((p / d < n) != (p % d < n))).collect();
    let mut table: StructureTable = Vec::with_capacity(d.pow(4));
    for p in 0..d * d {
        for q in 0..d * d {
            let (i, k, k2, j) = (p / d, p % d, q / d, q % d);
            if k != k2 {
                table.push(vec![]);
                continue;
            }
            let sign = if i >= n && k < n && j >= n { -1 } else { 1 };
            table.push(vec![(i * d + j, Scalar::from_int(conductor, sign))]);
        }
    }
    let grp = FiniteGroup::cyclic(2);
    Ok(GradedQuasialgebra::new(&grp, names, degrees, table, antiassociative_cocycle(conductor))?)
}

/// Δ = Δ₀ ⊕ Δ₀u with Δ₀ = ℚ(ζ_m), σ(ζ) = ζ^s and (Au)(Bu) = aAB̄.
#[derive(Clone, Debug, PartialEq)]
pub struct DeltaParams {
    pub conductor: u32,
    /// σ is ζ ↦ ζ^s; s² ≡ 1 (mod m).
    pub s: i64,
    pub a: Scalar,
}

impl DeltaParams {
    fn sigma_is_identity(&self) -> bool {
        (self.s - 1).rem_euclid(self.conductor as i64) == 0
    }

    fn validate(&self) -> Result<(), ConstructionError> {
        let m = self.conductor as i64;
        if self.a.is_zero() {
            return Err(ConstructionError::ZeroParameter);
        }
        if self.a.conductor() != self.conductor {
            return Err(ConstructionError::InvalidParameter("a must use the declared conductor".into()));
        }
        if num_integer::gcd(self.s, m) != 1 || (self.s * self.s - 1).rem_euclid(m) != 0 {
            return Err(ConstructionError::InvalidParameter(format!("zeta -> zeta^{} is not an involution", self.s)));
        }
        if !self.sigma_is_identity() {
            let ratio = &self.a / &self.a.galois(self.s);
            if !(ratio.is_one() || (-ratio).is_one()) {
                return Err(ConstructionError::InvalidParameter(
                    "a/sigma(a) must be 1 or -1 for a graded quasialgebra over Q".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Δ itself (Mat₁(Δ)).
pub fn antiassoc_division(params: &DeltaParams) -> Result<GradedQuasialgebra, ConstructionError> {
    mat_over_delta(1, params)
}

/// Mat_n(Δ) = Mat_n(Δ₀) ⊕ Mat_n(Δ₀)u with A(Bu) = (AB)u, (Au)B = (AB̄)u and
/// (Au)(Bu) = aAB̄. With σ = id this is a 2n²-dimensional algebra over ℚ(ζ_m);
/// otherwise σ is not linear over ℚ(ζ_m) and the algebra is built over ℚ on
/// the basis E_ij ζ^t (dimension 2n²φ(m)). The cocycle is read off the product.
pub fn mat_over_delta(n: usize, params: &DeltaParams) -> Result<GradedQuasialgebra, ConstructionError> {
    if n == 0 {
        return Err(ConstructionError::ZeroSize);
    }
    params.validate()?;
    let m = params.conductor;
    let over_field = params.sigma_is_identity();
    // t ranges over the power basis of Δ₀ as a space over the coefficient field
    let powers = if over_field { 1 } else { euler_phi(m) };
    let coeff_m = if over_field { m } else { 1 };
    let cell = n * n * powers;
    let dim = 2 * cell;
    let idx = |i: usize, j: usize, t: usize, odd: usize| odd * cell + (i * n + j) * powers + t;
    let names: Vec<String> = (0..dim)
        .map(|p| {
            let odd = p / cell;
            let r = p % cell;
            let (ij, t) = (r / powers, r % powers);
            let mut s = if n == 1 { String::new() } else { matrix_name(n, ij / n, ij % n) };
            if !over_field {
                s.push_str(&format!("p{t}"));
            }
            if odd == 1 {
                s.push('u');
            }
            if s.is_empty() {
                s.push('1');
            }
            s
        })
        .collect();
    let degrees = (0..dim).map(|p| p / cell).collect();
    // x as a Δ₀-scalar expressed on the coefficient basis
    let expand = |x: &Scalar| -> Vec<Scalar> {
        if over_field {
            vec![x.clone()]
        } else {
            x.coeffs().iter().map(|q| Scalar::from_rational(1, q.clone())).collect()
        }
    };
    let zeta = |t: usize| {
        if over_field {
            Scalar::one(m)
        } else {
            Scalar::root_of_unity(m, t as i64)
        }
    };
    let mut table: StructureTable = Vec::with_capacity(dim * dim);
    for p in 0..dim {
        for q in 0..dim {
            let (op, rp) = (p / cell, p % cell);
            let (oq, rq) = (q / cell, q % cell);
            let (ijp, tp) = (rp / powers, rp % powers);
            let (ijq, tq) = (rq / powers, rq % powers);
            let (i, j) = (ijp / n, ijp % n);
            let (k, l) = (ijq / n, ijq % n);
            if j != k {
                table.push(vec![]);
                continue;
            }
            let x = zeta(tp);
            let y = zeta(tq);
            // B̄ whenever the left factor carries u
            let y = if op == 1 { y.galois(params.s) } else { y };
            let mut c = &x * &y;
            if op == 1 && oq == 1 {
                c = &params.a * &c;
            }
            let odd = (op + oq) % 2;
            let entry = expand(&c)
                .into_iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(t, v)| (idx(i, l, t, odd), if over_field { v } else { v.lift(coeff_m).unwrap() }))
                .collect();
            table.push(entry);
        }
    }
    let grp = FiniteGroup::cyclic(2);
    Ok(GradedQuasialgebra::with_inferred_cocycle(&grp, names, degrees, table, coeff_m)?)
}
