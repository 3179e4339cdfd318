//! Centralizers, centers, ideals and simplicity, decided by exact linear algebra.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Element, GradedQuasialgebra};
use crate::crossed::AssociativeAlgebra;
use crate::linalg::{self, Echelon, Matrix, Vector};
use crate::scalars::Scalar;

/// Random homogeneous elements tried by [`is_graded_simple`] per component.
pub const GRADED_SAMPLES: usize = 16;

/// A subspace of an algebra, kept in reduced echelon form.
#[derive(Clone, Debug)]
pub struct Subspace {
    algebra: GradedQuasialgebra,
    span: Echelon,
}

impl Subspace {
    pub fn new(algebra: &GradedQuasialgebra, vectors: &[Vector]) -> Subspace {
        Subspace { algebra: algebra.clone(), span: Echelon::from_vectors(algebra.dim(), vectors) }
    }

    pub fn algebra(&self) -> &GradedQuasialgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.span.rank()
    }

    pub fn vectors(&self) -> &[Vector] {
        self.span.basis()
    }

    pub fn basis(&self) -> Vec<Element> {
        self.vectors().iter().map(|v| self.algebra.from_vector(v)).collect()
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.span.contains(&self.algebra.to_vector(x))
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_whole(&self) -> bool {
        self.dim() == self.algebra.dim()
    }

    /// Every basis vector is supported in a single degree.
    pub fn is_graded(&self) -> bool {
        self.basis().iter().all(|x| self.algebra.degree_of(x).is_ok())
    }

    pub fn format(&self) -> String {
        let parts: Vec<String> = self.basis().iter().map(|x| self.algebra.format(x)).collect();
        format!("span{{{}}}", parts.join(", "))
    }
}

/// {a : ax = xa for all x in xs}.
pub fn centralizer(a: &GradedQuasialgebra, xs: &[Element]) -> Subspace {
    let n = a.dim();
    let m = a.conductor();
    let mut rows: Matrix = Vec::new();
    for x in xs {
        // column i holds b_i x − x b_i
        let cols: Vec<Vector> = (0..n)
            .map(|i| {
                let b = a.basis_element(i);
                a.to_vector(&a.mul(&b, x).sub(&a.mul(x, &b)))
            })
            .collect();
        for k in 0..n {
            rows.push(cols.iter().map(|c| c[k].clone()).collect());
        }
    }
    let basis = if rows.is_empty() {
        (0..n).map(|i| linalg::unit_vector(m, n, i)).collect()
    } else {
        linalg::nullspace(m, &rows, n)
    };
    Subspace::new(a, &basis)
}

pub fn center(a: &GradedQuasialgebra) -> Subspace {
    let basis: Vec<Element> = (0..a.dim()).map(|i| a.basis_element(i)).collect();
    centralizer(a, &basis)
}

/// The center is 𝕂·1.
pub fn is_central(a: &GradedQuasialgebra) -> bool {
    let c = center(a);
    c.dim() == 1 && c.contains(&a.one())
}

/// The smallest two-sided ideal containing x.
pub fn ideal_generated_by(a: &GradedQuasialgebra, x: &Element) -> Subspace {
    ideal_of_vector(a, &a.to_vector(x))
}

fn ideal_of_vector(a: &GradedQuasialgebra, x: &[Scalar]) -> Subspace {
    let n = a.dim();
    let mut span = Echelon::new(n);
    let mut queue: Vec<Vector> = Vec::new();
    if span.insert(x) {
        queue.push(x.to_vec());
    }
    while let Some(v) = queue.pop() {
        let y = a.from_vector(&v);
        for i in 0..n {
            let b = a.basis_element(i);
            for p in [a.mul(&b, &y), a.mul(&y, &b)] {
                let pv = a.to_vector(&p);
                if span.insert(&pv) {
                    queue.push(pv);
                }
            }
        }
        if span.rank() == n {
            break;
        }
    }
    Subspace { algebra: a.clone(), span }
}

#[derive(Clone, Debug)]
pub enum SimplicityOutcome {
    Simple { method: &'static str },
    NotSimple { ideal: Subspace, reason: String },
    Undecided(String),
}

impl SimplicityOutcome {
    pub fn is_simple(&self) -> bool {
        matches!(self, SimplicityOutcome::Simple { .. })
    }

    pub fn is_not_simple(&self) -> bool {
        matches!(self, SimplicityOutcome::NotSimple { .. })
    }
}

fn square_is_zero(a: &GradedQuasialgebra) -> bool {
    (0..a.dim()).all(|i| (0..a.dim()).all(|j| a.structure(i, j).iter().all(|(_, c)| c.is_zero())))
}

fn zero_square(a: &GradedQuasialgebra) -> SimplicityOutcome {
    SimplicityOutcome::NotSimple { ideal: Subspace::new(a, &[]), reason: "A^2 = 0".into() }
}

/// Whether A has no two-sided ideals other than 0 and A (and A² ≠ 0).
///
/// Cheap witnesses are tried first: ideals of basis elements and of
/// b_i ± b_j. The decision then goes through the multiplication algebra
/// M(A) ⊂ End(A), whose invariant subspaces are exactly the ideals.
pub fn is_simple(a: &GradedQuasialgebra) -> SimplicityOutcome {
    let n = a.dim();
    if square_is_zero(a) {
        return zero_square(a);
    }
    let mut candidates: Vec<Vector> = (0..n).map(|i| linalg::unit_vector(a.conductor(), n, i)).collect();
    for sign in [1, -1] {
        for i in 0..n {
            for j in i + 1..n {
                let mut v = linalg::zero_vector(a.conductor(), n);
                v[i] = Scalar::one(a.conductor());
                v[j] = Scalar::from_int(a.conductor(), sign);
                candidates.push(v);
            }
        }
    }
    for v in &candidates {
        let ideal = ideal_of_vector(a, v);
        if !ideal.is_whole() {
            let reason = format!("generated by {}", a.format(&a.from_vector(v)));
            return SimplicityOutcome::NotSimple { ideal, reason };
        }
    }
    multiplication_algebra_decision(a)
}

/// Simplicity with respect to graded ideals only. Exact when every
/// homogeneous component has dimension at most 1 or when A is simple;
/// otherwise seeded random homogeneous elements are tried and the answer
/// may be Undecided.
pub fn is_graded_simple(a: &GradedQuasialgebra, seed: u64) -> SimplicityOutcome {
    if square_is_zero(a) {
        return zero_square(a);
    }
    for i in 0..a.dim() {
        let ideal = ideal_generated_by(a, &a.basis_element(i));
        if !ideal.is_whole() {
            return SimplicityOutcome::NotSimple { ideal, reason: format!("generated by {}", a.name(i)) };
        }
    }
    let exact = a.group().elements().all(|g| a.component(g).len() <= 1);
    if exact {
        return SimplicityOutcome::Simple { method: "one-dimensional components" };
    }
    // every graded ideal is an ideal
    if let SimplicityOutcome::Simple { .. } = is_simple(a) {
        return SimplicityOutcome::Simple { method: "simple as an ungraded algebra" };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for g in a.group().elements() {
        if a.component(g).len() <= 1 {
            continue;
        }
        for _ in 0..GRADED_SAMPLES {
            let x = a.random_homogeneous(g, &mut rng);
            if x.is_zero() {
                continue;
            }
            let ideal = ideal_generated_by(a, &x);
            if !ideal.is_whole() {
                return SimplicityOutcome::NotSimple { ideal, reason: format!("generated by {}", a.format(&x)) };
            }
        }
    }
    SimplicityOutcome::Undecided(format!("{GRADED_SAMPLES} random homogeneous elements per component all generate A"))
}

fn flatten(x: &Matrix) -> Vector {
    x.iter().flatten().cloned().collect()
}

fn unflatten(v: &[Scalar], n: usize) -> Matrix {
    v.chunks(n).map(<[Scalar]>::to_vec).collect()
}

/// Matrices of x ↦ b_i x and x ↦ x b_i (columns are images of basis vectors).
pub fn multiplication_operators(a: &GradedQuasialgebra) -> Vec<Matrix> {
    let n = a.dim();
    let m = a.conductor();
    let mut ops = Vec::with_capacity(2 * n);
    for left in [true, false] {
        for i in 0..n {
            let mut mat = vec![linalg::zero_vector(m, n); n];
            for j in 0..n {
                let entry = if left { a.structure(i, j) } else { a.structure(j, i) };
                for (k, c) in entry {
                    mat[*k][j] = c.clone();
                }
            }
            ops.push(mat);
        }
    }
    ops
}

/// A basis of the unital associative algebra generated by `gens` inside End(𝕂ⁿ).
pub fn generated_matrix_algebra(m: u32, n: usize, gens: &[Matrix]) -> Vec<Matrix> {
    let mut span = Echelon::new(n * n);
    let id = linalg::identity(m, n);
    span.insert(&flatten(&id));
    let mut basis = vec![id];
    let mut next = 0;
    while next < basis.len() && span.rank() < n * n {
        let x = basis[next].clone();
        next += 1;
        for g in gens {
            let y = linalg::mat_mul(g, &x);
            if span.insert(&flatten(&y)) {
                basis.push(y);
            }
        }
    }
    if span.rank() == n * n {
        // the full matrix algebra; hand back the standard basis
        return span.basis().iter().map(|v| unflatten(v, n)).collect();
    }
    basis
}

fn trace_of_product(x: &Matrix, y: &Matrix) -> Scalar {
    let n = x.len();
    let m = x.first().and_then(|r| r.first()).map_or(1, Scalar::conductor);
    let mut t = Scalar::zero(m);
    for (i, row) in x.iter().enumerate() {
        for (k, c) in row.iter().enumerate() {
            if !c.is_zero() && !y[k][i].is_zero() {
                t += &(c * &y[k][i]);
            }
        }
    }
    debug_assert!(n == y.len());
    t
}

/// Elements of span(basis) in the kernel of the trace form (x, y) ↦ tr(xy).
/// For a matrix algebra in characteristic zero this is its radical.
fn trace_form_radical(m: u32, basis: &[Matrix]) -> Vec<Matrix> {
    let d = basis.len();
    let form: Matrix = (0..d).map(|i| (0..d).map(|j| trace_of_product(&basis[i], &basis[j])).collect()).collect();
    linalg::nullspace(m, &form, d)
        .into_iter()
        .map(|c| {
            let n = basis[0].len();
            let mut x = vec![linalg::zero_vector(m, n); n];
            for (coef, b) in c.iter().zip(basis) {
                if coef.is_zero() {
                    continue;
                }
                for (row, brow) in x.iter_mut().zip(b) {
                    for (e, f) in row.iter_mut().zip(brow) {
                        *e += &(coef * f);
                    }
                }
            }
            x
        })
        .collect()
}

/// Matrices commuting with every generator.
fn commutant(m: u32, n: usize, gens: &[Matrix]) -> Vec<Matrix> {
    // unknown T, index a*n + c; row for (TG − GT)_{ab}
    let mut eqs = Echelon::new(n * n);
    for g in gens {
        for a_ in 0..n {
            for b in 0..n {
                let mut row = linalg::zero_vector(m, n * n);
                for c in 0..n {
                    if !g[c][b].is_zero() {
                        row[a_ * n + c] += &g[c][b];
                    }
                    if !g[a_][c].is_zero() {
                        row[c * n + b] -= &g[a_][c];
                    }
                }
                eqs.insert(&row);
            }
        }
        if eqs.rank() == n * n - 1 {
            break;
        }
    }
    linalg::nullspace(m, &eqs.basis().to_vec(), n * n).iter().map(|v| unflatten(v, n)).collect()
}

fn kernel_subspace(a: &GradedQuasialgebra, t: &Matrix) -> Subspace {
    let n = a.dim();
    Subspace::new(a, &linalg::nullspace(a.conductor(), t, n))
}

fn shifted(t: &Matrix, r: &Scalar) -> Matrix {
    let mut x = t.clone();
    for (i, row) in x.iter_mut().enumerate() {
        row[i] -= r;
    }
    x
}

/// Minimal polynomial of t as monic coefficients c_0..c_{k-1} (x^k + Σ c_i x^i).
fn minimal_polynomial(m: u32, t: &Matrix) -> Vec<Scalar> {
    let n = t.len();
    let mut powers = Echelon::new(n * n);
    let mut p = linalg::identity(m, n);
    let mut list: Vec<Vector> = Vec::new();
    loop {
        let v = flatten(&p);
        if !powers.contains(&v) {
            powers.insert(&v);
            list.push(v);
            p = linalg::mat_mul(t, &p);
            continue;
        }
        // v = Σ c_i t^i: solve against the recorded powers
        let cols = list.len();
        let rows: Matrix = (0..n * n).map(|r| list.iter().map(|w| w[r].clone()).collect()).collect();
        return match linalg::solve(m, &rows, &v, cols) {
            linalg::Solution::Unique(c) | linalg::Solution::Many(c, _) => c.into_iter().map(|x| -x).collect(),
            linalg::Solution::Inconsistent => unreachable!("power lies in the span"),
        };
    }
}

fn divisors(x: &BigInt) -> Option<Vec<BigInt>> {
    let v = x.abs().to_u64()?;
    if v > 1_000_000 {
        return None;
    }
    Some((1..=v).filter(|d| v % d == 0).map(BigInt::from).collect())
}

/// Rational roots of a monic rational polynomial, None if the search is too large.
fn rational_roots(poly: &[Scalar]) -> Option<Vec<BigRational>> {
    let mut q: Vec<BigRational> = poly.iter().map(|c| c.to_rational()).collect::<Option<_>>()?;
    q.push(BigRational::one());
    let lcm = q.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = q.iter().map(|c| (c * BigRational::from(lcm.clone())).to_integer()).collect();
    let mut roots = Vec::new();
    let lead = ints.last().cloned().unwrap_or_else(BigInt::one);
    let shift = ints.iter().take_while(|c| c.is_zero()).count();
    if shift > 0 {
        roots.push(BigRational::zero());
    }
    let low = &ints[shift];
    for p in divisors(low)? {
        for d in divisors(&lead)? {
            for s in [1, -1] {
                let r = BigRational::new(&p * s, d.clone());
                let val = ints.iter().rev().fold(BigRational::zero(), |acc, c| acc * &r + BigRational::from(c.clone()));
                if val.is_zero() && !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
    }
    Some(roots)
}

fn multiplication_algebra_decision(a: &GradedQuasialgebra) -> SimplicityOutcome {
    let n = a.dim();
    let m = a.conductor();
    let gens = multiplication_operators(a);
    let ma = generated_matrix_algebra(m, n, &gens);
    if ma.len() == n * n {
        return SimplicityOutcome::Simple { method: "multiplication algebra is End(A)" };
    }
    let rad = trace_form_radical(m, &ma);
    if !rad.is_empty() {
        let images: Vec<Vector> = rad
            .iter()
            .flat_map(|r| (0..n).map(move |j| r.iter().map(|row| row[j].clone()).collect::<Vector>()))
            .collect();
        return SimplicityOutcome::NotSimple {
            ideal: Subspace::new(a, &images),
            reason: "image of the radical of the multiplication algebra".into(),
        };
    }
    let cent = commutant(m, n, &gens);
    if cent.len() == 1 {
        return SimplicityOutcome::Simple { method: "semisimple multiplication algebra with centroid K" };
    }
    let id = flatten(&linalg::identity(m, n));
    let mut scalar_span = Echelon::new(n * n);
    scalar_span.insert(&id);
    let mut candidates: Vec<Scalar> = (0..crate::scalars::roots_of_unity_order(m) as i64).map(|k| Scalar::unit_root(m, k)).collect();
    candidates.insert(0, Scalar::zero(m));
    for t in cent.iter().filter(|t| !scalar_span.contains(&flatten(t))) {
        let poly = minimal_polynomial(m, t);
        let mut roots: Vec<Scalar> = candidates.clone();
        if m == 1 {
            if let Some(rs) = rational_roots(&poly) {
                roots.extend(rs.into_iter().map(|r| Scalar::from_rational(1, r)));
            }
        }
        for r in roots {
            let k = kernel_subspace(a, &shifted(t, &r));
            if !k.is_zero() {
                return SimplicityOutcome::NotSimple { ideal: k, reason: format!("eigenspace of a centroid element for {r}") };
            }
        }
        // no rational root was found above, so a polynomial of degree 2 or 3 is
        // irreducible and 𝕂[t] is a field
        let irreducible = m == 1 && (2..=3).contains(&poly.len()) && rational_roots(&poly).is_some();
        if irreducible && poly.len() == cent.len() {
            return SimplicityOutcome::Simple { method: "centroid is a field" };
        }
    }
    SimplicityOutcome::Undecided(format!("centroid of dimension {} without a detected zero divisor", cent.len()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Yes,
    No,
    Undecided(String),
}

/// Simple and central.
pub fn is_central_simple(a: &GradedQuasialgebra) -> Decision {
    if !is_central(a) {
        return Decision::No;
    }
    match is_simple(a) {
        SimplicityOutcome::Simple { .. } => Decision::Yes,
        SimplicityOutcome::NotSimple { .. } => Decision::No,
        SimplicityOutcome::Undecided(why) => Decision::Undecided(why),
    }
}

/// Radical of an associative algebra as the kernel of (x, y) ↦ tr(L_x L_y).
pub fn associative_radical(b: &AssociativeAlgebra) -> Vec<Vector> {
    let n = b.dim();
    let m = b.conductor();
    let ops: Vec<Matrix> = (0..n)
        .map(|i| {
            let cols: Vec<Vector> = (0..n).map(|j| b.mul(&b.basis(i), &b.basis(j))).collect();
            (0..n).map(|k| cols.iter().map(|c| c[k].clone()).collect()).collect()
        })
        .collect();
    let form: Matrix = (0..n).map(|i| (0..n).map(|j| trace_of_product(&ops[i], &ops[j])).collect()).collect();
    linalg::nullspace(m, &form, n)
}

pub fn is_semisimple_associative(b: &AssociativeAlgebra) -> bool {
    associative_radical(b).is_empty()
}
