//! Exact arithmetic in the cyclotomic field ℚ(ζ_m).
//!
//! A [`Scalar`] is a polynomial in ζ_m with rational coefficients, reduced
//! modulo the m-th cyclotomic polynomial Φ_m, so every value has exactly one
//! representation. Values of different conductors never mix.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("cannot parse `{0}` as a scalar")]
    Parse(String),
}

/// Precomputed data for one conductor.
#[derive(Debug)]
struct Field {
    m: u32,
    deg: usize,
    /// `reduce[j]` is ζ^(deg + j) written in the power basis, for j < deg - 1.
    reduce: Vec<Vec<BigInt>>,
    /// Φ_m with integer coefficients, lowest degree first.
    poly: Vec<BigInt>,
    /// `powers[k]` is ζ^k in the power basis, for k < m.
    powers: Vec<Vec<BigInt>>,
}

fn cyclotomic_poly(m: u32) -> Vec<BigInt> {
    // Φ_m = (x^m - 1) / Π_{d | m, d < m} Φ_d
    let mut num: Vec<BigInt> = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            let den = cyclotomic_poly(d);
            num = exact_div_monic(&num, &den);
        }
    }
    num
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut q = vec![BigInt::zero(); qn + 1];
    for i in (0..=qn).rev() {
        let c = rem[i + dn].clone();
        if !c.is_zero() {
            for (j, dj) in den.iter().enumerate() {
                rem[i + j] -= &c * dj;
            }
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    q
}

fn field(m: u32) -> Arc<Field> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Field>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(f) = cache.read().expect("field cache poisoned").get(&m) {
        return f.clone();
    }
    let poly = cyclotomic_poly(m);
    let deg = poly.len() - 1;
    // ζ^deg = -Σ_{i<deg} poly[i] ζ^i
    let shift = |v: &[BigInt]| -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); deg];
        let top = v[deg - 1].clone();
        for i in (1..deg).rev() {
            out[i] = v[i - 1].clone();
        }
        if !top.is_zero() {
            for i in 0..deg {
                out[i] -= &top * &poly[i];
            }
        }
        out
    };
    let mut powers = Vec::with_capacity(m as usize);
    let mut cur = vec![BigInt::zero(); deg];
    cur[0] = BigInt::one();
    let needed = (m as usize).max(2 * deg);
    let mut all = Vec::with_capacity(needed);
    for _ in 0..needed {
        all.push(cur.clone());
        cur = shift(&cur);
    }
    for k in 0..m as usize {
        powers.push(all[k].clone());
    }
    let reduce = (deg..2 * deg).map(|k| all[k].clone()).collect();
    let f = Arc::new(Field { m, deg, reduce, poly, powers });
    cache.write().expect("field cache poisoned").insert(m, f.clone());
    f
}

/// Euler's totient.
pub fn euler_phi(m: u32) -> usize {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

/// Order of the group of roots of unity contained in ℚ(ζ_m).
pub fn roots_of_unity_order(m: u32) -> u32 {
    if m.is_multiple_of(2) {
        m
    } else {
        2 * m
    }
}

/// An exact element of ℚ(ζ_m).
#[derive(Clone)]
pub struct Scalar {
    field: Arc<Field>,
    coeffs: Vec<BigRational>,
}

impl Scalar {
    pub fn zero(m: u32) -> Scalar {
        assert!(m > 0, "conductor must be positive");
        let field = field(m);
        let coeffs = vec![BigRational::zero(); field.deg];
        Scalar { field, coeffs }
    }

    pub fn one(m: u32) -> Scalar {
        Scalar::from_int(m, 1)
    }

    pub fn from_int(m: u32, n: i64) -> Scalar {
        Scalar::from_rational(m, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(m: u32, p: i64, q: i64) -> Scalar {
        Scalar::from_rational(m, BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_rational(m: u32, q: BigRational) -> Scalar {
        let mut s = Scalar::zero(m);
        s.coeffs[0] = q;
        s
    }

    /// Builds Σ c_k ζ^k from arbitrary (unreduced) coefficients.
    pub fn from_coeffs(m: u32, coeffs: &[BigRational]) -> Scalar {
        let mut acc = Scalar::zero(m);
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc += &(Scalar::root_of_unity(m, k as i64) * &Scalar::from_rational(m, c.clone()));
            }
        }
        acc
    }

    /// ζ_m^k, reduced.
    pub fn root_of_unity(m: u32, k: i64) -> Scalar {
        assert!(m > 0, "conductor must be positive");
        let field = field(m);
        let k = k.rem_euclid(m as i64) as usize;
        let coeffs = field.powers[k]
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        Scalar { field, coeffs }
    }

    /// ξ^k where ξ generates the full root-of-unity group of ℚ(ζ_m)
    /// (ξ = ζ_m for even m, ξ = -ζ_m for odd m).
    pub fn unit_root(m: u32, k: i64) -> Scalar {
        let order = roots_of_unity_order(m) as i64;
        let k = k.rem_euclid(order);
        if m.is_multiple_of(2) {
            Scalar::root_of_unity(m, k)
        } else {
            let z = Scalar::root_of_unity(m, k);
            if k % 2 == 0 {
                z
            } else {
                -z
            }
        }
    }

    /// If this is ξ^k for the generator of [`Scalar::unit_root`], returns k.
    pub fn unit_log(&self) -> Option<u32> {
        let m = self.conductor();
        (0..roots_of_unity_order(m)).find(|&k| Scalar::unit_root(m, k as i64) == *self)
    }

    pub fn conductor(&self) -> u32 {
        self.field.m
    }

    /// Coefficients in the power basis 1, ζ, …, ζ^(φ(m)-1).
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// Re-embeds the value at conductor m: always possible when the current
    /// conductor divides m (ζ ↦ ζ_m^{m/current}), otherwise only for rationals.
    pub fn lift(&self, m: u32) -> Option<Scalar> {
        let here = self.field.m;
        if !m.is_multiple_of(here) {
            return self.to_rational().map(|q| Scalar::from_rational(m, q));
        }
        let step = (m / here) as i64;
        let mut out = Scalar::zero(m);
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &(&Scalar::from_rational(m, c.clone()) * &Scalar::root_of_unity(m, k as i64 * step));
            }
        }
        Some(out)
    }

    fn check(&self, other: &Scalar) -> Result<(), ScalarError> {
        if self.field.m != other.field.m {
            Err(ScalarError::ConductorMismatch(self.field.m, other.field.m))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Scalar { field: self.field.clone(), coeffs })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Scalar { field: self.field.clone(), coeffs })
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(other)?;
        let f = &self.field;
        let d = f.deg;
        if d == 1 {
            return Ok(Scalar { field: f.clone(), coeffs: vec![&self.coeffs[0] * &other.coeffs[0]] });
        }
        let mut full = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    full[i + j] += a * b;
                }
            }
        }
        let mut coeffs: Vec<BigRational> = full[..d].to_vec();
        for (j, c) in full[d..].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, r) in f.reduce[j].iter().enumerate() {
                if !r.is_zero() {
                    coeffs[i] += c * BigRational::from_integer(r.clone());
                }
            }
        }
        Ok(Scalar { field: f.clone(), coeffs })
    }

    pub fn try_inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let f = &self.field;
        if f.deg == 1 {
            return Ok(Scalar { field: f.clone(), coeffs: vec![self.coeffs[0].recip()] });
        }
        // Extended Euclid on (a, Φ_m): track s with s·a ≡ r (mod Φ_m).
        let modulus: Vec<BigRational> =
            f.poly.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        let mut r0 = modulus;
        let mut r1 = trim(self.coeffs.clone());
        let mut s0: Vec<BigRational> = vec![];
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while r1.len() > 1 {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant since Φ_m is irreducible.
        let c = r1[0].recip();
        let s: Vec<BigRational> = s1.iter().map(|x| x * &c).collect();
        Ok(Scalar::from_coeffs(f.m, &s))
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.try_mul(&other.try_inv()?)
    }

    pub fn inv(&self) -> Scalar {
        self.try_inv().expect("inverse of zero scalar")
    }

    pub fn pow(&self, e: i64) -> Scalar {
        let mut base = if e < 0 { self.inv() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Scalar::one(self.conductor());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Applies the field automorphism ζ ↦ ζ^s (s coprime to m).
    pub fn galois(&self, s: i64) -> Scalar {
        let m = self.conductor();
        let mut acc = Scalar::zero(m);
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc += &(Scalar::root_of_unity(m, k as i64 * s) * &Scalar::from_rational(m, c.clone()));
            }
        }
        acc
    }
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (vec![], r);
    }
    let lead = b[db].clone();
    let mut q = vec![BigRational::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = &r[i + db] / &lead;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[i + j] -= &c * bj;
            }
        }
        q[i] = c;
    }
    (trim(q), trim(r))
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        self.field.m == other.field.m && self.coeffs == other.coeffs
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.m.hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar[m={}]({})", self.field.m, self)
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Prints `p/q` for rationals and sums of `c*z^k` terms otherwise.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = if k == 0 {
                fmt_rational(c)
            } else if c.is_one() {
                format!("z^{k}")
            } else {
                format!("{}*z^{k}", fmt_rational(c))
            };
            terms.push(t);
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$try(rhs).expect("scalar arithmetic")
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$try(&rhs).expect("scalar arithmetic")
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$try(rhs).expect("scalar arithmetic")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        assert_eq!(self.field.m, rhs.field.m, "conductor mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        assert_eq!(self.field.m, rhs.field.m, "conductor mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { field: self.field, coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.clone().neg()
    }
}

impl Scalar {
    /// Parses the display form: terms `p/q`, `z^k` or `p/q*z^k` joined by `+`.
    pub fn parse(m: u32, text: &str) -> Result<Scalar, ScalarError> {
        if m == 0 {
            return Err(ScalarError::ZeroConductor);
        }
        let err = || ScalarError::Parse(text.trim().to_string());
        let mut total = Scalar::zero(m);
        for term in text.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(err());
            }
            let (coef, power) = match term.split_once('*') {
                Some((c, z)) => (parse_rational(c).ok_or_else(err)?, Some(z.trim())),
                None if term.trim_start_matches('-').starts_with('z') => {
                    let neg = term.starts_with('-');
                    let one = BigRational::one();
                    (if neg { -one } else { one }, Some(term.trim_start_matches('-')))
                }
                None => (parse_rational(term).ok_or_else(err)?, None),
            };
            let z = match power {
                Some(z) => {
                    let k = z.strip_prefix("z^").ok_or_else(err)?.trim().parse::<i64>().map_err(|_| err())?;
                    Scalar::root_of_unity(m, k)
                }
                None => Scalar::one(m),
            };
            total += &(&Scalar::from_rational(m, coef) * &z);
        }
        Ok(total)
    }
}

/// Parses a rational literal `p` or `p/q`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim().parse::<BigInt>().ok()?, q.trim().parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if q.is_zero() {
        return None;
    }
    Some(BigRational::new(p, q))
}
