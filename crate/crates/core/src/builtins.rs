//! Named algebras, looked up at runtime as `name` or `name:arg,arg`.

use thiserror::Error;

use crate::algebra::GradedQuasialgebra;
use crate::cochains::{cyclic_cocycle, Cochain2, Cocycle3};
use crate::constructions::{chessboard_matrices, deformed_matrices, mat_over_delta, triangular_deformed, DeltaParams};
use crate::dga::{self, group_algebra, DeformedGroupAlgebra};
use crate::gmodules::kf_z3;
use crate::groups::FiniteGroup;
use crate::scalars::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BuiltinError {
    #[error("unknown builtin `{0}`")]
    Unknown(String),
    #[error("builtin `{name}`: {msg}")]
    BadArgs { name: String, msg: String },
    #[error("builtin `{0}` is already registered")]
    Duplicate(String),
}

/// A constructed builtin. `cochain` is set for deformed group algebras.
#[derive(Clone, Debug)]
pub struct Built {
    pub algebra: GradedQuasialgebra,
    pub cochain: Option<Cochain2>,
}

impl From<DeformedGroupAlgebra> for Built {
    fn from(d: DeformedGroupAlgebra) -> Built {
        Built { algebra: d.algebra().clone(), cochain: Some(d.cochain().clone()) }
    }
}

pub trait BuiltinAlgebra: Send + Sync {
    fn name(&self) -> &'static str;
    /// e.g. `clifford:N`.
    fn usage(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    /// `cocycle` replaces the default cocycle where the builtin takes one.
    fn build(&self, args: &[usize], cocycle: Option<&Cocycle3>) -> Result<Built, BuiltinError>;
}

fn bad(name: &str, msg: impl Into<String>) -> BuiltinError {
    BuiltinError::BadArgs { name: name.into(), msg: msg.into() }
}

fn arity(name: &str, args: &[usize], min: usize, max: usize) -> Result<(), BuiltinError> {
    if args.len() < min || args.len() > max {
        let want = if min == max { format!("{min}") } else { format!("{min} to {max}") };
        return Err(bad(name, format!("expected {want} arguments, got {}", args.len())));
    }
    Ok(())
}

fn no_cocycle(name: &str, cocycle: Option<&Cocycle3>) -> Result<(), BuiltinError> {
    match cocycle {
        Some(_) => Err(bad(name, "does not take a cocycle")),
        None => Ok(()),
    }
}

macro_rules! fixed {
    ($ty:ident, $name:literal, $summary:literal, $ctor:expr) => {
        struct $ty;
        impl BuiltinAlgebra for $ty {
            fn name(&self) -> &'static str {
                $name
            }
            fn usage(&self) -> &'static str {
                $name
            }
            fn summary(&self) -> &'static str {
                $summary
            }
            fn build(&self, args: &[usize], cocycle: Option<&Cocycle3>) -> Result<Built, BuiltinError> {
                arity($name, args, 0, 0)?;
                no_cocycle($name, cocycle)?;
                Ok($ctor.into())
            }
        }
    };
}

fixed!(Complex, "complex", "C as K_F Z2", dga::complex());
fixed!(Quaternions, "quaternions", "H as K_F (Z2 x Z2)", dga::quaternions());
fixed!(Octonions, "octonions", "O as K_F (Z2 x Z2 x Z2)", dga::octonions());
fixed!(KfZ3, "kf-z3", "K_F Z3 with e1e1 = -e2, e2e2 = e1", kf_z3());

struct Clifford;
impl BuiltinAlgebra for Clifford {
    fn name(&self) -> &'static str {
        "clifford"
    }
    fn usage(&self) -> &'static str {
        "clifford:N"
    }
    fn summary(&self) -> &'static str {
        "Clifford algebra on N anticommuting generators squaring to -1"
    }
    fn build(&self, args: &[usize], cocycle: Option<&Cocycle3>) -> Result<Built, BuiltinError> {
        arity("clifford", args, 1, 1)?;
        no_cocycle("clifford", cocycle)?;
        if !(1..=6).contains(&args[0]) {
            return Err(bad("clifford", "N must be between 1 and 6"));
        }
        Ok(dga::clifford(args[0]).into())
    }
}

struct GroupAlgebra;
impl BuiltinAlgebra for GroupAlgebra {
    fn name(&self) -> &'static str {
        "group-algebra"
    }
    fn usage(&self) -> &'static str {
        "group-algebra:N[,M]"
    }
    fn summary(&self) -> &'static str {
        "group algebra of Z_N over Q(zeta_M)"
    }
    fn build(&self, args: &[usize], cocycle: Option<&Cocycle3>) -> Result<Built, BuiltinError> {
        arity("group-algebra", args, 1, 2)?;
        no_cocycle("group-algebra", cocycle)?;
        let n = args[0];
        let m = args.get(1).copied().unwrap_or(1);
        if n == 0 || n > crate::groups::MAX_ORDER || m == 0 {
            return Err(bad("group-algebra", "N and M must be positive"));
        }
        Ok(group_algebra(&FiniteGroup::cyclic(n as u32), m as u32).into())
    }
}

fn deformed_cocycle(name: &str, args: &[usize], cocycle: Option<&Cocycle3>) -> Result<(usize, Cocycle3), BuiltinError> {
    arity(name, args, 1, 2)?;
    let n = args[0];
    if n == 0 || n > 16 {
        return Err(bad(name, "N must be between 1 and 16"));
    }
    match cocycle {
        Some(c) => {
            if args.len() > 1 {
                return Err(bad(name, "K and an explicit cocycle are exclusive"));
            }
            Ok((n, c.clone()))
        }
        None => Ok((n, cyclic_cocycle(n as u32, args.get(1).copied().unwrap_or(1) as i64))),
    }
}

struct DeformedMatrices;
impl BuiltinAlgebra for DeformedMatrices {
    fn name(&self) -> &'static str {
        "deformed-matrices"
    }
    fn usage(&self) -> &'static str {
        "deformed-matrices:N[,K]"
    }
    fn summary(&self) -> &'static str {
        "deformed N x N matrices over Z_N, cocycle zeta_N^(K a floor((b+c)/N)) by default"
    }
    fn build(&self, args: &[usize], cocycle: Option<&Cocycle3>) -> Result<Built, BuiltinError> {
        let (n, phi) = deformed_cocycle("deformed-matrices", args, cocycle)?;
        let algebra = deformed_matrices(n, &phi).map_err(|e| bad("deformed-matrices", e.to_string()))?;
        Ok(Built { algebra, cochain: None })
    }
}

struct Triangular;
impl BuiltinAlgebra for Triangular {
    fn name(&self) -> &'static str {
        "triangular"
    }
    fn usage(&self) -> &'static str {
        "triangular:N[,K]"
    }
    fn summary(&self) -> &'static str {
        "upper triangular part of deformed-matrices:N[,K]"
    }
    fn build(&self, args: &[usize], cocycle: Option<&Cocycle3>) -> Result<Built, BuiltinError> {
        let (n, phi) = deformed_cocycle("triangular", args, cocycle)?;
        let algebra = triangular_deformed(n, &phi).map_err(|e| bad("triangular", e.to_string()))?;
        Ok(Built { algebra, cochain: None })
    }
}

struct Chessboard;
impl BuiltinAlgebra for Chessboard {
    fn name(&self) -> &'static str {
        "chessboard"
    }
    fn usage(&self) -> &'static str {
        "chessboard:N,M"
    }
    fn summary(&self) -> &'static str {
        "(N+M) x (N+M) chess-board graded matrices, antiassociative"
    }
    fn build(&self, args: &[usize], cocycle: Option<&Cocycle3>) -> Result<Built, BuiltinError> {
        arity("chessboard", args, 2, 2)?;
        no_cocycle("chessboard", cocycle)?;
        if args[0] + args[1] > 6 {
            return Err(bad("chessboard", "N + M must be at most 6"));
        }
        let algebra = chessboard_matrices(args[0], args[1], 1).map_err(|e| bad("chessboard", e.to_string()))?;
        Ok(Built { algebra, cochain: None })
    }
}

struct MatDelta;
impl BuiltinAlgebra for MatDelta {
    fn name(&self) -> &'static str {
        "mat-delta"
    }
    fn usage(&self) -> &'static str {
        "mat-delta:N"
    }
    fn summary(&self) -> &'static str {
        "Mat_N(D) over Q, D = Q(i) + Q(i)u with conjugation and u^2 = i (antiassociative)"
    }
    fn build(&self, args: &[usize], cocycle: Option<&Cocycle3>) -> Result<Built, BuiltinError> {
        arity("mat-delta", args, 1, 1)?;
        no_cocycle("mat-delta", cocycle)?;
        if !(1..=3).contains(&args[0]) {
            return Err(bad("mat-delta", "N must be between 1 and 3"));
        }
        let params = DeltaParams { conductor: 4, s: -1, a: Scalar::root_of_unity(4, 1) };
        let algebra = mat_over_delta(args[0], &params).map_err(|e| bad("mat-delta", e.to_string()))?;
        Ok(Built { algebra, cochain: None })
    }
}

pub struct BuiltinRegistry {
    entries: Vec<Box<dyn BuiltinAlgebra>>,
}

impl BuiltinRegistry {
    pub fn empty() -> BuiltinRegistry {
        BuiltinRegistry { entries: Vec::new() }
    }

    pub fn register(&mut self, b: Box<dyn BuiltinAlgebra>) -> Result<(), BuiltinError> {
        if self.get(b.name()).is_some() {
            return Err(BuiltinError::Duplicate(b.name().into()));
        }
        self.entries.push(b);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&dyn BuiltinAlgebra> {
        self.entries.iter().find(|b| b.name() == name).map(|b| b.as_ref())
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn BuiltinAlgebra> {
        self.entries.iter().map(|b| b.as_ref())
    }

    /// Builds `name` or `name:a,b`.
    pub fn build(&self, spec: &str, cocycle: Option<&Cocycle3>) -> Result<Built, BuiltinError> {
        let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
        let b = self.get(name).ok_or_else(|| BuiltinError::Unknown(name.into()))?;
        let args = rest
            .split([',', ':'])
            .filter(|s| !s.is_empty())
            .map(|s| s.trim().parse::<usize>().map_err(|_| bad(name, format!("`{s}` is not a number"))))
            .collect::<Result<Vec<_>, _>>()?;
        b.build(&args, cocycle)
    }
}

impl Default for BuiltinRegistry {
    fn default() -> BuiltinRegistry {
        let mut r = BuiltinRegistry::empty();
        let all: Vec<Box<dyn BuiltinAlgebra>> = vec![
            Box::new(Complex),
            Box::new(Quaternions),
            Box::new(Octonions),
            Box::new(Clifford),
            Box::new(GroupAlgebra),
            Box::new(KfZ3),
            Box::new(DeformedMatrices),
            Box::new(Triangular),
            Box::new(Chessboard),
            Box::new(MatDelta),
        ];
        for b in all {
            r.register(b).expect("builtin names are distinct");
        }
        r
    }
}
