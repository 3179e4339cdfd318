//! Exact computations with G-graded quasialgebras over finite groups.
//!
//! Everything is exact: scalars live in a cyclotomic field ℚ(ζ_m) and all
//! linear algebra is done by Gaussian elimination over it.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod analysis;
pub mod builtins;
pub mod cayley;
pub mod cochains;
pub mod constructions;
pub mod crossed;
pub mod dga;
pub mod groups;
pub mod gmodules;
pub mod linalg;
pub mod scalars;

pub use algebra::{Element, GradedQuasialgebra};
pub use cochains::{Cochain2, Cocycle3};
pub use groups::{FiniteGroup, GroupElement};
pub use scalars::Scalar;
