//! Deformed group algebras K_F G: the group algebra with product g·h = F(g,h)gh.

use std::ops::Deref;

use crate::algebra::GradedQuasialgebra;
use crate::cochains::{self, coboundary_of, Cochain2};
use crate::crossed::{AssociativeAlgebra, QuasicrossedSystem};
use crate::groups::FiniteGroup;

/// K_F G together with the cochain that defines it.
#[derive(Clone, Debug)]
pub struct DeformedGroupAlgebra {
    algebra: GradedQuasialgebra,
    cochain: Cochain2,
}

/// Basis names `e<label>` for the elements of G, e.g. `e101` in ℤ₂³.
pub fn group_basis_names(group: &FiniteGroup) -> Vec<String> {
    group.elements().map(|g| format!("e{}", group.label(g))).collect()
}

impl DeformedGroupAlgebra {
    /// Basis = elements of G, deg(g) = g, g·h = F(g,h)·gh, φ = ∂F.
    pub fn build(f: &Cochain2) -> DeformedGroupAlgebra {
        let g = f.group();
        let n = g.order();
        let table = (0..n * n).map(|i| vec![(g.mul(i / n, i % n), f.get(i / n, i % n).clone())]).collect();
        let algebra = GradedQuasialgebra::new(g, group_basis_names(g), g.elements().collect(), table, coboundary_of(f))
            .expect("deformed group algebra is well formed");
        DeformedGroupAlgebra { algebra, cochain: f.clone() }
    }

    pub fn algebra(&self) -> &GradedQuasialgebra {
        &self.algebra
    }

    pub fn cochain(&self) -> &Cochain2 {
        &self.cochain
    }

    /// (G, 𝕂, ∂F, id, F).
    pub fn as_system(&self) -> QuasicrossedSystem {
        let f = &self.cochain;
        let g = f.group();
        let m = f.conductor();
        let base = AssociativeAlgebra::field(m);
        let n = g.order();
        let alpha = (0..n * n).map(|i| vec![f.get(i / n, i % n).clone()]).collect();
        let sigma = vec![crate::linalg::identity(m, 1); n];
        QuasicrossedSystem::new(g, base, coboundary_of(f), sigma, alpha).expect("deformed group algebra system")
    }
}

impl Deref for DeformedGroupAlgebra {
    type Target = GradedQuasialgebra;
    fn deref(&self) -> &GradedQuasialgebra {
        &self.algebra
    }
}

/// The ordinary group algebra 𝕂G at conductor m.
pub fn group_algebra(group: &FiniteGroup, m: u32) -> DeformedGroupAlgebra {
    DeformedGroupAlgebra::build(&Cochain2::trivial(group, m))
}

pub fn complex() -> DeformedGroupAlgebra {
    DeformedGroupAlgebra::build(&cochains::complex_cochain())
}

pub fn quaternions() -> DeformedGroupAlgebra {
    DeformedGroupAlgebra::build(&cochains::quaternion_cochain())
}

pub fn octonions() -> DeformedGroupAlgebra {
    DeformedGroupAlgebra::build(&cochains::octonion_cochain())
}

pub fn clifford(n: usize) -> DeformedGroupAlgebra {
    DeformedGroupAlgebra::build(&cochains::clifford_cochain(n))
}
