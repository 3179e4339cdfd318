//! Graded left, right and bimodules over a graded quasialgebra.
//!
//! Axioms, for homogeneous x_g, x_h and v_k:
//! left (x_g x_h).v = φ(g,h,k) x_g.(x_h.v), right (v.x_g).x_h = φ(k,g,h) v.(x_g x_h),
//! compatibility (x_g.v).x_h = φ(g,k,h) x_g.(v.x_h).

use thiserror::Error;

use crate::algebra::{Element, GradedQuasialgebra, StructureTable};
use crate::cochains::Cochain2;
use crate::constructions::chessboard_matrices;
use crate::dga::DeformedGroupAlgebra;
use crate::groups::{FiniteGroup, GroupElement};
use crate::linalg::{self, Echelon, Vector};
use crate::scalars::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModuleError {
    #[error("the {0} action is not defined")]
    MissingAction(&'static str),
    #[error("{side} action of {algebra} on {module} leaves the expected degree")]
    DegreeViolation { side: &'static str, algebra: String, module: String },
    #[error("action table has the wrong shape")]
    WrongShape,
    #[error("degree {0} is not in the grading group")]
    BadDegree(GroupElement),
    #[error("subspace generator is not homogeneous")]
    NotHomogeneous,
}

/// A graded vector space with optional left and right actions.
/// `left[i * dim + v]` is x_i.v_v and `right[v * dim A + i]` is v_v.x_i.
#[derive(Clone, Debug)]
pub struct GradedModule {
    algebra: GradedQuasialgebra,
    names: Vec<String>,
    degrees: Vec<GroupElement>,
    left: Option<StructureTable>,
    right: Option<StructureTable>,
}

/// One failed instance of an axiom. `triple` lists (algebra, algebra, module)
/// indices for the left axiom, (module, algebra, algebra) for the right axiom
/// and (algebra, module, algebra) for compatibility.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleFailure {
    pub triple: [usize; 3],
    pub lhs: Vector,
    pub rhs: Vector,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModuleReport {
    pub checked: usize,
    pub failures: Vec<ModuleFailure>,
    /// Module basis indices on which 1 does not act as the identity.
    pub unit_failures: Vec<usize>,
}

impl ModuleReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.unit_failures.is_empty()
    }
}

impl GradedModule {
    pub fn new(
        algebra: &GradedQuasialgebra,
        names: Vec<String>,
        degrees: Vec<GroupElement>,
        left: Option<StructureTable>,
        right: Option<StructureTable>,
    ) -> Result<GradedModule, ModuleError> {
        let (na, nv) = (algebra.dim(), names.len());
        let grp = algebra.group();
        if degrees.len() != nv {
            return Err(ModuleError::WrongShape);
        }
        for &d in &degrees {
            grp.check(d).map_err(|_| ModuleError::BadDegree(d))?;
        }
        let check = |table: &StructureTable, side: &'static str| -> Result<(), ModuleError> {
            if table.len() != na * nv {
                return Err(ModuleError::WrongShape);
            }
            for (idx, entry) in table.iter().enumerate() {
                let (i, v) = if side == "left" { (idx / nv, idx % nv) } else { (idx % na, idx / na) };
                let target = if side == "left" {
                    grp.mul(algebra.degree(i), degrees[v])
                } else {
                    grp.mul(degrees[v], algebra.degree(i))
                };
                for (k, _) in entry {
                    if *k >= nv || degrees[*k] != target {
                        return Err(ModuleError::DegreeViolation {
                            side,
                            algebra: algebra.name(i).to_string(),
                            module: names[v].clone(),
                        });
                    }
                }
            }
            Ok(())
        };
        if let Some(t) = &left {
            check(t, "left")?;
        }
        if let Some(t) = &right {
            check(t, "right")?;
        }
        Ok(GradedModule { algebra: algebra.clone(), names, degrees, left, right })
    }

    /// A acting on itself by its product on both sides.
    pub fn regular(algebra: &GradedQuasialgebra) -> GradedModule {
        // right[v * n + i] = v·x_i is the structure entry (v, i), the same layout
        let table = algebra.structure_table().clone();
        GradedModule::new(algebra, algebra.names().to_vec(), algebra.degrees().to_vec(), Some(table.clone()), Some(table))
            .expect("regular module")
    }

    pub fn algebra(&self) -> &GradedQuasialgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[GroupElement] {
        &self.degrees
    }

    pub fn left_table(&self) -> Option<&StructureTable> {
        self.left.as_ref()
    }

    pub fn right_table(&self) -> Option<&StructureTable> {
        self.right.as_ref()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn zero(&self) -> Vector {
        linalg::zero_vector(self.algebra.conductor(), self.dim())
    }

    pub fn basis_vector(&self, v: usize) -> Vector {
        linalg::unit_vector(self.algebra.conductor(), self.dim(), v)
    }

    pub fn act_left(&self, x: &Element, v: &[Scalar]) -> Result<Vector, ModuleError> {
        let t = self.left.as_ref().ok_or(ModuleError::MissingAction("left"))?;
        let nv = self.dim();
        let mut out = self.zero();
        for (i, c) in x.terms() {
            for (w, d) in v.iter().enumerate() {
                if d.is_zero() {
                    continue;
                }
                let cd = c * d;
                for (k, s) in &t[i * nv + w] {
                    out[*k] += &(&cd * s);
                }
            }
        }
        Ok(out)
    }

    pub fn act_right(&self, v: &[Scalar], x: &Element) -> Result<Vector, ModuleError> {
        let t = self.right.as_ref().ok_or(ModuleError::MissingAction("right"))?;
        let na = self.algebra.dim();
        let mut out = self.zero();
        for (w, d) in v.iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            for (i, c) in x.terms() {
                let cd = d * c;
                for (k, s) in &t[w * na + i] {
                    out[*k] += &(&cd * s);
                }
            }
        }
        Ok(out)
    }

    fn scaled(v: Vector, c: &Scalar) -> Vector {
        v.into_iter().map(|x| x * c).collect()
    }

    /// (x_g x_h).v = φ(g,h,k) x_g.(x_h.v) on every basis triple, and 1.v = v.
    pub fn verify_left_module(&self) -> Result<ModuleReport, ModuleError> {
        let a = &self.algebra;
        let phi = a.cocycle();
        let mut failures = Vec::new();
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let xy = a.mul_basis(i, j);
                for v in 0..self.dim() {
                    let bv = self.basis_vector(v);
                    let lhs = self.act_left(&xy, &bv)?;
                    let inner = self.act_left(&a.basis_element(j), &bv)?;
                    let c = phi.get(a.degree(i), a.degree(j), self.degrees[v]);
                    let rhs = Self::scaled(self.act_left(&a.basis_element(i), &inner)?, c);
                    if lhs != rhs {
                        failures.push(ModuleFailure { triple: [i, j, v], lhs, rhs });
                    }
                }
            }
        }
        let mut unit_failures = Vec::new();
        for v in 0..self.dim() {
            if self.act_left(&a.one(), &self.basis_vector(v))? != self.basis_vector(v) {
                unit_failures.push(v);
            }
        }
        Ok(ModuleReport { checked: a.dim().pow(2) * self.dim(), failures, unit_failures })
    }

    /// (v.x_g).x_h = φ(k,g,h) v.(x_g x_h) on every basis triple, and v.1 = v.
    pub fn verify_right_module(&self) -> Result<ModuleReport, ModuleError> {
        let a = &self.algebra;
        let phi = a.cocycle();
        let mut failures = Vec::new();
        for v in 0..self.dim() {
            let bv = self.basis_vector(v);
            for i in 0..a.dim() {
                let vi = self.act_right(&bv, &a.basis_element(i))?;
                for j in 0..a.dim() {
                    let lhs = self.act_right(&vi, &a.basis_element(j))?;
                    let c = phi.get(self.degrees[v], a.degree(i), a.degree(j));
                    let rhs = Self::scaled(self.act_right(&bv, &a.mul_basis(i, j))?, c);
                    if lhs != rhs {
                        failures.push(ModuleFailure { triple: [v, i, j], lhs, rhs });
                    }
                }
            }
        }
        let mut unit_failures = Vec::new();
        for v in 0..self.dim() {
            if self.act_right(&self.basis_vector(v), &a.one())? != self.basis_vector(v) {
                unit_failures.push(v);
            }
        }
        Ok(ModuleReport { checked: a.dim().pow(2) * self.dim(), failures, unit_failures })
    }

    /// Compatibility (x_g.v).x_h = φ(g,k,h) x_g.(v.x_h) on every basis triple.
    /// The one-sided axioms are checked separately.
    pub fn verify_bimodule(&self) -> Result<ModuleReport, ModuleError> {
        let a = &self.algebra;
        let phi = a.cocycle();
        let mut failures = Vec::new();
        for i in 0..a.dim() {
            let xi = a.basis_element(i);
            for v in 0..self.dim() {
                let bv = self.basis_vector(v);
                let xv = self.act_left(&xi, &bv)?;
                for j in 0..a.dim() {
                    let xj = a.basis_element(j);
                    let lhs = self.act_right(&xv, &xj)?;
                    let c = phi.get(a.degree(i), self.degrees[v], a.degree(j));
                    let rhs = Self::scaled(self.act_left(&xi, &self.act_right(&bv, &xj)?)?, c);
                    if lhs != rhs {
                        failures.push(ModuleFailure { triple: [i, v, j], lhs, rhs });
                    }
                }
            }
        }
        Ok(ModuleReport { checked: a.dim().pow(2) * self.dim(), failures, unit_failures: Vec::new() })
    }

    /// Whether span(W) is closed under the defined actions. W must consist of
    /// homogeneous vectors.
    pub fn is_graded_submodule(&self, w: &[Vector]) -> Result<bool, ModuleError> {
        for v in w {
            let mut degs = v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, _)| self.degrees[k]);
            if let Some(d) = degs.next() {
                if degs.any(|x| x != d) {
                    return Err(ModuleError::NotHomogeneous);
                }
            }
        }
        let span = Echelon::from_vectors(self.dim(), w);
        for v in span.basis() {
            for i in 0..self.algebra.dim() {
                let x = self.algebra.basis_element(i);
                if self.left.is_some() && !span.contains(&self.act_left(&x, v)?) {
                    return Ok(false);
                }
                if self.right.is_some() && !span.contains(&self.act_right(v, &x)?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn format(&self, v: &[Scalar]) -> String {
        crate::algebra::format_terms(
            v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (self.names[i].as_str(), c)),
        )
    }
}

fn table_from(
    rows: usize,
    cols: usize,
    entries: &[(usize, usize, usize, i64)],
    m: u32,
) -> StructureTable {
    let mut t = vec![Vec::new(); rows * cols];
    for &(r, c, k, s) in entries {
        t[r * cols + c].push((k, Scalar::from_int(m, s)));
    }
    t
}

/// The 2×2 chess-board algebra (E11, E22 even; E12, E21 odd) acting on
/// M = ⟨m⟩ ⊕ ⟨n⟩ with m even and n odd. Both one-sided actions satisfy
/// their axioms; compatibility fails at (E21, n, E12).
pub fn chessboard_mn_module() -> GradedModule {
    let a = chessboard_matrices(1, 1, 1).expect("chessboard");
    let idx = |s: &str| a.index_of(s).unwrap();
    let (e11, e12, e21, e22) = (idx("E11"), idx("E12"), idx("E21"), idx("E22"));
    let (m, n) = (0, 1);
    // left: E22 m = m, E21 n = m, E12 m = -n, E11 n = n
    let left = table_from(4, 2, &[(e22, m, m, 1), (e21, n, m, 1), (e12, m, n, -1), (e11, n, n, 1)], 1);
    // right: m E11 = m, n E21 = m, m E12 = n, n E22 = n
    let right = table_from(2, 4, &[(m, e11, m, 1), (n, e21, m, 1), (m, e12, n, 1), (n, e22, n, 1)], 1);
    GradedModule::new(&a, vec!["m".into(), "n".into()], vec![0, 1], Some(left), Some(right)).expect("module")
}

/// K_F ℤ₃ with e1·e1 = −e2, e1·e2 = e2·e1 = e, e2·e2 = e1.
pub fn kf_z3() -> DeformedGroupAlgebra {
    let g = FiniteGroup::cyclic(3);
    let f = Cochain2::from_fn(&g, |x, y| Scalar::from_int(1, if x == 1 && y == 1 { -1 } else { 1 })).expect("cochain");
    DeformedGroupAlgebra::build(&f)
}

fn z3_actions() -> (StructureTable, StructureTable) {
    // module basis ve, ve1, ve2 = 0, 1, 2; algebra basis e0, e1, e2 = 0, 1, 2
    let right = table_from(
        3,
        3,
        &[
            (0, 0, 0, 1),
            (0, 1, 1, 1),
            (0, 2, 2, 1),
            (1, 0, 1, 1),
            (1, 1, 2, -1),
            (1, 2, 0, 1),
            (2, 0, 2, 1),
            (2, 1, 0, 1),
            (2, 2, 1, 1),
        ],
        1,
    );
    let left = table_from(
        3,
        3,
        &[
            (0, 0, 0, 1),
            (0, 1, 1, 1),
            (0, 2, 2, 1),
            (1, 0, 1, -1),
            (2, 0, 2, -1),
            (1, 1, 2, 1),
            (2, 1, 0, -1),
            (1, 2, 0, -1),
            (2, 2, 1, -1),
        ],
        1,
    );
    (left, right)
}

/// The three-dimensional module v·K_F ℤ₃ with the two displayed sign tables:
/// the first read as the right action, the second as the left action, rows
/// indexed by the module basis.
pub fn z3_signed_module() -> GradedModule {
    let a = kf_z3();
    let (left, right) = z3_actions();
    let names = vec!["ve".into(), "ve1".into(), "ve2".into()];
    GradedModule::new(&a, names, vec![0, 1, 2], Some(left), Some(right)).expect("module")
}

/// The alternate reading of the same two tables: the first as the left action
/// and the second as the right action.
pub fn z3_signed_module_swapped() -> GradedModule {
    let a = kf_z3();
    let (left, right) = z3_actions();
    // transpose layouts: left[i*3+v] <-> right[v*3+i]
    let swap = |t: &StructureTable| -> StructureTable {
        (0..9).map(|idx| t[(idx % 3) * 3 + idx / 3].clone()).collect()
    };
    let names = vec!["ve".into(), "ve1".into(), "ve2".into()];
    GradedModule::new(&a, names, vec![0, 1, 2], Some(swap(&right)), Some(swap(&left))).expect("module")
}
