//! Finite grading groups.
//!
//! Elements are indices `0..order()`. For a product of cyclic groups
//! ℤ_{n₁}×…×ℤ_{n_k} the index enumerates residue tuples lexicographically,
//! first coordinate most significant, so index 0 is the identity.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest supported group order.
pub const MAX_ORDER: usize = 256;

pub type GroupElement = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group table is empty")]
    Empty,
    #[error("group of order {0} exceeds the supported maximum {MAX_ORDER}")]
    TooLarge(usize),
    #[error("table is not square")]
    NotSquare,
    #[error("not a Latin square: row {row} repeats or misses an entry")]
    NotLatinSquare { row: usize },
    #[error("identity index {0} does not act as identity")]
    NoIdentity(usize),
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("element {element} is not in a group of order {order}")]
    GroupMismatch { element: usize, order: usize },
    #[error("cyclic factor orders must be positive")]
    ZeroFactor,
}

#[derive(Debug, PartialEq, Eq)]
struct GroupData {
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
    identity: usize,
    factors: Option<Vec<u32>>,
}

/// A validated finite group stored as a Cayley table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    data: Arc<GroupData>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.data.factors {
            Some(fs) => write!(f, "FiniteGroup({})", describe_factors(fs)),
            None => write!(f, "FiniteGroup(table, order {})", self.data.order),
        }
    }
}

fn describe_factors(fs: &[u32]) -> String {
    if fs.is_empty() {
        "1".into()
    } else {
        fs.iter().map(|n| format!("Z{n}")).collect::<Vec<_>>().join(" x ")
    }
}

impl FiniteGroup {
    pub fn cyclic(n: u32) -> FiniteGroup {
        FiniteGroup::product_of_cyclic(&[n]).expect("cyclic group")
    }

    /// ℤ_{n₁}×…×ℤ_{n_k}. The empty list gives the trivial group.
    pub fn product_of_cyclic(factors: &[u32]) -> Result<FiniteGroup, GroupError> {
        if factors.contains(&0) {
            return Err(GroupError::ZeroFactor);
        }
        let order: usize = factors.iter().map(|&n| n as usize).product();
        if order > MAX_ORDER {
            return Err(GroupError::TooLarge(order));
        }
        let decode = |mut i: usize| -> Vec<u32> {
            let mut r = vec![0; factors.len()];
            for (k, &n) in factors.iter().enumerate().rev() {
                r[k] = (i % n as usize) as u32;
                i /= n as usize;
            }
            r
        };
        let encode = |r: &[u32]| -> usize {
            r.iter().zip(factors).fold(0, |acc, (&x, &n)| acc * n as usize + x as usize)
        };
        let mut table = vec![0; order * order];
        let mut inverses = vec![0; order];
        for a in 0..order {
            let ra = decode(a);
            for b in 0..order {
                let rb = decode(b);
                let rc: Vec<u32> = ra.iter().zip(&rb).zip(factors).map(|((x, y), n)| (x + y) % n).collect();
                table[a * order + b] = encode(&rc);
            }
            let ri: Vec<u32> = ra.iter().zip(factors).map(|(x, n)| (n - x) % n).collect();
            inverses[a] = encode(&ri);
        }
        Ok(FiniteGroup {
            data: Arc::new(GroupData { order, table, inverses, identity: 0, factors: Some(factors.to_vec()) }),
        })
    }

    /// ℤ₂ⁿ.
    pub fn elementary_abelian_2(n: usize) -> FiniteGroup {
        FiniteGroup::product_of_cyclic(&vec![2; n]).expect("2-group")
    }

    /// Validates a Cayley table with the given identity index.
    pub fn from_table(table: Vec<Vec<usize>>, identity: usize) -> Result<FiniteGroup, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        if n > MAX_ORDER {
            return Err(GroupError::TooLarge(n));
        }
        if table.iter().any(|r| r.len() != n) {
            return Err(GroupError::NotSquare);
        }
        for (i, row) in table.iter().enumerate() {
            let mut seen = vec![false; n];
            for &x in row {
                if x >= n || seen[x] {
                    return Err(GroupError::NotLatinSquare { row: i });
                }
                seen[x] = true;
            }
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for row in &table {
                if seen[row[j]] {
                    return Err(GroupError::NotLatinSquare { row: j });
                }
                seen[row[j]] = true;
            }
        }
        if identity >= n || (0..n).any(|g| table[identity][g] != g || table[g][identity] != g) {
            return Err(GroupError::NoIdentity(identity));
        }
        let mut inverses = vec![0; n];
        for g in 0..n {
            inverses[g] = (0..n)
                .find(|&h| table[g][h] == identity && table[h][g] == identity)
                .ok_or(GroupError::NoInverse(g))?;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let flat = table.into_iter().flatten().collect();
        Ok(FiniteGroup { data: Arc::new(GroupData { order: n, table: flat, inverses, identity, factors: None }) })
    }

    /// G₁×G₂ with element index i₁·|G₂| + i₂.
    pub fn direct_product(g1: &FiniteGroup, g2: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
        if let (Some(a), Some(b)) = (&g1.data.factors, &g2.data.factors) {
            let fs: Vec<u32> = a.iter().chain(b).copied().collect();
            return FiniteGroup::product_of_cyclic(&fs);
        }
        let (n1, n2) = (g1.order(), g2.order());
        let n = n1 * n2;
        if n > MAX_ORDER {
            return Err(GroupError::TooLarge(n));
        }
        let table = (0..n)
            .map(|a| (0..n).map(|b| g1.mul(a / n2, b / n2) * n2 + g2.mul(a % n2, b % n2)).collect())
            .collect();
        FiniteGroup::from_table(table, g1.identity() * n2 + g2.identity())
    }

    pub fn order(&self) -> usize {
        self.data.order
    }

    pub fn identity(&self) -> GroupElement {
        self.data.identity
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.data.order
    }

    pub fn mul(&self, g: GroupElement, h: GroupElement) -> GroupElement {
        self.data.table[g * self.data.order + h]
    }

    pub fn try_mul(&self, g: GroupElement, h: GroupElement) -> Result<GroupElement, GroupError> {
        self.check(g)?;
        self.check(h)?;
        Ok(self.mul(g, h))
    }

    pub fn check(&self, g: GroupElement) -> Result<GroupElement, GroupError> {
        if g < self.data.order {
            Ok(g)
        } else {
            Err(GroupError::GroupMismatch { element: g, order: self.data.order })
        }
    }

    pub fn inverse(&self, g: GroupElement) -> GroupElement {
        self.data.inverses[g]
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Orders of the cyclic factors, when the group was built as a product.
    pub fn factors(&self) -> Option<&[u32]> {
        self.data.factors.as_deref()
    }

    /// Residue tuple of an element of a cyclic product.
    pub fn residues(&self, g: GroupElement) -> Option<Vec<u32>> {
        let fs = self.data.factors.as_ref()?;
        let mut i = g;
        let mut r = vec![0; fs.len()];
        for (k, &n) in fs.iter().enumerate().rev() {
            r[k] = (i % n as usize) as u32;
            i /= n as usize;
        }
        Some(r)
    }

    /// Index of a residue tuple (residues reduced modulo the factor orders).
    pub fn from_residues(&self, r: &[i64]) -> Option<GroupElement> {
        let fs = self.data.factors.as_ref()?;
        if fs.len() != r.len() {
            return None;
        }
        Some(r.iter().zip(fs).fold(0, |acc, (&x, &n)| acc * n as usize + x.rem_euclid(n as i64) as usize))
    }

    /// Short label: concatenated residues when every factor is at most 10,
    /// residues joined by `_` otherwise, the index for table groups.
    pub fn label(&self, g: GroupElement) -> String {
        match self.residues(g) {
            Some(r) => {
                let fs = self.factors().unwrap();
                if fs.iter().all(|&n| n <= 10) {
                    r.iter().map(|x| x.to_string()).collect()
                } else {
                    r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("_")
                }
            }
            None => g.to_string(),
        }
    }

    /// Human-readable description such as `Z2 x Z2`.
    pub fn describe(&self) -> String {
        match &self.data.factors {
            Some(fs) => describe_factors(fs),
            None => format!("table of order {}", self.order()),
        }
    }

    /// Rows of the Cayley table.
    pub fn table(&self) -> Vec<Vec<usize>> {
        self.data.table.chunks(self.data.order).map(<[usize]>::to_vec).collect()
    }

    /// Element order.
    pub fn element_order(&self, g: GroupElement) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity() {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// A generating set chosen greedily in canonical order.
    pub fn generators(&self) -> Vec<GroupElement> {
        let mut gens = Vec::new();
        let mut reached = self.subgroup(&gens);
        for g in self.elements() {
            if !reached[g] {
                gens.push(g);
                reached = self.subgroup(&gens);
            }
        }
        gens
    }

    /// Membership mask of the subgroup generated by `gens`.
    pub fn subgroup(&self, gens: &[GroupElement]) -> Vec<bool> {
        let mut reached = vec![false; self.order()];
        reached[self.identity()] = true;
        let mut stack = vec![self.identity()];
        while let Some(x) = stack.pop() {
            for &s in gens {
                let y = self.mul(x, s);
                if !reached[y] {
                    reached[y] = true;
                    stack.push(y);
                }
            }
        }
        reached
    }
}
