//! Unitriangular groups `U(I, ℓ)` over prime fields: arithmetic, direct sums,
//! principal minors, and the brute-force conjugacy/superclass census.

mod canonical;
mod census;

pub use canonical::{canonical_superclass_rep, canonical_superclass_rep_dense};
pub use census::{build_census, Census, CensusStore, DEFAULT_BUDGET};

use crate::algebra::{is_prime, FFElem, PrimeField};
use crate::combinatorics::SimpleGraph;
use crate::error::{Error, Result};
use crate::ordered::{concat_orders, is_segment, restrict_order, Ground, LinearOrder, Relabel, Relabeling, SpeciesKey};
use std::fmt;

/// Number of strictly-upper positions of an `n × n` matrix.
pub fn upper_len(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Offset of position pair `(a, b)`, `a < b`, in row-major order.
#[inline]
pub fn upper_index(n: usize, a: usize, b: usize) -> usize {
    debug_assert!(a < b && b < n);
    a * n - a * (a + 1) / 2 + (b - a - 1)
}

pub fn check_prime(p: u32) -> Result<u8> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p > 251 {
        return Err(Error::Invalid(format!("prime {p} too large")));
    }
    Ok(p as u8)
}

/// An `ℓ`-unitriangular matrix over `F_p`. Entries above the diagonal are
/// stored by position in `ℓ`, row-major; the diagonal is implicitly 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UniMatrix {
    order: LinearOrder,
    p: u8,
    entries: Vec<u8>,
}

impl UniMatrix {
    pub fn identity(order: LinearOrder, p: u32) -> Result<Self> {
        let p = check_prime(p)?;
        let entries = vec![0; upper_len(order.len())];
        Ok(Self { order, p, entries })
    }

    /// Builds from `(i, j, value)` triples indexed by labels; `i` must come
    /// before `j` in `order`. Values are reduced mod `p`.
    pub fn from_entries<I: IntoIterator<Item = (u8, u8, i64)>>(order: LinearOrder, p: u32, entries: I) -> Result<Self> {
        let mut m = Self::identity(order, p)?;
        let pos = m.order.positions();
        let n = m.n();
        for (i, j, v) in entries {
            let (a, b) = (pos[i as usize], pos[j as usize]);
            if a == usize::MAX || b == usize::MAX || a >= b {
                return Err(Error::Invalid(format!("({i},{j}) is not strictly upper in {}", m.order)));
            }
            m.entries[upper_index(n, a, b)] = v.rem_euclid(p as i64) as u8;
        }
        Ok(m)
    }

    /// From residues already reduced, in position order.
    pub(crate) fn from_raw(order: LinearOrder, p: u8, entries: Vec<u8>) -> Self {
        debug_assert_eq!(entries.len(), upper_len(order.len()));
        Self { order, p, entries }
    }

    /// Every matrix on `a.order · b.order` whose principal minors on the two
    /// grounds are `a` and `b`: the cross block is filled freely.
    pub fn extensions(a: &Self, b: &Self) -> Result<Vec<Self>> {
        if a.p != b.p {
            return Err(Error::ModulusMismatch(a.p as u32, b.p as u32));
        }
        let order = concat_orders(&a.order, &b.order)?;
        let (n1, n2) = (a.n(), b.n());
        let n = n1 + n2;
        let mut base = vec![0u8; upper_len(n)];
        let mut cross = Vec::with_capacity(n1 * n2);
        for x in 0..n {
            for y in x + 1..n {
                let k = upper_index(n, x, y);
                if y < n1 {
                    base[k] = a.entry_pos(x, y);
                } else if x >= n1 {
                    base[k] = b.entry_pos(x - n1, y - n1);
                } else {
                    cross.push(k);
                }
            }
        }
        let q = a.p as u64;
        let total = q.checked_pow(cross.len() as u32).ok_or_else(|| Error::BudgetExceeded {
            what: "cross-block fills".into(),
            required: u128::MAX,
            budget: u64::MAX as u128,
        })?;
        Ok((0..total)
            .map(|mut code| {
                let mut e = base.clone();
                for &k in &cross {
                    e[k] = (code % q) as u8;
                    code /= q;
                }
                Self::from_raw(order.clone(), a.p, e)
            })
            .collect())
    }

    pub fn order(&self) -> &LinearOrder {
        &self.order
    }

    pub fn p(&self) -> u32 {
        self.p as u32
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    pub fn ground(&self) -> Ground {
        self.order.ground()
    }

    pub fn raw_entries(&self) -> &[u8] {
        &self.entries
    }

    /// Entry at positions `(a, b)` of the order.
    pub fn entry_pos(&self, a: usize, b: usize) -> u8 {
        match a.cmp(&b) {
            std::cmp::Ordering::Equal => 1,
            std::cmp::Ordering::Greater => 0,
            std::cmp::Ordering::Less => self.entries[upper_index(self.n(), a, b)],
        }
    }

    /// Entry `u_{ij}` by labels.
    pub fn entry(&self, i: u8, j: u8) -> Result<u8> {
        let pos = self.order.positions();
        let (a, b) = (pos[i as usize], pos[j as usize]);
        if a == usize::MAX || b == usize::MAX {
            return Err(Error::NotSubset(format!("{{{i},{j}}}"), self.ground().to_string()));
        }
        Ok(self.entry_pos(a, b))
    }

    /// Nonzero off-diagonal entries as `(i, j, value)` by labels.
    pub fn nonzero_entries(&self) -> Vec<(u8, u8, u8)> {
        let seq = self.order.as_slice();
        let n = self.n();
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let v = self.entries[upper_index(n, a, b)];
                if v != 0 {
                    out.push((seq[a], seq[b], v));
                }
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().all(|&v| v == 0)
    }

    fn field(&self) -> PrimeField {
        PrimeField::new(self.p as u32).expect("prime checked at construction")
    }

    fn same_ambient(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p as u32, other.p as u32));
        }
        if self.order != other.order {
            return Err(Error::GroundMismatch(self.order.to_string(), other.order.to_string()));
        }
        Ok(())
    }

    /// The `n × n` matrix in position coordinates, row-major.
    pub fn dense(&self) -> Vec<u8> {
        let n = self.n();
        let mut d = vec![0u8; n * n];
        for a in 0..n {
            d[a * n + a] = 1;
            for b in a + 1..n {
                d[a * n + b] = self.entries[upper_index(n, a, b)];
            }
        }
        d
    }

    pub(crate) fn from_dense(order: LinearOrder, p: u8, d: &[u8]) -> Self {
        let n = order.len();
        let mut entries = vec![0u8; upper_len(n)];
        for a in 0..n {
            for b in a + 1..n {
                entries[upper_index(n, a, b)] = d[a * n + b];
            }
        }
        Self { order, p, entries }
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        let f = self.field();
        let n = self.n();
        let mut entries = vec![0u8; upper_len(n)];
        for a in 0..n {
            for c in a + 1..n {
                let mut acc = 0u8;
                for b in a..=c {
                    acc = f.add(acc, f.mul(self.entry_pos(a, b), other.entry_pos(b, c)));
                }
                entries[upper_index(n, a, c)] = acc;
            }
        }
        Ok(Self { order: self.order.clone(), p: self.p, entries })
    }

    pub fn inverse(&self) -> Self {
        // Back substitution on U·V = Id, column by column.
        let f = self.field();
        let n = self.n();
        let mut entries = vec![0u8; upper_len(n)];
        for c in 0..n {
            for a in (0..c).rev() {
                // v_{ac} = -Σ_{a<b≤c} u_{ab} v_{bc}
                let mut acc = 0u8;
                for b in a + 1..=c {
                    let v = if b == c { 1 } else { entries[upper_index(n, b, c)] };
                    acc = f.add(acc, f.mul(self.entry_pos(a, b), v));
                }
                entries[upper_index(n, a, c)] = f.neg(acc);
            }
        }
        Self { order: self.order.clone(), p: self.p, entries }
    }

    /// The submatrix on `s`, unitriangular for `ℓ|_s`.
    pub fn principal_minor(&self, s: Ground) -> Result<Self> {
        let sub = restrict_order(&self.order, s)?;
        let pos = self.order.positions();
        let idx: Vec<usize> = sub.as_slice().iter().map(|&l| pos[l as usize]).collect();
        let k = idx.len();
        let mut entries = vec![0u8; upper_len(k)];
        for a in 0..k {
            for b in a + 1..k {
                entries[upper_index(k, a, b)] = self.entry_pos(idx[a], idx[b]);
            }
        }
        Ok(Self { order: sub, p: self.p, entries })
    }

    /// Block-diagonal combination on `order`, whose restrictions to the two
    /// grounds must be the orders of `u` and `v`.
    pub fn direct_sum(u: &Self, v: &Self, order: &LinearOrder) -> Result<Self> {
        if u.p != v.p {
            return Err(Error::ModulusMismatch(u.p as u32, v.p as u32));
        }
        let (s1, s2) = (u.ground(), v.ground());
        if !s1.is_disjoint(s2) {
            return Err(Error::Overlap(s1.to_string(), s2.to_string()));
        }
        if s1.union(s2) != order.ground() {
            return Err(Error::GroundMismatch(s1.union(s2).to_string(), order.ground().to_string()));
        }
        if &restrict_order(order, s1)? != u.order() || &restrict_order(order, s2)? != v.order() {
            return Err(Error::Invalid(format!(
                "orders {} and {} are not restrictions of {order}",
                u.order, v.order
            )));
        }
        let mut entries: Vec<(u8, u8, i64)> = Vec::new();
        for (i, j, x) in u.nonzero_entries().into_iter().chain(v.nonzero_entries()) {
            entries.push((i, j, x as i64));
        }
        Self::from_entries(order.clone(), u.p as u32, entries)
    }

    /// Direct sum along the concatenated order `u.order · v.order`.
    pub fn concat_sum(u: &Self, v: &Self) -> Result<Self> {
        let order = concat_orders(u.order(), v.order())?;
        Self::direct_sum(u, v, &order)
    }

    /// No nonzero entry joins `s` to its complement.
    pub fn splits_along(&self, s: Ground) -> bool {
        self.nonzero_entries().iter().all(|&(i, j, _)| s.contains(i) == s.contains(j))
    }

    /// The graph with an edge `{i, j}` for each nonzero `u_{ij}`, `i ≠ j`.
    pub fn graph_of(&self) -> SimpleGraph {
        SimpleGraph::new(self.ground(), self.nonzero_entries().into_iter().map(|(i, j, _)| (i, j)))
            .expect("entries lie in the ground")
    }

    /// At most one nonzero off-diagonal entry in every row and column.
    pub fn is_row_column_sparse(&self) -> bool {
        let mut rows = 0u64;
        let mut cols = 0u64;
        for (i, j, _) in self.nonzero_entries() {
            if rows >> i & 1 == 1 || cols >> j & 1 == 1 {
                return false;
            }
            rows |= 1 << i;
            cols |= 1 << j;
        }
        true
    }

    /// The same matrix on the standard order `0 < 1 < … < n-1`.
    pub fn to_standard(&self) -> Self {
        Self { order: LinearOrder::standard(self.n()), p: self.p, entries: self.entries.clone() }
    }

    /// Reinterprets the position data on another order of the same length.
    pub fn with_order(&self, order: LinearOrder) -> Result<Self> {
        if order.len() != self.n() {
            return Err(Error::GroundMismatch(order.to_string(), self.order.to_string()));
        }
        Ok(Self { order, p: self.p, entries: self.entries.clone() })
    }

    /// Index in the census enumeration: the entries in row-major position
    /// order read as base-`p` digits, the first entry most significant.
    pub fn census_index(&self) -> u64 {
        self.entries.iter().fold(0u64, |acc, &d| acc * self.p as u64 + d as u64)
    }

    /// Inverse of [`census_index`](Self::census_index) on a given order.
    pub fn from_census_index(order: LinearOrder, p: u32, mut index: u64) -> Result<Self> {
        let p8 = check_prime(p)?;
        let m = upper_len(order.len());
        let mut entries = vec![0u8; m];
        for e in entries.iter_mut().rev() {
            *e = (index % p as u64) as u8;
            index /= p as u64;
        }
        if index != 0 {
            return Err(Error::Invalid("census index out of range".into()));
        }
        Ok(Self { order, p: p8, entries })
    }

    /// Every matrix of `U(ground(order), order)` in census order.
    pub fn all(order: &LinearOrder, p: u32) -> Result<Vec<Self>> {
        let count = (p as u64).pow(upper_len(order.len()) as u32);
        (0..count).map(|i| Self::from_census_index(order.clone(), p, i)).collect()
    }
}

impl fmt::Display for UniMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .nonzero_entries()
            .iter()
            .map(|(i, j, v)| format!("{v}E{i},{j}"))
            .collect();
        if parts.is_empty() {
            write!(f, "Id{}/F{}", self.order, self.p)
        } else {
            write!(f, "Id+{}{}/F{}", parts.join("+"), self.order, self.p)
        }
    }
}

impl fmt::Debug for UniMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Relabel for UniMatrix {
    fn relabel(&self, sigma: &Relabeling) -> Result<Self> {
        Ok(Self { order: self.order.relabel(sigma)?, p: self.p, entries: self.entries.clone() })
    }
}

impl SpeciesKey for UniMatrix {
    fn ground(&self) -> Ground {
        self.order.ground()
    }
}

/// `Id + c·E_{ij}` with `i` before `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ElementaryGenerator {
    pub i: u8,
    pub j: u8,
    pub c: FFElem,
}

impl ElementaryGenerator {
    pub fn new(order: &LinearOrder, i: u8, j: u8, c: FFElem) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::Invalid("elementary generator with zero coefficient".into()));
        }
        if !order.less(i, j) {
            return Err(Error::Invalid(format!("{i} does not precede {j} in {order}")));
        }
        Ok(Self { i, j, c })
    }

    pub fn to_matrix(&self, order: &LinearOrder) -> Result<UniMatrix> {
        UniMatrix::from_entries(order.clone(), self.c.modulus(), [(self.i, self.j, self.c.value() as i64)])
    }
}

/// `None` when `U ↦ U_s` is a group homomorphism on `U(I, ℓ)`, which happens
/// exactly when `s` is an `ℓ`-segment; otherwise a pair `(U, V)` with
/// `(UV)_s ≠ U_s V_s`.
pub fn homomorphism_witness(order: &LinearOrder, s: Ground, p: u32) -> Result<Option<(UniMatrix, UniMatrix)>> {
    if is_segment(order, s)? {
        return Ok(None);
    }
    let seq = order.as_slice();
    let inside: Vec<usize> = (0..seq.len()).filter(|&k| s.contains(seq[k])).collect();
    let (first, last) = (inside[0], *inside.last().expect("nonempty"));
    let j = (first..last).find(|&k| !s.contains(seq[k])).expect("gap exists");
    let i = (first..j).rev().find(|&k| s.contains(seq[k])).expect("left end");
    let k = (j..=last).find(|&k| s.contains(seq[k])).expect("right end");
    let u = UniMatrix::from_entries(order.clone(), p, [(seq[i], seq[j], 1)])?;
    let v = UniMatrix::from_entries(order.clone(), p, [(seq[j], seq[k], 1)])?;
    Ok(Some((u, v)))
}
