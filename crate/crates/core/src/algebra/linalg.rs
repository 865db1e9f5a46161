//! Exact linear algebra: fraction-free (Bareiss) rank on integer blocks and
//! an incremental sparse eliminator over the rationals that remembers how
//! each reduced row was built from the inserted ones.

use super::rational::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};

pub type SparseVec<K> = BTreeMap<K, Rational>;

/// Rank of a dense integer matrix by fraction-free elimination. Every
/// division in the loop is exact.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = (&m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c]) / &prev;
                m[r][c] = v;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

const RANK_PRIME: u64 = (1 << 61) - 1;

/// Rank of an integer matrix reduced modulo the Mersenne prime 2^61 - 1.
fn modular_rank(m: &[Vec<BigInt>]) -> usize {
    let p = BigInt::from(RANK_PRIME);
    let mut m: Vec<Vec<u64>> = m
        .iter()
        .map(|row| row.iter().map(|v| u64::try_from(v.mod_floor(&p)).expect("reduced below p")).collect())
        .collect();
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % RANK_PRIME as u128) as u64;
    let inv = |a: u64| {
        let (mut base, mut e, mut acc) = (a, RANK_PRIME - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        acc
    };
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let scale = inv(m[rank][col]);
        let pivot_row: Vec<u64> = m[rank].iter().map(|&v| mul(v, scale)).collect();
        for row in m.iter_mut().skip(rank + 1) {
            let f = row[col];
            if f == 0 {
                continue;
            }
            for c in col..cols {
                let sub = mul(f, pivot_row[c]);
                row[c] = (row[c] + RANK_PRIME - sub) % RANK_PRIME;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Rank of a set of sparse rational rows. Rows are scaled to integers and
/// split into independent blocks (rows linked through shared columns); each
/// block goes through [`bareiss_rank`].
pub fn sparse_rank<K: Ord + Clone>(rows: &[SparseVec<K>]) -> usize {
    let rows: Vec<&SparseVec<K>> = rows.iter().filter(|r| !r.is_empty()).collect();
    // Union-find over row indices, joined through the first row seen in
    // each column.
    let mut parent: Vec<usize> = (0..rows.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut owner: BTreeMap<&K, usize> = BTreeMap::new();
    for (i, row) in rows.iter().enumerate() {
        for k in row.keys() {
            match owner.get(k) {
                Some(&j) => {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                }
                None => {
                    owner.insert(k, i);
                }
            }
        }
    }
    let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..rows.len() {
        let root = find(&mut parent, i);
        blocks.entry(root).or_default().push(i);
    }
    blocks
        .values()
        .map(|members| {
            let cols: BTreeSet<&K> = members.iter().flat_map(|&i| rows[i].keys()).collect();
            let index: BTreeMap<&K, usize> = cols.iter().enumerate().map(|(j, k)| (*k, j)).collect();
            let dense = members
                .iter()
                .map(|&i| {
                    let lcm = rows[i].values().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
                    let mut out = vec![BigInt::zero(); cols.len()];
                    for (k, v) in rows[i] {
                        out[index[k]] = v.numer() * (&lcm / v.denom());
                    }
                    out
                })
                .collect::<Vec<_>>();
            // The rank modulo a prime never exceeds the rational rank, so a
            // full modular rank settles the block without Bareiss.
            let full = members.len().min(cols.len());
            if modular_rank(&dense) == full {
                full
            } else {
                bareiss_rank(dense)
            }
        })
        .sum()
}

/// Incremental row echelon form over the rationals. Each stored row has its
/// pivot at its smallest key and records its expression in the inserted rows.
#[derive(Clone, Debug)]
pub struct Eliminator<K> {
    pivots: BTreeMap<K, usize>,
    rows: Vec<(SparseVec<K>, SparseVec<usize>)>,
    inserted: usize,
}

impl<K: Ord + Clone> Default for Eliminator<K> {
    fn default() -> Self {
        Self { pivots: BTreeMap::new(), rows: Vec::new(), inserted: 0 }
    }
}

fn axpy<K: Ord + Clone>(target: &mut SparseVec<K>, scale: &Rational, source: &SparseVec<K>) {
    for (k, v) in source {
        let entry = target.entry(k.clone()).or_insert_with(Rational::zero);
        *entry += scale * v;
        if entry.is_zero() {
            target.remove(k);
        }
    }
}

impl<K: Ord + Clone> Eliminator<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Reduces `v` against the stored rows; returns the remainder and the
    /// combination of inserted rows that was subtracted.
    fn reduce(&self, mut v: SparseVec<K>) -> (SparseVec<K>, SparseVec<usize>) {
        let mut used: SparseVec<usize> = BTreeMap::new();
        let mut cursor: Option<K> = None;
        loop {
            let next = match &cursor {
                None => v.keys().find(|k| self.pivots.contains_key(*k)).cloned(),
                Some(c) => v
                    .range((std::ops::Bound::Excluded(c.clone()), std::ops::Bound::Unbounded))
                    .map(|(k, _)| k)
                    .find(|k| self.pivots.contains_key(*k))
                    .cloned(),
            };
            let Some(k) = next else { break };
            let (row, prov) = &self.rows[self.pivots[&k]];
            let scale = &v[&k] / &row[&k];
            axpy(&mut v, &-scale.clone(), row);
            axpy(&mut used, &scale, prov);
            cursor = Some(k);
        }
        (v, used)
    }

    /// Adds a row; returns `true` when it is independent of the rows so far.
    pub fn insert(&mut self, v: SparseVec<K>) -> bool {
        let id = self.inserted;
        self.inserted += 1;
        let (rest, used) = self.reduce(v);
        let Some(pivot) = rest.keys().next().cloned() else {
            return false;
        };
        let mut prov = SparseVec::new();
        prov.insert(id, Rational::one());
        axpy(&mut prov, &-Rational::one(), &used);
        self.pivots.insert(pivot, self.rows.len());
        self.rows.push((rest, prov));
        true
    }

    /// Coefficients expressing `v` in the inserted rows, or `None` when `v`
    /// is outside their span. Unique when every inserted row was independent.
    pub fn coordinates(&self, v: &SparseVec<K>) -> Option<SparseVec<usize>> {
        let (rest, used) = self.reduce(v.clone());
        rest.is_empty().then_some(used)
    }
}
