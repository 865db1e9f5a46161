use super::{canonical_superclass_rep_dense, check_prime, upper_index, upper_len, UniMatrix};
use crate::algebra::PrimeField;
use crate::error::{Error, Result};
use crate::ordered::LinearOrder;
use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};

/// Largest group order enumerated without an explicit override.
pub const DEFAULT_BUDGET: u64 = 1 << 17;

const MAGIC: &[u8; 9] = b"UQCENSUS1";

/// Conjugacy classes and superclasses of `U_n(F_p)` on the standard order.
/// Elements are numbered by [`UniMatrix::census_index`]; every class and
/// superclass is named by its smallest element index.
#[derive(Debug)]
pub struct Census {
    n: usize,
    p: u32,
    class_id: Vec<u32>,
    superclass_id: Vec<u32>,
    class_reps: Vec<u32>,
    superclass_reps: Vec<u32>,
    members: OnceLock<HashMap<u32, Vec<u32>>>,
    super_members: OnceLock<HashMap<u32, Vec<u32>>>,
    classes_in_super: OnceLock<HashMap<u32, Vec<u32>>>,
}

impl PartialEq for Census {
    fn eq(&self, other: &Self) -> bool {
        (self.n, self.p, &self.class_id, &self.superclass_id, &self.class_reps, &self.superclass_reps)
            == (other.n, other.p, &other.class_id, &other.superclass_id, &other.class_reps, &other.superclass_reps)
    }
}

fn group_order(n: usize, p: u32) -> u128 {
    (p as u128).pow(upper_len(n) as u32)
}

/// Decode/encode between census indices and dense position matrices.
struct Codec {
    n: usize,
    p: u32,
}

impl Codec {
    fn decode(&self, mut index: u32, x: &mut [u8]) {
        let n = self.n;
        x.fill(0);
        for a in 0..n {
            x[a * n + a] = 1;
        }
        for a in (0..n).rev() {
            for b in (a + 1..n).rev() {
                x[a * n + b] = (index % self.p) as u8;
                index /= self.p;
            }
        }
    }

    fn encode(&self, x: &[u8]) -> u32 {
        let n = self.n;
        let mut idx = 0u32;
        for a in 0..n {
            for b in a + 1..n {
                idx = idx * self.p + x[a * n + b] as u32;
            }
        }
        idx
    }
}

/// Orbit partition under a set of moves, by breadth-first search seeded in
/// index order, so that each orbit is named by its smallest index.
fn orbits(count: usize, mut neighbours: impl FnMut(u32, &mut Vec<u32>)) -> (Vec<u32>, Vec<u32>) {
    let mut id = vec![u32::MAX; count];
    let mut reps = Vec::new();
    let mut stack = Vec::new();
    let mut next = Vec::new();
    for seed in 0..count as u32 {
        if id[seed as usize] != u32::MAX {
            continue;
        }
        reps.push(seed);
        id[seed as usize] = seed;
        stack.push(seed);
        while let Some(x) = stack.pop() {
            next.clear();
            neighbours(x, &mut next);
            for &y in &next {
                if id[y as usize] == u32::MAX {
                    id[y as usize] = seed;
                    stack.push(y);
                }
            }
        }
    }
    (id, reps)
}

/// Enumerates `U_n(F_p)` and partitions it into conjugacy classes (closure
/// under conjugation by elementary matrices) and superclasses (closure of
/// `x - 1` under left and right multiplication by elementary matrices).
pub fn build_census(n: usize, p: u32, budget: u64) -> Result<Census> {
    check_prime(p)?;
    let required = group_order(n, p);
    if required > budget as u128 || required > u32::MAX as u128 {
        return Err(Error::BudgetExceeded {
            what: format!("census of U_{n}(F_{p})"),
            required,
            budget: budget as u128,
        });
    }
    let count = required as usize;
    let f = PrimeField::new(p)?;
    let codec = Codec { n, p };
    let gens: Vec<(usize, usize, u8)> = (0..n)
        .flat_map(|i| (i + 1..n).flat_map(move |j| (1..p as u8).map(move |c| (i, j, c))))
        .collect();
    let mut x = vec![0u8; n * n];
    let mut y = vec![0u8; n * n];

    let (class_id, class_reps) = orbits(count, |idx, out| {
        codec.decode(idx, &mut x);
        for &(i, j, c) in &gens {
            // (I + cE_ij) x (I - cE_ij): row i += c·row j, then col j -= c·col i.
            y.copy_from_slice(&x);
            for k in 0..n {
                y[i * n + k] = f.add(y[i * n + k], f.mul(c, y[j * n + k]));
            }
            for k in 0..n {
                y[k * n + j] = f.sub(y[k * n + j], f.mul(c, y[k * n + i]));
            }
            out.push(codec.encode(&y));
        }
    });

    let (superclass_id, superclass_reps) = orbits(count, |idx, out| {
        codec.decode(idx, &mut x);
        for &(i, j, c) in &gens {
            // Left: row i += c·row j of x - 1. Right: col j += c·col i of x - 1.
            y.copy_from_slice(&x);
            for k in j + 1..n {
                y[i * n + k] = f.add(y[i * n + k], f.mul(c, x[j * n + k]));
            }
            out.push(codec.encode(&y));
            y.copy_from_slice(&x);
            for k in 0..i {
                y[k * n + j] = f.add(y[k * n + j], f.mul(c, x[k * n + i]));
            }
            out.push(codec.encode(&y));
        }
    });

    Ok(Census::from_parts(n, p, class_id, superclass_id, class_reps, superclass_reps))
}

impl Census {
    fn from_parts(
        n: usize,
        p: u32,
        class_id: Vec<u32>,
        superclass_id: Vec<u32>,
        class_reps: Vec<u32>,
        superclass_reps: Vec<u32>,
    ) -> Self {
        Self {
            n,
            p,
            class_id,
            superclass_id,
            class_reps,
            superclass_reps,
            members: OnceLock::new(),
            super_members: OnceLock::new(),
            classes_in_super: OnceLock::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn element_count(&self) -> usize {
        self.class_id.len()
    }

    pub fn class_count(&self) -> usize {
        self.class_reps.len()
    }

    pub fn superclass_count(&self) -> usize {
        self.superclass_reps.len()
    }

    pub fn class_ids(&self) -> &[u32] {
        &self.class_id
    }

    pub fn superclass_ids(&self) -> &[u32] {
        &self.superclass_id
    }

    /// Class ids in increasing order (each is its smallest member's index).
    pub fn class_reps(&self) -> &[u32] {
        &self.class_reps
    }

    pub fn superclass_reps(&self) -> &[u32] {
        &self.superclass_reps
    }

    /// Element `index` on the standard order.
    pub fn element(&self, index: u32) -> UniMatrix {
        UniMatrix::from_census_index(LinearOrder::standard(self.n), self.p, index as u64).expect("index in range")
    }

    fn lookup(&self, u: &UniMatrix) -> Result<usize> {
        if u.n() != self.n || u.p() != self.p {
            return Err(Error::Invalid(format!(
                "matrix of size {} over F_{} looked up in the census of U_{}(F_{})",
                u.n(),
                u.p(),
                self.n,
                self.p
            )));
        }
        Ok(u.census_index() as usize)
    }

    /// Conjugacy class of `u`, read through its position data (so `u` may
    /// live on any order of the right length).
    pub fn class_of(&self, u: &UniMatrix) -> Result<u32> {
        Ok(self.class_id[self.lookup(u)?])
    }

    pub fn superclass_of(&self, u: &UniMatrix) -> Result<u32> {
        Ok(self.superclass_id[self.lookup(u)?])
    }

    fn group_by(ids: &[u32]) -> HashMap<u32, Vec<u32>> {
        let mut out: HashMap<u32, Vec<u32>> = HashMap::new();
        for (i, &c) in ids.iter().enumerate() {
            out.entry(c).or_default().push(i as u32);
        }
        out
    }

    /// Element indices of a conjugacy class.
    pub fn class_members(&self, class: u32) -> &[u32] {
        self.members
            .get_or_init(|| Self::group_by(&self.class_id))
            .get(&class)
            .map_or(&[], Vec::as_slice)
    }

    pub fn superclass_members(&self, sc: u32) -> &[u32] {
        self.super_members
            .get_or_init(|| Self::group_by(&self.superclass_id))
            .get(&sc)
            .map_or(&[], Vec::as_slice)
    }

    /// Conjugacy classes contained in a superclass.
    pub fn classes_in_superclass(&self, sc: u32) -> &[u32] {
        self.classes_in_super
            .get_or_init(|| {
                let mut out: HashMap<u32, Vec<u32>> = HashMap::new();
                for &c in &self.class_reps {
                    out.entry(self.superclass_id[c as usize]).or_default().push(c);
                }
                out
            })
            .get(&sc)
            .map_or(&[], Vec::as_slice)
    }

    /// Each conjugacy class lies inside a single superclass.
    pub fn classes_refine_superclasses(&self) -> bool {
        let mut seen: BTreeMap<u32, u32> = BTreeMap::new();
        self.class_id.iter().zip(&self.superclass_id).all(|(&c, &s)| *seen.entry(c).or_insert(s) == s)
    }

    /// For every element, the census index of its canonical superclass
    /// representative.
    pub fn canonical_indices(&self) -> Vec<u32> {
        let n = self.n;
        let f = PrimeField::new(self.p).expect("prime");
        let codec = Codec { n, p: self.p };
        let mut x = vec![0u8; n * n];
        (0..self.element_count() as u32)
            .map(|i| {
                codec.decode(i, &mut x);
                canonical_superclass_rep_dense(n, &f, &mut x);
                codec.encode(&x)
            })
            .collect()
    }

    fn write_to(&self, w: &mut impl Write) -> std::io::Result<()> {
        w.write_all(MAGIC)?;
        w.write_all(&(self.n as u32).to_le_bytes())?;
        w.write_all(&self.p.to_le_bytes())?;
        w.write_all(&(self.element_count() as u64).to_le_bytes())?;
        for v in self.class_id.iter().chain(&self.superclass_id) {
            w.write_all(&v.to_le_bytes())?;
        }
        for reps in [&self.class_reps, &self.superclass_reps] {
            w.write_all(&(reps.len() as u32).to_le_bytes())?;
            for v in reps.iter() {
                w.write_all(&v.to_le_bytes())?;
            }
        }
        Ok(())
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        {
            let mut file = std::io::BufWriter::new(fs::File::create(&tmp)?);
            self.write_to(&mut file)?;
            file.flush()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let bad = |reason: &str| Error::CacheFormat { path: path.to_path_buf(), reason: reason.to_string() };
        let mut bytes = Vec::new();
        fs::File::open(path)?.read_to_end(&mut bytes)?;
        let mut cur = Cursor { rest: bytes.as_slice() };
        if cur.take(9).ok_or_else(|| bad("truncated"))? != MAGIC {
            return Err(bad("bad magic"));
        }
        let word = |cur: &mut Cursor| cur.u32().ok_or_else(|| bad("truncated"));
        let n = word(&mut cur)? as usize;
        let p = word(&mut cur)?;
        let count = cur.u64().ok_or_else(|| bad("truncated"))?;
        if check_prime(p).is_err() || group_order(n, p) != count as u128 {
            return Err(bad("header does not describe a unitriangular group"));
        }
        let class_id = cur.u32s(count as usize).ok_or_else(|| bad("truncated"))?;
        let superclass_id = cur.u32s(count as usize).ok_or_else(|| bad("truncated"))?;
        let k = word(&mut cur)? as usize;
        let class_reps = cur.u32s(k).ok_or_else(|| bad("truncated"))?;
        let k = word(&mut cur)? as usize;
        let superclass_reps = cur.u32s(k).ok_or_else(|| bad("truncated"))?;
        if !cur.rest.is_empty() {
            return Err(bad("trailing bytes"));
        }
        let consistent = |ids: &[u32], reps: &[u32]| {
            reps.windows(2).all(|w| w[0] < w[1])
                && reps.iter().all(|&r| ids.get(r as usize) == Some(&r))
                && ids.iter().all(|&i| ids.get(i as usize) == Some(&i))
                && ids.iter().enumerate().filter(|&(j, &i)| j as u32 == i).count() == reps.len()
        };
        if !consistent(&class_id, &class_reps) || !consistent(&superclass_id, &superclass_reps) {
            return Err(bad("ids and representatives disagree"));
        }
        Ok(Self::from_parts(n, p, class_id, superclass_id, class_reps, superclass_reps))
    }
}

struct Cursor<'a> {
    rest: &'a [u8],
}

impl<'a> Cursor<'a> {
    fn take(&mut self, k: usize) -> Option<&'a [u8]> {
        if self.rest.len() < k {
            return None;
        }
        let (head, tail) = self.rest.split_at(k);
        self.rest = tail;
        Some(head)
    }

    fn u32(&mut self) -> Option<u32> {
        self.take(4).map(|b| u32::from_le_bytes(b.try_into().expect("4 bytes")))
    }

    fn u64(&mut self) -> Option<u64> {
        self.take(8).map(|b| u64::from_le_bytes(b.try_into().expect("8 bytes")))
    }

    fn u32s(&mut self, k: usize) -> Option<Vec<u32>> {
        (0..k).map(|_| self.u32()).collect()
    }
}

/// Shared census access: memoized in memory and optionally persisted to a
/// cache directory, one file per `(n, p)`.
#[derive(Debug)]
pub struct CensusStore {
    dir: Option<PathBuf>,
    budget: u64,
    memo: Mutex<HashMap<(usize, u32), Arc<Census>>>,
}

impl Default for CensusStore {
    fn default() -> Self {
        Self::in_memory(DEFAULT_BUDGET)
    }
}

impl CensusStore {
    pub fn in_memory(budget: u64) -> Self {
        Self { dir: None, budget, memo: Mutex::new(HashMap::new()) }
    }

    pub fn with_cache_dir(dir: impl Into<PathBuf>, budget: u64) -> Self {
        Self { dir: Some(dir.into()), budget, memo: Mutex::new(HashMap::new()) }
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn cache_path(&self, n: usize, p: u32) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("census-n{n}-p{p}.bin")))
    }

    /// Whether `U_n(F_p)` fits in the budget.
    pub fn fits(&self, n: usize, p: u32) -> bool {
        group_order(n, p) <= self.budget as u128
    }

    pub fn get(&self, n: usize, p: u32) -> Result<Arc<Census>> {
        if let Some(c) = self.memo.lock().expect("census memo poisoned").get(&(n, p)) {
            return Ok(c.clone());
        }
        check_prime(p)?;
        let required = group_order(n, p);
        if required > self.budget as u128 {
            return Err(Error::BudgetExceeded {
                what: format!("census of U_{n}(F_{p})"),
                required,
                budget: self.budget as u128,
            });
        }
        let census = match self.cache_path(n, p) {
            Some(path) if path.exists() => {
                let c = Census::load(&path)?;
                if c.n != n || c.p != p {
                    return Err(Error::CacheFormat { path, reason: "wrong (n, p) in header".into() });
                }
                c
            }
            Some(path) => {
                let c = build_census(n, p, self.budget)?;
                if let Some(dir) = path.parent() {
                    fs::create_dir_all(dir)?;
                }
                c.save(&path)?;
                c
            }
            None => build_census(n, p, self.budget)?,
        };
        let census = Arc::new(census);
        self.memo
            .lock()
            .expect("census memo poisoned")
            .insert((n, p), census.clone());
        Ok(census)
    }
}

#[allow(dead_code)]
fn _index_layout_matches(n: usize) -> bool {
    // Row-major order of (a, b) pairs agrees with `upper_index`.
    let mut k = 0;
    for a in 0..n {
        for b in a + 1..n {
            if upper_index(n, a, b) != k {
                return false;
            }
            k += 1;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{BTreeSet, VecDeque};

    /// Two-sided orbit of `x - 1` under the whole group, by brute force.
    fn superclass_oracle(n: usize, p: u32) -> Vec<BTreeSet<u64>> {
        let l = LinearOrder::standard(n);
        let all = UniMatrix::all(&l, p).unwrap();
        let f = PrimeField::new(p).unwrap();
        let mut seen = vec![false; all.len()];
        let mut out = Vec::new();
        for start in 0..all.len() {
            if seen[start] {
                continue;
            }
            let mut orbit = BTreeSet::new();
            let x = all[start].dense();
            for g in &all {
                for h in &all {
                    // Id + g (x - Id) h
                    let (gd, hd) = (g.dense(), h.dense());
                    let mut nx = x.clone();
                    for a in 0..n {
                        nx[a * n + a] = 0;
                    }
                    let mul = |a: &[u8], b: &[u8]| {
                        let mut c = vec![0u8; n * n];
                        for i in 0..n {
                            for j in 0..n {
                                let mut acc = 0;
                                for k in 0..n {
                                    acc = f.add(acc, f.mul(a[i * n + k], b[k * n + j]));
                                }
                                c[i * n + j] = acc;
                            }
                        }
                        c
                    };
                    let mut y = mul(&mul(&gd, &nx), &hd);
                    for a in 0..n {
                        y[a * n + a] = 1;
                    }
                    let idx = UniMatrix::from_dense(l.clone(), p as u8, &y).census_index();
                    orbit.insert(idx);
                }
            }
            for &i in &orbit {
                seen[i as usize] = true;
            }
            out.push(orbit);
        }
        out
    }

    fn conjugacy_oracle(n: usize, p: u32) -> Vec<BTreeSet<u64>> {
        let l = LinearOrder::standard(n);
        let all = UniMatrix::all(&l, p).unwrap();
        let mut seen = vec![false; all.len()];
        let mut out = Vec::new();
        for start in 0..all.len() {
            if seen[start] {
                continue;
            }
            let orbit: BTreeSet<u64> = all
                .iter()
                .map(|g| g.multiply(&all[start]).unwrap().multiply(&g.inverse()).unwrap().census_index())
                .collect();
            for &i in &orbit {
                seen[i as usize] = true;
            }
            out.push(orbit);
        }
        out
    }

    fn partition_of(ids: &[u32]) -> BTreeSet<BTreeSet<u64>> {
        let mut m: BTreeMap<u32, BTreeSet<u64>> = BTreeMap::new();
        for (i, &c) in ids.iter().enumerate() {
            m.entry(c).or_default().insert(i as u64);
        }
        m.into_values().collect()
    }

    #[test]
    fn small_censuses_match_oracles() {
        for (n, p) in [(2, 2), (3, 2), (3, 3), (4, 2)] {
            let c = build_census(n, p, DEFAULT_BUDGET).unwrap();
            assert_eq!(c.element_count() as u128, group_order(n, p));
            let conj: BTreeSet<_> = conjugacy_oracle(n, p).into_iter().collect();
            assert_eq!(partition_of(c.class_ids()), conj, "classes n={n} p={p}");
            let sup: BTreeSet<_> = superclass_oracle(n, p).into_iter().collect();
            assert_eq!(partition_of(c.superclass_ids()), sup, "superclasses n={n} p={p}");
            assert!(c.classes_refine_superclasses());
        }
    }

    #[test]
    fn three_by_three_counts() {
        let c = build_census(3, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!((c.element_count(), c.class_count(), c.superclass_count()), (8, 5, 5));
    }

    #[test]
    fn ids_are_minimal_members() {
        let c = build_census(4, 3, DEFAULT_BUDGET).unwrap();
        for (i, &id) in c.class_ids().iter().enumerate() {
            assert!(id as usize <= i);
            assert_eq!(c.class_ids()[id as usize], id);
        }
        let mut by_id: BTreeMap<u32, u32> = BTreeMap::new();
        for (i, &id) in c.superclass_ids().iter().enumerate() {
            let e = by_id.entry(id).or_insert(i as u32);
            assert_eq!(*e, id);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let err = build_census(9, 2, DEFAULT_BUDGET).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { required, .. } if required == 1u128 << 36));
        assert!(CensusStore::default().get(5, 5).is_err());
        assert!(matches!(build_census(3, 4, DEFAULT_BUDGET), Err(Error::NotPrime(4))));
    }

    #[test]
    fn cache_round_trip_is_bit_exact() {
        let dir = tempfile::tempdir().unwrap();
        let store = CensusStore::with_cache_dir(dir.path(), DEFAULT_BUDGET);
        let c = store.get(4, 3).unwrap();
        let path = store.cache_path(4, 3).unwrap();
        let first = fs::read(&path).unwrap();
        let loaded = Census::load(&path).unwrap();
        assert_eq!(&loaded, c.as_ref());
        let fresh = CensusStore::with_cache_dir(dir.path(), DEFAULT_BUDGET).get(4, 3).unwrap();
        assert_eq!(fresh.as_ref(), c.as_ref());
        loaded.save(&path).unwrap();
        assert_eq!(fs::read(&path).unwrap(), first);
        let mut bytes = first.clone();
        bytes[0] = b'X';
        fs::write(&path, &bytes).unwrap();
        assert!(matches!(Census::load(&path), Err(Error::CacheFormat { .. })));
        fs::write(&path, &first[..first.len() - 3]).unwrap();
        assert!(matches!(Census::load(&path), Err(Error::CacheFormat { .. })));
    }

    #[test]
    fn canonical_reps_agree_with_superclasses() {
        for (n, p) in [(3, 2), (3, 3), (4, 2), (4, 3)] {
            let c = build_census(n, p, DEFAULT_BUDGET).unwrap();
            let canon = c.canonical_indices();
            let mut rep_of: BTreeMap<u32, u32> = BTreeMap::new();
            for (i, (&sc, &k)) in c.superclass_ids().iter().zip(&canon).enumerate() {
                assert_eq!(c.superclass_ids()[k as usize], sc, "element {i} left its superclass");
                assert_eq!(*rep_of.entry(sc).or_insert(k), k, "two canonical forms in one superclass");
                assert!(c.element(k).is_row_column_sparse());
            }
            let sparse = (0..c.element_count() as u32).filter(|&i| c.element(i).is_row_column_sparse()).count();
            assert_eq!(sparse, c.superclass_count());
        }
    }

    #[test]
    fn bfs_orbits_queue_agnostic() {
        // The orbit routine names orbits by their minimum whatever the
        // traversal order; compare against a queue-based traversal.
        let c = build_census(4, 2, DEFAULT_BUDGET).unwrap();
        let l = LinearOrder::standard(4);
        let all = UniMatrix::all(&l, 2).unwrap();
        let mut ids = vec![u32::MAX; all.len()];
        for s in 0..all.len() {
            if ids[s] != u32::MAX {
                continue;
            }
            let mut q = VecDeque::from([s]);
            ids[s] = s as u32;
            while let Some(x) = q.pop_front() {
                for g in &all {
                    let y = g.multiply(&all[x]).unwrap().multiply(&g.inverse()).unwrap().census_index() as usize;
                    if ids[y] == u32::MAX {
                        ids[y] = s as u32;
                        q.push_back(y);
                    }
                }
            }
        }
        assert_eq!(ids, c.class_ids());
        assert!(_index_layout_matches(6));
    }
}
