//! Label sets, linear orders, ordered decompositions and relabeling.

use crate::error::{Error, Result};
use std::fmt;

/// A finite set of labels in `0..64`, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Ground(u64);

impl Ground {
    pub const EMPTY: Ground = Ground(0);

    pub fn from_labels<I: IntoIterator<Item = u8>>(labels: I) -> Result<Self> {
        let mut bits = 0u64;
        for l in labels {
            if l >= 64 {
                return Err(Error::LabelOutOfRange(l as u32));
            }
            bits |= 1 << l;
        }
        Ok(Ground(bits))
    }

    /// `{0, …, n-1}`.
    pub fn standard(n: usize) -> Self {
        assert!(n <= 64, "ground too large");
        if n == 64 {
            Ground(u64::MAX)
        } else {
            Ground((1u64 << n) - 1)
        }
    }

    pub fn singleton(l: u8) -> Self {
        Ground(1 << l)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn from_bits(bits: u64) -> Self {
        Ground(bits)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, l: u8) -> bool {
        l < 64 && self.0 >> l & 1 == 1
    }

    pub fn is_subset(self, other: Ground) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Ground) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: Ground) -> Ground {
        Ground(self.0 | other.0)
    }

    pub fn intersection(self, other: Ground) -> Ground {
        Ground(self.0 & other.0)
    }

    pub fn difference(self, other: Ground) -> Ground {
        Ground(self.0 & !other.0)
    }

    pub fn min_label(self) -> Option<u8> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as u8)
    }

    /// Labels in increasing order.
    pub fn iter(self) -> impl Iterator<Item = u8> + Clone {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let l = bits.trailing_zeros() as u8;
            bits &= bits - 1;
            Some(l)
        })
    }

    /// Every subset, each exactly once (starting from the empty set).
    pub fn subsets(self) -> impl Iterator<Item = Ground> {
        let full = self.0;
        let mut sub = 0u64;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = Ground(sub);
            sub = sub.wrapping_sub(full) & full;
            done = sub == 0;
            Some(out)
        })
    }

    pub fn require_subset(self, of: Ground) -> Result<()> {
        if self.is_subset(of) {
            Ok(())
        } else {
            Err(Error::NotSubset(self.to_string(), of.to_string()))
        }
    }
}

impl fmt::Display for Ground {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Ground {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A linear order on a ground: the labels listed from first to last.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LinearOrder(Vec<u8>);

impl LinearOrder {
    pub fn new(seq: Vec<u8>) -> Result<Self> {
        let mut seen = 0u64;
        for &l in &seq {
            if l >= 64 {
                return Err(Error::LabelOutOfRange(l as u32));
            }
            if seen >> l & 1 == 1 {
                return Err(Error::Invalid(format!("label {l} repeated in order {seq:?}")));
            }
            seen |= 1 << l;
        }
        Ok(Self(seq))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// `0 < 1 < … < n-1`.
    pub fn standard(n: usize) -> Self {
        Self((0..n as u8).collect())
    }

    /// The labels of `g` in increasing order.
    pub fn increasing(g: Ground) -> Self {
        Self(g.iter().collect())
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn ground(&self) -> Ground {
        Ground(self.0.iter().fold(0, |acc, &l| acc | 1 << l))
    }

    /// Position of `label`, if present.
    pub fn position(&self, label: u8) -> Option<usize> {
        self.0.iter().position(|&l| l == label)
    }

    /// Table from label to position (`usize::MAX` for absent labels).
    pub fn positions(&self) -> [usize; 64] {
        let mut pos = [usize::MAX; 64];
        for (i, &l) in self.0.iter().enumerate() {
            pos[l as usize] = i;
        }
        pos
    }

    pub fn less(&self, a: u8, b: u8) -> bool {
        match (self.position(a), self.position(b)) {
            (Some(x), Some(y)) => x < y,
            _ => false,
        }
    }

    /// All linear orders on `g`, in lexicographic order of their sequences.
    pub fn all(g: Ground) -> Vec<LinearOrder> {
        let labels: Vec<u8> = g.iter().collect();
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(labels.len());
        let mut used = vec![false; labels.len()];
        fn rec(labels: &[u8], used: &mut [bool], current: &mut Vec<u8>, out: &mut Vec<LinearOrder>) {
            if current.len() == labels.len() {
                out.push(LinearOrder(current.clone()));
                return;
            }
            for i in 0..labels.len() {
                if !used[i] {
                    used[i] = true;
                    current.push(labels[i]);
                    rec(labels, used, current, out);
                    current.pop();
                    used[i] = false;
                }
            }
        }
        rec(&labels, &mut used, &mut current, &mut out);
        out
    }
}

impl fmt::Display for LinearOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for LinearOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// True iff `s` is convex in `order`: whenever `i < j < k` with `i, k ∈ s`,
/// also `j ∈ s`.
pub fn is_segment(order: &LinearOrder, s: Ground) -> Result<bool> {
    s.require_subset(order.ground())?;
    let inside: Vec<usize> = order
        .as_slice()
        .iter()
        .enumerate()
        .filter(|(_, &l)| s.contains(l))
        .map(|(i, _)| i)
        .collect();
    Ok(match (inside.first(), inside.last()) {
        (Some(a), Some(b)) => b - a + 1 == inside.len(),
        _ => true,
    })
}

/// `ℓ₁` followed by `ℓ₂`.
pub fn concat_orders(l1: &LinearOrder, l2: &LinearOrder) -> Result<LinearOrder> {
    let (g1, g2) = (l1.ground(), l2.ground());
    if !g1.is_disjoint(g2) {
        return Err(Error::Overlap(g1.to_string(), g2.to_string()));
    }
    let mut seq = l1.0.clone();
    seq.extend_from_slice(&l2.0);
    Ok(LinearOrder(seq))
}

/// The elements of `s`, listed in `ℓ`-order.
pub fn restrict_order(order: &LinearOrder, s: Ground) -> Result<LinearOrder> {
    s.require_subset(order.ground())?;
    Ok(LinearOrder(order.0.iter().copied().filter(|&l| s.contains(l)).collect()))
}

/// An ordered sequence of disjoint parts covering a ground.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Decomposition {
    pub parts: Vec<Ground>,
}

impl Decomposition {
    pub fn new(parts: Vec<Ground>) -> Result<Self> {
        let mut acc = Ground::EMPTY;
        for &p in &parts {
            if !acc.is_disjoint(p) {
                return Err(Error::Overlap(acc.to_string(), p.to_string()));
            }
            acc = acc.union(p);
        }
        Ok(Self { parts })
    }

    pub fn ground(&self) -> Ground {
        self.parts.iter().fold(Ground::EMPTY, |a, &b| a.union(b))
    }
}

/// Every ordered decomposition of `ground` into `k` parts, each once.
/// With `nonempty` every part must be nonempty.
pub fn enumerate_decompositions(
    ground: Ground,
    k: usize,
    nonempty: bool,
) -> impl Iterator<Item = Decomposition> {
    assert!(k >= 1, "need at least one part");
    let labels: Vec<u8> = ground.iter().collect();
    let n = labels.len();
    let total = (k as u128).pow(n as u32);
    (0..total).filter_map(move |code| {
        let mut parts = vec![Ground::EMPTY; k];
        let mut c = code;
        for &l in &labels {
            let part = (c % k as u128) as usize;
            c /= k as u128;
            parts[part] = parts[part].union(Ground::singleton(l));
        }
        if nonempty && parts.iter().any(|p| p.is_empty()) {
            None
        } else {
            Some(Decomposition { parts })
        }
    })
}

/// A bijection from a finite set of labels onto another.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relabeling {
    domain: Ground,
    image: [u8; 64],
}

impl Relabeling {
    pub fn new<I: IntoIterator<Item = (u8, u8)>>(pairs: I) -> Result<Self> {
        let mut domain = 0u64;
        let mut range = 0u64;
        let mut image = [u8::MAX; 64];
        for (a, b) in pairs {
            if a >= 64 || b >= 64 {
                return Err(Error::LabelOutOfRange(a.max(b) as u32));
            }
            if domain >> a & 1 == 1 {
                if image[a as usize] == b {
                    continue;
                }
                return Err(Error::NotBijective(format!("{a} has two images")));
            }
            if range >> b & 1 == 1 {
                return Err(Error::NotBijective(format!("{b} is hit twice")));
            }
            domain |= 1 << a;
            range |= 1 << b;
            image[a as usize] = b;
        }
        Ok(Self { domain: Ground(domain), image })
    }

    pub fn identity(g: Ground) -> Self {
        Self::new(g.iter().map(|l| (l, l))).expect("identity is bijective")
    }

    /// Sends the `i`-th element of `order` to `i`.
    pub fn standardize(order: &LinearOrder) -> Self {
        Self::new(order.as_slice().iter().enumerate().map(|(i, &l)| (l, i as u8)))
            .expect("orders have distinct labels")
    }

    /// Sends `i` to the `i`-th element of `order`.
    pub fn from_standard(order: &LinearOrder) -> Self {
        Self::standardize(order).inverse()
    }

    pub fn domain(&self) -> Ground {
        self.domain
    }

    pub fn apply(&self, l: u8) -> Result<u8> {
        if self.domain.contains(l) {
            Ok(self.image[l as usize])
        } else {
            Err(Error::NotSubset(Ground::singleton(l).to_string(), self.domain.to_string()))
        }
    }

    pub fn apply_ground(&self, g: Ground) -> Result<Ground> {
        g.require_subset(self.domain)?;
        Ok(Ground(g.iter().fold(0, |acc, l| acc | 1 << self.image[l as usize])))
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &Relabeling) -> Result<Relabeling> {
        let pairs = first
            .domain
            .iter()
            .map(|l| Ok((l, self.apply(first.image[l as usize])?)))
            .collect::<Result<Vec<_>>>()?;
        Relabeling::new(pairs)
    }

    pub fn inverse(&self) -> Relabeling {
        Relabeling::new(self.domain.iter().map(|l| (self.image[l as usize], l)))
            .expect("inverse of a bijection")
    }
}

impl fmt::Debug for Relabeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .domain
            .iter()
            .map(|l| format!("{l}->{}", self.image[l as usize]))
            .collect();
        write!(f, "Relabeling[{}]", pairs.join(","))
    }
}

/// Transport of a structure along a bijection of labels.
pub trait Relabel: Sized {
    fn relabel(&self, sigma: &Relabeling) -> Result<Self>;
}

/// A basis element of a species component: it knows its ground and can be
/// transported along bijections.
pub trait SpeciesKey: Relabel {
    fn ground(&self) -> Ground;
}

impl Relabel for Ground {
    fn relabel(&self, sigma: &Relabeling) -> Result<Self> {
        sigma.apply_ground(*self)
    }
}

impl SpeciesKey for Ground {
    fn ground(&self) -> Ground {
        *self
    }
}

impl Relabel for LinearOrder {
    fn relabel(&self, sigma: &Relabeling) -> Result<Self> {
        let seq = self.0.iter().map(|&l| sigma.apply(l)).collect::<Result<Vec<_>>>()?;
        Ok(LinearOrder(seq))
    }
}

impl SpeciesKey for LinearOrder {
    fn ground(&self) -> Ground {
        LinearOrder::ground(self)
    }
}

impl<A: Relabel, B: Relabel> Relabel for (A, B) {
    fn relabel(&self, sigma: &Relabeling) -> Result<Self> {
        Ok((self.0.relabel(sigma)?, self.1.relabel(sigma)?))
    }
}

impl<A: SpeciesKey, B: SpeciesKey> SpeciesKey for (A, B) {
    fn ground(&self) -> Ground {
        self.0.ground()
    }
}
