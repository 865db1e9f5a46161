use crate::error::{Error, Result};
use crate::ordered::{Ground, LinearOrder, Relabel, Relabeling, SpeciesKey};
use std::fmt;

/// A partition of a ground into nonempty blocks, kept with blocks sorted by
/// their smallest label.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    blocks: Vec<Ground>,
}

impl SetPartition {
    pub fn new(mut blocks: Vec<Ground>) -> Result<Self> {
        let mut acc = Ground::EMPTY;
        for &b in &blocks {
            if b.is_empty() {
                return Err(Error::Invalid("empty block".into()));
            }
            if !acc.is_disjoint(b) {
                return Err(Error::Overlap(acc.to_string(), b.to_string()));
            }
            acc = acc.union(b);
        }
        blocks.sort_by_key(|b| b.min_label());
        Ok(Self { blocks })
    }

    pub fn from_blocks(blocks: &[&[u8]]) -> Result<Self> {
        Self::new(
            blocks
                .iter()
                .map(|b| Ground::from_labels(b.iter().copied()))
                .collect::<Result<_>>()?,
        )
    }

    pub fn empty() -> Self {
        Self { blocks: Vec::new() }
    }

    pub fn singletons(g: Ground) -> Self {
        Self { blocks: g.iter().map(Ground::singleton).collect() }
    }

    pub fn single_block(g: Ground) -> Self {
        if g.is_empty() {
            Self::empty()
        } else {
            Self { blocks: vec![g] }
        }
    }

    pub fn blocks(&self) -> &[Ground] {
        &self.blocks
    }

    pub fn ground(&self) -> Ground {
        self.blocks.iter().fold(Ground::EMPTY, |a, &b| a.union(b))
    }

    pub fn block_of(&self, l: u8) -> Option<Ground> {
        self.blocks.iter().copied().find(|b| b.contains(l))
    }

    /// Nonempty intersections of the blocks with `s`.
    pub fn restrict(&self, s: Ground) -> Result<Self> {
        s.require_subset(self.ground())?;
        Self::new(
            self.blocks
                .iter()
                .map(|b| b.intersection(s))
                .filter(|b| !b.is_empty())
                .collect(),
        )
    }

    /// The partition whose blocks are those of both inputs.
    pub fn union(&self, other: &Self) -> Result<Self> {
        let (a, b) = (self.ground(), other.ground());
        if !a.is_disjoint(b) {
            return Err(Error::Overlap(a.to_string(), b.to_string()));
        }
        let mut blocks = self.blocks.clone();
        blocks.extend_from_slice(&other.blocks);
        Self::new(blocks)
    }

    pub fn is_union_of_blocks(&self, s: Ground) -> bool {
        self.blocks.iter().all(|b| b.is_subset(s) || b.is_disjoint(s))
    }

    /// Every partition of `g`, generated from restricted growth strings.
    pub fn all(g: Ground) -> Vec<SetPartition> {
        let labels: Vec<u8> = g.iter().collect();
        let mut out = Vec::new();
        let mut blocks: Vec<Ground> = Vec::new();
        fn rec(labels: &[u8], i: usize, blocks: &mut Vec<Ground>, out: &mut Vec<SetPartition>) {
            if i == labels.len() {
                out.push(SetPartition::new(blocks.clone()).expect("valid by construction"));
                return;
            }
            let l = Ground::singleton(labels[i]);
            for b in 0..blocks.len() {
                let old = blocks[b];
                blocks[b] = old.union(l);
                rec(labels, i + 1, blocks, out);
                blocks[b] = old;
            }
            blocks.push(l);
            rec(labels, i + 1, blocks, out);
            blocks.pop();
        }
        rec(&labels, 0, &mut blocks, &mut out);
        out
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Relabel for SetPartition {
    fn relabel(&self, sigma: &Relabeling) -> Result<Self> {
        Self::new(self.blocks.iter().map(|b| sigma.apply_ground(*b)).collect::<Result<_>>()?)
    }
}

impl SpeciesKey for SetPartition {
    fn ground(&self) -> Ground {
        SetPartition::ground(self)
    }
}

/// All partitions of the union of the grounds restricting to `x1` and `x2`:
/// each block of `x1` either stays alone or merges with one block of `x2`,
/// distinct blocks of `x1` taking distinct partners.
pub fn quasi_shuffles(x1: &SetPartition, x2: &SetPartition) -> Result<Vec<SetPartition>> {
    let (a, b) = (x1.ground(), x2.ground());
    if !a.is_disjoint(b) {
        return Err(Error::Overlap(a.to_string(), b.to_string()));
    }
    let mut out = Vec::new();
    let mut taken = vec![false; x2.blocks.len()];
    let mut current = Vec::new();
    fn rec(
        x1: &[Ground],
        x2: &[Ground],
        i: usize,
        taken: &mut [bool],
        current: &mut Vec<Ground>,
        out: &mut Vec<SetPartition>,
    ) {
        if i == x1.len() {
            let mut blocks = current.clone();
            blocks.extend(x2.iter().zip(taken.iter()).filter(|(_, &t)| !t).map(|(b, _)| *b));
            out.push(SetPartition::new(blocks).expect("valid by construction"));
            return;
        }
        current.push(x1[i]);
        rec(x1, x2, i + 1, taken, current, out);
        current.pop();
        for j in 0..x2.len() {
            if !taken[j] {
                taken[j] = true;
                current.push(x1[i].union(x2[j]));
                rec(x1, x2, i + 1, taken, current, out);
                current.pop();
                taken[j] = false;
            }
        }
    }
    rec(&x1.blocks, &x2.blocks, 0, &mut taken, &mut current, &mut out);
    Ok(out)
}

fn same_ground(x: &SetPartition, order: &LinearOrder) -> Result<()> {
    if x.ground() != order.ground() {
        Err(Error::GroundMismatch(x.ground().to_string(), order.ground().to_string()))
    } else {
        Ok(())
    }
}

/// Pairs `(i, j)` with `i` before `j`, both in one block, and no element of
/// that block strictly between them. Sorted.
pub fn arcs(x: &SetPartition, order: &LinearOrder) -> Result<Vec<(u8, u8)>> {
    same_ground(x, order)?;
    let pos = order.positions();
    let mut out = Vec::new();
    for b in x.blocks() {
        let mut members: Vec<u8> = b.iter().collect();
        members.sort_by_key(|&l| pos[l as usize]);
        out.extend(members.windows(2).map(|w| (w[0], w[1])));
    }
    out.sort();
    Ok(out)
}

/// The minimal nonempty `ℓ`-segments that are unions of blocks, in order.
pub fn atomic_segments(x: &SetPartition, order: &LinearOrder) -> Result<Vec<Ground>> {
    same_ground(x, order)?;
    let mut out = Vec::new();
    let mut current = Ground::EMPTY;
    let mut prefix = Ground::EMPTY;
    for &l in order.as_slice() {
        current = current.union(Ground::singleton(l));
        prefix = prefix.union(Ground::singleton(l));
        if x.is_union_of_blocks(prefix) {
            out.push(current);
            current = Ground::EMPTY;
        }
    }
    Ok(out)
}

/// No proper nonempty initial segment of `order` is a union of blocks. The
/// partition of the empty ground is not atomic.
pub fn is_atomic(x: &SetPartition, order: &LinearOrder) -> Result<bool> {
    Ok(atomic_segments(x, order)?.len() == 1)
}
