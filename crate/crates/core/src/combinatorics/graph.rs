use super::partition::{arcs, SetPartition};
use crate::error::{Error, Result};
use crate::ordered::{Ground, LinearOrder, Relabel, Relabeling, SpeciesKey};
use std::collections::BTreeSet;
use std::fmt;

/// A loopless simple graph; edges are stored as `(min, max)` label pairs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleGraph {
    ground: Ground,
    edges: BTreeSet<(u8, u8)>,
}

fn norm(a: u8, b: u8) -> (u8, u8) {
    (a.min(b), a.max(b))
}

impl SimpleGraph {
    pub fn new<I: IntoIterator<Item = (u8, u8)>>(ground: Ground, edges: I) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::Invalid(format!("loop at {a}")));
            }
            if !ground.contains(a) || !ground.contains(b) {
                return Err(Error::Invalid(format!("edge {a}-{b} leaves the ground {ground}")));
            }
            set.insert(norm(a, b));
        }
        Ok(Self { ground, edges: set })
    }

    pub fn edgeless(ground: Ground) -> Self {
        Self { ground, edges: BTreeSet::new() }
    }

    pub fn ground(&self) -> Ground {
        self.ground
    }

    pub fn edges(&self) -> &BTreeSet<(u8, u8)> {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: u8, b: u8) -> bool {
        self.edges.contains(&norm(a, b))
    }

    pub fn restrict(&self, s: Ground) -> Result<Self> {
        s.require_subset(self.ground)?;
        Ok(Self {
            ground: s,
            edges: self
                .edges
                .iter()
                .copied()
                .filter(|&(a, b)| s.contains(a) && s.contains(b))
                .collect(),
        })
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        if !self.ground.is_disjoint(other.ground) {
            return Err(Error::Overlap(self.ground.to_string(), other.ground.to_string()));
        }
        Ok(Self {
            ground: self.ground.union(other.ground),
            edges: self.edges.union(&other.edges).copied().collect(),
        })
    }

    /// Some edge joins `s` to its complement.
    pub fn crosses(&self, s: Ground) -> bool {
        self.edges.iter().any(|&(a, b)| s.contains(a) != s.contains(b))
    }

    pub fn is_subgraph_of(&self, other: &Self) -> bool {
        self.ground == other.ground && self.edges.is_subset(&other.edges)
    }

    /// Vertex sets of the connected components, sorted by smallest label.
    pub fn components(&self) -> Vec<Ground> {
        let mut out = Vec::new();
        let mut left = self.ground;
        while let Some(start) = left.min_label() {
            let mut comp = Ground::singleton(start);
            loop {
                let grown = self.edges.iter().fold(comp, |acc, &(a, b)| {
                    if acc.contains(a) || acc.contains(b) {
                        acc.union(Ground::singleton(a)).union(Ground::singleton(b))
                    } else {
                        acc
                    }
                });
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            out.push(comp);
            left = left.difference(comp);
        }
        out
    }

    /// Exactly one component; the graph on the empty ground is not connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// All `2^(n choose 2)` graphs on `g`.
    pub fn all(g: Ground) -> Vec<SimpleGraph> {
        let pairs: Vec<(u8, u8)> = g
            .iter()
            .flat_map(|a| g.iter().filter(move |&b| b > a).map(move |b| (a, b)))
            .collect();
        subsets_of(&pairs)
            .map(|edges| SimpleGraph { ground: g, edges: edges.into_iter().collect() })
            .collect()
    }

    /// All graphs on the same ground containing `self`.
    pub fn supergraphs(&self) -> Vec<SimpleGraph> {
        let missing: Vec<(u8, u8)> = Self::all_pairs(self.ground)
            .filter(|e| !self.edges.contains(e))
            .collect();
        subsets_of(&missing)
            .map(|extra| {
                let mut edges = self.edges.clone();
                edges.extend(extra);
                SimpleGraph { ground: self.ground, edges }
            })
            .collect()
    }

    fn all_pairs(g: Ground) -> impl Iterator<Item = (u8, u8)> {
        g.iter().flat_map(move |a| g.iter().filter(move |&b| b > a).map(move |b| (a, b)))
    }
}

fn subsets_of<T: Copy>(items: &[T]) -> impl Iterator<Item = Vec<T>> + '_ {
    (0u64..1 << items.len()).map(move |mask| {
        items
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect()
    })
}

impl fmt::Display for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self.edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        write!(f, "{}[{}]", self.ground, e.join(" "))
    }
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Relabel for SimpleGraph {
    fn relabel(&self, sigma: &Relabeling) -> Result<Self> {
        let edges = self
            .edges
            .iter()
            .map(|&(a, b)| Ok((sigma.apply(a)?, sigma.apply(b)?)))
            .collect::<Result<Vec<_>>>()?;
        SimpleGraph::new(sigma.apply_ground(self.ground)?, edges)
    }
}

impl SpeciesKey for SimpleGraph {
    fn ground(&self) -> Ground {
        self.ground
    }
}

/// Graphs containing every arc of `(x, order)` whose other edges `(i, j)`,
/// `i` before `j`, each have some `k` strictly between them with `(i, k)` or
/// `(k, j)` an arc.
pub fn graphs_over(x: &SetPartition, order: &LinearOrder) -> Result<Vec<SimpleGraph>> {
    let a = arcs(x, order)?;
    let arc_set: BTreeSet<(u8, u8)> = a.iter().copied().collect();
    let seq = order.as_slice();
    let mut candidates = Vec::new();
    for s in 0..seq.len() {
        for t in s + 1..seq.len() {
            let (i, j) = (seq[s], seq[t]);
            if arc_set.contains(&(i, j)) {
                continue;
            }
            let ok = seq[s + 1..t]
                .iter()
                .any(|&k| arc_set.contains(&(i, k)) || arc_set.contains(&(k, j)));
            if ok {
                candidates.push(norm(i, j));
            }
        }
    }
    let base = SimpleGraph::new(order.ground(), a)?;
    Ok(subsets_of(&candidates)
        .map(|extra| {
            let mut g = base.clone();
            g.edges.extend(extra);
            g
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(v: &[u8]) -> Ground {
        Ground::from_labels(v.iter().copied()).unwrap()
    }

    #[test]
    fn enumeration_and_components() {
        assert_eq!(SimpleGraph::all(Ground::standard(4)).len(), 64);
        let connected = |n| SimpleGraph::all(Ground::standard(n)).iter().filter(|h| h.is_connected()).count();
        assert_eq!((1..=5).map(connected).collect::<Vec<_>>(), vec![1, 1, 4, 38, 728]);
        let h = SimpleGraph::new(g(&[0, 1, 2, 3]), [(0, 2)]).unwrap();
        assert_eq!(h.components(), vec![g(&[0, 2]), g(&[1]), g(&[3])]);
        assert!(h.crosses(g(&[0, 1])));
        assert!(!h.crosses(g(&[0, 2])));
        assert!(SimpleGraph::new(g(&[0]), [(0, 0)]).is_err());
    }

    #[test]
    fn graphs_over_examples() {
        let l = LinearOrder::standard(3);
        assert_eq!(graphs_over(&SetPartition::singletons(l.ground()), &l).unwrap(), vec![SimpleGraph::edgeless(l.ground())]);
        // X = {{i,j},{k}} on i<j<k
        let x = SetPartition::from_blocks(&[&[0, 1], &[2]]).unwrap();
        let got = graphs_over(&x, &l).unwrap();
        // Brute force over all 8 graphs.
        let arcs_g = SimpleGraph::new(l.ground(), [(0, 1)]).unwrap();
        let want: Vec<_> = SimpleGraph::all(l.ground())
            .into_iter()
            .filter(|h| arcs_g.is_subgraph_of(h))
            .filter(|h| {
                h.edges().iter().all(|&(a, b)| {
                    arcs_g.has_edge(a, b) || (a + 1..b).any(|k| arcs_g.has_edge(a, k) || arcs_g.has_edge(k, b))
                })
            })
            .collect();
        assert_eq!(got.len(), 2);
        assert_eq!(got.into_iter().collect::<BTreeSet<_>>(), want.into_iter().collect::<BTreeSet<_>>());
    }

    #[test]
    fn relabel_graph() {
        let s = Relabeling::new([(0, 5), (1, 4)]).unwrap();
        let h = SimpleGraph::new(g(&[0, 1]), [(0, 1)]).unwrap();
        assert_eq!(h.relabel(&s).unwrap(), SimpleGraph::new(g(&[4, 5]), [(5, 4)]).unwrap());
    }
}
