use super::partition::{arcs, atomic_segments, quasi_shuffles, SetPartition};
use crate::error::{Error, Result};
use crate::ordered::{concat_orders, is_segment, restrict_order, Ground, LinearOrder, Relabel, Relabeling, SpeciesKey};
use crate::unitriangular::UniMatrix;
use std::collections::BTreeMap;
use std::fmt;

/// A set partition of an ordered ground with a nonzero label in `F_p` on
/// every arc.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcDiagram {
    order: LinearOrder,
    partition: SetPartition,
    labels: BTreeMap<(u8, u8), u8>,
    p: u8,
}

impl ArcDiagram {
    pub fn new(order: LinearOrder, partition: SetPartition, labels: BTreeMap<(u8, u8), u8>, p: u32) -> Result<Self> {
        let p8 = crate::unitriangular::check_prime(p)?;
        let a = arcs(&partition, &order)?;
        if labels.len() != a.len() || a.iter().any(|arc| !labels.contains_key(arc)) {
            return Err(Error::Invalid(format!(
                "labels {labels:?} do not match the arcs {a:?} of {partition} on {order}"
            )));
        }
        if let Some((arc, v)) = labels.iter().find(|(_, &v)| v == 0 || v >= p8) {
            return Err(Error::Invalid(format!("label {v} on arc {arc:?} is not a nonzero residue mod {p}")));
        }
        Ok(Self { order, partition, labels, p: p8 })
    }

    /// Every arc labeled 1.
    pub fn unlabeled(order: LinearOrder, partition: SetPartition, p: u32) -> Result<Self> {
        let labels = arcs(&partition, &order)?.into_iter().map(|a| (a, 1)).collect();
        Self::new(order, partition, labels, p)
    }

    /// The diagram with no arcs.
    pub fn singletons(order: LinearOrder, p: u32) -> Result<Self> {
        let x = SetPartition::singletons(order.ground());
        Self::new(order, x, BTreeMap::new(), p)
    }

    pub fn order(&self) -> &LinearOrder {
        &self.order
    }

    pub fn partition(&self) -> &SetPartition {
        &self.partition
    }

    pub fn labels(&self) -> &BTreeMap<(u8, u8), u8> {
        &self.labels
    }

    pub fn p(&self) -> u32 {
        self.p as u32
    }

    pub fn ground(&self) -> Ground {
        self.order.ground()
    }

    pub fn arc_count(&self) -> usize {
        self.labels.len()
    }

    /// Every labeling of every partition of `order`'s ground.
    pub fn all(order: &LinearOrder, p: u32) -> Result<Vec<ArcDiagram>> {
        let mut out = Vec::new();
        for x in SetPartition::all(order.ground()) {
            out.extend(Self::labelings(order, &x, p)?);
        }
        Ok(out)
    }

    /// The `(p-1)^{arcs}` labelings of one partition.
    pub fn labelings(order: &LinearOrder, x: &SetPartition, p: u32) -> Result<Vec<ArcDiagram>> {
        let a = arcs(x, order)?;
        Self::extend_labels(order, x, BTreeMap::new(), &a, p)
    }

    /// All diagrams on `x` keeping `fixed` labels and labeling the arcs in
    /// `free` in every possible way.
    fn extend_labels(
        order: &LinearOrder,
        x: &SetPartition,
        fixed: BTreeMap<(u8, u8), u8>,
        free: &[(u8, u8)],
        p: u32,
    ) -> Result<Vec<ArcDiagram>> {
        let mut out = Vec::new();
        let choices = (p as u64 - 1).pow(free.len() as u32);
        for mut code in 0..choices {
            let mut labels = fixed.clone();
            for arc in free {
                labels.insert(*arc, (code % (p as u64 - 1)) as u8 + 1);
                code /= p as u64 - 1;
            }
            out.push(Self::new(order.clone(), x.clone(), labels, p)?);
        }
        Ok(out)
    }

    /// Restriction to `s`, defined when `s` is an `ℓ`-segment or a union of
    /// blocks: in both cases the arcs inside `s` are the arcs of the
    /// restricted partition.
    pub fn restrict(&self, s: Ground) -> Result<Self> {
        let order = restrict_order(&self.order, s)?;
        if !is_segment(&self.order, s)? && !self.partition.is_union_of_blocks(s) {
            return Err(Error::Invalid(format!("{s} is neither a segment of {} nor a union of blocks", self.order)));
        }
        let partition = self.partition.restrict(s)?;
        let labels = self
            .labels
            .iter()
            .filter(|((i, j), _)| s.contains(*i) && s.contains(*j))
            .map(|(&a, &v)| (a, v))
            .collect();
        Self::new(order, partition, labels, self.p as u32)
    }

    /// `D₁ ⊔ D₂` on the concatenated order.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p as u32, other.p as u32));
        }
        let order = concat_orders(&self.order, &other.order)?;
        let partition = self.partition.union(&other.partition)?;
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().map(|(&a, &v)| (a, v)));
        Self::new(order, partition, labels, self.p as u32)
    }

    /// Diagrams on `self.order · other.order` restricting to `self` and
    /// `other`: quasi-shuffles of the partitions, inherited arcs keep their
    /// labels and new arcs are labeled freely.
    pub fn labeled_quasi_shuffles(&self, other: &Self) -> Result<Vec<ArcDiagram>> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p as u32, other.p as u32));
        }
        let order = concat_orders(&self.order, &other.order)?;
        let mut fixed = self.labels.clone();
        fixed.extend(other.labels.iter().map(|(&a, &v)| (a, v)));
        let mut out = Vec::new();
        for x in quasi_shuffles(&self.partition, &other.partition)? {
            let free: Vec<(u8, u8)> = arcs(&x, &order)?.into_iter().filter(|a| !fixed.contains_key(a)).collect();
            out.extend(Self::extend_labels(&order, &x, fixed.clone(), &free, self.p as u32)?);
        }
        Ok(out)
    }

    pub fn is_atomic(&self) -> bool {
        atomic_segments(&self.partition, &self.order).map(|s| s.len() == 1).unwrap_or(false)
    }

    /// Restrictions to the minimal segments that are unions of blocks.
    pub fn atomic_factorization(&self) -> Result<Vec<ArcDiagram>> {
        atomic_segments(&self.partition, &self.order)?
            .into_iter()
            .map(|s| self.restrict(s))
            .collect()
    }

    /// `U_{X,α}`: the identity plus `α(i,j)` at each arc `(i, j)`.
    pub fn to_matrix(&self) -> UniMatrix {
        UniMatrix::from_entries(
            self.order.clone(),
            self.p as u32,
            self.labels.iter().map(|(&(i, j), &v)| (i, j, v as i64)),
        )
        .expect("arcs are strictly upper")
    }

    /// Inverse of [`to_matrix`](Self::to_matrix); `u - 1` must have at most
    /// one nonzero entry per row and per column.
    pub fn from_matrix(u: &UniMatrix) -> Result<Self> {
        if !u.is_row_column_sparse() {
            return Err(Error::NonCanonical(u.to_string()));
        }
        let entries = u.nonzero_entries();
        // Chains i -> j -> k of entries are the blocks.
        let mut blocks: Vec<Ground> = u.ground().iter().map(Ground::singleton).collect();
        for &(i, j, _) in &entries {
            let bi = blocks.iter().position(|b| b.contains(i)).expect("label present");
            let bj = blocks.iter().position(|b| b.contains(j)).expect("label present");
            let merged = blocks[bi].union(blocks[bj]);
            blocks[bi] = merged;
            blocks.remove(bj);
        }
        let partition = SetPartition::new(blocks)?;
        let labels = entries.into_iter().map(|(i, j, v)| ((i, j), v)).collect();
        Self::new(u.order().clone(), partition, labels, u.p())
    }
}

/// `(X, α) ≤ (Y, β)`: every arc of `X` is an arc of `Y` carrying the same
/// label.
pub fn diagram_leq(d1: &ArcDiagram, d2: &ArcDiagram) -> Result<bool> {
    if d1.p != d2.p {
        return Err(Error::ModulusMismatch(d1.p as u32, d2.p as u32));
    }
    if d1.order != d2.order {
        return Err(Error::GroundMismatch(d1.order.to_string(), d2.order.to_string()));
    }
    Ok(d1.labels.iter().all(|(a, v)| d2.labels.get(a) == Some(v)))
}

impl fmt::Display for ArcDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arcs: Vec<String> = self.labels.iter().map(|((i, j), v)| format!("{i}-{j}:{v}")).collect();
        write!(f, "{}{}[{}]", self.order, self.partition, arcs.join(" "))
    }
}

impl fmt::Debug for ArcDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Relabel for ArcDiagram {
    fn relabel(&self, sigma: &Relabeling) -> Result<Self> {
        let labels = self
            .labels
            .iter()
            .map(|(&(i, j), &v)| Ok(((sigma.apply(i)?, sigma.apply(j)?), v)))
            .collect::<Result<_>>()?;
        Self::new(self.order.relabel(sigma)?, self.partition.relabel(sigma)?, labels, self.p as u32)
    }
}

impl SpeciesKey for ArcDiagram {
    fn ground(&self) -> Ground {
        self.order.ground()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(v: &[u8]) -> LinearOrder {
        LinearOrder::new(v.to_vec()).unwrap()
    }

    fn diag(order: &[u8], blocks: &[&[u8]], labels: &[((u8, u8), u8)], p: u32) -> ArcDiagram {
        ArcDiagram::new(o(order), SetPartition::from_blocks(blocks).unwrap(), labels.iter().copied().collect(), p).unwrap()
    }

    #[test]
    fn six_point_example() {
        // f..k = 0..5; arcs (f,i)=a, (i,j)=b, (h,k)=c with a,b,c = 1,2,3 over F_5.
        // The matrix carries b at (i,j); the printed "d" there is read as b.
        let d = diag(&[0, 1, 2, 3, 4, 5], &[&[0, 3, 4], &[1], &[2, 5]], &[((0, 3), 1), ((3, 4), 2), ((2, 5), 3)], 5);
        let u = d.to_matrix();
        assert_eq!(u.entry(0, 3).unwrap(), 1);
        assert_eq!(u.entry(3, 4).unwrap(), 2);
        assert_eq!(u.entry(2, 5).unwrap(), 3);
        assert_eq!(u.nonzero_entries().len(), 3);
        assert_eq!(ArcDiagram::from_matrix(&u).unwrap(), d);
    }

    #[test]
    fn codec_round_trip_exhaustive() {
        for p in [2u32, 3] {
            for n in 0..=4 {
                let l = LinearOrder::standard(n);
                for d in ArcDiagram::all(&l, p).unwrap() {
                    let u = d.to_matrix();
                    assert!(u.is_row_column_sparse());
                    assert_eq!(ArcDiagram::from_matrix(&u).unwrap(), d);
                }
            }
        }
        let empty = ArcDiagram::singletons(o(&[2, 0, 1]), 3).unwrap();
        assert!(empty.to_matrix().is_identity());
        let dense = UniMatrix::from_entries(LinearOrder::standard(3), 2, [(0, 1, 1), (0, 2, 1)]).unwrap();
        assert!(matches!(ArcDiagram::from_matrix(&dense), Err(Error::NonCanonical(_))));
    }

    #[test]
    fn diagram_counts() {
        // Σ_X (q-1)^{arcs}: Bell numbers at q = 2, 11 at q = 3, n = 3.
        let l = LinearOrder::standard(3);
        assert_eq!(ArcDiagram::all(&l, 2).unwrap().len(), 5);
        assert_eq!(ArcDiagram::all(&l, 3).unwrap().len(), 11);
        assert_eq!(ArcDiagram::all(&LinearOrder::standard(5), 2).unwrap().len(), 52);
    }

    #[test]
    fn order_relation() {
        let l = [0u8, 1, 2];
        let ik = diag(&l, &[&[0, 2], &[1]], &[((0, 2), 1)], 2);
        let path = diag(&l, &[&[0, 1, 2]], &[((0, 1), 1), ((1, 2), 1)], 2);
        let bottom = ArcDiagram::singletons(o(&l), 2).unwrap();
        assert!(diagram_leq(&ik, &ik).unwrap());
        assert!(diagram_leq(&bottom, &path).unwrap() && diagram_leq(&bottom, &ik).unwrap());
        assert!(!diagram_leq(&ik, &path).unwrap() && !diagram_leq(&path, &ik).unwrap());
        let other = diag(&l, &[&[0, 2], &[1]], &[((0, 2), 2)], 3);
        assert!(diagram_leq(&ik, &other).is_err());
    }

    #[test]
    fn maximal_diagrams_are_atomic_but_not_conversely() {
        let l = LinearOrder::standard(4);
        let all = ArcDiagram::all(&l, 2).unwrap();
        let maximal: Vec<_> = all
            .iter()
            .filter(|d| all.iter().all(|e| e == *d || !diagram_leq(d, e).unwrap()))
            .collect();
        assert!(maximal.iter().all(|d| d.is_atomic()));
        let single = diag(&[0, 1, 2, 3], &[&[0, 3], &[1], &[2]], &[((0, 3), 1)], 2);
        assert!(single.is_atomic());
        assert!(!maximal.contains(&&single));
    }

    #[test]
    fn factorization() {
        let d = diag(&[0, 1, 2, 3], &[&[0, 1], &[2, 3]], &[((0, 1), 1), ((2, 3), 1)], 2);
        let f = d.atomic_factorization().unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f[0].concat(&f[1]).unwrap(), d);
        let s = ArcDiagram::singletons(LinearOrder::standard(3), 2).unwrap();
        assert_eq!(s.atomic_factorization().unwrap().len(), 3);
        let atomic = diag(&[0, 1, 2, 3], &[&[0, 2], &[1, 3]], &[((0, 2), 1), ((1, 3), 1)], 2);
        assert_eq!(atomic.atomic_factorization().unwrap(), vec![atomic.clone()]);
    }

    #[test]
    fn labeled_quasi_shuffles_restrict_correctly() {
        let p = 3;
        for d1 in ArcDiagram::all(&o(&[0, 1]), p).unwrap() {
            for d2 in ArcDiagram::all(&o(&[2, 3]), p).unwrap() {
                let got = d1.labeled_quasi_shuffles(&d2).unwrap();
                let l = o(&[0, 1, 2, 3]);
                let mut want: Vec<_> = ArcDiagram::all(&l, p)
                    .unwrap()
                    .into_iter()
                    .filter(|d| {
                        d.restrict(d1.ground()).unwrap() == d1 && d.restrict(d2.ground()).unwrap() == d2
                    })
                    .collect();
                let mut got_sorted = got.clone();
                got_sorted.sort();
                want.sort();
                assert_eq!(got_sorted, want);
            }
        }
    }

    #[test]
    fn arcs_and_segments() {
        // For a segment S, the arcs of X inside S are the arcs of X|S.
        let l = o(&[3, 0, 4, 1, 2]);
        for x in SetPartition::all(l.ground()) {
            let all = arcs(&x, &l).unwrap();
            for lo in 0..=5 {
                for hi in lo..=5 {
                    let s = Ground::from_labels(l.as_slice()[lo..hi].iter().copied()).unwrap();
                    let inside: Vec<_> = all.iter().copied().filter(|(i, j)| s.contains(*i) && s.contains(*j)).collect();
                    assert_eq!(inside, arcs(&x.restrict(s).unwrap(), &restrict_order(&l, s).unwrap()).unwrap());
                }
            }
            // General subsets: only containment in one direction.
            for s in l.ground().subsets() {
                let inside: Vec<_> = all.iter().copied().filter(|(i, j)| s.contains(*i) && s.contains(*j)).collect();
                let restricted = arcs(&x.restrict(s).unwrap(), &restrict_order(&l, s).unwrap()).unwrap();
                assert!(inside.iter().all(|a| restricted.contains(a)));
            }
        }
    }

    #[test]
    fn codec_intertwines_minors_and_sums() {
        let p = 3;
        for d1 in ArcDiagram::all(&o(&[1, 0]), p).unwrap() {
            for d2 in ArcDiagram::all(&o(&[3, 2, 4]), p).unwrap() {
                let d = d1.concat(&d2).unwrap();
                let u = UniMatrix::concat_sum(&d1.to_matrix(), &d2.to_matrix()).unwrap();
                assert_eq!(d.to_matrix(), u);
                for lo in 0..=5 {
                    for hi in lo..=5 {
                        let s = Ground::from_labels(d.order().as_slice()[lo..hi].iter().copied()).unwrap();
                        assert_eq!(d.restrict(s).unwrap().to_matrix(), u.principal_minor(s).unwrap());
                    }
                }
            }
        }
    }
}
