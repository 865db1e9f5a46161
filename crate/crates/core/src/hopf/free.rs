use super::{HopfMonoid, LinComb};
use crate::error::{Error, Result};
use crate::ordered::{enumerate_decompositions, Ground, Relabel, Relabeling, SpeciesKey};
use std::fmt::{self, Debug};
use std::hash::Hash;

/// A positive species presented on a basis: the generators of a free monoid.
pub trait Generators {
    type Key: SpeciesKey + Clone + Ord + Hash + Debug;

    fn name(&self) -> String;

    /// Basis of the component on `ground`. Must be empty when `ground` is.
    fn generators(&self, ground: Ground) -> Result<Vec<Self::Key>>;
}

/// A word of generators on pairwise disjoint nonempty grounds.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word<K>(pub Vec<K>);

impl<K> Word<K> {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[K] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl<K: Debug> Debug for Word<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            write!(f, "{k:?}")?;
        }
        f.write_str("]")
    }
}

impl<K: Relabel> Relabel for Word<K> {
    fn relabel(&self, sigma: &Relabeling) -> Result<Self> {
        Ok(Word(self.0.iter().map(|k| k.relabel(sigma)).collect::<Result<_>>()?))
    }
}

impl<K: SpeciesKey> SpeciesKey for Word<K> {
    fn ground(&self) -> Ground {
        self.0.iter().fold(Ground::EMPTY, |g, k| g.union(k.ground()))
    }
}

/// The free monoid on a positive species, with the coproduct making every
/// generator primitive.
#[derive(Clone, Debug)]
pub struct FreeMonoid<Q> {
    pub generators: Q,
}

impl<Q: Generators> FreeMonoid<Q> {
    pub fn new(generators: Q) -> Result<Self> {
        if !generators.generators(Ground::EMPTY)?.is_empty() {
            return Err(Error::EmptyGenerator);
        }
        Ok(Self { generators })
    }

    /// Words on `ground`, grouped by the ordered decomposition they live on.
    pub fn words(&self, ground: Ground) -> Result<Vec<Word<Q::Key>>> {
        words_over(&self.generators, ground)
    }
}

pub(crate) fn words_over<Q: Generators>(q: &Q, ground: Ground) -> Result<Vec<Word<Q::Key>>> {
    if ground.is_empty() {
        return Ok(vec![Word::empty()]);
    }
    let mut out = Vec::new();
    for k in 1..=ground.len() {
        for d in enumerate_decompositions(ground, k, true) {
            let mut partial: Vec<Vec<Q::Key>> = vec![Vec::new()];
            for &part in &d.parts {
                let gens = q.generators(part)?;
                if let Some(g) = gens.iter().find(|g| g.ground() != part) {
                    return Err(Error::GroundMismatch(g.ground().to_string(), part.to_string()));
                }
                partial = partial
                    .iter()
                    .flat_map(|w| {
                        gens.iter().map(move |g| {
                            let mut w = w.clone();
                            w.push(g.clone());
                            w
                        })
                    })
                    .collect();
                if partial.is_empty() {
                    break;
                }
            }
            out.extend(partial.into_iter().map(Word));
        }
    }
    Ok(out)
}

impl<Q: Generators> HopfMonoid for FreeMonoid<Q> {
    type Key = Word<Q::Key>;

    fn name(&self) -> String {
        format!("T({})", self.generators.name())
    }

    fn basis(&self, ground: Ground) -> Result<Vec<Self::Key>> {
        self.words(ground)
    }

    fn product(&self, a: &Self::Key, b: &Self::Key) -> Result<LinComb<Self::Key>> {
        let mut w = a.0.clone();
        w.extend(b.0.iter().cloned());
        Ok(LinComb::basis(Word(w)))
    }

    fn coproduct(&self, x: &Self::Key, left: Ground, right: Ground) -> Result<LinComb<(Self::Key, Self::Key)>> {
        let (mut l, mut r) = (Vec::new(), Vec::new());
        for g in &x.0 {
            let s = g.ground();
            if s.is_subset(left) {
                l.push(g.clone());
            } else if s.is_subset(right) {
                r.push(g.clone());
            } else {
                return Ok(LinComb::zero());
            }
        }
        Ok(LinComb::basis((Word(l), Word(r))))
    }

    fn is_commutative(&self) -> bool {
        false
    }

    fn is_cocommutative(&self) -> bool {
        true
    }
}
