use super::free::words_over;
use super::{Generators, HopfExt, HopfMonoid, LinComb, Word};
use crate::algebra::linalg::{sparse_rank, Eliminator, SparseVec};
use crate::algebra::Rational;
use crate::error::{Error, Result};
use crate::ordered::{Ground, SpeciesKey};
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::fmt;

/// Certificate data for the component on `{0..n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundCertificate {
    pub n: usize,
    /// Words of generators on the ground.
    pub words: usize,
    pub dimension: usize,
    /// Rank of the word images by block-wise fraction-free elimination.
    pub rank: usize,
    /// The same rank recomputed by incremental elimination.
    pub eliminator_rank: usize,
    /// Every word image equals the product of the images of every split.
    pub multiplicative: bool,
    /// Generators on the ground, and how many have a primitive Eulerian image.
    pub generators: usize,
    pub primitive: usize,
    /// The products of Eulerian images of the letters expand in the word
    /// images as the word itself plus strictly longer words.
    pub triangular: bool,
    /// Rank of the products of Eulerian images of the letters.
    pub euler_rank: usize,
}

impl GroundCertificate {
    pub fn is_square(&self) -> bool {
        self.words == self.dimension
    }

    /// `dimension - rank`: how far the word images are from spanning.
    pub fn defect(&self) -> usize {
        self.dimension - self.rank.min(self.dimension)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_square() && self.rank == self.dimension && self.eliminator_rank == self.rank
    }

    pub fn passed(&self) -> bool {
        self.is_isomorphism()
            && self.multiplicative
            && self.primitive == self.generators
            && self.triangular
            && self.euler_rank == self.dimension
    }
}

impl fmt::Display for GroundCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} words={} dim={} rank={} defect={} multiplicative={} primitive={}/{} triangular={} euler_rank={}",
            self.n,
            self.words,
            self.dimension,
            self.rank,
            self.defect(),
            self.multiplicative,
            self.primitive,
            self.generators,
            self.triangular,
            self.euler_rank
        )
    }
}

/// Outcome of [`freeness_certificate`].
#[derive(Clone, Debug)]
pub struct FreenessReport {
    pub monoid: String,
    pub generators: String,
    pub n_max: usize,
    pub grounds: Vec<GroundCertificate>,
}

impl FreenessReport {
    pub fn passed(&self) -> bool {
        self.grounds.iter().all(GroundCertificate::passed)
    }

    pub fn total_defect(&self) -> usize {
        self.grounds.iter().map(GroundCertificate::defect).sum()
    }
}

struct Component<HK: Ord, QK> {
    words: Vec<Word<QK>>,
    index: HashMap<Word<QK>, usize>,
    images: Vec<LinComb<HK>>,
    /// Images as rows over positions in the basis of `h` on the ground.
    rows: Vec<SparseVec<usize>>,
    elim: Eliminator<usize>,
    /// For each generator on this ground: its Eulerian image and that
    /// image's coordinates in `images`, when it lies in their span.
    euler: HashMap<QK, (LinComb<HK>, Option<SparseVec<usize>>)>,
}

/// Certifies that the products of generator images form a basis of `h` on
/// every `{0..n-1}`, `1 ≤ n ≤ n_max`, and that replacing each generator by
/// its Eulerian image gives primitive generators related to the original
/// words by a unitriangular change of basis (words ordered by length).
///
/// `embed` sends a generator key to its expression in the basis of `h`.
pub fn freeness_certificate<H, Q, E>(h: &H, q: &Q, embed: E, n_max: usize) -> Result<FreenessReport>
where
    H: HopfMonoid,
    Q: Generators,
    E: Fn(&Q::Key) -> Result<LinComb<H::Key>>,
{
    let top = Ground::standard(n_max);
    let mut embedded: HashMap<Q::Key, LinComb<H::Key>> = HashMap::new();
    let mut comps: HashMap<Ground, Component<H::Key, Q::Key>> = HashMap::new();
    let mut subsets: Vec<Ground> = top.subsets().filter(|s| !s.is_empty()).collect();
    subsets.sort_by_key(|s| (s.len(), s.bits()));

    for &s in &subsets {
        let words = words_over(q, s)?;
        let mut images = Vec::with_capacity(words.len());
        for w in &words {
            let mut acc = h.one()?;
            for g in w.letters() {
                if !embedded.contains_key(g) {
                    embedded.insert(g.clone(), embed(g)?);
                }
                acc = h.mul(&acc, &embedded[g])?;
            }
            images.push(acc);
        }
        let position: HashMap<H::Key, usize> = h.basis(s)?.into_iter().enumerate().map(|(i, k)| (k, i)).collect();
        let to_row = |x: &LinComb<H::Key>| -> Result<SparseVec<usize>> {
            x.iter()
                .map(|(k, c)| {
                    let i = position
                        .get(k)
                        .ok_or_else(|| Error::Invalid(format!("{k:?} is not a basis element on {s}")))?;
                    Ok((*i, c.clone()))
                })
                .collect()
        };
        let rows = images.iter().map(&to_row).collect::<Result<Vec<_>>>()?;
        let mut elim = Eliminator::new();
        for r in &rows {
            elim.insert(r.clone());
        }
        let mut euler = HashMap::new();
        for g in q.generators(s)? {
            let e = h.euler(&embedded[&g])?;
            let coords = elim.coordinates(&to_row(&e)?);
            euler.insert(g, (e, coords));
        }
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        comps.insert(s, Component { words, index, images, rows, elim, euler });
    }

    let mut grounds = Vec::new();
    for n in 1..=n_max {
        let ground = Ground::standard(n);
        let comp = &comps[&ground];
        let dimension = h.dimension(ground)?;
        let rank = sparse_rank(&comp.rows);

        let mut multiplicative = true;
        'words: for (w, img) in comp.words.iter().zip(&comp.images) {
            for j in 1..w.len() {
                let (u, v) = (Word(w.0[..j].to_vec()), Word(w.0[j..].to_vec()));
                let (cu, cv) = (&comps[&u.ground()], &comps[&v.ground()]);
                let prod = h.mul(&cu.images[cu.index[&u]], &cv.images[cv.index[&v]])?;
                if &prod != img {
                    multiplicative = false;
                    break 'words;
                }
            }
        }

        let mut primitive = 0;
        for (e, _) in comp.euler.values() {
            if h.is_primitive(e, ground)? {
                primitive += 1;
            }
        }

        let mut triangular = true;
        let mut euler_rows = Vec::with_capacity(comp.words.len());
        for (wi, w) in comp.words.iter().enumerate() {
            let mut direct = h.one()?;
            let mut predicted: Vec<(Vec<Q::Key>, Rational)> = vec![(Vec::new(), Rational::one())];
            for g in w.letters() {
                let gc = &comps[&g.ground()];
                let (e, coords) = &gc.euler[g];
                direct = h.mul(&direct, e)?;
                match coords {
                    Some(c) if triangular => {
                        predicted = predicted
                            .iter()
                            .flat_map(|(prefix, a)| {
                                c.iter().map(move |(&ui, b)| {
                                    let mut p = prefix.clone();
                                    p.extend(gc.words[ui].0.iter().cloned());
                                    (p, a * b)
                                })
                            })
                            .collect();
                    }
                    _ => triangular = false,
                }
            }
            if triangular {
                let mut coords: HashMap<usize, Rational> = HashMap::new();
                for (p, c) in predicted {
                    *coords.entry(comp.index[&Word(p)]).or_insert_with(Rational::zero) += c;
                }
                coords.retain(|_, c| !c.is_zero());
                let mut expanded = LinComb::zero();
                for (&ui, c) in &coords {
                    expanded.add_scaled(&comp.images[ui], c);
                }
                let unit_diagonal = coords.get(&wi).is_some_and(|c| c.is_one())
                    && coords.iter().all(|(&ui, _)| ui == wi || comp.words[ui].len() > w.len());
                triangular = unit_diagonal && expanded == direct;
            }
            euler_rows.push(direct.into_terms());
        }

        grounds.push(GroundCertificate {
            n,
            words: comp.words.len(),
            dimension,
            rank,
            eliminator_rank: comp.elim.rank(),
            multiplicative,
            generators: comp.euler.len(),
            primitive,
            triangular,
            euler_rank: sparse_rank(&euler_rows),
        });
    }
    Ok(FreenessReport { monoid: h.name(), generators: q.name(), n_max, grounds })
}
