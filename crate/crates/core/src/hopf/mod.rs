//! Hopf monoids in species: the interface, linear combinations, generic
//! constructions (Hadamard products, free monoids) and the checkers.

mod axioms;
mod convolution;
mod free;
mod freeness;
mod hadamard;
mod lincomb;
mod morphism;
mod type_series;

pub use axioms::{check_hopf_axioms, AxiomReport, Violation};
pub use convolution::{convolution, eulerian_idempotent, Endomorphism};
pub use free::{FreeMonoid, Generators, Word};
pub use freeness::{freeness_certificate, FreenessReport, GroundCertificate};
pub use hadamard::{Hadamard, Trivial};
pub use lincomb::{tensor, LinComb};
pub use morphism::{check_morphism, MorphismReport};
pub use type_series::{orbit_count, type_series};

use crate::algebra::Rational;
use crate::error::Result;
use crate::ordered::{enumerate_decompositions, Ground, SpeciesKey};
use num_traits::One;
use std::fmt::Debug;
use std::hash::Hash;

/// A connected Hopf monoid in species, presented on a basis.
///
/// `product` receives keys on disjoint grounds; `coproduct` receives a key on
/// `left ⊔ right`. Both may assume these preconditions.
pub trait HopfMonoid {
    type Key: SpeciesKey + Clone + Ord + Hash + Debug;

    fn name(&self) -> String;

    /// A basis of the component on `ground`.
    fn basis(&self, ground: Ground) -> Result<Vec<Self::Key>>;

    fn product(&self, a: &Self::Key, b: &Self::Key) -> Result<LinComb<Self::Key>>;

    fn coproduct(&self, x: &Self::Key, left: Ground, right: Ground) -> Result<LinComb<(Self::Key, Self::Key)>>;

    fn is_commutative(&self) -> bool;

    fn is_cocommutative(&self) -> bool;

    /// Relabeling acts freely on every nonempty component, so the number of
    /// orbits on `[n]` is the dimension divided by `n!`.
    fn free_order_factor(&self) -> bool {
        false
    }

    fn dimension(&self, ground: Ground) -> Result<usize> {
        Ok(self.basis(ground)?.len())
    }
}

/// Operations every Hopf monoid gets from its basis-level structure maps.
pub trait HopfExt: HopfMonoid {
    /// The basis element of the one-dimensional empty component.
    fn unit_key(&self) -> Result<Self::Key> {
        let b = self.basis(Ground::EMPTY)?;
        match b.as_slice() {
            [k] => Ok(k.clone()),
            _ => Err(crate::Error::Invalid(format!(
                "{}: empty component has dimension {}",
                self.name(),
                b.len()
            ))),
        }
    }

    fn mul(&self, a: &LinComb<Self::Key>, b: &LinComb<Self::Key>) -> Result<LinComb<Self::Key>> {
        let mut out = LinComb::zero();
        for (x, c) in a.iter() {
            for (y, d) in b.iter() {
                out.add_scaled(&self.product(x, y)?, &(c * d));
            }
        }
        Ok(out)
    }

    /// Product of a sequence, left to right; the empty product is the unit.
    fn mul_all(&self, factors: &[LinComb<Self::Key>]) -> Result<LinComb<Self::Key>> {
        let mut acc = LinComb::basis(self.unit_key()?);
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    fn comul(&self, x: &LinComb<Self::Key>, left: Ground, right: Ground) -> Result<LinComb<(Self::Key, Self::Key)>> {
        let mut out = LinComb::zero();
        for (k, c) in x.iter() {
            out.add_scaled(&self.coproduct(k, left, right)?, c);
        }
        Ok(out)
    }

    /// Iterated coproduct along an ordered decomposition.
    fn comul_iter(&self, x: &LinComb<Self::Key>, parts: &[Ground]) -> Result<LinComb<Vec<Self::Key>>> {
        match parts {
            [] => Ok(x.map_keys(|_| Vec::new())),
            [_] => Ok(x.map_keys(|k| vec![k.clone()])),
            [first, rest @ ..] => {
                let right = rest.iter().fold(Ground::EMPTY, |a, &b| a.union(b));
                let mut out = LinComb::zero();
                for ((a, b), c) in self.comul(x, *first, right)?.iter() {
                    let tail = self.comul_iter(&LinComb::basis(b.clone()), rest)?;
                    for (t, d) in tail.iter() {
                        let mut key = vec![a.clone()];
                        key.extend(t.iter().cloned());
                        out.add_term(key, c * d);
                    }
                }
                Ok(out)
            }
        }
    }

    /// `Σ_k (-1)^{k+1}/k Σ μ^{(k)} Δ^{(k)}` over decompositions into `k`
    /// nonempty parts.
    fn euler(&self, x: &LinComb<Self::Key>) -> Result<LinComb<Self::Key>> {
        eulerian_idempotent(self, x)
    }

    /// `Δ_{S,T}(x) = 0` for every decomposition with both parts nonempty.
    fn is_primitive(&self, x: &LinComb<Self::Key>, ground: Ground) -> Result<bool> {
        for d in enumerate_decompositions(ground, 2, true) {
            if !self.comul(x, d.parts[0], d.parts[1])?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn one(&self) -> Result<LinComb<Self::Key>> {
        Ok(LinComb::term(self.unit_key()?, Rational::one()))
    }
}

impl<H: HopfMonoid + ?Sized> HopfExt for H {}
