use super::{HopfExt, HopfMonoid, LinComb};
use crate::algebra::Rational;
use crate::error::{Error, Result};
use crate::ordered::{enumerate_decompositions, Ground, SpeciesKey};
use std::collections::HashMap;
use std::hash::Hash;

/// A linear endomorphism of `h` restricted to the components on subsets of
/// a fixed ground, stored as its value on every basis key.
#[derive(Clone, Debug, PartialEq)]
pub struct Endomorphism<K: Ord + Hash + Eq> {
    ground: Ground,
    table: HashMap<K, LinComb<K>>,
}

impl<K: SpeciesKey + Clone + Ord + Hash + Eq + std::fmt::Debug> Endomorphism<K> {
    /// Tabulates `f` on the basis of every `h[S]`, `S ⊆ ground`.
    pub fn from_fn<H, F>(h: &H, ground: Ground, mut f: F) -> Result<Self>
    where
        H: HopfMonoid<Key = K> + ?Sized,
        F: FnMut(&K) -> Result<LinComb<K>>,
    {
        let mut table = HashMap::new();
        for s in ground.subsets() {
            for k in h.basis(s)? {
                let v = f(&k)?;
                table.insert(k, v);
            }
        }
        Ok(Self { ground, table })
    }

    pub fn identity<H: HopfMonoid<Key = K> + ?Sized>(h: &H, ground: Ground) -> Result<Self> {
        Self::from_fn(h, ground, |k| Ok(LinComb::basis(k.clone())))
    }

    /// `ιε`: the identity on the empty component and zero elsewhere.
    pub fn unit_counit<H: HopfMonoid<Key = K> + ?Sized>(h: &H, ground: Ground) -> Result<Self> {
        Self::from_fn(h, ground, |k| {
            Ok(if k.ground().is_empty() { LinComb::basis(k.clone()) } else { LinComb::zero() })
        })
    }

    pub fn ground(&self) -> Ground {
        self.ground
    }

    pub fn apply_key(&self, k: &K) -> Result<&LinComb<K>> {
        self.table
            .get(k)
            .ok_or_else(|| Error::Invalid(format!("endomorphism not tabulated on {k:?}")))
    }

    pub fn apply(&self, x: &LinComb<K>) -> Result<LinComb<K>> {
        let mut out = LinComb::zero();
        for (k, c) in x.iter() {
            out.add_scaled(self.apply_key(k)?, c);
        }
        Ok(out)
    }

    fn zip(&self, other: &Self, f: impl Fn(&LinComb<K>, &LinComb<K>) -> LinComb<K>) -> Result<Self> {
        if self.ground != other.ground {
            return Err(Error::GroundMismatch(self.ground.to_string(), other.ground.to_string()));
        }
        let mut table = HashMap::with_capacity(self.table.len());
        for (k, v) in &self.table {
            table.insert(k.clone(), f(v, other.apply_key(k)?));
        }
        Ok(Self { ground: self.ground, table })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.sub(b))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { ground: self.ground, table: self.table.iter().map(|(k, v)| (k.clone(), v.scale(c))).collect() }
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.ground != other.ground {
            return Err(Error::GroundMismatch(self.ground.to_string(), other.ground.to_string()));
        }
        let mut table = HashMap::with_capacity(other.table.len());
        for (k, v) in &other.table {
            table.insert(k.clone(), self.apply(v)?);
        }
        Ok(Self { ground: self.ground, table })
    }
}

/// `(f * g)(x) = Σ_{I = S ⊔ T} μ_{S,T} (f ⊗ g) Δ_{S,T}(x)`.
pub fn convolution<H>(h: &H, f: &Endomorphism<H::Key>, g: &Endomorphism<H::Key>) -> Result<Endomorphism<H::Key>>
where
    H: HopfMonoid + ?Sized,
{
    if f.ground != g.ground {
        return Err(Error::GroundMismatch(f.ground.to_string(), g.ground.to_string()));
    }
    Endomorphism::from_fn(h, f.ground, |x| {
        let i = x.ground();
        let mut out = LinComb::zero();
        for d in enumerate_decompositions(i, 2, false) {
            for ((a, b), c) in h.coproduct(x, d.parts[0], d.parts[1])?.iter() {
                let prod = h.mul(f.apply_key(a)?, g.apply_key(b)?)?;
                out.add_scaled(&prod, c);
            }
        }
        Ok(out)
    })
}

/// The first Eulerian idempotent `log(id)` applied to `x`, computed as
/// `Σ_k (-1)^{k+1}/k μ^{(k)} Δ^{(k)}` over decompositions of the ground into
/// `k` nonempty parts. All terms of `x` must share one ground.
pub fn eulerian_idempotent<H>(h: &H, x: &LinComb<H::Key>) -> Result<LinComb<H::Key>>
where
    H: HopfMonoid + ?Sized,
{
    let Some(first) = x.keys().next() else {
        return Ok(LinComb::zero());
    };
    let ground = first.ground();
    if let Some(k) = x.keys().find(|k| k.ground() != ground) {
        return Err(Error::GroundMismatch(ground.to_string(), k.ground().to_string()));
    }
    let mut out = LinComb::zero();
    for k in 1..=ground.len() {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        let coef = Rational::new(sign.into(), (k as i64).into());
        for d in enumerate_decompositions(ground, k, true) {
            for (parts, c) in h.comul_iter(x, &d.parts)?.iter() {
                let factors: Vec<_> = parts.iter().map(|p| LinComb::basis(p.clone())).collect();
                out.add_scaled(&h.mul_all(&factors)?, &(&coef * c));
            }
        }
    }
    Ok(out)
}
