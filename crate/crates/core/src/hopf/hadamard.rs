use super::{HopfMonoid, LinComb};
use crate::error::Result;
use crate::ordered::Ground;

/// The exponential species: one basis element per ground, with
/// `1_S · 1_T = 1_{S⊔T}` and `Δ(1_I) = 1_S ⊗ 1_T`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Trivial;

impl HopfMonoid for Trivial {
    type Key = Ground;

    fn name(&self) -> String {
        "E".into()
    }

    fn basis(&self, ground: Ground) -> Result<Vec<Ground>> {
        Ok(vec![ground])
    }

    fn product(&self, a: &Ground, b: &Ground) -> Result<LinComb<Ground>> {
        Ok(LinComb::basis(a.union(*b)))
    }

    fn coproduct(&self, _x: &Ground, left: Ground, right: Ground) -> Result<LinComb<(Ground, Ground)>> {
        Ok(LinComb::basis((left, right)))
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn is_cocommutative(&self) -> bool {
        true
    }
}

/// The Hadamard (componentwise tensor) product `h × k`.
#[derive(Clone, Debug)]
pub struct Hadamard<H, K> {
    pub left: H,
    pub right: K,
}

impl<H, K> Hadamard<H, K> {
    pub fn new(left: H, right: K) -> Self {
        Self { left, right }
    }
}

impl<H: HopfMonoid, K: HopfMonoid> HopfMonoid for Hadamard<H, K> {
    type Key = (H::Key, K::Key);

    fn name(&self) -> String {
        format!("{}×{}", self.left.name(), self.right.name())
    }

    fn basis(&self, ground: Ground) -> Result<Vec<Self::Key>> {
        let a = self.left.basis(ground)?;
        let b = self.right.basis(ground)?;
        Ok(a.iter().flat_map(|x| b.iter().map(move |y| (x.clone(), y.clone()))).collect())
    }

    fn product(&self, a: &Self::Key, b: &Self::Key) -> Result<LinComb<Self::Key>> {
        let l = self.left.product(&a.0, &b.0)?;
        let r = self.right.product(&a.1, &b.1)?;
        Ok(super::tensor(&l, &r))
    }

    fn coproduct(&self, x: &Self::Key, left: Ground, right: Ground) -> Result<LinComb<(Self::Key, Self::Key)>> {
        let l = self.left.coproduct(&x.0, left, right)?;
        let r = self.right.coproduct(&x.1, left, right)?;
        let mut out = LinComb::zero();
        for ((a1, a2), c) in l.iter() {
            for ((b1, b2), d) in r.iter() {
                out.add_term(((a1.clone(), b1.clone()), (a2.clone(), b2.clone())), c * d);
            }
        }
        Ok(out)
    }

    fn is_commutative(&self) -> bool {
        self.left.is_commutative() && self.right.is_commutative()
    }

    fn is_cocommutative(&self) -> bool {
        self.left.is_cocommutative() && self.right.is_cocommutative()
    }

    fn free_order_factor(&self) -> bool {
        self.left.free_order_factor() || self.right.free_order_factor()
    }

    fn dimension(&self, ground: Ground) -> Result<usize> {
        Ok(self.left.dimension(ground)? * self.right.dimension(ground)?)
    }
}

