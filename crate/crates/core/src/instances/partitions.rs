use crate::combinatorics::{quasi_shuffles, SetPartition};
use crate::error::Result;
use crate::hopf::{HopfMonoid, LinComb};
use crate::ordered::Ground;

/// Set partitions on the basis `{m_X}`: the product sums over
/// quasi-shuffles, the coproduct splits along unions of blocks.
#[derive(Clone, Copy, Debug, Default)]
pub struct Partitions;

impl HopfMonoid for Partitions {
    type Key = SetPartition;

    fn name(&self) -> String {
        "Pi".into()
    }

    fn basis(&self, ground: Ground) -> Result<Vec<SetPartition>> {
        Ok(SetPartition::all(ground))
    }

    fn product(&self, a: &SetPartition, b: &SetPartition) -> Result<LinComb<SetPartition>> {
        Ok(LinComb::from_keys(quasi_shuffles(a, b)?))
    }

    fn coproduct(&self, x: &SetPartition, left: Ground, right: Ground) -> Result<LinComb<(SetPartition, SetPartition)>> {
        if !x.is_union_of_blocks(left) {
            return Ok(LinComb::zero());
        }
        Ok(LinComb::basis((x.restrict(left)?, x.restrict(right)?)))
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn is_cocommutative(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::check_hopf_axioms;

    fn sp(b: &[&[u8]]) -> SetPartition {
        SetPartition::from_blocks(b).unwrap()
    }

    #[test]
    fn operations() {
        let prod = Partitions.product(&sp(&[&[0]]), &sp(&[&[1]])).unwrap();
        let want = LinComb::from_keys([sp(&[&[0], &[1]]), sp(&[&[0, 1]])]);
        assert_eq!(prod, want);
        let (a, b) = (Ground::singleton(0), Ground::singleton(1));
        assert!(Partitions.coproduct(&sp(&[&[0, 1]]), a, b).unwrap().is_zero());
        assert_eq!(
            Partitions.coproduct(&sp(&[&[0], &[1]]), a, b).unwrap(),
            LinComb::basis((sp(&[&[0]]), sp(&[&[1]])))
        );
    }

    #[test]
    fn axioms() {
        let r = check_hopf_axioms(&Partitions, 5).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        assert!(r.commutative && r.cocommutative);
    }
}
