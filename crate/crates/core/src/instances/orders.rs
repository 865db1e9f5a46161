use crate::error::Result;
use crate::hopf::{HopfMonoid, LinComb};
use crate::ordered::{concat_orders, restrict_order, Ground, LinearOrder};

/// Linear orders: concatenation and restriction.
#[derive(Clone, Copy, Debug, Default)]
pub struct Orders;

impl HopfMonoid for Orders {
    type Key = LinearOrder;

    fn name(&self) -> String {
        "L".into()
    }

    fn basis(&self, ground: Ground) -> Result<Vec<LinearOrder>> {
        Ok(LinearOrder::all(ground))
    }

    fn product(&self, a: &LinearOrder, b: &LinearOrder) -> Result<LinComb<LinearOrder>> {
        Ok(LinComb::basis(concat_orders(a, b)?))
    }

    fn coproduct(&self, x: &LinearOrder, left: Ground, right: Ground) -> Result<LinComb<(LinearOrder, LinearOrder)>> {
        Ok(LinComb::basis((restrict_order(x, left)?, restrict_order(x, right)?)))
    }

    fn is_commutative(&self) -> bool {
        false
    }

    fn is_cocommutative(&self) -> bool {
        true
    }

    fn free_order_factor(&self) -> bool {
        true
    }

    fn dimension(&self, ground: Ground) -> Result<usize> {
        Ok((1..=ground.len()).product())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::check_hopf_axioms;

    fn lo(v: &[u8]) -> LinearOrder {
        LinearOrder::new(v.to_vec()).unwrap()
    }

    #[test]
    fn operations() {
        let (a, b, c) = (0, 1, 2);
        assert_eq!(Orders.product(&lo(&[a, b]), &lo(&[c])).unwrap(), LinComb::basis(lo(&[a, b, c])));
        let g = |v: &[u8]| Ground::from_labels(v.iter().copied()).unwrap();
        assert_eq!(
            Orders.coproduct(&lo(&[b, c, a]), g(&[a]), g(&[b, c])).unwrap(),
            LinComb::basis((lo(&[a]), lo(&[b, c])))
        );
        assert_eq!(Orders.basis(Ground::standard(3)).unwrap().len(), 6);
    }

    #[test]
    fn axioms() {
        let r = check_hopf_axioms(&Orders, 5).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        assert!(r.cocommutative && !r.commutative);
    }
}
