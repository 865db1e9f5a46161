use crate::algebra::Rational;
use crate::combinatorics::SimpleGraph;
use crate::error::Result;
use crate::hopf::{HopfMonoid, LinComb};
use crate::ordered::Ground;

/// Simple graphs on the basis `{m_g}`: the product sums over all ways of
/// adding edges across the two grounds, the coproduct restricts when no edge
/// crosses the cut.
#[derive(Clone, Copy, Debug, Default)]
pub struct Graphs;

fn sign(k: usize) -> Rational {
    Rational::from_integer(if k % 2 == 0 { 1 } else { -1 }.into())
}

impl Graphs {
    /// `p_g = Σ_{h ⊇ g} m_h`, expanded in the `m` basis.
    pub fn p_to_m(g: &SimpleGraph) -> LinComb<SimpleGraph> {
        LinComb::from_keys(g.supergraphs())
    }

    /// `m_g = Σ_{h ⊇ g} (-1)^{|h|-|g|} p_h`.
    pub fn m_to_p(g: &SimpleGraph) -> LinComb<SimpleGraph> {
        g.supergraphs()
            .into_iter()
            .map(|h| {
                let s = sign(h.edge_count() - g.edge_count());
                (h, s)
            })
            .collect()
    }

    pub fn to_p(x: &LinComb<SimpleGraph>) -> LinComb<SimpleGraph> {
        x.map_linear(|g| Ok::<_, ()>(Self::m_to_p(g))).expect("infallible")
    }

    pub fn from_p(x: &LinComb<SimpleGraph>) -> LinComb<SimpleGraph> {
        x.map_linear(|g| Ok::<_, ()>(Self::p_to_m(g))).expect("infallible")
    }
}

impl HopfMonoid for Graphs {
    type Key = SimpleGraph;

    fn name(&self) -> String {
        "G".into()
    }

    fn basis(&self, ground: Ground) -> Result<Vec<SimpleGraph>> {
        Ok(SimpleGraph::all(ground))
    }

    fn product(&self, a: &SimpleGraph, b: &SimpleGraph) -> Result<LinComb<SimpleGraph>> {
        let base = a.union(b)?;
        let cross: Vec<(u8, u8)> = a
            .ground()
            .iter()
            .flat_map(|i| b.ground().iter().map(move |j| (i.min(j), i.max(j))))
            .collect();
        let mut out = LinComb::zero();
        for mask in 0u64..1 << cross.len() {
            let extra = cross.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e);
            let edges = base.edges().iter().copied().chain(extra);
            out.add_term(SimpleGraph::new(base.ground(), edges)?, Rational::from_integer(1.into()));
        }
        Ok(out)
    }

    fn coproduct(&self, x: &SimpleGraph, left: Ground, right: Ground) -> Result<LinComb<(SimpleGraph, SimpleGraph)>> {
        if x.crosses(left) {
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

    fn dimension(&self, ground: Ground) -> Result<usize> {
        let n = ground.len();
        Ok(1 << (n * n.saturating_sub(1) / 2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{check_hopf_axioms, HopfExt};

    fn gr(n: &[u8], e: &[(u8, u8)]) -> SimpleGraph {
        SimpleGraph::new(Ground::from_labels(n.iter().copied()).unwrap(), e.iter().copied()).unwrap()
    }

    #[test]
    fn m_basis() {
        let prod = Graphs.product(&gr(&[0], &[]), &gr(&[1], &[])).unwrap();
        assert_eq!(prod, LinComb::from_keys([gr(&[0, 1], &[]), gr(&[0, 1], &[(0, 1)])]));
        let cut = Graphs
            .coproduct(&gr(&[0, 1, 2], &[(0, 2)]), Ground::singleton(0), Ground::from_labels([1, 2]).unwrap())
            .unwrap();
        assert!(cut.is_zero());
    }

    #[test]
    fn p_basis_products_are_single_terms() {
        let g1 = gr(&[0, 2], &[(0, 2)]);
        let g2 = gr(&[1], &[]);
        let lhs = Graphs.mul(&Graphs::p_to_m(&g1), &Graphs::p_to_m(&g2)).unwrap();
        assert_eq!(Graphs::to_p(&lhs), LinComb::basis(g1.union(&g2).unwrap()));
    }

    #[test]
    fn p_basis_is_free_commutative_on_connected_graphs() {
        for g in SimpleGraph::all(Ground::standard(4)) {
            let factors: Vec<_> = g
                .components()
                .into_iter()
                .map(|c| Graphs::p_to_m(&g.restrict(c).unwrap()))
                .collect();
            let prod = Graphs.mul_all(&factors).unwrap();
            assert_eq!(Graphs::to_p(&prod), LinComb::basis(g.clone()));
        }
    }

    #[test]
    fn change_of_basis_round_trip() {
        for g in SimpleGraph::all(Ground::standard(3)) {
            assert_eq!(Graphs::from_p(&Graphs::m_to_p(&g)), LinComb::basis(g.clone()));
        }
    }

    #[test]
    fn axioms() {
        let r = check_hopf_axioms(&Graphs, 4).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
    }
}
