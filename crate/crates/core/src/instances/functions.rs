use crate::algebra::Rational;
use crate::error::{Error, Result};
use crate::hopf::{Generators, HopfMonoid, LinComb};
use crate::ordered::{Ground, LinearOrder};
use crate::unitriangular::{check_prime, UniMatrix};

/// Functions on unitriangular matrices over `F_p`, on the basis of
/// characteristic functions `κ_U`, keyed by the matrix (which carries its
/// order).
#[derive(Clone, Copy, Debug)]
pub struct Functions {
    p: u32,
}

impl Functions {
    pub fn new(p: u32) -> Result<Self> {
        check_prime(p)?;
        Ok(Self { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    fn check(&self, u: &UniMatrix) -> Result<()> {
        if u.p() != self.p {
            return Err(Error::ModulusMismatch(u.p(), self.p));
        }
        Ok(())
    }

    /// Matrices `V ≥ U`: equal to `U` wherever `U` is nonzero, arbitrary
    /// elsewhere.
    pub fn upper_set(&self, u: &UniMatrix) -> Result<Vec<UniMatrix>> {
        self.check(u)?;
        let seq = u.order().as_slice().to_vec();
        let n = seq.len();
        let mut fixed = Vec::new();
        let mut free = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                match u.entry_pos(a, b) {
                    0 => free.push((seq[a], seq[b])),
                    v => fixed.push((seq[a], seq[b], v as i64)),
                }
            }
        }
        let q = self.p as u64;
        let total = q.checked_pow(free.len() as u32).ok_or_else(|| Error::BudgetExceeded {
            what: "upper set".into(),
            required: u128::MAX,
            budget: u64::MAX as u128,
        })?;
        (0..total)
            .map(|mut code| {
                let mut entries = fixed.clone();
                for &(i, j) in &free {
                    entries.push((i, j, (code % q) as i64));
                    code /= q;
                }
                UniMatrix::from_entries(u.order().clone(), self.p, entries)
            })
            .collect()
    }

    /// `λ_U = Σ_{V ≥ U} κ_V`.
    pub fn lambda(&self, u: &UniMatrix) -> Result<LinComb<UniMatrix>> {
        Ok(LinComb::from_keys(self.upper_set(u)?))
    }

    /// `κ_U = Σ_{V ≥ U} (-1)^{|supp V| - |supp U|} λ_V`, keys read as `λ`.
    pub fn kappa_in_lambda(&self, u: &UniMatrix) -> Result<LinComb<UniMatrix>> {
        let base = u.nonzero_entries().len();
        let mut out = LinComb::zero();
        for v in self.upper_set(u)? {
            // [U, V] is Boolean on supp V \ supp U.
            let extra = v.nonzero_entries().len() - base;
            let sign = if extra % 2 == 0 { 1 } else { -1 };
            out.add_term(v, Rational::from_integer(sign.into()));
        }
        Ok(out)
    }

    pub fn lambda_to_kappa(&self, x: &LinComb<UniMatrix>) -> Result<LinComb<UniMatrix>> {
        x.map_linear(|u| self.lambda(u))
    }

    pub fn kappa_to_lambda(&self, x: &LinComb<UniMatrix>) -> Result<LinComb<UniMatrix>> {
        x.map_linear(|u| self.kappa_in_lambda(u))
    }
}

impl HopfMonoid for Functions {
    type Key = UniMatrix;

    fn name(&self) -> String {
        format!("fU(p={})", self.p)
    }

    fn basis(&self, ground: Ground) -> Result<Vec<UniMatrix>> {
        let mut out = Vec::new();
        for order in LinearOrder::all(ground) {
            out.extend(UniMatrix::all(&order, self.p)?);
        }
        Ok(out)
    }

    /// Every `U` on `ℓ₁·ℓ₂` with `U_{S₁} = U₁` and `U_{S₂} = U₂`: the cross
    /// block is filled freely.
    fn product(&self, a: &UniMatrix, b: &UniMatrix) -> Result<LinComb<UniMatrix>> {
        self.check(a)?;
        self.check(b)?;
        Ok(LinComb::from_keys(UniMatrix::extensions(a, b)?))
    }

    fn coproduct(&self, x: &UniMatrix, left: Ground, right: Ground) -> Result<LinComb<(UniMatrix, UniMatrix)>> {
        self.check(x)?;
        if !x.splits_along(left) {
            return Ok(LinComb::zero());
        }
        Ok(LinComb::basis((x.principal_minor(left)?, x.principal_minor(right)?)))
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
        let n = ground.len();
        let fact: usize = (1..=n).product();
        Ok(fact * (self.p as usize).pow((n * n.saturating_sub(1) / 2) as u32))
    }
}

/// Matrices whose graph `g(U)` is connected, as generators of `f(U)` in
/// the `λ` basis.
#[derive(Clone, Copy, Debug)]
pub struct ConnectedMatrices {
    pub p: u32,
}

impl Generators for ConnectedMatrices {
    type Key = UniMatrix;

    fn name(&self) -> String {
        format!("connected lambda_U (p={})", self.p)
    }

    fn generators(&self, ground: Ground) -> Result<Vec<UniMatrix>> {
        Ok(Functions::new(self.p)?
            .basis(ground)?
            .into_iter()
            .filter(|u| u.graph_of().is_connected())
            .collect())
    }
}

/// Matrices admitting no proper nonempty initial `ℓ`-segment `S` with
/// `U = U_S ⊕ U_{S^c}`; every connected `g(U)` qualifies, but so does e.g.
/// `ℓ = abcd` with edges `{a,d}` and `{b,c}`.
#[derive(Clone, Copy, Debug)]
pub struct GraphAtomicMatrices {
    pub p: u32,
}

/// `U` does not split along any proper nonempty initial segment of its order.
pub fn is_graph_atomic(u: &UniMatrix) -> bool {
    let seq = u.order().as_slice();
    if seq.is_empty() {
        return false;
    }
    let mut prefix = Ground::EMPTY;
    for &l in &seq[..seq.len() - 1] {
        prefix = prefix.union(Ground::singleton(l));
        if u.splits_along(prefix) {
            return false;
        }
    }
    true
}

impl Generators for GraphAtomicMatrices {
    type Key = UniMatrix;

    fn name(&self) -> String {
        format!("segment-atomic lambda_U (p={})", self.p)
    }

    fn generators(&self, ground: Ground) -> Result<Vec<UniMatrix>> {
        Ok(Functions::new(self.p)?.basis(ground)?.into_iter().filter(is_graph_atomic).collect())
    }
}

/// Embedding of a `λ_U` generator into `f(U)` on the `κ` basis.
pub fn lambda_generator(f: &Functions) -> impl Fn(&UniMatrix) -> Result<LinComb<UniMatrix>> + '_ {
    move |u| {
        if u.ground().is_empty() {
            return Err(Error::EmptyGenerator);
        }
        f.lambda(u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{check_hopf_axioms, HopfExt};

    fn lo(v: &[u8]) -> LinearOrder {
        LinearOrder::new(v.to_vec()).unwrap()
    }

    #[test]
    fn two_extensions_over_f2() {
        let f = Functions::new(2).unwrap();
        let a = UniMatrix::identity(lo(&[0]), 2).unwrap();
        let b = UniMatrix::identity(lo(&[1]), 2).unwrap();
        let prod = f.product(&a, &b).unwrap();
        let id = UniMatrix::identity(lo(&[0, 1]), 2).unwrap();
        let e = UniMatrix::from_entries(lo(&[0, 1]), 2, [(0, 1, 1)]).unwrap();
        assert_eq!(prod, LinComb::from_keys([id, e.clone()]));
        assert!(f.coproduct(&e, Ground::singleton(0), Ground::singleton(1)).unwrap().is_zero());
    }

    #[test]
    fn lambda_products_are_direct_sums() {
        let f = Functions::new(3).unwrap();
        let u = UniMatrix::from_entries(lo(&[2, 0]), 3, [(2, 0, 2)]).unwrap();
        let v = UniMatrix::identity(lo(&[1]), 3).unwrap();
        let lhs = f.mul(&f.lambda(&u).unwrap(), &f.lambda(&v).unwrap()).unwrap();
        let rhs = f.lambda(&UniMatrix::concat_sum(&u, &v).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn lambda_kappa_inverse() {
        let f = Functions::new(2).unwrap();
        for u in f.basis(Ground::standard(3)).unwrap() {
            let k = LinComb::basis(u.clone());
            assert_eq!(f.lambda_to_kappa(&f.kappa_to_lambda(&k).unwrap()).unwrap(), k);
            assert_eq!(f.kappa_to_lambda(&f.lambda_to_kappa(&k).unwrap()).unwrap(), k);
        }
    }

    #[test]
    fn graph_atomic_but_disconnected() {
        let u = UniMatrix::from_entries(lo(&[0, 1, 2, 3]), 2, [(0, 3, 1), (1, 2, 1)]).unwrap();
        assert!(is_graph_atomic(&u));
        assert!(!u.graph_of().is_connected());
    }

    #[test]
    fn axioms() {
        let r = check_hopf_axioms(&Functions::new(2).unwrap(), 3).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        assert!(r.cocommutative && !r.commutative);
    }
}
