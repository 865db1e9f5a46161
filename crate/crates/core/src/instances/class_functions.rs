use crate::error::{Error, Result};
use crate::hopf::{HopfMonoid, LinComb};
use crate::ordered::{concat_orders, restrict_order, Ground, LinearOrder, Relabel, Relabeling, SpeciesKey};
use crate::unitriangular::{check_prime, Census, CensusStore, UniMatrix};
use std::fmt;
use std::sync::Arc;

/// A conjugacy class of `U(I, ℓ)`: the order together with the census id
/// of the class of the standard-order transport of its members.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassKey {
    pub order: LinearOrder,
    pub class: u32,
}

impl fmt::Debug for ClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.order, self.class)
    }
}

impl Relabel for ClassKey {
    fn relabel(&self, sigma: &Relabeling) -> Result<Self> {
        Ok(Self { order: self.order.relabel(sigma)?, class: self.class })
    }
}

impl SpeciesKey for ClassKey {
    fn ground(&self) -> Ground {
        self.order.ground()
    }
}

/// Class functions on unitriangular matrices over `F_p`, on the basis of
/// class indicators `κ_C`. Class data come from a shared census store.
#[derive(Clone, Debug)]
pub struct ClassFunctions {
    p: u32,
    store: Arc<CensusStore>,
}

impl ClassFunctions {
    pub fn new(p: u32, store: Arc<CensusStore>) -> Result<Self> {
        check_prime(p)?;
        Ok(Self { p, store })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn store(&self) -> &Arc<CensusStore> {
        &self.store
    }

    pub fn census(&self, n: usize) -> Result<Arc<Census>> {
        self.store.get(n, self.p)
    }

    /// The class containing `u`.
    pub fn class_of(&self, u: &UniMatrix) -> Result<ClassKey> {
        if u.p() != self.p {
            return Err(Error::ModulusMismatch(u.p(), self.p));
        }
        let class = self.census(u.n())?.class_of(u)?;
        Ok(ClassKey { order: u.order().clone(), class })
    }

    /// The census representative of the class, on the key's order.
    pub fn representative(&self, c: &ClassKey) -> Result<UniMatrix> {
        self.census(c.order.len())?.element(c.class).with_order(c.order.clone())
    }

    /// `κ_C = Σ_{U ∈ C} κ_U` in `f(U)`.
    pub fn expand(&self, c: &ClassKey) -> Result<LinComb<UniMatrix>> {
        let census = self.census(c.order.len())?;
        let members = census.class_members(c.class);
        members
            .iter()
            .map(|&i| census.element(i).with_order(c.order.clone()))
            .collect::<Result<Vec<_>>>()
            .map(LinComb::from_keys)
    }
}

impl HopfMonoid for ClassFunctions {
    type Key = ClassKey;

    fn name(&self) -> String {
        format!("cfU(p={})", self.p)
    }

    fn basis(&self, ground: Ground) -> Result<Vec<ClassKey>> {
        let census = self.census(ground.len())?;
        let mut out = Vec::new();
        for order in LinearOrder::all(ground) {
            out.extend(census.class_reps().iter().map(|&class| ClassKey { order: order.clone(), class }));
        }
        Ok(out)
    }

    /// Classes of `U(I, ℓ₁·ℓ₂)` whose principal minors on `S₁` and `S₂`
    /// lie in `C₁` and `C₂`.
    fn product(&self, a: &ClassKey, b: &ClassKey) -> Result<LinComb<ClassKey>> {
        let order = concat_orders(&a.order, &b.order)?;
        let (ca, cb, c) = (self.census(a.order.len())?, self.census(b.order.len())?, self.census(order.len())?);
        let mut out = Vec::new();
        for &class in c.class_reps() {
            let rep = c.element(class).with_order(order.clone())?;
            if ca.class_of(&rep.principal_minor(a.ground())?)? == a.class
                && cb.class_of(&rep.principal_minor(b.ground())?)? == b.class
            {
                out.push(ClassKey { order: order.clone(), class });
            }
        }
        Ok(LinComb::from_keys(out))
    }

    /// Pairs of classes whose direct sum lies in the class.
    fn coproduct(&self, x: &ClassKey, left: Ground, right: Ground) -> Result<LinComb<(ClassKey, ClassKey)>> {
        let (o1, o2) = (restrict_order(&x.order, left)?, restrict_order(&x.order, right)?);
        let (c1, c2, c) = (self.census(o1.len())?, self.census(o2.len())?, self.census(x.order.len())?);
        let mut out = Vec::new();
        for &k1 in c1.class_reps() {
            let u1 = c1.element(k1).with_order(o1.clone())?;
            for &k2 in c2.class_reps() {
                let u2 = c2.element(k2).with_order(o2.clone())?;
                if c.class_of(&UniMatrix::direct_sum(&u1, &u2, &x.order)?)? == x.class {
                    out.push((ClassKey { order: o1.clone(), class: k1 }, ClassKey { order: o2.clone(), class: k2 }));
                }
            }
        }
        Ok(LinComb::from_keys(out))
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
        Ok((1..=n).product::<usize>() * self.census(n)?.class_count())
    }
}
