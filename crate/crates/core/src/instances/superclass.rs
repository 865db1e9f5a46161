use crate::combinatorics::{diagram_leq, ArcDiagram};
use crate::error::{Error, Result};
use crate::hopf::{Generators, HopfMonoid, LinComb};
use crate::ordered::{Ground, LinearOrder};
use crate::unitriangular::check_prime;

/// Superclass functions on unitriangular matrices over `F_p`, on the basis
/// of superclass indicators `κ_{X,α}` keyed by arc diagrams. Needs no
/// census: products are labeled quasi-shuffles.
#[derive(Clone, Copy, Debug)]
pub struct SuperclassFunctions {
    p: u32,
}

impl SuperclassFunctions {
    pub fn new(p: u32) -> Result<Self> {
        check_prime(p)?;
        Ok(Self { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    fn check(&self, d: &ArcDiagram) -> Result<()> {
        if d.p() != self.p {
            return Err(Error::ModulusMismatch(d.p(), self.p));
        }
        Ok(())
    }

    /// Diagrams on the same order above `d`.
    pub fn upper_set(&self, d: &ArcDiagram) -> Result<Vec<ArcDiagram>> {
        self.check(d)?;
        let mut out = Vec::new();
        for e in ArcDiagram::all(d.order(), self.p)? {
            if diagram_leq(d, &e)? {
                out.push(e);
            }
        }
        Ok(out)
    }

    /// `λ_{X,α} = Σ_{(X,α) ≤ (Y,β)} κ_{Y,β}`.
    pub fn lambda(&self, d: &ArcDiagram) -> Result<LinComb<ArcDiagram>> {
        Ok(LinComb::from_keys(self.upper_set(d)?))
    }

    /// `κ_D` in the `λ` basis, by back substitution down the upper set.
    pub fn kappa_in_lambda(&self, d: &ArcDiagram) -> Result<LinComb<ArcDiagram>> {
        let mut up = self.upper_set(d)?;
        up.sort_by_key(|e| std::cmp::Reverse(e.arc_count()));
        let mut solved: Vec<(ArcDiagram, LinComb<ArcDiagram>)> = Vec::with_capacity(up.len());
        for e in up {
            // κ_E = λ_E - Σ_{F > E} κ_F
            let mut k = LinComb::basis(e.clone());
            for (f, kf) in &solved {
                if f != &e && diagram_leq(&e, f)? {
                    k = k.sub(kf);
                }
            }
            solved.push((e, k));
        }
        Ok(solved.pop().map(|(_, k)| k).expect("d is in its own upper set"))
    }

    pub fn lambda_to_kappa(&self, x: &LinComb<ArcDiagram>) -> Result<LinComb<ArcDiagram>> {
        x.map_linear(|d| self.lambda(d))
    }

    pub fn kappa_to_lambda(&self, x: &LinComb<ArcDiagram>) -> Result<LinComb<ArcDiagram>> {
        x.map_linear(|d| self.kappa_in_lambda(d))
    }
}

impl HopfMonoid for SuperclassFunctions {
    type Key = ArcDiagram;

    fn name(&self) -> String {
        format!("scfU(p={})", self.p)
    }

    fn basis(&self, ground: Ground) -> Result<Vec<ArcDiagram>> {
        let mut out = Vec::new();
        for order in LinearOrder::all(ground) {
            out.extend(ArcDiagram::all(&order, self.p)?);
        }
        Ok(out)
    }

    fn product(&self, a: &ArcDiagram, b: &ArcDiagram) -> Result<LinComb<ArcDiagram>> {
        self.check(a)?;
        self.check(b)?;
        let mut out = Vec::new();
        for d in a.labeled_quasi_shuffles(b)? {
            if &d.restrict(a.ground())? == a && &d.restrict(b.ground())? == b {
                out.push(d);
            }
        }
        Ok(LinComb::from_keys(out))
    }

    fn coproduct(&self, x: &ArcDiagram, left: Ground, right: Ground) -> Result<LinComb<(ArcDiagram, ArcDiagram)>> {
        self.check(x)?;
        if !x.partition().is_union_of_blocks(left) {
            return Ok(LinComb::zero());
        }
        Ok(LinComb::basis((x.restrict(left)?, x.restrict(right)?)))
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
}

/// Atomic arc diagrams, as generators of `scf(U)` in the `λ` basis.
#[derive(Clone, Copy, Debug)]
pub struct AtomicDiagrams {
    pub p: u32,
}

impl Generators for AtomicDiagrams {
    type Key = ArcDiagram;

    fn name(&self) -> String {
        format!("atomic lambda (p={})", self.p)
    }

    fn generators(&self, ground: Ground) -> Result<Vec<ArcDiagram>> {
        Ok(SuperclassFunctions::new(self.p)?
            .basis(ground)?
            .into_iter()
            .filter(ArcDiagram::is_atomic)
            .collect())
    }
}

/// Embedding of a `λ` generator into `scf(U)` on the `κ` basis.
pub fn lambda_diagram(s: &SuperclassFunctions) -> impl Fn(&ArcDiagram) -> Result<LinComb<ArcDiagram>> + '_ {
    move |d| {
        if d.ground().is_empty() {
            return Err(Error::EmptyGenerator);
        }
        s.lambda(d)
    }
}

/// Number of arc diagrams on one order of `n` elements: `Σ_X (p-1)^{arcs}`.
pub fn diagram_count(n: usize, p: u32) -> Result<usize> {
    Ok(ArcDiagram::all(&LinearOrder::standard(n), p)?.len())
}

