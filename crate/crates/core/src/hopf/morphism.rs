use super::{HopfExt, HopfMonoid, LinComb, Violation};
use crate::algebra::linalg::sparse_rank;
use crate::error::Result;
use crate::ordered::{enumerate_decompositions, Ground, Relabel, Relabeling};
use std::collections::BTreeMap;

/// Outcome of [`check_morphism`].
#[derive(Clone, Debug)]
pub struct MorphismReport {
    pub name: String,
    pub n_max: usize,
    pub checked: BTreeMap<&'static str, u64>,
    pub violation_count: u64,
    pub violations: Vec<Violation>,
    /// Per `n`: (dim source, dim target, rank of the image), when ranks
    /// were requested.
    pub ranks: Vec<(usize, usize, usize)>,
}

impl MorphismReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    pub fn injective(&self) -> Option<bool> {
        (!self.ranks.is_empty()).then(|| self.ranks.iter().all(|&(s, _, r)| s == r))
    }

    pub fn bijective(&self) -> Option<bool> {
        (!self.ranks.is_empty()).then(|| self.ranks.iter().all(|&(s, t, r)| s == r && t == r))
    }
}

/// Checks that `f`, given on basis keys, commutes with products, coproducts
/// and relabeling on all grounds `{0..n-1}`, `n ≤ n_max`. With `ranks` the
/// rank of `f` on each component is recorded as well.
pub fn check_morphism<H, K, F>(name: &str, h: &H, k: &K, f: F, n_max: usize, ranks: bool) -> Result<MorphismReport>
where
    H: HopfMonoid,
    K: HopfMonoid,
    F: Fn(&H::Key) -> Result<LinComb<K::Key>>,
{
    let mut report = MorphismReport {
        name: name.to_string(),
        n_max,
        checked: BTreeMap::new(),
        violation_count: 0,
        violations: Vec::new(),
        ranks: Vec::new(),
    };
    let record = |rep: &mut MorphismReport, axiom: &'static str, ok: bool, ground: Ground, detail: &dyn Fn() -> String| {
        *rep.checked.entry(axiom).or_default() += 1;
        if !ok {
            rep.violation_count += 1;
            if rep.violations.len() < 16 {
                rep.violations.push(Violation { axiom, ground, detail: detail() });
            }
        }
    };
    let apply = |x: &LinComb<H::Key>| x.map_linear(&f);
    let apply2 = |x: &LinComb<(H::Key, H::Key)>| {
        x.map_linear(|(a, b)| Ok::<_, crate::Error>(super::tensor(&f(a)?, &f(b)?)))
    };

    for n in 0..=n_max {
        let ground = Ground::standard(n);
        let top = h.basis(ground)?;
        let sigma = Relabeling::new((0..n as u8).map(|i| (i, n as u8 - 1 - i)))?;
        for x in &top {
            let fx = f(x)?;
            let lhs = f(&x.relabel(&sigma)?)?;
            let rhs = fx.map_linear(|y| Ok::<_, crate::Error>(LinComb::basis(y.relabel(&sigma)?)))?;
            record(&mut report, "equivariance", lhs == rhs, ground, &|| format!("{x:?} under reversal"));
        }
        for d in enumerate_decompositions(ground, 2, false) {
            let (s, t) = (d.parts[0], d.parts[1]);
            let (bs, bt) = (h.basis(s)?, h.basis(t)?);
            for a in &bs {
                let fa = f(a)?;
                for b in &bt {
                    let lhs = apply(&h.product(a, b)?)?;
                    let rhs = k.mul(&fa, &f(b)?)?;
                    record(&mut report, "product", lhs == rhs, ground, &|| {
                        format!("f({a:?}·{b:?}) = {lhs:?} but f({a:?})·f({b:?}) = {rhs:?}")
                    });
                }
            }
            for x in &top {
                let lhs = k.comul(&f(x)?, s, t)?;
                let rhs = apply2(&h.coproduct(x, s, t)?)?;
                record(&mut report, "coproduct", lhs == rhs, ground, &|| {
                    format!("Δ_({s},{t}) f({x:?}) = {lhs:?} but (f⊗f)Δ = {rhs:?}")
                });
            }
        }
        if ranks {
            let rows: Vec<_> = top.iter().map(|x| Ok(f(x)?.into_terms())).collect::<Result<_>>()?;
            report.ranks.push((top.len(), k.dimension(ground)?, sparse_rank(&rows)));
        }
    }
    Ok(report)
}
