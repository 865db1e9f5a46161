use super::{HopfExt, HopfMonoid, LinComb};
use crate::error::Result;
use crate::ordered::{enumerate_decompositions, Ground, Relabel, Relabeling};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// One failed instance of an axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: &'static str,
    pub ground: Ground,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on {}: {}", self.axiom, self.ground, self.detail)
    }
}

/// Outcome of [`check_hopf_axioms`].
#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub monoid: String,
    pub n_max: usize,
    /// Number of instances checked per axiom.
    pub checked: BTreeMap<&'static str, u64>,
    pub violation_count: u64,
    /// The first few violations, as witnesses.
    pub violations: Vec<Violation>,
    /// Observed over all checked instances.
    pub commutative: bool,
    pub cocommutative: bool,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }
}

const WITNESS_CAP: usize = 16;

struct Recorder {
    checked: BTreeMap<&'static str, u64>,
    count: u64,
    witnesses: Vec<Violation>,
}

impl Recorder {
    fn check(&mut self, axiom: &'static str, ok: bool, ground: Ground, detail: impl FnOnce() -> String) {
        *self.checked.entry(axiom).or_default() += 1;
        if !ok {
            self.count += 1;
            if self.witnesses.len() < WITNESS_CAP {
                self.witnesses.push(Violation { axiom, ground, detail: detail() });
            }
        }
    }
}

/// Relabelings used for the equivariance checks on `[n]`: reversal, and a
/// shift onto labels outside `[n]`.
fn test_relabelings(n: usize) -> Vec<Relabeling> {
    let rev = Relabeling::new((0..n as u8).map(|i| (i, n as u8 - 1 - i))).expect("bijection");
    let shift = Relabeling::new((0..n as u8).map(|i| (i, (2 * i + 7) % 64))).expect("bijection");
    vec![rev, shift]
}

fn relabel_lc<K: Relabel + Ord + Clone>(x: &LinComb<K>, s: &Relabeling) -> Result<LinComb<K>> {
    x.map_linear(|k| Ok(LinComb::basis(k.relabel(s)?)))
}

/// Checks associativity, coassociativity, compatibility, unit and counit
/// laws, connectedness, relabeling equivariance and the declared
/// (co)commutativity on every ground `{0..n-1}`, `n ≤ n_max`, over every
/// ordered decomposition (empty parts included) and every basis element.
pub fn check_hopf_axioms<H: HopfMonoid>(h: &H, n_max: usize) -> Result<AxiomReport> {
    let mut rec = Recorder { checked: BTreeMap::new(), count: 0, witnesses: Vec::new() };
    let mut commutative = true;
    let mut cocommutative = true;
    let mut bases: HashMap<Ground, Vec<H::Key>> = HashMap::new();
    let mut basis = |g: Ground| -> Result<Vec<H::Key>> {
        if let Some(b) = bases.get(&g) {
            return Ok(b.clone());
        }
        let b = h.basis(g)?;
        bases.insert(g, b.clone());
        Ok(b)
    };

    let empty = basis(Ground::EMPTY)?;
    rec.check("connected", empty.len() == 1, Ground::EMPTY, || format!("dim h[∅] = {}", empty.len()));
    if empty.len() != 1 {
        return Ok(finish(h, n_max, rec, false, false));
    }
    let unit = empty[0].clone();

    for n in 0..=n_max {
        let ground = Ground::standard(n);
        let top = basis(ground)?;
        let sigmas = test_relabelings(n);

        // Unit and counit.
        for x in &top {
            let lx = LinComb::basis(x.clone());
            let left = h.product(&unit, x)?;
            let right = h.product(x, &unit)?;
            rec.check("unit", left == lx && right == lx, ground, || format!("1·{x:?} = {left:?}, {x:?}·1 = {right:?}"));
            let d1 = h.coproduct(x, ground, Ground::EMPTY)?;
            let d2 = h.coproduct(x, Ground::EMPTY, ground)?;
            let ok = d1 == LinComb::basis((x.clone(), unit.clone())) && d2 == LinComb::basis((unit.clone(), x.clone()));
            rec.check("counit", ok, ground, || format!("Δ_(I,∅)({x:?}) = {d1:?}, Δ_(∅,I) = {d2:?}"));
        }

        // Two-part decompositions: commutativity, cocommutativity, equivariance.
        for d in enumerate_decompositions(ground, 2, false) {
            let (s1, s2) = (d.parts[0], d.parts[1]);
            let (b1, b2) = (basis(s1)?, basis(s2)?);
            for a in &b1 {
                for b in &b2 {
                    let ab = h.product(a, b)?;
                    let ba = h.product(b, a)?;
                    let comm = ab == ba;
                    commutative &= comm;
                    if h.is_commutative() {
                        rec.check("commutativity", comm, ground, || format!("{a:?}·{b:?} = {ab:?} but {b:?}·{a:?} = {ba:?}"));
                    }
                    for s in &sigmas {
                        let lhs = h.product(&a.relabel(s)?, &b.relabel(s)?)?;
                        let rhs = relabel_lc(&ab, s)?;
                        rec.check("equivariance", lhs == rhs, ground, || format!("product of {a:?}, {b:?} under {s:?}"));
                    }
                }
            }
            for x in &top {
                let fwd = h.coproduct(x, s1, s2)?;
                let back = h.coproduct(x, s2, s1)?;
                let swapped = back.map_keys(|(u, v)| (v.clone(), u.clone()));
                let cocomm = fwd == swapped;
                cocommutative &= cocomm;
                if h.is_cocommutative() {
                    rec.check("cocommutativity", cocomm, ground, || {
                        format!("Δ_({s1},{s2})({x:?}) = {fwd:?}, swapped Δ_({s2},{s1}) = {swapped:?}")
                    });
                }
                for s in &sigmas {
                    let lhs = h.coproduct(&x.relabel(s)?, s.apply_ground(s1)?, s.apply_ground(s2)?)?;
                    let rhs = fwd.map_linear(|(u, v)| Ok::<_, crate::Error>(LinComb::basis((u.relabel(s)?, v.relabel(s)?))))?;
                    rec.check("equivariance", lhs == rhs, ground, || format!("coproduct of {x:?} along ({s1},{s2}) under {s:?}"));
                }
            }
        }

        // Three-part decompositions: associativity and coassociativity.
        for d in enumerate_decompositions(ground, 3, false) {
            let (s1, s2, s3) = (d.parts[0], d.parts[1], d.parts[2]);
            let (b1, b2, b3) = (basis(s1)?, basis(s2)?, basis(s3)?);
            for a in &b1 {
                for b in &b2 {
                    let ab = h.product(a, b)?;
                    for c in &b3 {
                        let bc = h.product(b, c)?;
                        let lhs = h.mul(&ab, &LinComb::basis(c.clone()))?;
                        let rhs = h.mul(&LinComb::basis(a.clone()), &bc)?;
                        rec.check("associativity", lhs == rhs, ground, || format!("({a:?}·{b:?})·{c:?} = {lhs:?} vs {rhs:?}"));
                    }
                }
            }
            for x in &top {
                let mut lhs = LinComb::zero();
                for ((u, w), c) in h.coproduct(x, s1.union(s2), s3)?.iter() {
                    for ((u1, u2), e) in h.coproduct(u, s1, s2)?.iter() {
                        lhs.add_term((u1.clone(), u2.clone(), w.clone()), c * e);
                    }
                }
                let mut rhs = LinComb::zero();
                for ((u, w), c) in h.coproduct(x, s1, s2.union(s3))?.iter() {
                    for ((w1, w2), e) in h.coproduct(w, s2, s3)?.iter() {
                        rhs.add_term((u.clone(), w1.clone(), w2.clone()), c * e);
                    }
                }
                rec.check("coassociativity", lhs == rhs, ground, || format!("{x:?} along ({s1},{s2},{s3})"));
            }
        }

        // Compatibility: I = S1 ⊔ S2 = T1 ⊔ T2 with A = S1∩T1, B = S1∩T2,
        // C = S2∩T1, D = S2∩T2.
        for d in enumerate_decompositions(ground, 4, false) {
            let (a_, b_, c_, d_) = (d.parts[0], d.parts[1], d.parts[2], d.parts[3]);
            let (s1, s2) = (a_.union(b_), c_.union(d_));
            let (t1, t2) = (a_.union(c_), b_.union(d_));
            for a in &basis(s1)? {
                let da = h.coproduct(a, a_, b_)?;
                for b in &basis(s2)? {
                    let lhs = h.comul(&h.product(a, b)?, t1, t2)?;
                    let db = h.coproduct(b, c_, d_)?;
                    let mut rhs = LinComb::zero();
                    for ((a1, a2), x) in da.iter() {
                        for ((b1, b2), y) in db.iter() {
                            let left = h.product(a1, b1)?;
                            let right = h.product(a2, b2)?;
                            let coef = x * y;
                            for (l, u) in left.iter() {
                                for (r, v) in right.iter() {
                                    rhs.add_term((l.clone(), r.clone()), &coef * u * v);
                                }
                            }
                        }
                    }
                    rec.check("compatibility", lhs == rhs, ground, || {
                        format!("{a:?}, {b:?} with A={a_} B={b_} C={c_} D={d_}: {lhs:?} vs {rhs:?}")
                    });
                }
            }
        }
    }

    Ok(finish(h, n_max, rec, commutative, cocommutative))
}

fn finish<H: HopfMonoid>(h: &H, n_max: usize, rec: Recorder, commutative: bool, cocommutative: bool) -> AxiomReport {
    AxiomReport {
        monoid: h.name(),
        n_max,
        checked: rec.checked,
        violation_count: rec.count,
        violations: rec.witnesses,
        commutative,
        cocommutative,
    }
}
