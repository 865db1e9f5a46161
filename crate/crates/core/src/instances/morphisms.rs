//! Maps between the instances, given on basis keys.

use super::{orders_graphs, orders_partitions, ClassFunctions, ClassKey, Functions, Orders, SuperclassFunctions};
use crate::combinatorics::{graphs_over, ArcDiagram, SetPartition, SimpleGraph};
use crate::error::{Error, Result};
use crate::algebra::Rational;
use crate::hopf::{check_morphism, HopfMonoid, LinComb, MorphismReport};
use crate::ordered::{Ground, LinearOrder};
use crate::unitriangular::{CensusStore, UniMatrix};
use std::collections::BTreeSet;
use std::sync::Arc;

/// `𝟏_ℓ`: the constant function one on `U(I, ℓ)`, in `f(U)`.
pub fn constant_in_f(order: &LinearOrder, p: u32) -> Result<LinComb<UniMatrix>> {
    Ok(LinComb::from_keys(UniMatrix::all(order, p)?))
}

/// `𝟏_ℓ` in `scf(U)`: every superclass of `U(I, ℓ)`.
pub fn constant_in_scf(order: &LinearOrder, p: u32) -> Result<LinComb<ArcDiagram>> {
    Ok(LinComb::from_keys(ArcDiagram::all(order, p)?))
}

/// `𝟏_ℓ` in `cf(U)`: every conjugacy class of `U(I, ℓ)`.
pub fn constant_in_cf(cf: &ClassFunctions, order: &LinearOrder) -> Result<LinComb<ClassKey>> {
    let census = cf.census(order.len())?;
    Ok(LinComb::from_keys(
        census.class_reps().iter().map(|&class| ClassKey { order: order.clone(), class }),
    ))
}

/// `κ_{X,α} = Σ_{U ∈ C_{X,α}} κ_U`, superclass membership from the census.
pub fn scf_to_f(store: &CensusStore, d: &ArcDiagram) -> Result<LinComb<UniMatrix>> {
    let census = store.get(d.order().len(), d.p())?;
    let sc = census.superclass_of(&d.to_matrix())?;
    census
        .superclass_members(sc)
        .iter()
        .map(|&i| census.element(i).with_order(d.order().clone()))
        .collect::<Result<Vec<_>>>()
        .map(LinComb::from_keys)
}

/// `κ_{X,α} = Σ_{C ⊆ C_{X,α}} κ_C`.
pub fn scf_to_cf(cf: &ClassFunctions, d: &ArcDiagram) -> Result<LinComb<ClassKey>> {
    if d.p() != cf.p() {
        return Err(Error::ModulusMismatch(d.p(), cf.p()));
    }
    let census = cf.census(d.order().len())?;
    let sc = census.superclass_of(&d.to_matrix())?;
    Ok(LinComb::from_keys(
        census
            .classes_in_superclass(sc)
            .iter()
            .map(|&class| ClassKey { order: d.order().clone(), class }),
    ))
}

/// `κ_C = Σ_{U ∈ C} κ_U`.
pub fn cf_to_f(cf: &ClassFunctions, c: &ClassKey) -> Result<LinComb<UniMatrix>> {
    cf.expand(c)
}

/// `φ(ℓ ⊗ m_g) = Σ_{g(U) = g} κ_U`: one matrix per choice of nonzero
/// values on the edges.
pub fn phi_graphs(p: u32, key: &(LinearOrder, SimpleGraph)) -> Result<LinComb<UniMatrix>> {
    let (order, g) = key;
    if order.ground() != g.ground() {
        return Err(Error::GroundMismatch(order.to_string(), g.to_string()));
    }
    let edges: Vec<(u8, u8)> = g
        .edges()
        .iter()
        .map(|&(a, b)| if order.less(a, b) { (a, b) } else { (b, a) })
        .collect();
    let q = p as u64 - 1;
    let mut out = Vec::new();
    for mut code in 0..q.pow(edges.len() as u32) {
        let entries = edges.iter().map(|&(i, j)| {
            let v = (code % q) as i64 + 1;
            code /= q;
            (i, j, v)
        });
        out.push(UniMatrix::from_entries(order.clone(), p, entries.collect::<Vec<_>>())?);
    }
    Ok(LinComb::from_keys(out))
}

/// `ψ(κ_U) = ℓ ⊗ m_{g(U)}`.
pub fn psi_graphs(u: &UniMatrix) -> LinComb<(LinearOrder, SimpleGraph)> {
    LinComb::basis((u.order().clone(), u.graph_of()))
}

/// `φ(ℓ ⊗ m_X) = Σ_α κ_{X,α}`.
pub fn phi_partitions(p: u32, key: &(LinearOrder, SetPartition)) -> Result<LinComb<ArcDiagram>> {
    Ok(LinComb::from_keys(ArcDiagram::labelings(&key.0, &key.1, p)?))
}

/// `ψ(κ_{X,α}) = ℓ ⊗ m_X`; inverse to [`phi_partitions`] over `F_2`.
pub fn psi_partitions(d: &ArcDiagram) -> LinComb<(LinearOrder, SetPartition)> {
    LinComb::basis((d.order().clone(), d.partition().clone()))
}

/// `ℓ ⊗ m_X ↦ ℓ ⊗ Σ_{g ∈ G(X, ℓ)} m_g`.
pub fn rel_model(key: &(LinearOrder, SetPartition)) -> Result<LinComb<(LinearOrder, SimpleGraph)>> {
    let (order, x) = key;
    Ok(LinComb::from_keys(graphs_over(x, order)?.into_iter().map(|g| (order.clone(), g))))
}

/// A basis element of `L × Π` on which the square
/// `φ ∘ rel_model = inclusion ∘ φ` fails, with the matrices in each side
/// only.
#[derive(Clone, Debug)]
pub struct SquareFailure {
    pub order: LinearOrder,
    pub partition: SetPartition,
    pub only_via_graphs: Vec<UniMatrix>,
    pub only_via_superclasses: Vec<UniMatrix>,
}

/// Outcome of [`check_rel_square`].
#[derive(Clone, Debug)]
pub struct SquareReport {
    pub p: u32,
    pub n_max: usize,
    pub checked: usize,
    pub failures: Vec<SquareFailure>,
}

impl SquareReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Expands both composites `L × Π → f(U)` to the `κ_U` basis on every
/// `ℓ ⊗ m_X` over `{0..n-1}`, `n ≤ n_max`, and compares.
pub fn check_rel_square(store: &CensusStore, p: u32, n_max: usize) -> Result<SquareReport> {
    let mut report = SquareReport { p, n_max, checked: 0, failures: Vec::new() };
    for n in 0..=n_max {
        let ground = Ground::standard(n);
        for order in LinearOrder::all(ground) {
            for x in SetPartition::all(ground) {
                let key = (order.clone(), x.clone());
                let via_graphs = rel_model(&key)?.map_linear(|k| phi_graphs(p, k))?;
                let via_scf = phi_partitions(p, &key)?.map_linear(|d| scf_to_f(store, d))?;
                report.checked += 1;
                if via_graphs != via_scf {
                    let a: BTreeSet<_> = via_graphs.keys().cloned().collect();
                    let b: BTreeSet<_> = via_scf.keys().cloned().collect();
                    report.failures.push(SquareFailure {
                        order: order.clone(),
                        partition: x,
                        only_via_graphs: a.difference(&b).cloned().collect(),
                        only_via_superclasses: b.difference(&a).cloned().collect(),
                    });
                }
            }
        }
    }
    Ok(report)
}

/// The membership criterion behind the square, on one matrix: whether `U`
/// lies in some superclass `C_{X,α}` (read from the census) and whether
/// `g(U) ∈ G(X, ℓ)`.
pub fn membership_criterion(store: &CensusStore, u: &UniMatrix, x: &SetPartition) -> Result<(bool, bool)> {
    let census = store.get(u.n(), u.p())?;
    let sc = census.superclass_of(u)?;
    let mut in_superclass = false;
    for d in ArcDiagram::labelings(u.order(), x, u.p())? {
        in_superclass |= census.superclass_of(&d.to_matrix())? == sc;
    }
    let in_model = graphs_over(x, u.order())?.contains(&u.graph_of());
    Ok((in_superclass, in_model))
}

/// One morphism check together with the rank expectation it must meet.
#[derive(Clone, Debug)]
pub struct SuiteEntry {
    pub report: MorphismReport,
    pub expect_injective: bool,
    pub expect_bijective: bool,
}

impl SuiteEntry {
    pub fn passed(&self) -> bool {
        self.report.passed()
            && (!self.expect_injective || self.report.injective() == Some(true))
            && (!self.expect_bijective || self.report.bijective() == Some(true))
    }
}

/// `ψ ∘ φ` applied to one basis element that did not come back as the
/// expected multiple of itself.
#[derive(Clone, Debug)]
pub struct ScalingFailure {
    pub element: String,
    pub expected: Rational,
    pub got: String,
}

/// Every morphism between the instances at one prime, plus the
/// `ψ ∘ φ` scalings and the rel-model square.
#[derive(Clone, Debug)]
pub struct MorphismSuite {
    pub p: u32,
    pub n_max: usize,
    pub entries: Vec<SuiteEntry>,
    pub scaling_checked: usize,
    pub scaling_failures: Vec<ScalingFailure>,
    pub square: SquareReport,
}

impl MorphismSuite {
    pub fn morphisms_passed(&self) -> bool {
        self.entries.iter().all(SuiteEntry::passed)
    }

    pub fn passed(&self) -> bool {
        self.morphisms_passed() && self.scaling_failures.is_empty() && self.square.passed()
    }
}

fn power(base: u32, e: usize) -> Rational {
    Rational::from_integer((base as i64).pow(e as u32).into())
}

/// `ψ(φ(x)) = (q - 1)^{e(x)} x` on every basis element of `h` up to `n_max`.
fn check_scaling<H, K, F, G, W>(
    h: &H,
    phi: F,
    psi: G,
    weight: W,
    p: u32,
    n_max: usize,
    out: &mut (usize, Vec<ScalingFailure>),
) -> Result<()>
where
    H: HopfMonoid,
    K: Ord + Clone,
    F: Fn(&H::Key) -> Result<LinComb<K>>,
    G: Fn(&K) -> LinComb<H::Key>,
    W: Fn(&H::Key) -> usize,
{
    for n in 0..=n_max {
        for x in h.basis(Ground::standard(n))? {
            let got = phi(&x)?.map_linear(|k| Ok::<_, Error>(psi(k)))?;
            let expected = power(p - 1, weight(&x));
            out.0 += 1;
            if got != LinComb::term(x.clone(), expected.clone()) {
                out.1.push(ScalingFailure { element: format!("{x:?}"), expected, got: format!("{got:?}") });
            }
        }
    }
    Ok(())
}

/// Runs the whole morphism suite exhaustively on grounds `{0..n-1}`,
/// `n ≤ n_max`. At `p = 2` the `φ`s and `ψ`s must also be bijective.
pub fn morphism_suite(store: &Arc<CensusStore>, p: u32, n_max: usize) -> Result<MorphismSuite> {
    let f = Functions::new(p)?;
    let scf = SuperclassFunctions::new(p)?;
    let cf = ClassFunctions::new(p, store.clone())?;
    let lg = orders_graphs();
    let lp = orders_partitions();
    let bij = p == 2;
    let entry = |report, expect_injective, expect_bijective| SuiteEntry { report, expect_injective, expect_bijective };
    let mut entries = vec![
        entry(check_morphism("1_l: L -> f(U)", &Orders, &f, |l| constant_in_f(l, p), n_max, true)?, true, false),
        entry(check_morphism("1_l: L -> scf(U)", &Orders, &scf, |l| constant_in_scf(l, p), n_max, true)?, true, false),
        entry(check_morphism("1_l: L -> cf(U)", &Orders, &cf, |l| constant_in_cf(&cf, l), n_max, true)?, true, false),
        entry(check_morphism("scf(U) -> cf(U)", &scf, &cf, |d| scf_to_cf(&cf, d), n_max, true)?, true, false),
        entry(check_morphism("cf(U) -> f(U)", &cf, &f, |c| cf_to_f(&cf, c), n_max, true)?, true, false),
        entry(check_morphism("scf(U) -> f(U)", &scf, &f, |d| scf_to_f(store, d), n_max, true)?, true, false),
        entry(check_morphism("phi: LxG -> f(U)", &lg, &f, |k| phi_graphs(p, k), n_max, true)?, true, bij),
        entry(check_morphism("phi: LxPi -> scf(U)", &lp, &scf, |k| phi_partitions(p, k), n_max, true)?, true, bij),
        entry(check_morphism("rel: LxPi -> LxG", &lp, &lg, rel_model, n_max, true)?, true, false),
    ];
    // Away from F_2 the ψ's only satisfy the scaling identity; they are
    // not multiplicative.
    if bij {
        entries.push(entry(check_morphism("psi: f(U) -> LxG", &f, &lg, |u| Ok(psi_graphs(u)), n_max, true)?, true, true));
        entries.push(entry(
            check_morphism("psi: scf(U) -> LxPi", &scf, &lp, |d| Ok(psi_partitions(d)), n_max, true)?,
            true,
            true,
        ));
    }
    let mut scaling = (0, Vec::new());
    check_scaling(&lg, |k| phi_graphs(p, k), psi_graphs, |(_, g)| g.edge_count(), p, n_max, &mut scaling)?;
    check_scaling(
        &lp,
        |k| phi_partitions(p, k),
        psi_partitions,
        |(_, x)| x.blocks().iter().map(|b| b.len() - 1).sum(),
        p,
        n_max,
        &mut scaling,
    )?;
    Ok(MorphismSuite {
        p,
        n_max,
        entries,
        scaling_checked: scaling.0,
        scaling_failures: scaling.1,
        square: check_rel_square(store, p, n_max)?,
    })
}
