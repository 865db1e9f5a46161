//! Counting sequences attached to the monoids: Bell and atomic numbers,
//! class counts `k_n(q)`, the sequence `c_n(q)`, the two families of linear
//! inequalities and polynomial fits in `t = q - 1`.

use crate::algebra::{interpolate_poly, series_invert, to_integer, IntPoly, Rational, TruncSeries};
use crate::combinatorics::{is_atomic, SetPartition};
use crate::error::{Error, Result};
use crate::instances::diagram_count;
use crate::ordered::{Ground, LinearOrder};
use crate::unitriangular::CensusStore;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Above this size Bell numbers come from the recurrence only.
const ENUMERATION_LIMIT: usize = 8;

/// `B_0..B_N` and `A_0..A_N` (with `A_0 = 0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BellAtomic {
    pub bell: Vec<BigInt>,
    pub atomic: Vec<BigInt>,
}

fn bell_recurrence(order: usize) -> Vec<BigInt> {
    // Bell triangle.
    let mut out = vec![BigInt::one()];
    let mut row = vec![BigInt::one()];
    for _ in 0..order {
        let mut next = vec![row.last().expect("nonempty").clone()];
        for x in &row {
            let v = next.last().expect("nonempty") + x;
            next.push(v);
        }
        out.push(next[0].clone());
        row = next;
    }
    out
}

/// Atomic partitions of `{0..n-1}` under the standard order.
pub fn atomic_count(n: usize) -> Result<usize> {
    let order = LinearOrder::standard(n);
    let mut count = 0;
    for x in SetPartition::all(Ground::standard(n)) {
        if is_atomic(&x, &order)? {
            count += 1;
        }
    }
    Ok(count)
}

fn to_rational_series(v: &[BigInt]) -> Result<TruncSeries<Rational>> {
    TruncSeries::new(v.iter().map(|x| Rational::from_integer(x.clone())).collect(), v.len() - 1)
}

fn integers(v: &[Rational]) -> Result<Vec<BigInt>> {
    v.iter().map(|c| to_integer(c).ok_or_else(|| Error::NonInteger(c.to_string()))).collect()
}

/// `1 - 1/s` for a series with constant term 1.
fn inverse_complement(s: &[BigInt]) -> Result<Vec<BigInt>> {
    let inv = series_invert(&to_rational_series(s)?)?;
    let mut out = integers(&inv.one_minus().into_coeffs())?;
    out[0] = BigInt::zero();
    Ok(out)
}

/// Bell numbers by enumeration (up to size 8) and by the Bell triangle, and
/// atomic counts by enumeration and by inverting the Bell series. Any
/// disagreement is an error.
pub fn bell_and_atomic(order: usize) -> Result<BellAtomic> {
    let bell = bell_recurrence(order);
    for (n, b) in bell.iter().enumerate().take(ENUMERATION_LIMIT.min(order) + 1) {
        let counted = SetPartition::all(Ground::standard(n)).len();
        if BigInt::from(counted) != *b {
            return Err(Error::Inconsistent(format!("B_{n}"), format!("{counted} vs {b}")));
        }
    }
    let atomic = inverse_complement(&bell)?;
    for (n, a) in atomic.iter().enumerate().take(ENUMERATION_LIMIT.min(order) + 1).skip(1) {
        let counted = atomic_count(n)?;
        if BigInt::from(counted) != *a {
            return Err(Error::Inconsistent(format!("A_{n}"), format!("{counted} vs {a}")));
        }
    }
    Ok(BellAtomic { bell, atomic })
}

/// Class and superclass counts of `U_n(F_p)`, `n = 0..=n_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub p: u32,
    /// `k_n(p)` from the census.
    pub classes: Vec<BigInt>,
    /// Superclass counts from the census, equal to `Σ_X (p-1)^{arcs}`.
    pub superclasses: Vec<BigInt>,
}

/// Reads class counts from censuses and cross-checks superclass counts
/// against the arc-diagram count.
pub fn class_counts(store: &CensusStore, p: u32, n_max: usize) -> Result<CountTable> {
    let mut classes = Vec::new();
    let mut superclasses = Vec::new();
    for n in 0..=n_max {
        let census = store.get(n, p)?;
        let diagrams = diagram_count(n, p)?;
        if census.superclass_count() != diagrams {
            return Err(Error::Inconsistent(
                format!("superclasses of U_{n}(F_{p})"),
                format!("census {} vs arc diagrams {diagrams}", census.superclass_count()),
            ));
        }
        classes.push(BigInt::from(census.class_count()));
        superclasses.push(BigInt::from(diagrams));
    }
    Ok(CountTable { p, classes, superclasses })
}

/// `c_n` from `Σ k_n x^n = 1 / (1 - Σ c_n x^n)`; entry 0 is 0. Needs
/// `k_0 = 1`; a non-integer coefficient is an error.
pub fn c_sequence(k: &[BigInt]) -> Result<Vec<BigInt>> {
    match k.first() {
        Some(k0) if k0.is_one() => inverse_complement(k),
        Some(k0) => Err(Error::NonUnit(k0.to_string())),
        None => Err(Error::Invalid("empty k sequence".into())),
    }
}

/// The `k` series determined by a `c` sequence (entry 0 ignored).
pub fn k_from_c(c: &[BigInt]) -> Result<Vec<BigInt>> {
    let mut s = c.to_vec();
    s[0] = BigInt::zero();
    let denom = to_rational_series(&s)?.one_minus();
    integers(&series_invert(&denom)?.into_coeffs())
}

/// One row `lhs ≥ rhs` of an inequality family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalityRow {
    pub n: usize,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

impl InequalityRow {
    pub fn margin(&self) -> BigInt {
        &self.lhs - &self.rhs
    }

    pub fn holds(&self) -> bool {
        !self.margin().is_negative()
    }
}

/// `k_n ≥ Σ_{i<n} A_{n-i} k_i` for `1 ≤ n < k.len()`.
pub fn counting_inequality(k: &[BigInt], atomic: &[BigInt]) -> Result<Vec<InequalityRow>> {
    if atomic.len() < k.len() {
        return Err(Error::TruncationMismatch(atomic.len(), k.len()));
    }
    Ok((1..k.len())
        .map(|n| InequalityRow {
            n,
            lhs: k[n].clone(),
            rhs: (0..n).map(|i| &atomic[n - i] * &k[i]).sum(),
        })
        .collect())
}

/// The coefficients `A_n, …, A_1` multiplying `k_0, …, k_{n-1}`.
pub fn counting_coefficients(n: usize, atomic: &[BigInt]) -> Vec<BigInt> {
    (0..n).map(|i| atomic[n - i].clone()).collect()
}

/// `q^{C(n,2)} ≥ Σ_{i=1}^{n} q^{C(n-i,2)} c_i` for `1 ≤ n < c.len()`.
pub fn counting2(q: u32, c: &[BigInt]) -> Vec<InequalityRow> {
    let pow = |m: usize| BigInt::from(q).pow((m * m.saturating_sub(1) / 2) as u32);
    (1..c.len())
        .map(|n| InequalityRow { n, lhs: pow(n), rhs: (1..=n).map(|i| pow(n - i) * &c[i]).sum() })
        .collect()
}

/// Both inequality families at one prime.
#[derive(Clone, Debug)]
pub struct InequalityReport {
    pub p: u32,
    pub counting: Vec<InequalityRow>,
    pub counting2: Vec<InequalityRow>,
}

impl InequalityReport {
    pub fn passed(&self) -> bool {
        self.counting.iter().chain(&self.counting2).all(InequalityRow::holds)
    }
}

pub fn check_inequalities(store: &CensusStore, p: u32, n_max: usize) -> Result<InequalityReport> {
    let table = class_counts(store, p, n_max)?;
    let ba = bell_and_atomic(n_max)?;
    let c = c_sequence(&table.classes)?;
    Ok(InequalityReport {
        p,
        counting: counting_inequality(&table.classes, &ba.atomic)?,
        counting2: counting2(p, &c),
    })
}

/// The polynomials `c_1..c_6` in `t = q - 1` from the published table.
pub fn published_c_table() -> Vec<IntPoly> {
    vec![
        IntPoly::from_i64(&[1]),
        IntPoly::from_i64(&[0, 1]),
        IntPoly::from_i64(&[0, 1, 1]),
        IntPoly::from_i64(&[0, 1, 4, 2]),
        IntPoly::from_i64(&[0, 1, 9, 14, 5]),
        IntPoly::from_i64(&[0, 1, 16, 54, 55, 18, 1]),
    ]
}

/// `c_n(q)` interpolated in `t = q - 1` over a set of primes.
#[derive(Clone, Debug)]
pub struct ConjectureFit {
    pub n: usize,
    /// `(q, c_n(q))` per prime.
    pub points: Vec<(u32, BigInt)>,
    pub poly: IntPoly,
    pub nonnegative: bool,
    /// Agreement with the published table, when it covers `n`.
    pub matches_table: Option<bool>,
}

/// Interpolates `c_n` through the given primes with degree bound
/// `#primes - 1`. Non-integer coefficients and missing points are errors;
/// negative coefficients are reported in the result.
pub fn fit_conjecture(store: &CensusStore, n: usize, primes: &[u32]) -> Result<ConjectureFit> {
    if n == 0 {
        return Err(Error::Invalid("c_n is defined for n ≥ 1".into()));
    }
    let mut points = Vec::new();
    for &q in primes {
        let table = class_counts(store, q, n)?;
        let c = c_sequence(&table.classes)?;
        points.push((q, c[n].clone()));
    }
    let bound = primes.len().saturating_sub(1);
    let rational_points: Vec<(Rational, Rational)> = points
        .iter()
        .map(|(q, c)| (Rational::from_integer(BigInt::from(*q) - 1), Rational::from_integer(c.clone())))
        .collect();
    let poly = interpolate_poly(&rational_points, bound)?;
    let matches_table = published_c_table().get(n - 1).map(|t| *t == poly);
    Ok(ConjectureFit { n, points, nonnegative: poly.has_nonnegative_coeffs(), poly, matches_table })
}

/// The quotient of two type series and whether every coefficient is a
/// nonnegative integer.
#[derive(Clone, Debug)]
pub struct QuotientReport {
    pub coeffs: Vec<Rational>,
    /// Indices of coefficients that are negative or non-integral.
    pub violations: Vec<usize>,
}

impl QuotientReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn lagrange_quotient_check(num: &TruncSeries<BigInt>, den: &TruncSeries<BigInt>) -> Result<QuotientReport> {
    let q = to_rational_series(num.coeffs())?.div(&to_rational_series(den.coeffs())?)?;
    let coeffs = q.into_coeffs();
    let violations = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_integer() || c.is_negative())
        .map(|(i, _)| i)
        .collect();
    Ok(QuotientReport { coeffs, violations })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn bell_and_atomic_values() {
        let ba = bell_and_atomic(8).unwrap();
        assert_eq!(ba.bell[..7], ints(&[1, 1, 2, 5, 15, 52, 203])[..]);
        assert_eq!(ba.atomic[1..7], ints(&[1, 1, 2, 6, 22, 92])[..]);
        assert_eq!(bell_and_atomic(12).unwrap().bell[12], BigInt::from(4213597));
    }

    #[test]
    fn c_and_k_are_inverse() {
        let k = ints(&[1, 1, 2, 5, 16, 61, 275]);
        let c = c_sequence(&k).unwrap();
        assert_eq!(c, ints(&[0, 1, 1, 2, 7, 29, 145]));
        assert_eq!(k_from_c(&c).unwrap(), k);
        assert!(matches!(c_sequence(&ints(&[2, 1])), Err(Error::NonUnit(_))));
    }

    #[test]
    fn published_table_at_t_equals_one() {
        let at1: Vec<BigInt> = published_c_table().iter().map(|p| p.eval_int(&BigInt::one())).collect();
        assert_eq!(at1, ints(&[1, 1, 2, 7, 29, 145]));
    }

    #[test]
    fn inequality_at_six() {
        let k = ints(&[1, 1, 2, 5, 16, 61, 275]);
        let a = bell_and_atomic(6).unwrap().atomic;
        let rows = counting_inequality(&k, &a).unwrap();
        assert_eq!(rows[5].rhs, BigInt::from(213));
        assert_eq!(counting_coefficients(6, &a), ints(&[92, 22, 6, 2, 1, 1]));
        let c = c_sequence(&k).unwrap();
        let r2 = counting2(2, &c);
        assert_eq!((r2[1].lhs.clone(), r2[1].rhs.clone()), (BigInt::from(2), BigInt::from(2)));
    }

    #[test]
    fn quotient_of_a_series_by_itself() {
        let s = TruncSeries::new(ints(&[1, 3, 7, 2]), 3).unwrap();
        let r = lagrange_quotient_check(&s, &s).unwrap();
        assert!(r.passed());
        assert_eq!(r.coeffs, vec![Rational::one(), Rational::zero(), Rational::zero(), Rational::zero()]);
    }
}
