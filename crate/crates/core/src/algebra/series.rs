use super::poly::IntPoly;
use super::rational::Rational;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt::{Debug, Display};

/// Coefficient ring of a [`TruncSeries`].
pub trait SeriesCoeff: Clone + PartialEq + Debug + Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Multiplicative inverse when `self` is a unit of the ring.
    fn unit_inverse(&self) -> Option<Self>;
}

impl SeriesCoeff for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn unit_inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

impl SeriesCoeff for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn unit_inverse(&self) -> Option<Self> {
        self.abs().is_one().then(|| self.clone())
    }
}

impl SeriesCoeff for IntPoly {
    fn zero() -> Self {
        IntPoly::zero()
    }
    fn one() -> Self {
        IntPoly::one()
    }
    fn is_zero(&self) -> bool {
        IntPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn unit_inverse(&self) -> Option<Self> {
        match self.degree() {
            Some(0) => self.coeff(0).unit_inverse().map(IntPoly::constant),
            _ => None,
        }
    }
}

/// Power series truncated at `x^order`: exactly `order + 1` coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<C> {
    coeffs: Vec<C>,
}

impl<C: SeriesCoeff> TruncSeries<C> {
    /// Pads `coeffs` with zeros up to `order`; more than `order + 1`
    /// coefficients is an error rather than a silent truncation.
    pub fn new(mut coeffs: Vec<C>, order: usize) -> Result<Self> {
        if coeffs.len() > order + 1 {
            return Err(Error::TruncationMismatch(coeffs.len() - 1, order));
        }
        coeffs.resize(order + 1, C::zero());
        Ok(Self { coeffs })
    }

    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![C::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = C::one();
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &C {
        &self.coeffs[n]
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            Err(Error::TruncationMismatch(self.order(), other.order()))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.sub(b)).collect() })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.order();
        let coeffs = (0..=n)
            .map(|k| {
                (0..=k).fold(C::zero(), |acc, i| acc.add(&self.coeffs[i].mul(&other.coeffs[k - i])))
            })
            .collect();
        Ok(Self { coeffs })
    }

    /// `1 - self`.
    pub fn one_minus(&self) -> Self {
        Self::one(self.order()).sub(self).expect("same order")
    }

    pub fn invert(&self) -> Result<Self> {
        series_invert(self)
    }

    /// `self / denom`, requiring a unit constant term in `denom`.
    pub fn div(&self, denom: &Self) -> Result<Self> {
        self.check(denom)?;
        self.mul(&series_invert(denom)?)
    }
}

/// The series `u` with `s·u = 1` up to the truncation order of `s`.
pub fn series_invert<C: SeriesCoeff>(s: &TruncSeries<C>) -> Result<TruncSeries<C>> {
    let c0 = &s.coeffs[0];
    let inv0 = c0.unit_inverse().ok_or_else(|| Error::NonUnit(c0.to_string()))?;
    let n = s.order();
    let mut u: Vec<C> = Vec::with_capacity(n + 1);
    u.push(inv0.clone());
    for k in 1..=n {
        let acc = (1..=k).fold(C::zero(), |acc, i| acc.add(&s.coeffs[i].mul(&u[k - i])));
        u.push(C::zero().sub(&acc).mul(&inv0));
    }
    Ok(TruncSeries { coeffs: u })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, Rational};
    use proptest::prelude::*;

    fn ints(v: &[i64], order: usize) -> TruncSeries<BigInt> {
        TruncSeries::new(v.iter().map(|&c| BigInt::from(c)).collect(), order).unwrap()
    }

    #[test]
    fn geometric_series() {
        let s = ints(&[1, -1], 6);
        assert_eq!(series_invert(&s).unwrap(), ints(&[1; 7], 6));
    }

    #[test]
    fn bell_from_atomic() {
        let atomic = ints(&[0, 1, 1, 2, 6, 22, 92], 6);
        let bell = series_invert(&atomic.one_minus()).unwrap();
        assert_eq!(bell, ints(&[1, 1, 2, 5, 15, 52, 203], 6));
    }

    #[test]
    fn non_unit_rejected() {
        assert!(matches!(series_invert(&ints(&[0, 1], 3)), Err(Error::NonUnit(_))));
        assert!(matches!(series_invert(&ints(&[2, 1], 3)), Err(Error::NonUnit(_))));
        let r: TruncSeries<Rational> = TruncSeries::new(vec![int(2), int(1)], 3).unwrap();
        assert!(series_invert(&r).is_ok());
    }

    #[test]
    fn truncation_mismatch_is_an_error() {
        assert!(matches!(ints(&[1], 3).mul(&ints(&[1], 4)), Err(Error::TruncationMismatch(3, 4))));
        assert!(matches!(
            TruncSeries::<BigInt>::new(vec![BigInt::from(1); 5], 3),
            Err(Error::TruncationMismatch(4, 3))
        ));
    }

    #[test]
    fn polynomial_coefficients() {
        // 1/(1 - t x) = Σ t^n x^n.
        let s = TruncSeries::new(vec![IntPoly::one(), -&IntPoly::t()], 4).unwrap();
        let inv = series_invert(&s).unwrap();
        for (n, c) in inv.coeffs().iter().enumerate() {
            let mut want = vec![0i64; n + 1];
            want[n] = 1;
            assert_eq!(c, &IntPoly::from_i64(&want));
        }
    }

    proptest! {
        #[test]
        fn inverse_times_series_is_one(tail in prop::collection::vec(-30i64..30, 0..8), lead in prop::sample::select(vec![1i64, -1])) {
            let mut v = vec![lead];
            v.extend(tail);
            let order = v.len() - 1;
            let s = ints(&v, order);
            let u = series_invert(&s).unwrap();
            prop_assert_eq!(s.mul(&u).unwrap(), TruncSeries::one(order));
        }

        #[test]
        fn rational_inverse(tail in prop::collection::vec(-9i64..9, 0..6), lead in 1i64..5) {
            let mut v = vec![int(lead)];
            v.extend(tail.into_iter().map(int));
            let order = v.len() - 1;
            let s: TruncSeries<Rational> = TruncSeries::new(v, order).unwrap();
            prop_assert_eq!(s.mul(&series_invert(&s).unwrap()).unwrap(), TruncSeries::one(order));
        }
    }
}
