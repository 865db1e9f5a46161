use super::rational::{to_integer, Rational};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Polynomial in one variable `t` with arbitrary-precision integer
/// coefficients; `coeffs[i]` multiplies `t^i`. Trailing zeros are never
/// stored, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `t`.
    pub fn t() -> Self {
        Self::from_i64(&[0, 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        poly_eval(self, x)
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// `p(t + shift)`, e.g. to rewrite a polynomial in `q` as one in `t = q - 1`.
    pub fn shift(&self, shift: &BigInt) -> Self {
        let lin = Self::new(vec![shift.clone(), BigInt::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * &lin) + &Self::constant(c.clone()))
    }
}

/// `Σ pᵢ xⁱ`, by Horner's rule.
pub fn poly_eval(p: &IntPoly, x: &Rational) -> Rational {
    p.coeffs
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * x + Rational::from_integer(c.clone()))
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            write!(f, "{sign}")?;
            let unit = mag.is_one();
            match i {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "t")?,
                1 => write!(f, "{mag}t")?,
                _ if unit => write!(f, "t^{i}")?,
                _ => write!(f, "{mag}t^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

/// Rational coefficients (index = degree) of the unique polynomial of degree
/// at most `degree_bound` through `points`. Extra points beyond the first
/// `degree_bound + 1` must lie on that polynomial.
pub fn interpolate(points: &[(Rational, Rational)], degree_bound: usize) -> Result<Vec<Rational>> {
    let needed = degree_bound + 1;
    if points.len() < needed {
        return Err(Error::InsufficientPoints { needed, bound: degree_bound, got: points.len() });
    }
    for (i, (x, _)) in points.iter().enumerate() {
        if points[..i].iter().any(|(y, _)| y == x) {
            return Err(Error::DuplicateAbscissa(x.to_string()));
        }
    }
    let (fit, rest) = points.split_at(needed);
    let xs: Vec<&Rational> = fit.iter().map(|(x, _)| x).collect();
    // Newton divided differences, in place.
    let mut dd: Vec<Rational> = fit.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..needed {
        for i in (level..needed).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (xs[i] - xs[i - level]);
        }
    }
    // Expand the Newton form into monomial coefficients.
    let mut coeffs = vec![Rational::zero(); needed];
    for k in (0..needed).rev() {
        // coeffs <- coeffs * (t - x_k) + dd[k]
        let mut next = vec![Rational::zero(); needed];
        for i in 0..needed {
            if coeffs[i].is_zero() {
                continue;
            }
            if i + 1 < needed {
                next[i + 1] += &coeffs[i];
            }
            next[i] -= &coeffs[i] * xs[k];
        }
        next[0] += &dd[k];
        coeffs = next;
    }
    let eval = |x: &Rational| {
        coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    };
    for (x, y) in rest {
        if &eval(x) != y {
            return Err(Error::Inconsistent(x.to_string(), y.to_string()));
        }
    }
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    Ok(coeffs)
}

/// Like [`interpolate`] but demands integer coefficients.
pub fn interpolate_poly(points: &[(Rational, Rational)], degree_bound: usize) -> Result<IntPoly> {
    let coeffs = interpolate(points, degree_bound)?;
    coeffs
        .iter()
        .map(|c| to_integer(c).ok_or_else(|| Error::NonInteger(c.to_string())))
        .collect::<Result<Vec<_>>>()
        .map(IntPoly::new)
}
