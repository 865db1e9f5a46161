use crate::error::{Error, Result};
use std::fmt;

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of the prime field F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FFElem {
    value: u32,
    modulus: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    /// Unary: acts on the first operand.
    Inv,
    /// Unary: acts on the first operand.
    Neg,
}

impl FFElem {
    /// Reduces `value` modulo `p`; fails unless `p` is prime.
    pub fn new(value: i64, p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self {
            value: value.rem_euclid(p as i64) as u32,
            modulus: p,
        })
    }

    pub fn zero(p: u32) -> Result<Self> {
        Self::new(0, p)
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn same(self, other: Self) -> Result<u32> {
        if self.modulus != other.modulus {
            Err(Error::ModulusMismatch(self.modulus, other.modulus))
        } else {
            Ok(self.modulus)
        }
    }

    pub fn add(self, other: Self) -> Result<Self> {
        let p = self.same(other)?;
        Ok(Self { value: (self.value + other.value) % p, modulus: p })
    }

    pub fn sub(self, other: Self) -> Result<Self> {
        self.add(other.neg())
    }

    pub fn mul(self, other: Self) -> Result<Self> {
        let p = self.same(other)?;
        let v = (self.value as u64 * other.value as u64) % p as u64;
        Ok(Self { value: v as u32, modulus: p })
    }

    pub fn neg(self) -> Self {
        let p = self.modulus;
        Self { value: (p - self.value) % p, modulus: p }
    }

    pub fn inv(self) -> Result<Self> {
        if self.value == 0 {
            return Err(Error::ZeroInverse);
        }
        // Fermat: a^(p-2).
        let p = self.modulus as u64;
        let (mut base, mut exp, mut acc) = (self.value as u64, p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        Ok(Self { value: acc as u32, modulus: self.modulus })
    }
}

impl fmt::Display for FFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

/// Field arithmetic dispatch. For the unary operations `b` only takes part in
/// the modulus check.
pub fn ff_arith(a: FFElem, b: FFElem, op: FieldOp) -> Result<FFElem> {
    a.same(b)?;
    match op {
        FieldOp::Add => a.add(b),
        FieldOp::Mul => a.mul(b),
        FieldOp::Inv => a.inv(),
        FieldOp::Neg => Ok(a.neg()),
    }
}

/// Table-driven arithmetic on raw residues, used on hot paths (matrix
/// entries are stored as bare `u8` residues).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u8,
    inverse: Vec<u8>,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > 251 {
            return Err(Error::Invalid(format!("prime {p} too large for byte residues")));
        }
        let mut inverse = vec![0u8; p as usize];
        for a in 1..p {
            inverse[a as usize] = FFElem::new(a as i64, p)?.inv()?.value() as u8;
        }
        Ok(Self { p: p as u8, inverse })
    }

    #[inline]
    pub fn p(&self) -> u8 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        ((a as u16 + b as u16) % self.p as u16) as u8
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        ((a as u16 + self.p as u16 - b as u16) % self.p as u16) as u8
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.p as u16) as u8
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.sub(0, a)
    }

    /// Inverse of a nonzero residue; `inv(0)` is 0.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        self.inverse[a as usize]
    }
}
