use std::fmt;
use std::ops::Neg;

use super::{inv_mod, mul_mod, pow_mod, reduce};
use crate::error::{Error, Result};

/// An integer reduced into `[0, m)` together with its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    pub fn new(value: i128, modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::domain(format!("modulus must be at least 2, got {modulus}")));
        }
        Ok(Residue { value: reduce(value, modulus), modulus })
    }

    /// Builds a residue from a value already known to be in range.
    pub(crate) fn from_reduced(value: u64, modulus: u64) -> Self {
        debug_assert!(modulus >= 2 && value < modulus);
        Residue { value, modulus }
    }

    pub fn zero(modulus: u64) -> Result<Self> {
        Self::new(0, modulus)
    }

    pub fn one(modulus: u64) -> Result<Self> {
        Self::new(1, modulus)
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    /// The representative in `(-m/2, m/2]`.
    pub fn signed(&self) -> i128 {
        let v = self.value as i128;
        let m = self.modulus as i128;
        if 2 * v > m {
            v - m
        } else {
            v
        }
    }

    fn check(&self, rhs: &Residue) -> Result<()> {
        if self.modulus != rhs.modulus {
            return Err(Error::ModulusMismatch { left: self.modulus, right: rhs.modulus });
        }
        Ok(())
    }

    pub fn try_add(self, rhs: Residue) -> Result<Residue> {
        self.check(&rhs)?;
        let s = (self.value as u128 + rhs.value as u128) % self.modulus as u128;
        Ok(Residue::from_reduced(s as u64, self.modulus))
    }

    pub fn try_sub(self, rhs: Residue) -> Result<Residue> {
        self.check(&rhs)?;
        self.try_add(-rhs)
    }

    pub fn try_mul(self, rhs: Residue) -> Result<Residue> {
        self.check(&rhs)?;
        Ok(Residue::from_reduced(mul_mod(self.value, rhs.value, self.modulus), self.modulus))
    }

    pub fn inverse(self) -> Result<Residue> {
        inv_mod(self.value, self.modulus)
            .map(|v| Residue::from_reduced(v, self.modulus))
            .ok_or(Error::NotInvertible { value: self.value, modulus: self.modulus })
    }

    /// `self^exp`; a negative exponent raises the inverse.
    pub fn pow(self, exp: i64) -> Result<Residue> {
        let base = if exp < 0 { self.inverse()? } else { self };
        Ok(Residue::from_reduced(pow_mod(base.value, exp.unsigned_abs(), self.modulus), self.modulus))
    }
}

impl Neg for Residue {
    type Output = Residue;

    fn neg(self) -> Residue {
        if self.value == 0 {
            self
        } else {
            Residue::from_reduced(self.modulus - self.value, self.modulus)
        }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

/// Raises `base` to `exp`, with negative exponents meaning powers of the inverse.
pub fn mod_pow(base: Residue, exp: i64) -> Result<Residue> {
    base.pow(exp)
}

/// The residue `r` in `[0, p)` with `num ≡ den * r (mod p)`.
///
/// Fails with [`Error::ZeroDenominator`] when `p` divides `den`, which
/// callers treat as a pole rather than a value.
pub fn rational_mod_p(num: i128, den: i128, p: u64) -> Result<Residue> {
    if p < 2 {
        return Err(Error::domain(format!("modulus must be at least 2, got {p}")));
    }
    let d = reduce(den, p);
    let inv = inv_mod(d, p).ok_or(Error::ZeroDenominator { denominator: den, modulus: p })?;
    Ok(Residue::from_reduced(mul_mod(reduce(num, p), inv, p), p))
}
