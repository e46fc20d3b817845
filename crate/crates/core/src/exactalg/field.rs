use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use super::polyfrac::PolyFrac;
use super::rational::Rational;
use crate::error::Result;

/// A field of characteristic zero with exact arithmetic.
///
/// The arithmetic operators never fail; division goes through
/// [`Field::checked_div`] so that a zero divisor surfaces as an error.
pub trait Field:
    Sized
    + Clone
    + PartialEq
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    /// Short name of the field, e.g. `"Q"` or `"Q(q)"`.
    const NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(r: &Rational) -> Self;
    fn inv(&self) -> Result<Self>;

    /// Symbolic image of the element as an unreduced multivariate fraction.
    /// Used for identity checks that need formal variables next to field
    /// coefficients.
    fn to_polyfrac(&self) -> PolyFrac;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from(n))
    }

    fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self.clone() * &other.inv()?)
    }

    fn square(&self) -> Self {
        self.clone() * self
    }

    fn pow(&self, exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Integer power; negative exponents require a nonzero base.
    fn powi(&self, exp: i64) -> Result<Self> {
        if exp >= 0 {
            Ok(self.pow(exp as u32))
        } else {
            Ok(self.inv()?.pow((-exp) as u32))
        }
    }
}
