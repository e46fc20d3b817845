use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::Field;
use super::mpoly::MPoly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Quotient of two multivariate polynomials, kept unreduced.
///
/// There is no multivariate gcd, so fractions are never cancelled; equality
/// is decided by cross-multiplication. This is enough for verifying rational
/// identities such as the composition of two birational maps.
#[derive(Clone)]
pub struct PolyFrac {
    num: MPoly,
    den: MPoly,
}

impl PolyFrac {
    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            return Self::from_poly(MPoly::zero());
        }
        if let Some(c) = den.constant_value() {
            let inv = c.inv().expect("nonzero denominator");
            return Self::from_poly(num.scale(&inv));
        }
        // Cheap cancellations that keep the representation small.
        if num == den {
            return Self::from_poly(MPoly::one());
        }
        if let Ok(q) = num.exact_div(&den) {
            return Self::from_poly(q);
        }
        PolyFrac { num, den }
    }

    pub fn from_poly(p: MPoly) -> Self {
        PolyFrac {
            num: p,
            den: MPoly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(MPoly::constant(c))
    }

    pub fn var(name: &str) -> Self {
        Self::from_poly(MPoly::var(name))
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }
}

impl PartialEq for PolyFrac {
    fn eq(&self, other: &Self) -> bool {
        (&self.num * &other.den) == (&other.num * &self.den)
    }
}

impl<'a> Add<&'a PolyFrac> for &'a PolyFrac {
    type Output = PolyFrac;
    fn add(self, rhs: &PolyFrac) -> PolyFrac {
        if self.den == rhs.den {
            return PolyFrac::normalized(&self.num + &rhs.num, self.den.clone());
        }
        PolyFrac::normalized(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<'a> Sub<&'a PolyFrac> for &'a PolyFrac {
    type Output = PolyFrac;
    fn sub(self, rhs: &PolyFrac) -> PolyFrac {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a PolyFrac> for &'a PolyFrac {
    type Output = PolyFrac;
    fn mul(self, rhs: &PolyFrac) -> PolyFrac {
        PolyFrac::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for PolyFrac {
            type Output = PolyFrac;
            fn $method(self, rhs: PolyFrac) -> PolyFrac {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a PolyFrac> for PolyFrac {
            type Output = PolyFrac;
            fn $method(self, rhs: &'a PolyFrac) -> PolyFrac {
                (&self).$method(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for PolyFrac {
    type Output = PolyFrac;
    fn neg(self) -> PolyFrac {
        PolyFrac {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Neg for &PolyFrac {
    type Output = PolyFrac;
    fn neg(self) -> PolyFrac {
        -self.clone()
    }
}

impl fmt::Display for PolyFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.constant_value().is_some_and(|c| c.is_one()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for PolyFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyFrac({self})")
    }
}

impl Field for PolyFrac {
    const NAME: &'static str = "Q(vars)";

    fn zero() -> Self {
        Self::from_poly(MPoly::zero())
    }

    fn one() -> Self {
        Self::from_poly(MPoly::one())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn from_rational(r: &Rational) -> Self {
        Self::constant(r.clone())
    }

    fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    fn to_polyfrac(&self) -> PolyFrac {
        self.clone()
    }
}
