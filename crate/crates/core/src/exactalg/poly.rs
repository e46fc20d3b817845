use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::field::Field;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Dense univariate polynomial, coefficients stored lowest degree first.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is the
/// empty vector and `coeffs.last()` is the leading coefficient.
#[derive(Clone, PartialEq)]
pub struct Poly<F: Field> {
    coeffs: Vec<F>,
}

/// Polynomials over the rationals.
pub type UPoly = Poly<Rational>;

impl<F: Field> Poly<F> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The indeterminate itself.
    pub fn x() -> Self {
        Self::monomial(F::one(), 1)
    }

    pub fn monomial(c: F, deg: usize) -> Self {
        let mut coeffs = vec![F::zero(); deg];
        coeffs.push(c);
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::from_coeffs(cs.iter().map(|&c| F::from_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    /// Coefficient of `x^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc * x + c)
    }

    /// Evaluates at a point of an extension, mapping coefficients with `lift`.
    pub fn eval_with<G: Field>(&self, x: &G, lift: impl Fn(&F) -> G) -> G {
        self.coeffs
            .iter()
            .rev()
            .fold(G::zero(), |acc, c| acc * x + &lift(c))
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(self.coeffs.iter().map(|a| a.clone() * c).collect())
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = self.lead().inv().expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * &F::from_i64(k as i64))
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division; errors on a zero divisor.
    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = d.lead().inv()?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut q = vec![F::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].clone() * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] = r[k + j].clone() - c.clone() * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Self::from_coeffs(q), Self::from_coeffs(r)))
    }

    /// Quotient of an exact division.
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.divrem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision)
        }
    }

    /// `self(g(x))` by Horner's rule.
    pub fn compose(&self, g: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * g) + &Self::constant(c.clone())
        })
    }

    /// `self(x + shift)`.
    pub fn translate(&self, shift: &F) -> Self {
        self.compose(&Self::from_coeffs(vec![shift.clone(), F::one()]))
    }

    /// Monic gcd by the Euclidean algorithm over `F`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Resultant by the Euclidean recurrence
    /// `res(a, b) = (-1)^(deg a · deg b) lc(b)^(deg a - deg r) res(b, r)`.
    pub fn resultant(&self, other: &Self) -> F {
        let (mut a, mut b) = (self.clone(), other.clone());
        let mut acc = F::one();
        loop {
            let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
                return F::zero();
            };
            if db == 0 {
                return acc * &b.lead().pow(da as u32);
            }
            if da == 0 {
                return acc * &a.lead().pow(db as u32);
            }
            let r = a.divrem(&b).expect("nonzero divisor").1;
            let Some(dr) = r.degree() else {
                return F::zero();
            };
            if (da * db) % 2 == 1 {
                acc = -acc;
            }
            acc = acc * &b.lead().pow((da - dr) as u32);
            a = b;
            b = r;
        }
    }

    /// `disc(f) = (-1)^(n(n-1)/2) res(f, f') / lc(f)`.
    pub fn discriminant(&self) -> Result<F> {
        let n = self
            .degree()
            .filter(|&n| n >= 1)
            .ok_or_else(|| Error::DegreeZero("x".into()))?;
        let r = self.resultant(&self.derivative());
        let d = r.checked_div(&self.lead())?;
        Ok(if (n * (n - 1) / 2) % 2 == 1 { -d } else { d })
    }
}

impl<F: Field> Default for Poly<F> {
    fn default() -> Self {
        Self::zero()
    }
}

fn add_coeffs<F: Field>(a: &[F], b: &[F], negate_b: bool) -> Vec<F> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|k| {
            let x = a.get(k).cloned().unwrap_or_else(F::zero);
            match b.get(k) {
                None => x,
                Some(y) if negate_b => x - y,
                Some(y) => x + y,
            }
        })
        .collect()
}

fn mul_coeffs<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![F::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = std::mem::replace(&mut out[i + j], F::zero()) + x.clone() * y;
        }
    }
    out
}

impl<'a, F: Field> Add<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        Poly::from_coeffs(add_coeffs(&self.coeffs, &rhs.coeffs, false))
    }
}

impl<'a, F: Field> Sub<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        Poly::from_coeffs(add_coeffs(&self.coeffs, &rhs.coeffs, true))
    }
}

impl<'a, F: Field> Mul<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        Poly::from_coeffs(mul_coeffs(&self.coeffs, &rhs.coeffs))
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl<F: Field> $trait for Poly<F> {
            type Output = Poly<F>;
            fn $method(self, rhs: Poly<F>) -> Poly<F> {
                (&self).$method(&rhs)
            }
        }
        impl<'a, F: Field> $trait<&'a Poly<F>> for Poly<F> {
            type Output = Poly<F>;
            fn $method(self, rhs: &'a Poly<F>) -> Poly<F> {
                (&self).$method(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<F: Field> Neg for Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        -self.clone()
    }
}

impl<F: Field> Poly<F> {
    /// Renders with the given variable name, highest degree first.
    pub fn to_string_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mut s = c.to_string();
            let negative = s.starts_with('-');
            if negative {
                s.remove(0);
            }
            let needs_parens = s.contains(['+', '-', '/']) && k > 0;
            let body = match (k, s.as_str()) {
                (0, _) => s.clone(),
                (_, "1") => String::new(),
                _ if needs_parens => format!("({s})*"),
                _ => format!("{s}*"),
            };
            let power = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push(if negative { '-' } else { '+' });
            }
            out.push_str(&body);
            out.push_str(&power);
        }
        out
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("x"))
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Serialize for Poly<Rational> {
    /// `[[coefficient, [exponent]], ...]`, zero coefficients omitted.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<_> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut seq = serializer.serialize_seq(Some(terms.len()))?;
        for (k, c) in terms {
            seq.serialize_element(&(c, [k as u32]))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Poly<Rational> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let terms: Vec<(Rational, Vec<u32>)> = Vec::deserialize(deserializer)?;
        let mut p = Poly::zero();
        for (c, e) in terms {
            let [k] = e[..] else {
                return Err(serde::de::Error::custom(
                    "univariate term needs one exponent",
                ));
            };
            p = &p + &Poly::monomial(c, k as usize);
        }
        Ok(p)
    }
}
