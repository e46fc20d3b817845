use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::field::Field;
use super::gcd::upoly_gcd;
use super::mpoly::MPoly;
use super::poly::UPoly;
use super::polyfrac::PolyFrac;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Element of the rational function field `Q(q)`.
///
/// Canonical form: `gcd(num, den) = 1` and `den` monic. Two elements are
/// equal exactly when their canonical forms are identical.
#[derive(Clone, PartialEq)]
pub struct RatFun {
    num: UPoly,
    den: UPoly,
}

/// Variable name used when a rational function is printed or parsed.
pub const RATFUN_VAR: &str = "q";

impl RatFun {
    pub fn new(num: UPoly, den: UPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: UPoly, den: UPoly) -> Self {
        if num.is_zero() {
            return Self::from_poly(UPoly::zero());
        }
        let g = upoly_gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides"),
                den.exact_div(&g).expect("gcd divides"),
            )
        };
        Self::normalize_lead(num, den)
    }

    fn normalize_lead(num: UPoly, den: UPoly) -> Self {
        let lc = den.lead();
        if lc.is_one() {
            RatFun { num, den }
        } else {
            let inv = lc.inv().expect("nonzero denominator");
            RatFun {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn from_poly(p: UPoly) -> Self {
        RatFun {
            num: p,
            den: UPoly::one(),
        }
    }

    /// The generator `q`.
    pub fn q() -> Self {
        Self::from_poly(UPoly::x())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(UPoly::constant(c))
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The value when the function is a constant.
    pub fn as_constant(&self) -> Option<Rational> {
        (self.num.is_constant() && self.den.is_constant()).then(|| self.num.coeff(0))
    }

    /// Substitutes `q = q0`; fails when the denominator vanishes there.
    pub fn eval(&self, q0: &Rational) -> Result<Rational> {
        let d = self.den.eval(q0);
        if d.is_zero() {
            return Err(Error::DenominatorVanishes(q0.to_string()));
        }
        Ok(self.num.eval(q0) / d)
    }

    /// Evaluates at an element of another field, e.g. a symbolic `q`.
    pub fn eval_in<G: Field>(&self, q: &G) -> Result<G> {
        let lift = |c: &Rational| G::from_rational(c);
        let n = self.num.eval_with(q, lift);
        let d = self.den.eval_with(q, lift);
        n.checked_div(&d)
    }

    /// Integer numerator and denominator with no common content and a
    /// positive denominator leading coefficient.
    pub fn integer_parts(&self) -> (Vec<BigInt>, Vec<BigInt>) {
        let l = Rational::lcm_denominators(self.num.coeffs().iter().chain(self.den.coeffs()));
        let scale = |p: &UPoly| -> Vec<BigInt> {
            p.coeffs()
                .iter()
                .map(|c| c.numer() * (&l / c.denom()))
                .collect()
        };
        let (n, d) = (scale(&self.num), scale(&self.den));
        let mut g = n
            .iter()
            .chain(d.iter())
            .fold(BigInt::zero(), |g, c| g.gcd(c));
        if d.last().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        (
            n.iter().map(|c| c / &g).collect(),
            d.iter().map(|c| c / &g).collect(),
        )
    }

    /// Parses an expression in `var` built from integers, `+ - * / ^`,
    /// parentheses and implicit multiplication.
    pub fn parse_in(s: &str, var: &str) -> Result<Self> {
        let mut parser = Parser {
            src: s,
            pos: 0,
            var,
        };
        let value = parser.expr()?;
        parser.skip_ws();
        if parser.pos != s.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(value)
    }

    pub fn to_string_in(&self, var: &str) -> String {
        let (n, d) = self.integer_parts();
        let to_poly =
            |v: &[BigInt]| UPoly::from_coeffs(v.iter().cloned().map(Rational::from).collect());
        let (n, d) = (to_poly(&n), to_poly(&d));
        let ns = n.to_string_in(var);
        if d.is_one() {
            return ns;
        }
        let ds = d.to_string_in(var);
        let atom = |p: &UPoly, s: &str| {
            let nonzero = p.coeffs().iter().filter(|c| !c.is_zero()).count();
            nonzero == 1 && !s.contains('*') && !s.starts_with('-')
        };
        let ns = if atom(&n, &ns) { ns } else { format!("({ns})") };
        let ds = if atom(&d, &ds) { ds } else { format!("({ds})") };
        format!("{ns}/{ds}")
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    var: &'a str,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn expr(&mut self) -> Result<RatFun> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFun> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc * self.unary()?;
                }
                Some('/') => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = acc.checked_div(&rhs)?;
                }
                Some(c) if c == '(' || c.is_ascii_digit() || self.at_var() => {
                    acc = acc * self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn at_var(&self) -> bool {
        let rest = &self.src[self.pos..];
        rest.starts_with(self.var)
            && !rest[self.var.len()..].starts_with(|c: char| c.is_alphanumeric() || c == '_')
    }

    fn unary(&mut self) -> Result<RatFun> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFun> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let negative = self.src[self.pos..].starts_with('-');
            if negative {
                self.pos += 1;
            }
            let digits = self.digits();
            let e: i64 = digits
                .parse()
                .map_err(|_| self.error("expected integer exponent"))?;
            return base.powi(if negative { -e } else { e });
        }
        Ok(base)
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn atom(&mut self) -> Result<RatFun> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = BigInt::from_str(self.digits()).expect("digits");
                Ok(RatFun::constant(Rational::from(n)))
            }
            Some(_) if self.at_var() => {
                self.pos += self.var.len();
                Ok(RatFun::q())
            }
            _ => Err(self.error("expected number, variable or '('")),
        }
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in(RATFUN_VAR))
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun({self})")
    }
}

impl FromStr for RatFun {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse_in(s, RATFUN_VAR)
    }
}

impl Serialize for RatFun {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RatFun {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl<'a> Add<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        if self.den == rhs.den {
            return RatFun::reduce(&self.num + &rhs.num, self.den.clone());
        }
        // Henrici: with g = gcd(b, d) the only possible cancellation in
        // (a·d/g + c·b/g) / (b·d/g) is against g.
        let g = upoly_gcd(&self.den, &rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return RatFun::normalize_lead(num, &self.den * &rhs.den);
        }
        let b_g = self.den.exact_div(&g).expect("gcd divides");
        let d_g = rhs.den.exact_div(&g).expect("gcd divides");
        let t = &(&self.num * &d_g) + &(&rhs.num * &b_g);
        if t.is_zero() {
            return RatFun::from_poly(UPoly::zero());
        }
        let g2 = upoly_gcd(&t, &g);
        let num = t.exact_div(&g2).expect("gcd divides");
        let den = &b_g * &rhs.den.exact_div(&g2).expect("gcd divides");
        RatFun::normalize_lead(num, den)
    }
}

impl<'a> Mul<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        if self.num.is_zero() || rhs.num.is_zero() {
            return RatFun::from_poly(UPoly::zero());
        }
        let cross = |n: &UPoly, d: &UPoly| -> (UPoly, UPoly) {
            if d.is_constant() || n.is_constant() {
                return (n.clone(), d.clone());
            }
            let g = upoly_gcd(n, d);
            if g.is_one() {
                (n.clone(), d.clone())
            } else {
                (
                    n.exact_div(&g).expect("gcd divides"),
                    d.exact_div(&g).expect("gcd divides"),
                )
            }
        };
        let (a, d) = cross(&self.num, &rhs.den);
        let (c, b) = cross(&rhs.num, &self.den);
        RatFun::normalize_lead(&a * &c, &b * &d)
    }
}

impl<'a> Sub<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for RatFun {
            type Output = RatFun;
            fn $method(self, rhs: RatFun) -> RatFun {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a RatFun> for RatFun {
            type Output = RatFun;
            fn $method(self, rhs: &'a RatFun) -> RatFun {
                (&self).$method(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -self.clone()
    }
}

impl Field for RatFun {
    const NAME: &'static str = "Q(q)";

    fn zero() -> Self {
        Self::from_poly(UPoly::zero())
    }

    fn one() -> Self {
        Self::from_poly(UPoly::one())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn from_rational(r: &Rational) -> Self {
        Self::constant(r.clone())
    }

    fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize_lead(self.den.clone(), self.num.clone()))
    }

    fn to_polyfrac(&self) -> PolyFrac {
        let lift = |p: &UPoly| {
            let q = MPoly::var(RATFUN_VAR);
            p.coeffs().iter().rev().fold(MPoly::zero(), |acc, c| {
                &(&acc * &q) + &MPoly::constant(c.clone())
            })
        };
        PolyFrac::new(lift(&self.num), lift(&self.den)).expect("nonzero denominator")
    }
}
