use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::field::Field;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Exponent vector ordered graded-lexicographically: total degree first,
/// then lexicographic on the exponents in variable order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over the rationals.
///
/// Variables are named; binary operations align the two variable lists by
/// name (the left operand's order first, new names appended). Equality is
/// mathematical, so polynomials over different variable lists compare equal
/// when their difference is zero.
#[derive(Clone)]
pub struct MPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Rational>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly {
            vars: Vec::new(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial(Vec::new()), c);
        }
        p
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(vec![1]), Rational::one());
        MPoly {
            vars: vec![name.to_string()],
            terms,
        }
    }

    /// Builds the variables `names` in one call.
    pub fn vars_of<const N: usize>(names: [&str; N]) -> [MPoly; N] {
        names.map(MPoly::var)
    }

    pub fn from_terms(
        vars: Vec<String>,
        terms: impl IntoIterator<Item = (Vec<u32>, Rational)>,
    ) -> Result<Self> {
        let mut p = MPoly {
            vars,
            terms: BTreeMap::new(),
        };
        for (e, c) in terms {
            if e.len() != p.vars.len() {
                return Err(Error::Parse(format!(
                    "exponent vector {e:?} does not match {} variables",
                    p.vars.len()
                )));
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = std::mem::take(v) + c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        self.is_constant().then(|| self.constant_term())
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .iter()
            .next()
            .filter(|(m, _)| m.degree() == 0)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Degree in one variable, `None` for the zero polynomial.
    pub fn degree_in(&self, var: &str) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        Some(match self.var_index(var) {
            None => 0,
            Some(i) => self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0),
        })
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Re-expresses the polynomial over `vars`, which must contain every
    /// variable that occurs with a nonzero exponent.
    pub fn with_vars(&self, vars: &[String]) -> Self {
        let map: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v))
            .collect();
        let mut out = MPoly {
            vars: vars.to_vec(),
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            let mut e = vec![0; vars.len()];
            for (i, &k) in m.0.iter().enumerate() {
                if k > 0 {
                    let j = map[i].unwrap_or_else(|| panic!("variable {} dropped", self.vars[i]));
                    e[j] = k;
                }
            }
            out.terms.insert(Monomial(e), c.clone());
        }
        out
    }

    fn merged_vars(&self, other: &MPoly) -> Vec<String> {
        let mut vars = self.vars.clone();
        for v in &other.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        vars
    }

    fn aligned(&self, other: &MPoly) -> (MPoly, MPoly) {
        if self.vars == other.vars {
            return (self.clone(), other.clone());
        }
        let vars = self.merged_vars(other);
        (self.with_vars(&vars), other.with_vars(&vars))
    }

    /// Drops variables that no longer occur.
    pub fn compact(&self) -> Self {
        let used: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| self.terms.keys().any(|m| m.0[*i] > 0))
            .map(|(_, v)| v.clone())
            .collect();
        self.with_vars(&used)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return MPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = MPoly::one();
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

    /// Partial derivative.
    pub fn diff(&self, var: &str) -> Self {
        let Some(i) = self.var_index(var) else {
            return MPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
        };
        let mut out = MPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            let k = m.0[i];
            if k > 0 {
                let mut e = m.0.clone();
                e[i] -= 1;
                out.add_term(Monomial(e), c * &Rational::from(k as i64));
            }
        }
        out
    }

    /// Coefficients in `var`, lowest degree first, as polynomials in the
    /// remaining variables.
    pub fn coeffs_in(&self, var: &str) -> Vec<MPoly> {
        let Some(i) = self.var_index(var) else {
            return vec![self.clone()];
        };
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out: Vec<MPoly> = (0..=deg)
            .map(|_| MPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            })
            .collect();
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = std::mem::take(&mut e[i]) as usize;
            out[k].terms.insert(Monomial(e), c.clone());
        }
        out
    }

    /// Substitutes a polynomial for one variable.
    pub fn substitute(&self, var: &str, value: &MPoly) -> Self {
        let coeffs = self.coeffs_in(var);
        if coeffs.len() == 1 && self.var_index(var).is_none() {
            return self.clone();
        }
        coeffs
            .iter()
            .rev()
            .fold(MPoly::zero(), |acc, c| &(&acc * value) + c)
    }

    /// Substitutes several variables at once.
    pub fn substitute_all(&self, values: &[(&str, MPoly)]) -> Self {
        // Simultaneous substitution: evaluate every term in the field of
        // polynomial fractions over the untouched variables.
        let mut out = MPoly::zero();
        let sub_index: Vec<Option<&MPoly>> = self
            .vars
            .iter()
            .map(|v| values.iter().find(|(n, _)| n == v).map(|(_, p)| p))
            .collect();
        let mut cache: HashMap<(usize, u32), MPoly> = HashMap::new();
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(c.clone());
            for (i, &k) in m.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let factor = cache
                    .entry((i, k))
                    .or_insert_with(|| match sub_index[i] {
                        Some(p) => p.pow(k),
                        None => MPoly::var(&self.vars[i]).pow(k),
                    })
                    .clone();
                t = &t * &factor;
            }
            out = &out + &t;
        }
        out
    }

    /// Evaluates every variable in an arbitrary field. Missing variables are
    /// an error.
    pub fn eval<F: Field>(&self, point: &HashMap<String, F>) -> Result<F> {
        let values: Vec<&F> = self
            .vars
            .iter()
            .map(|v| {
                point
                    .get(v)
                    .ok_or_else(|| Error::InvalidParameter(format!("no value for variable {v}")))
            })
            .collect::<Result<_>>()?;
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = F::from_rational(c);
            for (x, &k) in values.iter().zip(&m.0) {
                if k > 0 {
                    t = t * &x.pow(k);
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Substitutes rational values for some variables, keeping the rest.
    pub fn eval_partial(&self, point: &[(&str, Rational)]) -> Self {
        let subs: Vec<(&str, MPoly)> = point
            .iter()
            .map(|(n, v)| (*n, MPoly::constant(v.clone())))
            .collect();
        self.substitute_all(&subs)
    }

    /// Quotient of an exact division; fails if `d` does not divide `self`.
    pub fn exact_div(&self, d: &MPoly) -> Result<MPoly> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(c) = d.constant_value() {
            return Ok(self.scale(&c.inv()?));
        }
        let (mut rem, d) = self.aligned(d);
        let vars = rem.vars.clone();
        let (dm, dc) = d
            .leading()
            .map(|(m, c)| (m.clone(), c.clone()))
            .expect("nonzero");
        let dc_inv = dc.inv()?;
        let mut quot = MPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        };
        while let Some((m, c)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if !dm.divides(&m) {
                return Err(Error::InexactDivision);
            }
            let qm = Monomial(m.0.iter().zip(&dm.0).map(|(a, b)| a - b).collect());
            let qc = c * &dc_inv;
            for (tm, tc) in &d.terms {
                let e = Monomial(tm.0.iter().zip(&qm.0).map(|(a, b)| a + b).collect());
                rem.add_term(e, -(tc * &qc));
            }
            quot.terms.insert(qm, qc);
        }
        Ok(quot)
    }

    /// Multiplies by the lcm of coefficient denominators and divides by the
    /// gcd of numerators, returning a primitive integer polynomial with a
    /// positive leading coefficient and the factor used.
    pub fn primitive(&self) -> (Rational, MPoly) {
        use num_integer::Integer;
        if self.is_zero() {
            return (Rational::one(), self.clone());
        }
        let l = Rational::lcm_denominators(self.terms.values());
        let g = self
            .terms
            .values()
            .fold(num_bigint::BigInt::from(0), |g, c| {
                g.gcd(&(c.numer() * (&l / c.denom())))
            });
        let mut f = Rational::new(l, g).expect("nonzero content");
        if self.leading().expect("nonzero").1.is_negative() {
            f = -f;
        }
        (f.clone(), self.scale(&f))
    }

    /// `[[coefficient, [exponents]], ...]` in increasing term order.
    pub fn to_json_terms(&self) -> Vec<(Rational, Vec<u32>)> {
        self.terms
            .iter()
            .map(|(m, c)| (c.clone(), m.0.clone()))
            .collect()
    }
}

/// Serialized form: variable names plus the term list.
#[derive(Serialize, Deserialize)]
struct MPolyJson {
    vars: Vec<String>,
    terms: Vec<(Rational, Vec<u32>)>,
}

impl Serialize for MPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MPolyJson {
            vars: self.vars.clone(),
            terms: self.to_json_terms(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MPolyJson::deserialize(d)?;
        MPoly::from_terms(j.vars, j.terms.into_iter().map(|(c, e)| (e, c)))
            .map_err(serde::de::Error::custom)
    }
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            self.terms == other.terms
        } else {
            (self - other).is_zero()
        }
    }
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let (mut a, b) = self.aligned(rhs);
        for (m, c) in b.terms {
            a.add_term(m, c);
        }
        a
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        if self.is_zero() || rhs.is_zero() {
            return MPoly {
                vars: self.merged_vars(rhs),
                terms: BTreeMap::new(),
            };
        }
        let (a, b) = self.aligned(rhs);
        let mut acc: HashMap<Vec<u32>, Rational> =
            HashMap::with_capacity(a.terms.len() * b.terms.len());
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let e: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(x, y)| x + y).collect();
                let t = ca * cb;
                match acc.get_mut(&e) {
                    Some(v) => *v = std::mem::take(v) + t,
                    None => {
                        acc.insert(e, t);
                    }
                }
            }
        }
        MPoly {
            vars: a.vars,
            terms: acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| (Monomial(e), c))
                .collect(),
        }
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: MPoly) -> MPoly {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a MPoly> for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: &'a MPoly) -> MPoly {
                (&self).$method(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(mut self) -> MPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -self.clone()
    }
}

impl From<Rational> for MPoly {
    fn from(c: Rational) -> Self {
        MPoly::constant(c)
    }
}

impl From<i64> for MPoly {
    fn from(c: i64) -> Self {
        MPoly::constant(Rational::from(c))
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms.iter().rev().enumerate() {
            let mut coeff = c.to_string();
            let negative = coeff.starts_with('-');
            if negative {
                coeff.remove(0);
            }
            match (n, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let factors: Vec<String> =
                m.0.iter()
                    .zip(&self.vars)
                    .filter(|(k, _)| **k > 0)
                    .map(|(k, v)| {
                        if *k == 1 {
                            v.clone()
                        } else {
                            format!("{v}^{k}")
                        }
                    })
                    .collect();
            if factors.is_empty() {
                f.write_str(&coeff)?;
            } else {
                if coeff != "1" {
                    write!(f, "{coeff}*")?;
                }
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly[{}]({self})", self.vars.join(","))
    }
}
