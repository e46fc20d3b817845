use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactalg::Field;

/// Short Weierstrass curve `Y² = X³ + A·X + B` over a field.
#[derive(Clone, PartialEq, Debug)]
pub struct WeierstrassCurve<F: Field> {
    a: F,
    b: F,
}

/// A point on a short Weierstrass curve.
#[derive(Clone, PartialEq, Debug)]
pub enum CurvePoint<F: Field> {
    Infinity,
    Affine { x: F, y: F },
}

impl<F: Field> CurvePoint<F> {
    pub fn new(x: F, y: F) -> Self {
        CurvePoint::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn x(&self) -> Option<&F> {
        match self {
            CurvePoint::Affine { x, .. } => Some(x),
            CurvePoint::Infinity => None,
        }
    }

    pub fn y(&self) -> Option<&F> {
        match self {
            CurvePoint::Affine { y, .. } => Some(y),
            CurvePoint::Infinity => None,
        }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> Result<G>) -> Result<CurvePoint<G>> {
        Ok(match self {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::Affine { x: f(x)?, y: f(y)? },
        })
    }
}

impl<F: Field> fmt::Display for CurvePoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => f.write_str("infinity"),
            CurvePoint::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

impl<F: Field + Serialize> Serialize for CurvePoint<F> {
    /// `"infinity"` or `{"X": ..., "Y": ...}`.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CurvePoint::Infinity => s.serialize_str("infinity"),
            CurvePoint::Affine { x, y } => {
                let mut m = s.serialize_map(Some(2))?;
                m.serialize_entry("X", x)?;
                m.serialize_entry("Y", y)?;
                m.end()
            }
        }
    }
}

impl<F: Field> WeierstrassCurve<F> {
    /// Fails with [`Error::Singular`] when `4A³ + 27B² = 0`.
    pub fn new(a: F, b: F) -> Result<Self> {
        let e = WeierstrassCurve { a, b };
        if e.discriminant().is_zero() {
            return Err(Error::Singular("4A^3 + 27B^2 = 0".into()));
        }
        Ok(e)
    }

    pub fn a(&self) -> &F {
        &self.a
    }

    pub fn b(&self) -> &F {
        &self.b
    }

    fn four_a3(&self) -> F {
        F::from_i64(4) * &self.a.pow(3)
    }

    /// `Δ = -16(4A³ + 27B²)`.
    pub fn discriminant(&self) -> F {
        let s = self.four_a3() + F::from_i64(27) * &self.b.square();
        F::from_i64(-16) * &s
    }

    /// `j = 1728 · 4A³ / (4A³ + 27B²)`.
    pub fn j_invariant(&self) -> F {
        let num = F::from_i64(1728) * &self.four_a3();
        let den = self.four_a3() + F::from_i64(27) * &self.b.square();
        num.checked_div(&den).expect("nonsingular curve")
    }

    /// `X³ + A·X + B`.
    pub fn rhs(&self, x: &F) -> F {
        x.pow(3) + self.a.clone() * x + &self.b
    }

    pub fn contains(&self, p: &CurvePoint<F>) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => y.square() == self.rhs(x),
        }
    }

    pub fn point(&self, x: F, y: F) -> Result<CurvePoint<F>> {
        let p = CurvePoint::new(x, y);
        self.check(&p)?;
        Ok(p)
    }

    fn check(&self, p: &CurvePoint<F>) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::NotOnCurve)
        }
    }

    pub fn neg(&self, p: &CurvePoint<F>) -> CurvePoint<F> {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::new(x.clone(), -y.clone()),
        }
    }

    fn add_unchecked(&self, p: &CurvePoint<F>, q: &CurvePoint<F>) -> CurvePoint<F> {
        let (x1, y1, x2, y2) = match (p, q) {
            (CurvePoint::Infinity, _) => return q.clone(),
            (_, CurvePoint::Infinity) => return p.clone(),
            (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => {
                (x1, y1, x2, y2)
            }
        };
        let lambda = if x1 == x2 {
            if (y1.clone() + y2).is_zero() {
                return CurvePoint::Infinity;
            }
            // Tangent slope (3x² + A) / 2y.
            let num = F::from_i64(3) * &x1.square() + &self.a;
            num.checked_div(&(F::from_i64(2) * y1)).expect("y nonzero")
        } else {
            (y2.clone() - y1)
                .checked_div(&(x2.clone() - x1))
                .expect("distinct x")
        };
        let x3 = lambda.square() - x1 - x2;
        let y3 = lambda * &(x1.clone() - &x3) - y1;
        CurvePoint::new(x3, y3)
    }

    /// Group law. Both inputs must lie on the curve.
    pub fn add(&self, p: &CurvePoint<F>, q: &CurvePoint<F>) -> Result<CurvePoint<F>> {
        self.check(p)?;
        self.check(q)?;
        let r = self.add_unchecked(p, q);
        debug_assert!(self.contains(&r), "sum left the curve");
        Ok(r)
    }

    /// `[k]P` by double-and-add; `[0]P = ∞` and `[-k]P = -[k]P`.
    pub fn mul(&self, k: i64, p: &CurvePoint<F>) -> Result<CurvePoint<F>> {
        self.check(p)?;
        let mut base = if k < 0 { self.neg(p) } else { p.clone() };
        let mut n = k.unsigned_abs();
        let mut acc = CurvePoint::Infinity;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add_unchecked(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.add_unchecked(&base, &base);
            }
        }
        debug_assert!(self.contains(&acc), "multiple left the curve");
        Ok(acc)
    }

    /// The multiples `[1]P, [2]P, .., [k]P` by repeated addition.
    pub fn multiples(&self, p: &CurvePoint<F>, k: usize) -> Result<Vec<CurvePoint<F>>> {
        self.check(p)?;
        let mut out = Vec::with_capacity(k);
        let mut cur = CurvePoint::Infinity;
        for _ in 0..k {
            cur = self.add_unchecked(&cur, p);
            out.push(cur.clone());
        }
        Ok(out)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> Result<G>) -> Result<WeierstrassCurve<G>> {
        WeierstrassCurve::new(f(&self.a)?, f(&self.b)?)
    }
}

impl<F: Field + Serialize> WeierstrassCurve<F> {
    /// `{"field": .., "A": .., "B": .., "points": [..]}`.
    pub fn to_json(&self, points: &[CurvePoint<F>]) -> serde_json::Value {
        serde_json::json!({
            "field": F::NAME,
            "A": serde_json::to_value(&self.a).expect("serializable"),
            "B": serde_json::to_value(&self.b).expect("serializable"),
            "points": serde_json::to_value(points).expect("serializable"),
        })
    }
}

impl<F: Field> fmt::Display for WeierstrassCurve<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Y^2 = X^3 + ({})*X + ({})", self.a, self.b)
    }
}

/// Long Weierstrass coefficients `y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6`.
#[derive(Clone, PartialEq, Debug)]
pub struct LongWeierstrass<F: Field> {
    pub a1: F,
    pub a2: F,
    pub a3: F,
    pub a4: F,
    pub a6: F,
}

impl<F: Field> LongWeierstrass<F> {
    pub fn contains(&self, x: &F, y: &F) -> bool {
        let lhs = y.square() + self.a1.clone() * x * y + self.a3.clone() * y;
        let rhs = x.pow(3) + self.a2.clone() * &x.square() + self.a4.clone() * x + &self.a6;
        lhs == rhs
    }

    fn b_invariants(&self) -> (F, F, F) {
        let b2 = self.a1.square() + F::from_i64(4) * &self.a2;
        let b4 = F::from_i64(2) * &self.a4 + self.a1.clone() * &self.a3;
        let b6 = self.a3.square() + F::from_i64(4) * &self.a6;
        (b2, b4, b6)
    }

    /// `(c4, c6)`.
    pub fn c_invariants(&self) -> (F, F) {
        let (b2, b4, b6) = self.b_invariants();
        let c4 = b2.square() - F::from_i64(24) * &b4;
        let c6 = -b2.pow(3) + F::from_i64(36) * &b2 * &b4 - F::from_i64(216) * &b6;
        (c4, c6)
    }

    /// The short model `A = -27c4/16`, `B = -27c6/32`, reached by
    /// `X = 9x + 3b2/4`, `Y = (27/2)(2y + a1·x + a3)`.
    pub fn to_short(&self) -> Result<WeierstrassCurve<F>> {
        let (c4, c6) = self.c_invariants();
        let a = c4 * &F::from_rational(&"-27/16".parse().expect("literal"));
        let b = c6 * &F::from_rational(&"-27/32".parse().expect("literal"));
        WeierstrassCurve::new(a, b)
    }

    pub fn point_to_short<G: Field>(&self, lift: impl Fn(&F) -> G, x: &G, y: &G) -> (G, G) {
        let (b2, _, _) = self.b_invariants();
        let xs =
            G::from_i64(9) * x + &(lift(&b2) * &G::from_rational(&"3/4".parse().expect("literal")));
        let inner = G::from_i64(2) * y + &(lift(&self.a1) * x) + &lift(&self.a3);
        let ys = G::from_rational(&"27/2".parse().expect("literal")) * &inner;
        (xs, ys)
    }

    pub fn point_from_short<G: Field>(&self, lift: impl Fn(&F) -> G, xs: &G, ys: &G) -> (G, G) {
        let (b2, _, _) = self.b_invariants();
        let x = (xs.clone() - &(lift(&b2) * &G::from_rational(&"3/4".parse().expect("literal"))))
            * &G::from_rational(&"1/9".parse().expect("literal"));
        let twice_y = ys.clone() * &G::from_rational(&"2/27".parse().expect("literal"))
            - &(lift(&self.a1) * &x)
            - &lift(&self.a3);
        let y = twice_y * &G::from_rational(&"1/2".parse().expect("literal"));
        (x, y)
    }
}
