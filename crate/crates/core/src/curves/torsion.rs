use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{upoly_gcd, Field, RatFun, Rational, UPoly};

use super::weierstrass::{CurvePoint, WeierstrassCurve};

/// Outcome of the polynomial torsion test over `Q(q)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "reason")]
pub enum TorsionVerdict {
    InfiniteOrder(String),
    TorsionCandidate,
    TwoTorsion,
}

pub const NON_POLYNOMIAL: &str = "non-polynomial coordinate";
pub const NO_DIVISIBILITY: &str = "Y² does not divide Δ";

/// Outcome of the multiples search over `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "order")]
pub enum MazurVerdict {
    InfiniteOrder,
    FiniteOrder(u32),
}

fn is_integral(p: &UPoly) -> bool {
    p.coeffs().iter().all(Rational::is_integer)
}

/// Scaling factor `u ∈ Z[q]` such that `u⁴A` and `u⁶B` are polynomials with
/// integer coefficients: the lcm of the denominators times the lcm of the
/// remaining coefficient denominators. Any integral model will do for the
/// test, so `u` is not minimized.
fn integral_scale(e: &WeierstrassCurve<RatFun>) -> Result<RatFun> {
    let (a, b) = (e.a(), e.b());
    let g = upoly_gcd(a.den(), b.den());
    let d = RatFun::from_poly((a.den() * b.den()).exact_div(&g)?);
    let a4 = a.clone() * &d.pow(4);
    let b6 = b.clone() * &d.pow(6);
    if !a4.is_polynomial() || !b6.is_polynomial() {
        return Err(Error::NonIntegral(format!("A = {a}, B = {b}")));
    }
    let l = Rational::lcm_denominators(a4.num().coeffs().iter().chain(b6.num().coeffs()));
    Ok(d * &RatFun::constant(Rational::from(l)))
}

/// Function-field Nagell–Lutz test: torsion points of an integral model
/// have polynomial coordinates and, when `Y ≠ 0`, satisfy `Y² | Δ` in
/// `Z[q]`.
pub fn torsion_certificate(
    e: &WeierstrassCurve<RatFun>,
    p: &CurvePoint<RatFun>,
) -> Result<TorsionVerdict> {
    if !e.contains(p) {
        return Err(Error::NotOnCurve);
    }
    let CurvePoint::Affine { x, y } = p else {
        return Ok(TorsionVerdict::TorsionCandidate);
    };
    let u = integral_scale(e)?;
    let (u2, u3) = (u.square(), u.pow(3));
    let scaled = WeierstrassCurve::new(e.a().clone() * &u2.square(), e.b().clone() * &u3.square())?;
    let (x, y) = (x.clone() * &u2, y.clone() * &u3);
    if !x.is_polynomial() || !y.is_polynomial() {
        return Ok(TorsionVerdict::InfiniteOrder(NON_POLYNOMIAL.into()));
    }
    if y.is_zero() {
        return Ok(TorsionVerdict::TwoTorsion);
    }
    let delta = scaled.discriminant();
    let y2 = y.square();
    let divides = delta
        .num()
        .exact_div(y2.num())
        .map(|quot| is_integral(&quot))
        .unwrap_or(false);
    Ok(if divides {
        TorsionVerdict::TorsionCandidate
    } else {
        TorsionVerdict::InfiniteOrder(NO_DIVISIBILITY.into())
    })
}

/// Computes `[k]P` for `k = 2..=12`; over `Q` a torsion point has order at
/// most 12, so surviving all of them proves infinite order.
pub fn mazur_check(
    e: &WeierstrassCurve<Rational>,
    p: &CurvePoint<Rational>,
) -> Result<MazurVerdict> {
    if p.is_infinity() {
        return Err(Error::InvalidParameter(
            "point at infinity has order 1".into(),
        ));
    }
    let multiples = e.multiples(p, 12)?;
    for (k, m) in multiples.iter().enumerate().skip(1) {
        if m.is_infinity() {
            return Ok(MazurVerdict::FiniteOrder(k as u32 + 1));
        }
    }
    Ok(MazurVerdict::InfiniteOrder)
}
