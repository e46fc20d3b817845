use crate::error::{Error, Result};
use crate::exactalg::{Poly, RatFun, Rational};

use super::quartic::QuarticModel;
use super::weierstrass::{CurvePoint, WeierstrassCurve};

/// Substitution `q := q0` from objects over `Q(q)` to objects over `Q`.
pub trait Specialize {
    type Output;
    fn specialize(&self, q0: &Rational) -> Result<Self::Output>;
}

impl Specialize for RatFun {
    type Output = Rational;
    fn specialize(&self, q0: &Rational) -> Result<Rational> {
        self.eval(q0)
    }
}

impl Specialize for Poly<RatFun> {
    type Output = Poly<Rational>;
    fn specialize(&self, q0: &Rational) -> Result<Poly<Rational>> {
        Ok(Poly::from_coeffs(
            self.coeffs()
                .iter()
                .map(|c| c.specialize(q0))
                .collect::<Result<_>>()?,
        ))
    }
}

impl Specialize for CurvePoint<RatFun> {
    type Output = CurvePoint<Rational>;
    fn specialize(&self, q0: &Rational) -> Result<CurvePoint<Rational>> {
        self.map(|c| c.specialize(q0))
    }
}

impl Specialize for WeierstrassCurve<RatFun> {
    type Output = WeierstrassCurve<Rational>;
    /// Fails with [`Error::SingularSpecialization`] where `Δ(q0) = 0`.
    fn specialize(&self, q0: &Rational) -> Result<WeierstrassCurve<Rational>> {
        let a = self.a().specialize(q0)?;
        let b = self.b().specialize(q0)?;
        WeierstrassCurve::new(a, b).map_err(|_| Error::SingularSpecialization(q0.to_string()))
    }
}

impl Specialize for QuarticModel<RatFun> {
    type Output = QuarticModel<Rational>;
    fn specialize(&self, q0: &Rational) -> Result<QuarticModel<Rational>> {
        let h = self.h().specialize(q0)?;
        if h.degree() != self.h().degree() {
            return Err(Error::SingularSpecialization(format!(
                "{q0} (degree drops)"
            )));
        }
        let (p, s) = self.base();
        QuarticModel::new(h, (p.specialize(q0)?, s.specialize(q0)?)).map_err(|e| match e {
            Error::Singular(_) => Error::SingularSpecialization(q0.to_string()),
            other => other,
        })
    }
}

/// Specializes a curve and a point on it together, checking the point
/// stays on the specialized curve.
pub fn specialize_point_on(
    e: &WeierstrassCurve<RatFun>,
    p: &CurvePoint<RatFun>,
    q0: &Rational,
) -> Result<(WeierstrassCurve<Rational>, CurvePoint<Rational>)> {
    let es = e.specialize(q0)?;
    let ps = p.specialize(q0)?;
    if !es.contains(&ps) {
        return Err(Error::NotOnCurve);
    }
    Ok((es, ps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Field;

    fn rf(s: &str) -> RatFun {
        s.parse().unwrap()
    }

    #[test]
    fn ratfun_values() {
        assert_eq!(
            rf("(2q^2+9q+2)/(2q)")
                .specialize(&Rational::from(3))
                .unwrap(),
            "47/6".parse().unwrap()
        );
        assert!(matches!(
            rf("1/(q-1)").specialize(&Rational::from(1)),
            Err(Error::DenominatorVanishes(_))
        ));
    }

    #[test]
    fn singular_fibre() {
        // Y² = X³ - q²X degenerates at q = 0.
        let e = WeierstrassCurve::new(rf("-q^2"), RatFun::zero()).unwrap();
        assert!(matches!(
            e.specialize(&Rational::from(0)),
            Err(Error::SingularSpecialization(_))
        ));
        let p = CurvePoint::new(rf("q"), RatFun::zero());
        let (es, ps) = specialize_point_on(&e, &p, &Rational::from(2)).unwrap();
        assert!(es.contains(&ps));
        assert_eq!(es.a(), &Rational::from(-4));
    }

    #[test]
    fn quartic_specialization() {
        let h = Poly::from_coeffs(vec![
            rf("q^2"),
            RatFun::zero(),
            RatFun::one(),
            RatFun::zero(),
            RatFun::one(),
        ]);
        let c = QuarticModel::new(h, (RatFun::zero(), rf("q"))).unwrap();
        let c3 = c.specialize(&Rational::from(3)).unwrap();
        assert_eq!(c3.base(), &(Rational::from(0), Rational::from(3)));
        assert!(c.specialize(&Rational::from(0)).is_err());
    }
}
