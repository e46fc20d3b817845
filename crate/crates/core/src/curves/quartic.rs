use crate::error::{Error, Result};
use crate::exactalg::{Field, MPoly, Poly, PolyFrac};

use super::weierstrass::{CurvePoint, LongWeierstrass, WeierstrassCurve};

/// The curve `S² = H(P)` with `deg H ∈ {3, 4}` and a rational base point.
#[derive(Clone, PartialEq, Debug)]
pub struct QuarticModel<F: Field> {
    h: Poly<F>,
    base: (F, F),
}

impl<F: Field> QuarticModel<F> {
    pub fn new(h: Poly<F>, base: (F, F)) -> Result<Self> {
        match h.degree() {
            Some(3 | 4) => {}
            d => {
                return Err(Error::InvalidParameter(format!(
                    "quartic model needs degree 3 or 4, got {d:?}"
                )))
            }
        }
        if h.discriminant()?.is_zero() {
            return Err(Error::Singular("disc_P(H) = 0".into()));
        }
        let m = QuarticModel { h, base };
        if !m.contains(&m.base.0, &m.base.1) {
            return Err(Error::NotOnCurve);
        }
        Ok(m)
    }

    pub fn h(&self) -> &Poly<F> {
        &self.h
    }

    pub fn base(&self) -> &(F, F) {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.h.degree().expect("nonzero")
    }

    pub fn contains(&self, p: &F, s: &F) -> bool {
        s.square() == self.h.eval(p)
    }

    /// Same curve, different base point.
    pub fn rebase(&self, base: (F, F)) -> Result<Self> {
        if !self.contains(&base.0, &base.1) {
            return Err(Error::NotOnCurve);
        }
        Ok(QuarticModel {
            h: self.h.clone(),
            base,
        })
    }

    /// The hyperelliptic involution `(P, S) ↦ (P, -S)`.
    pub fn involution(&self, pt: &(F, F)) -> (F, F) {
        (pt.0.clone(), -pt.1.clone())
    }
}

#[derive(Clone, PartialEq, Debug)]
enum Branch<F: Field> {
    /// Base point with `s0 ≠ 0`; `H(p0 + u) = a·u⁴ + b·u³ + c·u² + d·u + q0²`.
    SquareConstant { q0: F, a: F, b: F, c: F, d: F },
    /// Cubic `H` with `s0 = 0`; `H(p0 + u) = b·u³ + c·u² + d·u`.
    CubicBranch { b: F, c: F, d: F },
}

/// Mutually inverse rational maps between a quartic model and its short
/// Weierstrass model, plus the finite set where the inverse is undefined.
#[derive(Clone, PartialEq, Debug)]
pub struct BirationalPair<F: Field> {
    p0: F,
    s0: F,
    quartic_degree: usize,
    branch: Branch<F>,
    long: LongWeierstrass<F>,
    short: WeierstrassCurve<F>,
}

/// Transforms `C` to a short Weierstrass curve sending the base point to
/// the point at infinity.
///
/// After translating the base point to `P = 0`, a base with `s0 ≠ 0` uses the
/// classical substitution for quartics with square constant term; a cubic
/// with a branch point as base uses `x = d/u`. The long model obtained is
/// then completed to short form.
pub fn quartic_to_weierstrass<F: Field>(
    c: &QuarticModel<F>,
) -> Result<(WeierstrassCurve<F>, BirationalPair<F>)> {
    let (p0, s0) = c.base.clone();
    let g = c.h.translate(&p0);
    let branch = if !s0.is_zero() {
        Branch::SquareConstant {
            q0: s0.clone(),
            a: g.coeff(4),
            b: g.coeff(3),
            c: g.coeff(2),
            d: g.coeff(1),
        }
    } else if c.degree() == 4 {
        return Err(Error::BranchPoint);
    } else {
        Branch::CubicBranch {
            b: g.coeff(3),
            c: g.coeff(2),
            d: g.coeff(1),
        }
    };
    let long = match &branch {
        Branch::SquareConstant { q0, a, b, c, d } => {
            let four_q2 = F::from_i64(4) * &q0.square();
            let a1 = d.clone().checked_div(q0)?;
            let a2 = c.clone() - &d.square().checked_div(&four_q2)?;
            let a4 = -(four_q2 * a);
            LongWeierstrass {
                a6: a2.clone() * &a4,
                a1,
                a2,
                a3: F::from_i64(2) * q0 * b,
                a4,
            }
        }
        Branch::CubicBranch { b, c, d } => LongWeierstrass {
            a1: F::zero(),
            a2: c.clone(),
            a3: F::zero(),
            a4: b.clone() * d,
            a6: F::zero(),
        },
    };
    let short = long.to_short()?;
    let pair = BirationalPair {
        p0,
        s0,
        quartic_degree: c.degree(),
        branch,
        long,
        short: short.clone(),
    };
    Ok((short, pair))
}

impl<F: Field> BirationalPair<F> {
    pub fn curve(&self) -> &WeierstrassCurve<F> {
        &self.short
    }

    pub fn long_model(&self) -> &LongWeierstrass<F> {
        &self.long
    }

    /// Affine part of the forward map, evaluated in any field `G` that the
    /// coefficients lift into. Undefined on the fibre `P = p0`.
    pub fn forward_in<G: Field>(&self, lift: impl Fn(&F) -> G, p: &G, s: &G) -> Result<(G, G)> {
        let u = p.clone() - &lift(&self.p0);
        if u.is_zero() {
            return Err(Error::Exceptional("fibre P = p0 of the base point".into()));
        }
        let (x, y) = match &self.branch {
            Branch::SquareConstant { q0, c, d, .. } => {
                let (q0, c, d) = (lift(q0), lift(c), lift(d));
                let two_q0 = G::from_i64(2) * &q0;
                let u2 = u.square();
                let v_q = s.clone() + &q0;
                let x = (two_q0.clone() * &v_q + d.clone() * &u).checked_div(&u2)?;
                let y_num = two_q0.square() * &v_q + two_q0.clone() * &(d.clone() * &u + c * &u2)
                    - d.square() * &u2 * &two_q0.inv()?;
                (x, y_num.checked_div(&(u2 * &u))?)
            }
            Branch::CubicBranch { d, .. } => {
                let d = lift(d);
                let x = d.checked_div(&u)?;
                let y = (d * s).checked_div(&u.square())?;
                (x, y)
            }
        };
        Ok(self.long.point_to_short(&lift, &x, &y))
    }

    /// Affine part of the inverse map in any field `G`.
    pub fn backward_in<G: Field>(&self, lift: impl Fn(&F) -> G, xs: &G, ys: &G) -> Result<(G, G)> {
        let (x, y) = self.long.point_from_short(&lift, xs, ys);
        let (u, v) = match &self.branch {
            Branch::SquareConstant { q0, c, d, .. } => {
                if y.is_zero() {
                    return Err(Error::Exceptional(format!(
                        "long-model point ({x}, 0) lies over a point at infinity of the quartic"
                    )));
                }
                let (q0, c, d) = (lift(q0), lift(c), lift(d));
                let two_q0 = G::from_i64(2) * &q0;
                let u = (two_q0.clone() * &(x.clone() + &c) - d.square() * &two_q0.inv()?)
                    .checked_div(&y)?;
                let v = -q0 + (u.clone() * &(u.clone() * &x - &d)).checked_div(&two_q0)?;
                (u, v)
            }
            Branch::CubicBranch { d, .. } => {
                if x.is_zero() {
                    return Err(Error::Exceptional(
                        "long-model point (0, 0) is the point at infinity of the cubic".into(),
                    ));
                }
                let d = lift(d);
                let u = d.clone().checked_div(&x)?;
                let v = (y * &d).checked_div(&x.square())?;
                (u, v)
            }
        };
        Ok((u + &lift(&self.p0), v))
    }

    /// `φ(P, S)` for a point of the quartic.
    pub fn forward(&self, c: &QuarticModel<F>, p: &F, s: &F) -> Result<CurvePoint<F>> {
        if !c.contains(p, s) {
            return Err(Error::NotOnCurve);
        }
        if *p == self.p0 {
            if *s == self.s0 {
                return Ok(CurvePoint::Infinity);
            }
            // The only other point on the fibre is (p0, -s0).
            let Branch::SquareConstant { .. } = self.branch else {
                unreachable!("a branch point is alone on its fibre");
            };
            let l = &self.long;
            let x = -l.a2.clone();
            let y = l.a1.clone() * &l.a2 - &l.a3;
            let (xs, ys) = l.point_to_short(|v| v.clone(), &x, &y);
            return self.short.point(xs, ys);
        }
        let (x, y) = self.forward_in(|v| v.clone(), p, s)?;
        let pt = CurvePoint::new(x, y);
        debug_assert!(self.short.contains(&pt));
        Ok(pt)
    }

    /// `φ⁻¹(pt)`; errors on the exceptional set.
    pub fn backward(&self, pt: &CurvePoint<F>) -> Result<(F, F)> {
        match pt {
            CurvePoint::Infinity => Ok((self.p0.clone(), self.s0.clone())),
            CurvePoint::Affine { x, y } => self.backward_in(|v| v.clone(), x, y),
        }
    }

    /// Image of the point at infinity of a cubic model. Quartic models have
    /// two points at infinity that need not be rational, so `None`.
    pub fn infinity_image(&self) -> Option<CurvePoint<F>> {
        (self.quartic_degree == 3).then(|| {
            let (x, y) = self
                .long
                .point_to_short(|v| v.clone(), &F::zero(), &F::zero());
            CurvePoint::new(x, y)
        })
    }

    /// Human-readable description of where the inverse map is undefined.
    pub fn exceptional_set(&self) -> Vec<String> {
        match &self.branch {
            Branch::SquareConstant { .. } => {
                let l = &self.long;
                vec![
                    format!(
                        "long-model points with y = 0, i.e. (x + a2)(x^2 + a4) = 0 with a2 = {}, a4 = {}",
                        l.a2, l.a4
                    ),
                    "quartic points at infinity".into(),
                ]
            }
            Branch::CubicBranch { .. } => vec![
                "long-model point (0, 0)".into(),
                "quartic point at infinity".into(),
            ],
        }
    }

    /// Checks symbolically that the forward map lands on the Weierstrass
    /// curve and that backward ∘ forward is the identity modulo
    /// `S² - H(P)`. Formal variables `P` and `S` are adjoined to the
    /// coefficient field.
    pub fn verify_round_trip(&self, c: &QuarticModel<F>) -> Result<()> {
        let lift = |v: &F| v.to_polyfrac();
        let p = PolyFrac::var("P");
        let s = PolyFrac::var("S");
        let h = c.h.eval_with(&p, lift);
        let relation = CurveRelation::new(&h);

        let (x, y) = self.forward_in(lift, &p, &s)?;
        let on_curve = y.square() - (x.pow(3) + lift(self.short.a()) * &x + &lift(self.short.b()));
        if !relation.vanishes(&on_curve) {
            return Err(Error::IdentityViolated(
                "forward image is off the curve".into(),
            ));
        }
        let (p2, s2) = self.backward_in(lift, &x, &y)?;
        if !relation.vanishes(&(p2 - &p)) {
            return Err(Error::IdentityViolated("backward∘forward changes P".into()));
        }
        if !relation.vanishes(&(s2 - &s)) {
            return Err(Error::IdentityViolated("backward∘forward changes S".into()));
        }
        Ok(())
    }
}

/// `L·S² = M(P)`, the curve relation with cleared denominators.
struct CurveRelation {
    l: MPoly,
    m: MPoly,
}

impl CurveRelation {
    fn new(h: &PolyFrac) -> Self {
        CurveRelation {
            l: h.den().clone(),
            m: h.num().clone(),
        }
    }

    /// Whether a rational function of `(P, S)` vanishes on the curve: its
    /// numerator, rewritten as `A + B·S` with `S²` replaced, must have
    /// `A = B = 0`.
    fn vanishes(&self, f: &PolyFrac) -> bool {
        let cs = f.num().coeffs_in("S");
        let e = (cs.len() - 1) / 2;
        let mut parts = [MPoly::zero(), MPoly::zero()];
        for (k, ck) in cs.iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            let t = &(ck * &self.l.pow((e - k / 2) as u32)) * &self.m.pow((k / 2) as u32);
            parts[k % 2] = &parts[k % 2] + &t;
        }
        parts.iter().all(MPoly::is_zero)
    }
}

/// The curve together with its Weierstrass model, for transporting the
/// group law to points `(P, S)`.
#[derive(Clone, Debug)]
pub struct QuarticGroup<F: Field> {
    pub model: QuarticModel<F>,
    pub curve: WeierstrassCurve<F>,
    pub pair: BirationalPair<F>,
}

impl<F: Field> QuarticGroup<F> {
    pub fn new(model: QuarticModel<F>) -> Result<Self> {
        let (curve, pair) = quartic_to_weierstrass(&model)?;
        Ok(QuarticGroup { model, curve, pair })
    }

    pub fn to_curve(&self, pt: &(F, F)) -> Result<CurvePoint<F>> {
        self.pair.forward(&self.model, &pt.0, &pt.1)
    }

    pub fn add(&self, a: &(F, F), b: &(F, F)) -> Result<(F, F)> {
        let r = self.curve.add(&self.to_curve(a)?, &self.to_curve(b)?)?;
        self.pair.backward(&r)
    }

    pub fn mul(&self, k: i64, pt: &(F, F)) -> Result<(F, F)> {
        let r = self.curve.mul(k, &self.to_curve(pt)?)?;
        self.pair.backward(&r)
    }
}

/// `k·pt1`, or `pt1 ⊕ pt2` when a second point is given, in the group on
/// `C` whose identity is the base point.
pub fn quartic_group_op<F: Field>(
    c: &QuarticModel<F>,
    pt1: &(F, F),
    pt2: Option<&(F, F)>,
    k: i64,
) -> Result<(F, F)> {
    let g = QuarticGroup::new(c.clone())?;
    match pt2 {
        Some(b) => g.add(pt1, b),
        None => g.mul(k, pt1),
    }
}

/// Euler's tangent construction. A parabola `S = αP² + βP + γ` (a line for
/// cubic `H`) is matched to the branch of the curve through `pt` up to the
/// second derivative; the remaining intersection is returned.
pub fn euler_double<F: Field>(c: &QuarticModel<F>, pt: &(F, F)) -> Result<(F, F)> {
    let (p, s) = pt;
    if !c.contains(p, s) {
        return Err(Error::NotOnCurve);
    }
    if s.is_zero() {
        return Err(Error::BranchPoint);
    }
    let h = &c.h;
    let dh = h.derivative();
    let two_s = F::from_i64(2) * s;
    let s1 = dh.eval(p).checked_div(&two_s)?;
    if c.degree() == 3 {
        let beta = s1;
        let gamma = s.clone() - &(beta.clone() * p);
        // (βP + γ)² - H: cubic with a double root at p.
        let c3 = -h.coeff(3);
        let c2 = beta.square() - &h.coeff(2);
        let p2 = -(c2.checked_div(&c3)?) - &(F::from_i64(2) * p);
        let s2 = beta * &p2 + &gamma;
        return Ok((p2, s2));
    }
    let s2 = (dh.derivative().eval(p) - &(F::from_i64(2) * &s1.square())).checked_div(&two_s)?;
    let alpha = s2 * &F::from_rational(&"1/2".parse().expect("literal"));
    let beta = s1 - &(F::from_i64(2) * &alpha * p);
    let gamma = s.clone() - &(alpha.clone() * &p.square()) - &(beta.clone() * p);
    let c4 = alpha.square() - &h.coeff(4);
    if c4.is_zero() {
        return Err(Error::PointAtInfinity(
            "tangent parabola meets the curve again only at infinity".into(),
        ));
    }
    let c3 = F::from_i64(2) * &alpha * &beta - &h.coeff(3);
    let p2 = -(c3.checked_div(&c4)?) - &(F::from_i64(3) * p);
    let s2 = alpha * &p2.square() + &(beta * &p2) + &gamma;
    Ok((p2, s2))
}

/// The point Euler's construction should produce, computed instead through
/// the Weierstrass model with `pt` as identity: `[2]ι(pt)` for quartic `H`,
/// and `ι(pt) ⊕ ∞` for cubic `H`.
pub fn euler_double_via_group<F: Field>(c: &QuarticModel<F>, pt: &(F, F)) -> Result<(F, F)> {
    let g = QuarticGroup::new(c.rebase(pt.clone())?)?;
    let ip = g.to_curve(&c.involution(pt))?;
    let r = match g.pair.infinity_image() {
        None => g.curve.mul(2, &ip)?,
        Some(inf) => g.curve.add(&ip, &inf)?,
    };
    g.pair.backward(&r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{Rational, UPoly};

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    // S² = P⁴ - 2P³ + 5P² + 4P + 1 has the point (0, 1).
    fn sample() -> QuarticModel<Rational> {
        QuarticModel::new(UPoly::from_i64s(&[1, 4, 5, -2, 1]), (r("0"), r("1"))).unwrap()
    }

    #[test]
    fn rejects_bad_models() {
        assert!(matches!(
            QuarticModel::new(UPoly::from_i64s(&[0, 0, 0, 0, 1]), (r("0"), r("0"))),
            Err(Error::Singular(_))
        ));
        assert_eq!(
            QuarticModel::new(UPoly::from_i64s(&[1, 4, 5, -2, 1]), (r("0"), r("2"))),
            Err(Error::NotOnCurve)
        );
        // P⁴ - 1 with base (1, 0): branch point.
        let c = QuarticModel::new(UPoly::from_i64s(&[-1, 0, 0, 0, 1]), (r("1"), r("0"))).unwrap();
        assert_eq!(quartic_to_weierstrass(&c).unwrap_err(), Error::BranchPoint);
    }

    #[test]
    fn maps_base_to_infinity_and_round_trips() {
        let c = sample();
        let (e, pair) = quartic_to_weierstrass(&c).unwrap();
        assert_eq!(
            pair.forward(&c, &r("0"), &r("1")).unwrap(),
            CurvePoint::Infinity
        );
        let opp = pair.forward(&c, &r("0"), &r("-1")).unwrap();
        assert!(e.contains(&opp));
        assert_eq!(pair.backward(&opp).unwrap(), (r("0"), r("-1")));
        // H(1) = 9.
        for pt in [(r("1"), r("3")), (r("1"), r("-3"))] {
            let w = pair.forward(&c, &pt.0, &pt.1).unwrap();
            assert!(e.contains(&w));
            assert_eq!(pair.backward(&w).unwrap(), pt);
        }
        pair.verify_round_trip(&c).unwrap();
    }

    #[test]
    fn cubic_with_branch_base() {
        // S² = P³ - P, base (0, 0).
        let c = QuarticModel::new(UPoly::from_i64s(&[0, -1, 0, 1]), (r("0"), r("0"))).unwrap();
        let (e, pair) = quartic_to_weierstrass(&c).unwrap();
        assert_eq!(e.j_invariant(), r("1728"));
        pair.verify_round_trip(&c).unwrap();
        let w = pair.forward(&c, &r("1"), &r("0")).unwrap();
        assert_eq!(pair.backward(&w).unwrap(), (r("1"), r("0")));
        let inf = pair.infinity_image().unwrap();
        assert!(matches!(pair.backward(&inf), Err(Error::Exceptional(_))));
    }

    #[test]
    fn cubic_with_square_base() {
        // S² = P³ + 1 (base (0, 1)) is Y² = X³ + 1 with j = 0.
        let c = QuarticModel::new(UPoly::from_i64s(&[1, 0, 0, 1]), (r("0"), r("1"))).unwrap();
        let (e, pair) = quartic_to_weierstrass(&c).unwrap();
        assert_eq!(e.j_invariant(), r("0"));
        pair.verify_round_trip(&c).unwrap();
    }

    #[test]
    fn euler_agrees_with_group_route() {
        let c = sample();
        for pt in [(r("0"), r("1")), (r("1"), r("3")), (r("1"), r("-3"))] {
            let a = euler_double(&c, &pt).unwrap();
            let b = euler_double_via_group(&c, &pt).unwrap();
            assert_eq!(a, b);
            assert!(c.contains(&a.0, &a.1));
        }
        let cubic = QuarticModel::new(UPoly::from_i64s(&[1, 0, 0, 1]), (r("0"), r("1"))).unwrap();
        let pt = (r("2"), r("3"));
        assert_eq!(
            euler_double(&cubic, &pt).unwrap(),
            euler_double_via_group(&cubic, &pt).unwrap()
        );
    }

    #[test]
    fn euler_errors() {
        let c = QuarticModel::new(UPoly::from_i64s(&[-1, 0, 0, 0, 1]), (r("1"), r("0"))).unwrap();
        assert_eq!(euler_double(&c, &(r("1"), r("0"))), Err(Error::BranchPoint));
        // H = (P² + 1)² + P³ agrees with (P² + 1)² to third order at P = 0,
        // so the tangent parabola has α² = h4.
        let c = QuarticModel::new(UPoly::from_i64s(&[1, 0, 2, 1, 1]), (r("0"), r("1"))).unwrap();
        assert!(matches!(
            euler_double(&c, &(r("0"), r("1"))),
            Err(Error::PointAtInfinity(_))
        ));
    }

    #[test]
    fn group_operations_on_quartic() {
        let c = sample();
        let pt = (r("1"), r("3"));
        assert_eq!(quartic_group_op(&c, &pt, None, 1).unwrap(), pt);
        let two = quartic_group_op(&c, &pt, None, 2).unwrap();
        assert_eq!(quartic_group_op(&c, &pt, Some(&pt), 0).unwrap(), two);
        assert!(c.contains(&two.0, &two.1));
    }
}
