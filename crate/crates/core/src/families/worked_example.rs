//! The reference pipeline `i = 1, n = 3, t = (1), p = 2` over `Q(q)`,
//! together with the closed forms known for it.

use crate::curves::{
    torsion_certificate, CurvePoint, TorsionVerdict, WeierstrassCurve, NO_DIVISIBILITY,
};
use crate::error::Result;
use crate::exactalg::{Field, Poly, RatFun, Rational};
use crate::symfun::{reciprocal_extend, sigma};

use super::chain::{build_pipeline_symbolic, solve_q, PipelineState};
use super::identities::IdentityCheck;

fn rf(s: &str) -> RatFun {
    s.parse().expect("well-formed literal")
}

/// Published data for the reference pipeline.
pub struct WorkedExample {
    pub state: PipelineState<RatFun>,
    /// `A` and `B` as printed.
    pub a: RatFun,
    pub b: RatFun,
    /// `Y² = X³ + 27A·X - 54B`, the model as printed.
    pub printed_model: WeierstrassCurve<RatFun>,
    /// `Y² = X³ - 27(A + 180q⁴)·X + 54B`, the model the printed points,
    /// discriminant and map actually belong to.
    pub corrected_model: WeierstrassCurve<RatFun>,
    /// `-(4a³ + 27b²)` for the corrected model, in factored form.
    pub delta: RatFun,
    pub t: CurvePoint<RatFun>,
    pub w: CurvePoint<RatFun>,
    /// `(P, Q)` for the second and third multiples.
    pub pairs: [(RatFun, RatFun); 2],
}

impl WorkedExample {
    pub fn new() -> Result<Self> {
        let state = build_pipeline_symbolic(1, 3, &[Rational::from(1)], &Rational::from(2))?;
        let a = rf("16q^8+160q^7+408q^6+200q^5-115q^4+200q^3+408q^2+160q+16");
        let b = rf("4q^4+20q^3+q^2+20q+4") * &(a.clone() - &rf("204q^4"));
        let printed_model =
            WeierstrassCurve::new(RatFun::from_i64(27) * &a, RatFun::from_i64(-54) * &b)?;
        let corrected_model = WeierstrassCurve::new(
            RatFun::from_i64(-27) * &(a.clone() + &rf("180q^4")),
            RatFun::from_i64(54) * &b,
        )?;
        let delta = rf("2^16*3^12*q^8*(q+2)^2*(2q+1)^2*(2q^2-3q+2)*(2q^2+13q+2)");
        let t = CurvePoint::new(rf("3(4q^4+20q^3+q^2+20q+4)"), RatFun::zero());
        let w = CurvePoint::new(rf("3(4q^4+20q^3+q^2-4q+4)"), rf("-216(q-2)q(2q+1)"));
        let pairs = [
            (
                rf("3(q-2)q/(2(q-1)(q+1)(2q-1))"),
                rf("-3q(2q-1)/(2(q-2)(q-1)(q+1))"),
            ),
            (
                rf("(4q^3-2q^2-7q+8)(8q^3-7q^2-2q+4)/(2(q^3+4q^2-4q+2)(2q^3-4q^2+4q+1))"),
                rf("(q^3+4q^2-4q+2)(8q^3-7q^2-2q+4)/(q(2q^3-4q^2+4q+1)(4q^3-2q^2-7q+8))"),
            ),
        ];
        Ok(WorkedExample {
            state,
            a,
            b,
            printed_model,
            corrected_model,
            delta,
            t,
            w,
            pairs,
        })
    }

    /// The displayed quartic `H(P)`.
    pub fn expected_h() -> Poly<RatFun> {
        let outer = rf("4q^2");
        let odd = rf("-4q(q+2)(2q+1)");
        Poly::from_coeffs(vec![
            outer.clone(),
            odd.clone(),
            rf("4q^4+20q^3+25q^2+20q+4"),
            odd,
            outer,
        ])
    }

    /// `(1, 1, P, Q, 1/P, 1/Q)`.
    pub fn tuple(p: &RatFun, q: &RatFun) -> Result<Vec<RatFun>> {
        reciprocal_extend(&[RatFun::one(), p.clone(), q.clone()])
    }

    /// Multiples `k·U` of the chain point, pulled back to `(P, Q)`.
    pub fn multiple(&self, k: i64) -> Result<(RatFun, RatFun)> {
        let stage = self.state.curve_stage()?;
        let (p, s) = stage.group.mul(k, &stage.chain_point)?;
        let q = solve_q(&self.state, &p, &s)?;
        Ok((p, q))
    }
}

fn same_multiset(a: &[RatFun], b: &[RatFun]) -> bool {
    let mut rest = b.to_vec();
    a.len() == b.len()
        && a.iter().all(|x| match rest.iter().position(|y| y == x) {
            Some(k) => {
                rest.swap_remove(k);
                true
            }
            None => false,
        })
}

fn check(
    name: &str,
    statement: &str,
    pass: bool,
    detail: impl FnOnce() -> String,
) -> IdentityCheck {
    IdentityCheck::outcome(
        name,
        statement,
        pass,
        if pass { String::new() } else { detail() },
    )
}

/// Self-consistent regression checks of the reference pipeline: curve,
/// target, Weierstrass model, torsion verdicts and the first chain
/// elements (compared as tuples).
pub fn worked_example_checks() -> Result<Vec<IdentityCheck>> {
    let ex = WorkedExample::new()?;
    let st = &ex.state;
    let stage = st.curve_stage()?;
    let e = &stage.group.curve;
    let mut out = Vec::new();

    let h = st.h();
    out.push(check(
        "curve",
        "S^2 = H(P) as displayed",
        h == WorkedExample::expected_h(),
        || format!("H = {h:?}"),
    ));
    let a = rf("(2q^2+9q+2)/(2q)");
    out.push(check(
        "target",
        "a = (2q^2+9q+2)/(2q)",
        st.target == a,
        || st.target.to_string(),
    ));
    out.push(check(
        "model",
        "Y^2 = X^3 - 27(A+180q^4)X + 54B",
        *e == ex.corrected_model,
        || e.to_string(),
    ));
    let disc = e.discriminant();
    let delta_ok = disc == RatFun::from_i64(16) * &ex.delta;
    out.push(check(
        "discriminant",
        "-(4A^3+27B^2) factors as displayed",
        delta_ok,
        || disc.to_string(),
    ));
    out.push(check("image", "phi(U) = W", stage.w == ex.w, || {
        stage.w.to_string()
    }));
    let vt = torsion_certificate(e, &ex.t)?;
    out.push(check(
        "two_torsion",
        "T is a point of order two",
        vt == TorsionVerdict::TwoTorsion,
        || format!("{vt:?}"),
    ));
    let vw = torsion_certificate(e, &ex.w)?;
    let expected = TorsionVerdict::InfiniteOrder(NO_DIVISIBILITY.into());
    out.push(check(
        "infinite_order",
        "Y(W)^2 does not divide the discriminant",
        vw == expected,
        || format!("{vw:?}"),
    ));
    for (k, (pp, qp)) in (2..).zip(&ex.pairs) {
        let (p, q) = ex.multiple(k)?;
        let ours = WorkedExample::tuple(&p, &q)?;
        let theirs = WorkedExample::tuple(pp, qp)?;
        out.push(check(
            &format!("multiple_{k}"),
            &format!("[{k}]U gives the displayed solution (as a tuple)"),
            same_multiset(&ours, &theirs),
            || format!("P = {p}, Q = {q}"),
        ));
        let s1 = sigma(1, &theirs);
        out.push(check(
            &format!("sigma_{k}"),
            &format!("sigma_1 of the displayed [{k}]W tuple equals a"),
            s1 == a,
            || s1.to_string(),
        ));
    }
    Ok(out)
}
