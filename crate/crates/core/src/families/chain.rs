use log::{debug, warn};
use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::curves::{
    mazur_check, torsion_certificate, CurvePoint, MazurVerdict, QuarticGroup, QuarticModel,
    TorsionVerdict, WeierstrassCurve,
};
use crate::error::{Error, Result};
use crate::exactalg::{Field, Poly, RatFun, Rational};
use crate::symfun::{reciprocal_extend, sigma, u_coeffs};

use super::solution::{Provenance, SolutionTuple, SystemSpec};

/// Default number of chain elements; point heights grow quadratically in
/// the multiplier, so long chains get expensive quickly.
pub const DEFAULT_CHAIN_LIMIT: usize = 12;

/// Coefficient fields the chain construction runs over: `Q` for a numeric
/// `q` and `Q(q)` for the symbolic one. They differ in how infinite order
/// of the working point is certified.
pub trait ChainField: Field + Serialize + DeserializeOwned {
    /// Returns a short reason on success, [`Error::CannotCertify`] otherwise.
    fn certify_infinite_order(e: &WeierstrassCurve<Self>, w: &CurvePoint<Self>) -> Result<String>;
}

impl ChainField for Rational {
    fn certify_infinite_order(e: &WeierstrassCurve<Self>, w: &CurvePoint<Self>) -> Result<String> {
        match mazur_check(e, w)? {
            MazurVerdict::InfiniteOrder => {
                Ok("no multiple [k]W with k <= 12 is the identity".into())
            }
            MazurVerdict::FiniteOrder(k) => Err(Error::CannotCertify(format!("W has order {k}"))),
        }
    }
}

impl ChainField for RatFun {
    fn certify_infinite_order(e: &WeierstrassCurve<Self>, w: &CurvePoint<Self>) -> Result<String> {
        match torsion_certificate(e, w)? {
            TorsionVerdict::InfiniteOrder(reason) => Ok(reason),
            v => Err(Error::CannotCertify(format!("torsion test gave {v:?}"))),
        }
    }
}

/// Curve data of a non-degenerate pipeline.
#[derive(Clone, Debug)]
pub struct CurveStage<F: Field> {
    /// `S² = H(P)` with its base point, the Weierstrass model and the maps.
    pub group: QuarticGroup<F>,
    /// Point generating the chain, and its image on the Weierstrass model.
    pub chain_point: (F, F),
    pub w: CurvePoint<F>,
    /// The two points coming from the known solutions `(p, q)` and `(1/p, 1/q)`.
    pub u: (F, F),
    pub v: (F, F),
}

#[derive(Clone, Debug)]
pub enum Stage<F: Field> {
    Curve(Box<CurveStage<F>>),
    /// `a0 = a1 = a2 = 0`: every `(P, Q)` solves the equation.
    Parametric,
}

/// Everything derived from `(i, n, t, p, q)`: the quadratic
/// `a0(P)·Q² + a1(P)·Q + a2(P) = 0`, the curve `S² = a1² - 4·a0²` and its
/// Weierstrass model.
#[derive(Clone, Debug)]
pub struct PipelineState<F: Field> {
    pub i: usize,
    pub n: usize,
    pub t: Vec<Rational>,
    pub p: Rational,
    pub q: F,
    pub u: [F; 5],
    pub a0: Poly<F>,
    pub a1: Poly<F>,
    pub a2: Poly<F>,
    /// The common value `a` of `σ_i` and `σ_{2n-i}`.
    pub target: F,
    pub stage: Stage<F>,
}

impl<F: Field> PipelineState<F> {
    pub fn h(&self) -> Poly<F> {
        &self.a1 * &self.a1 - &(&self.a0 * &self.a0).scale(&F::from_i64(4))
    }

    pub fn curve_stage(&self) -> Result<&CurveStage<F>> {
        match &self.stage {
            Stage::Curve(c) => Ok(c),
            Stage::Parametric => Err(Error::Degenerate(
                "quadratic degenerates to linear; no curve attached".into(),
            )),
        }
    }

    pub fn model(&self) -> Result<&QuarticModel<F>> {
        Ok(&self.curve_stage()?.group.model)
    }

    pub fn spec(&self) -> SystemSpec<F> {
        SystemSpec::SymmetricTriple {
            n: self.n,
            i: self.i,
            targets: [self.target.clone(), self.target.clone(), F::one()],
        }
    }

    /// `S` on the branch through a solution `(P, Q)`: `S = 2·a0(P)·Q + a1(P)`.
    pub fn lift_solution(&self, p: &F, q: &F) -> (F, F) {
        let s = F::from_i64(2) * &self.a0.eval(p) * q + &self.a1.eval(p);
        (p.clone(), s)
    }

    fn tuple(&self, p: &F, q: &F) -> Result<Vec<F>> {
        let mut base: Vec<F> = self.t.iter().map(F::from_rational).collect();
        base.push(p.clone());
        base.push(q.clone());
        reciprocal_extend(&base)
    }
}

/// Builds the pipeline for the system `σ_i = σ_{2n-i} = a`, `σ_{2n} = 1`
/// with the known solution `(t, p, q)`.
pub fn build_pipeline<F: Field>(
    i: usize,
    n: usize,
    t: &[Rational],
    p: &Rational,
    q: F,
) -> Result<PipelineState<F>> {
    if n < 2 || i < 1 || i > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= i <= n and n >= 2, got i = {i}, n = {n}"
        )));
    }
    if t.len() != n - 2 {
        return Err(Error::InvalidParameter(format!(
            "expected {} values of t, got {}",
            n - 2,
            t.len()
        )));
    }
    if let Some(k) = t.iter().position(Field::is_zero) {
        return Err(Error::ZeroEntry(k));
    }
    if p.is_zero() || p.square().is_one() {
        return Err(Error::InvalidParameter("p must not be 0, 1 or -1".into()));
    }
    if q.is_zero() {
        return Err(Error::InvalidParameter("q must be nonzero".into()));
    }

    let tf: Vec<F> = t.iter().map(F::from_rational).collect();
    let u = u_coeffs(i as i64, &tf)?;
    let pf = F::from_rational(p);
    let pq = pf.clone() * &q;
    let u13 = u[1].clone() + &u[3];
    let one = F::one();

    let a0 = Poly::from_coeffs(vec![u[2].clone(), u13.clone(), u[2].clone()]).scale(&pq);
    let mid = (pq.square() + &pf.square() + &q.square() + &one) * &u[2]
        + &(u13.clone() * &(pf.clone() + &q) * &(pq.clone() + &one));
    let a1 = Poly::from_coeffs(vec![pq.clone() * &u13, -mid, pq.clone() * &u13]);
    let a2 = a0.clone();

    let mut state = PipelineState {
        i,
        n,
        t: t.to_vec(),
        p: p.clone(),
        q: q.clone(),
        u: u.clone(),
        a0,
        a1,
        a2,
        target: F::zero(),
        stage: Stage::Parametric,
    };
    state.target = sigma(i as i64, &state.tuple(&pf, &q)?);

    // The known solution must be a root of the quadratic.
    let residual =
        state.a0.eval(&pf) * &q.square() + &(state.a1.eval(&pf) * &q) + &state.a2.eval(&pf);
    if !residual.is_zero() {
        return Err(Error::IdentityViolated(format!("F_p(q) = {residual}")));
    }

    if state.a0.is_zero() {
        debug!("a0 vanishes identically; parametric family");
        return Ok(state);
    }

    let h = state.h();
    if h.degree().is_none_or(|d| d < 3) || h.discriminant()?.is_zero() {
        return Err(Error::Degenerate(
            "degenerate curve, choose different parameters".into(),
        ));
    }
    let pu = state.lift_solution(&pf, &q);
    let pinv = pf.inv()?;
    let pv = state.lift_solution(&pinv, &q.inv()?);
    // With u2 = 0 the curve passes through (0, a1(0)), a convenient base
    // that keeps U as the chain point. Otherwise U is the base; V itself is
    // then 2-torsion, because (P, S) ↦ (1/P, -S/P²) acts as a translation,
    // so the chain runs through its mirror image (1/p, S) with Q = q.
    let (base, chain_point) = if u[2].is_zero() {
        ((F::zero(), state.a1.coeff(0)), pu.clone())
    } else {
        (pu.clone(), (pv.0.clone(), -pv.1.clone()))
    };
    let model = QuarticModel::new(h, base).map_err(|e| match e {
        Error::Singular(_) => {
            Error::Degenerate("degenerate curve, choose different parameters".into())
        }
        e => e,
    })?;
    let group = QuarticGroup::new(model)?;
    let w = group.to_curve(&chain_point)?;
    state.stage = Stage::Curve(Box::new(CurveStage {
        group,
        chain_point,
        w,
        u: pu,
        v: pv,
    }));
    Ok(state)
}

pub fn build_pipeline_numeric(
    i: usize,
    n: usize,
    t: &[Rational],
    p: &Rational,
    q0: &Rational,
) -> Result<PipelineState<Rational>> {
    build_pipeline(i, n, t, p, q0.clone())
}

pub fn build_pipeline_symbolic(
    i: usize,
    n: usize,
    t: &[Rational],
    p: &Rational,
) -> Result<PipelineState<RatFun>> {
    build_pipeline(i, n, t, p, RatFun::q())
}

/// `Q = (S - a1(P)) / (2·a0(P))`, the root of `F_P` on the branch of `S`.
pub fn solve_q<F: Field>(state: &PipelineState<F>, p: &F, s: &F) -> Result<F> {
    let stage = state.curve_stage()?;
    if !stage.group.model.contains(p, s) {
        return Err(Error::NotOnCurve);
    }
    let a0p = state.a0.eval(p);
    if a0p.is_zero() {
        return Err(Error::InvalidParameter(format!("a0 vanishes at P = {p}")));
    }
    let q = (s.clone() - &state.a1.eval(p)).checked_div(&(F::from_i64(2) * &a0p))?;
    let residual = a0p * &q.square() + &(state.a1.eval(p) * &q) + &state.a2.eval(p);
    if !residual.is_zero() {
        return Err(Error::IdentityViolated(format!("F_P(Q) = {residual}")));
    }
    Ok(q)
}

fn same_multiset<F: PartialEq>(a: &[F], b: &[F]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    a.iter().all(|x| {
        let hit = (0..b.len()).find(|&k| !used[k] && b[k] == *x);
        hit.map(|k| used[k] = true).is_some()
    })
}

/// Certifies that the chain point has infinite order, then turns `j·W` for
/// `j = 2..=count+1` into solutions. Multiples whose preimage is exceptional
/// or gives a zero entry are skipped with a log message, as are repeats.
pub fn gen_symmetric_chain<F: ChainField>(
    state: &PipelineState<F>,
    count: usize,
) -> Result<Vec<SolutionTuple<F>>> {
    if count == 0 {
        return Ok(Vec::new());
    }
    let stage = match &state.stage {
        Stage::Parametric => return parametric_chain(state, count),
        Stage::Curve(c) => c,
    };
    let e = &stage.group.curve;
    let reason = F::certify_infinite_order(e, &stage.w)?;
    debug!("W has infinite order: {reason}");

    let mut multiples = Vec::with_capacity(count);
    let mut acc = stage.w.clone();
    for _ in 0..count {
        acc = e.add(&acc, &stage.w)?;
        multiples.push(acc.clone());
    }

    let candidates: Vec<Option<SolutionTuple<F>>> = multiples
        .par_iter()
        .enumerate()
        .map(|(k, wj)| {
            let j = k + 2;
            match chain_element(state, stage, j, wj) {
                Ok(sol) => Ok(Some(sol)),
                Err(
                    err @ (Error::Exceptional(_)
                    | Error::PointAtInfinity(_)
                    | Error::ZeroEntry(_)
                    | Error::InvalidParameter(_)),
                ) => {
                    warn!("skipping j = {j}: {err}");
                    Ok(None)
                }
                Err(err) => Err(err),
            }
        })
        .collect::<Result<_>>()?;

    let mut out: Vec<SolutionTuple<F>> = Vec::new();
    for sol in candidates.into_iter().flatten() {
        if out.iter().any(|o| same_multiset(&o.values, &sol.values)) {
            warn!(
                "skipping repeated tuple from {:?}",
                sol.provenance.params.get("j")
            );
            continue;
        }
        out.push(sol);
    }
    Ok(out)
}

fn chain_element<F: Field>(
    state: &PipelineState<F>,
    stage: &CurveStage<F>,
    j: usize,
    wj: &CurvePoint<F>,
) -> Result<SolutionTuple<F>> {
    let (p, s) = stage.group.pair.backward(wj)?;
    let q = solve_q(state, &p, &s)?;
    if p.is_zero() {
        return Err(Error::ZeroEntry(state.n - 2));
    }
    if q.is_zero() {
        return Err(Error::ZeroEntry(state.n - 1));
    }
    let values = state.tuple(&p, &q)?;
    let prov = Provenance::new("chain", chain_params(state, Some(j)));
    SolutionTuple::certify(state.spec(), values, prov)
}

fn chain_params<F: Field>(
    state: &PipelineState<F>,
    j: Option<usize>,
) -> Vec<(&'static str, String)> {
    let ts: Vec<String> = state.t.iter().map(ToString::to_string).collect();
    let mut v = vec![
        ("i", state.i.to_string()),
        ("n", state.n.to_string()),
        ("t", ts.join(",")),
        ("p", state.p.to_string()),
        ("q", state.q.to_string()),
    ];
    if let Some(j) = j {
        v.push(("j", j.to_string()));
    }
    v
}

fn parametric_chain<F: Field>(
    state: &PipelineState<F>,
    count: usize,
) -> Result<Vec<SolutionTuple<F>>> {
    let pf = F::from_rational(&state.p);
    let mut out = Vec::new();
    let mut j = 1i64;
    while out.len() < count {
        let shift = F::from_i64(j);
        let (p, q) = (pf.clone() + &shift, state.q.clone() + &shift);
        j += 1;
        if p.is_zero() || q.is_zero() {
            continue;
        }
        let mut params = chain_params(state, None);
        params.push(("shift", j.to_string()));
        let values = state.tuple(&p, &q)?;
        out.push(SolutionTuple::certify(
            state.spec(),
            values,
            Provenance::new("parametric", params),
        )?);
    }
    Ok(out)
}
