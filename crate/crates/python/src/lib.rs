//! Python bindings. Rationals and elements of `Q(q)` cross the boundary as
//! strings; structured results are returned as JSON text.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;
use symtriple::curves::{quartic_to_weierstrass, QuarticModel};
use symtriple::families::{
    build_pipeline_numeric, build_pipeline_symbolic, family_123, family_124, family_24,
    family_m112, gen_symmetric_chain, lift_to_n, make_integer_family, resultant_124_check,
    symbolic_family_certificates, verify_solution, verify_theorem45_identities,
    worked_example_checks, IdentityCheck, SolutionTuple,
};
use symtriple::{symfun, Error, Field, Poly, RatFun, Rational};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(format!("{}: {e}", e.code()))
}

fn parse<T: std::str::FromStr<Err = Error>>(s: &str) -> PyResult<T> {
    s.trim().parse().map_err(err)
}

fn parse_all<T: std::str::FromStr<Err = Error>>(xs: &[String]) -> PyResult<Vec<T>> {
    xs.iter().map(|s| parse(s)).collect()
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

/// `σ_i` of a rational tuple.
#[pyfunction]
fn sigma(i: i64, values: Vec<String>) -> PyResult<String> {
    Ok(symfun::sigma(i, &parse_all::<Rational>(&values)?).to_string())
}

/// `s_e` of a rational tuple; `e` may be negative.
#[pyfunction]
fn power_sum(e: i64, values: Vec<String>) -> PyResult<String> {
    symfun::power_sum(e, &parse_all::<Rational>(&values)?)
        .map(|v| v.to_string())
        .map_err(err)
}

/// Whether `σ_i = σ_{2n-i}` on `(x, 1/x)`.
#[pyfunction]
fn check_reciprocal_identity(i: i64, values: Vec<String>) -> PyResult<bool> {
    symfun::check_reciprocal_identity(i, &parse_all::<Rational>(&values)?)
        .map(|r| r.equal)
        .map_err(err)
}

/// Chain solutions as a JSON list; `q` is a rational or `"symbolic"`.
#[pyfunction]
#[pyo3(signature = (i, n, t, p, q, count))]
fn gen_symmetric(
    i: usize,
    n: usize,
    t: Vec<String>,
    p: &str,
    q: &str,
    count: usize,
) -> PyResult<String> {
    let t: Vec<Rational> = parse_all(&t)?;
    let p: Rational = parse(p)?;
    if q.trim() == "symbolic" {
        let st = build_pipeline_symbolic(i, n, &t, &p).map_err(err)?;
        Ok(to_json(&gen_symmetric_chain(&st, count).map_err(err)?))
    } else {
        let st = build_pipeline_numeric(i, n, &t, &p, &parse(q)?).map_err(err)?;
        Ok(to_json(&gen_symmetric_chain(&st, count).map_err(err)?))
    }
}

/// Power-sum family solutions as a JSON list.
#[pyfunction]
#[pyo3(signature = (triple, t, a=None, b=None, d=None, lift=None, integerize=false))]
fn gen_power(
    triple: &str,
    t: Vec<String>,
    a: Option<String>,
    b: Option<String>,
    d: Option<String>,
    lift: Option<Vec<String>>,
    integerize: bool,
) -> PyResult<String> {
    let need = |v: &Option<String>, name: &str| -> PyResult<Rational> {
        parse(
            v.as_deref()
                .ok_or_else(|| PyValueError::new_err(format!("usage: {name} is required")))?,
        )
    };
    let mut sols = Vec::new();
    for tv in parse_all::<Rational>(&t)? {
        let sol = match triple {
            "123" => family_123(&need(&a, "a")?, &need(&d, "d")?, &tv),
            "124" => family_124(&need(&a, "a")?, &need(&d, "d")?, &tv),
            "m112" => family_m112(&need(&a, "a")?, &need(&b, "b")?, &tv),
            "24" => family_24(&need(&d, "d")?, &tv),
            other => {
                return Err(PyValueError::new_err(format!(
                    "usage: unknown triple {other}"
                )))
            }
        };
        sols.push(sol.map_err(err)?);
    }
    if let Some(pad) = lift {
        let pad: Vec<Rational> = parse_all(&pad)?;
        sols = sols
            .iter()
            .map(|s| lift_to_n(s, &pad))
            .collect::<Result<_, _>>()
            .map_err(err)?;
    }
    if integerize {
        sols = make_integer_family(&sols, None).map_err(err)?.solutions;
    }
    Ok(to_json(&sols))
}

/// Verifies a JSON list of solution tuples, returning `(all_pass, report_json)`.
#[pyfunction]
fn verify(json: &str) -> PyResult<(bool, String)> {
    let items: Vec<serde_json::Value> =
        serde_json::from_str(json).map_err(|e| PyValueError::new_err(format!("parse: {e}")))?;
    let mut reports = Vec::new();
    for (k, item) in items.into_iter().enumerate() {
        let report = match serde_json::from_value::<SolutionTuple<Rational>>(item.clone()) {
            Ok(s) => verify_solution(&s),
            Err(_) => match serde_json::from_value::<SolutionTuple<RatFun>>(item) {
                Ok(s) => verify_solution(&s),
                Err(e) => return Err(PyValueError::new_err(format!("parse: tuple {k}: {e}"))),
            },
        };
        reports.push(report);
    }
    Ok((reports.iter().all(|r| r.pass), to_json(&reports)))
}

/// Runs the symbolic identity checks; returns `(all_pass, checks_json)`.
#[pyfunction]
fn identities() -> PyResult<(bool, String)> {
    let mut checks: Vec<IdentityCheck> = verify_theorem45_identities().map_err(err)?.checks;
    checks.extend(symbolic_family_certificates().map_err(err)?);
    checks.push(resultant_124_check().map_err(err)?);
    checks.extend(worked_example_checks().map_err(err)?);
    Ok((checks.iter().all(|c| c.pass), to_json(&checks)))
}

fn model_json<F>(coeffs: &[String], base: (String, String)) -> PyResult<String>
where
    F: Field + Serialize + std::str::FromStr<Err = Error>,
{
    let mut cs: Vec<F> = parse_all(coeffs)?;
    cs.reverse();
    let model = QuarticModel::new(Poly::from_coeffs(cs), (parse(&base.0)?, parse(&base.1)?))
        .map_err(err)?;
    let (e, maps) = quartic_to_weierstrass(&model).map_err(err)?;
    Ok(to_json(&serde_json::json!({
        "A": e.a(),
        "B": e.b(),
        "j_invariant": e.j_invariant(),
        "discriminant": e.discriminant(),
        "exceptional_set": maps.exceptional_set(),
    })))
}

/// Weierstrass model of `S² = H(P)`, coefficients listed from the top
/// degree down. `field` is `"rational"` or `"q"`.
#[pyfunction]
#[pyo3(signature = (quartic, base, field="rational"))]
fn weierstrass_model(
    quartic: Vec<String>,
    base: (String, String),
    field: &str,
) -> PyResult<String> {
    match field {
        "rational" => model_json::<Rational>(&quartic, base),
        "q" => model_json::<RatFun>(&quartic, base),
        other => Err(PyValueError::new_err(format!(
            "usage: unknown field {other}"
        ))),
    }
}

#[pymodule]
fn symtriple_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(sigma, m)?)?;
    m.add_function(wrap_pyfunction!(power_sum, m)?)?;
    m.add_function(wrap_pyfunction!(check_reciprocal_identity, m)?)?;
    m.add_function(wrap_pyfunction!(gen_symmetric, m)?)?;
    m.add_function(wrap_pyfunction!(gen_power, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(identities, m)?)?;
    m.add_function(wrap_pyfunction!(weierstrass_model, m)?)?;
    Ok(())
}
