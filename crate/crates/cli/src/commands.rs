use std::fs;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};
use symtriple::curves::{quartic_to_weierstrass, CurvePoint, QuarticModel, WeierstrassCurve};
use symtriple::families::{
    build_pipeline_numeric, build_pipeline_symbolic, family_123, family_124, family_24,
    family_m112, gen_symmetric_chain, lift_to_n, make_integer_family, resultant_124_check,
    symbolic_family_certificates, verify_solution, verify_theorem45_identities,
    worked_example_checks, IdentityCheck, SolutionTuple,
};
use symtriple::{Error, Field, Poly, RatFun, Rational};

use crate::randomized;
use crate::{CliError, CurveArgs, GenPowerArgs, GenSymArgs, IdentitiesArgs, Outcome, VerifyArgs};

pub const IDENTITY_GROUPS: [&str; 6] = [
    "reciprocal",
    "expansion",
    "theorem45",
    "families",
    "resultants",
    "example",
];

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Splits a comma-separated list; the empty string is the empty list.
fn parse_list<T: FromStr<Err = Error>>(s: &str) -> Result<Vec<T>, CliError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse().map_err(CliError::from))
        .collect()
}

fn required<T: Clone>(v: &Option<T>, flag: &str) -> Result<T, CliError> {
    v.clone()
        .ok_or_else(|| usage(format!("--{flag} is required")))
}

fn tuples<F: Field + Serialize>(sols: &[SolutionTuple<F>]) -> Outcome {
    let failed: Vec<usize> = (0..sols.len())
        .filter(|&k| !verify_solution(&sols[k]).pass)
        .collect();
    for k in &failed {
        log::error!("tuple {k} does not verify");
    }
    let csv = sols
        .iter()
        .map(|s| {
            s.values
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
                + "\n"
        })
        .collect();
    Outcome {
        json: serde_json::to_value(sols).expect("serializable"),
        csv: Some(csv),
        code: if failed.is_empty() { 0 } else { 1 },
    }
}

pub fn gen_sym(a: &GenSymArgs) -> Result<Outcome, CliError> {
    if a.count > a.limit {
        return Err(usage(format!(
            "--count {} exceeds --limit {}",
            a.count, a.limit
        )));
    }
    if a.count == 0 {
        return Ok(tuples::<Rational>(&[]));
    }
    let (i, n, p) = (
        required(&a.i, "i")?,
        required(&a.n, "n")?,
        required(&a.p, "p")?,
    );
    let q = required(&a.q, "q")?;
    let t: Vec<Rational> = parse_list(&a.t)?;
    if q.trim() == "symbolic" {
        let state = build_pipeline_symbolic(i, n, &t, &p)?;
        log::info!("target a = {}", state.target);
        Ok(tuples(&gen_symmetric_chain(&state, a.count)?))
    } else {
        let q: Rational = q.parse()?;
        let state = build_pipeline_numeric(i, n, &t, &p, &q)?;
        log::info!("target a = {}", state.target);
        Ok(tuples(&gen_symmetric_chain(&state, a.count)?))
    }
}

pub fn gen_power(a: &GenPowerArgs) -> Result<Outcome, CliError> {
    let ts: Vec<Rational> = parse_list(&a.t)?;
    if ts.is_empty() {
        return Err(usage("--t needs at least one value"));
    }
    let mut sols = ts
        .iter()
        .map(|t| -> Result<_, CliError> {
            Ok(match a.triple.as_str() {
                "123" => family_123(&required(&a.a, "a")?, &required(&a.d, "d")?, t)?,
                "124" => family_124(&required(&a.a, "a")?, &required(&a.d, "d")?, t)?,
                "m112" => family_m112(&required(&a.a, "a")?, &required(&a.b, "b")?, t)?,
                "24" => family_24(&required(&a.d, "d")?, t)?,
                other => return Err(usage(format!("unknown triple {other}"))),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(pad) = &a.lift {
        let pad: Vec<Rational> = parse_list(pad)?;
        sols = sols
            .iter()
            .map(|s| lift_to_n(s, &pad))
            .collect::<Result<_, _>>()?;
    }
    if a.integerize {
        let m = match &a.divisible_by {
            Some(s) => {
                let r: Rational = s.parse()?;
                Some(
                    r.to_integer()
                        .ok_or_else(|| usage("--divisible-by must be an integer"))?,
                )
            }
            None => None,
        };
        let family = make_integer_family(&sols, m.as_ref())?;
        log::info!("scaled by {}", family.scale);
        if !family.primitive {
            log::warn!("divisibility forced an extra factor; the family is not primitive");
        }
        sols = family.solutions;
    }
    Ok(tuples(&sols))
}

fn report_one<F: Field>(index: usize, sol: &SolutionTuple<F>) -> Value {
    let report = verify_solution(sol);
    let mut v = serde_json::to_value(&report).expect("serializable");
    v["index"] = json!(index);
    v["field"] = json!(F::NAME);
    v
}

pub fn verify(a: &VerifyArgs) -> Result<Outcome, CliError> {
    let text = fs::read_to_string(&a.file)
        .map_err(|e| CliError::Io(format!("{}: {e}", a.file.display())))?;
    let doc: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    let items = match doc {
        Value::Array(items) => items,
        single @ Value::Object(_) => vec![single],
        _ => return Err(Error::Parse("expected a list of solution tuples".into()).into()),
    };
    let mut results = Vec::with_capacity(items.len());
    for (k, item) in items.into_iter().enumerate() {
        let r = match serde_json::from_value::<SolutionTuple<Rational>>(item.clone()) {
            Ok(sol) => report_one(k, &sol),
            Err(_) => match serde_json::from_value::<SolutionTuple<RatFun>>(item) {
                Ok(sol) => report_one(k, &sol),
                Err(e) => return Err(Error::Parse(format!("tuple {k}: {e}")).into()),
            },
        };
        results.push(r);
    }
    let failures: Vec<String> = results
        .iter()
        .filter(|r| r["pass"] == json!(false))
        .flat_map(|r| {
            let k = r["index"].clone();
            let bad: Vec<String> = r["constraints"]
                .as_array()
                .into_iter()
                .flatten()
                .filter(|c| c["pass"] == json!(false))
                .map(|c| format!("tuple {k}: {}", c["name"].as_str().unwrap_or("?")))
                .chain(
                    r["problems"]
                        .as_array()
                        .into_iter()
                        .flatten()
                        .map(|p| format!("tuple {k}: {}", p.as_str().unwrap_or("?"))),
                )
                .collect();
            bad
        })
        .collect();
    for f in &failures {
        log::warn!("{f}");
    }
    let pass = failures.is_empty();
    Ok(Outcome {
        json: json!({"pass": pass, "count": results.len(), "failures": failures, "results": results}),
        csv: None,
        code: if pass { 0 } else { 1 },
    })
}

fn run_group(name: &str, seed: u64) -> Result<Vec<IdentityCheck>, CliError> {
    Ok(match name {
        "reciprocal" => randomized::reciprocal_checks(seed)?,
        "expansion" => randomized::expansion_checks(seed)?,
        "theorem45" => verify_theorem45_identities()?.checks,
        "families" => symbolic_family_certificates()?,
        "resultants" => vec![resultant_124_check()?],
        "example" => worked_example_checks()?,
        other => return Err(usage(format!("unknown identity group {other}"))),
    })
}

pub fn identities(a: &IdentitiesArgs) -> Result<Outcome, CliError> {
    let names: Vec<&str> = match &a.only {
        Some(n) => vec![n.as_str()],
        None => IDENTITY_GROUPS.to_vec(),
    };
    let mut groups = Vec::new();
    let mut all = true;
    for name in names {
        let checks = run_group(name, a.seed)?;
        let pass = checks.iter().all(|c| c.pass);
        for c in checks.iter().filter(|c| !c.pass) {
            log::warn!("{name}/{} failed: {}", c.name, c.residual);
        }
        all &= pass;
        groups.push(json!({"name": name, "pass": pass, "checks": checks}));
    }
    Ok(Outcome {
        json: json!({"pass": all, "seed": a.seed.to_string(), "groups": groups}),
        csv: None,
        code: if all { 0 } else { 1 },
    })
}

fn pair<F: FromStr<Err = Error>>(s: &str, flag: &str) -> Result<(F, F), CliError> {
    let parts: Vec<F> = parse_list(s)?;
    match <[F; 2]>::try_from(parts) {
        Ok([x, y]) => Ok((x, y)),
        Err(_) => Err(usage(format!(
            "--{flag} expects two comma-separated values"
        ))),
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn quartic_report<F>(coeffs: &str, base: &str) -> Result<Value, CliError>
where
    F: Field + Serialize + FromStr<Err = Error>,
{
    let mut cs: Vec<F> = parse_list(coeffs)?;
    if !(4..=5).contains(&cs.len()) {
        return Err(usage(
            "--quartic expects h4,h3,h2,h1,h0 (or h3,..,h0 for a cubic)",
        ));
    }
    let listed: Vec<Value> = cs.iter().map(to_value).collect();
    cs.reverse();
    let (p0, s0) = pair::<F>(base, "base")?;
    let model = QuarticModel::new(Poly::from_coeffs(cs), (p0, s0))?;
    let (e, maps) = quartic_to_weierstrass(&model)?;
    let l = maps.long_model();
    Ok(json!({
        "field": F::NAME,
        "quartic": listed,
        "base": [to_value(&model.base().0), to_value(&model.base().1)],
        "long_model": {
            "a1": to_value(&l.a1), "a2": to_value(&l.a2), "a3": to_value(&l.a3),
            "a4": to_value(&l.a4), "a6": to_value(&l.a6),
        },
        "model": {"A": to_value(e.a()), "B": to_value(e.b())},
        "j_invariant": to_value(&e.j_invariant()),
        "discriminant": to_value(&e.discriminant()),
        "base_image": "infinity",
        "infinity_image": maps.infinity_image().map(|p| to_value(&p)),
        "exceptional_set": maps.exceptional_set(),
    }))
}

fn multiple_report<F>(k: i64, point: &str, a: &str, b: &str) -> Result<Value, CliError>
where
    F: Field + Serialize + FromStr<Err = Error>,
{
    let e = WeierstrassCurve::new(a.parse::<F>()?, b.parse::<F>()?)?;
    let pt = if point.trim() == "infinity" {
        CurvePoint::Infinity
    } else {
        let (x, y) = pair::<F>(point, "point")?;
        e.point(x, y)?
    };
    let result = e.mul(k, &pt)?;
    Ok(json!({
        "curve": e.to_json(&[]),
        "point": to_value(&pt),
        "k": k,
        "result": to_value(&result),
    }))
}

pub fn curve(a: &CurveArgs) -> Result<Outcome, CliError> {
    let symbolic = a.field == "q";
    let json = match (&a.quartic, a.mul) {
        (Some(h), None) => {
            let base = a
                .base
                .as_deref()
                .ok_or_else(|| usage("--quartic needs --base"))?;
            if symbolic {
                quartic_report::<RatFun>(h, base)?
            } else {
                quartic_report::<Rational>(h, base)?
            }
        }
        (None, Some(k)) => {
            let point = required(&a.point, "point")?;
            let (ca, cb) = (required(&a.a, "A")?, required(&a.b, "B")?);
            if symbolic {
                multiple_report::<RatFun>(k, &point, &ca, &cb)?
            } else {
                multiple_report::<Rational>(k, &point, &ca, &cb)?
            }
        }
        _ => {
            return Err(usage(
                "curve needs either --quartic/--base or --mul/--point/--A/--B",
            ))
        }
    };
    Ok(Outcome {
        json,
        csv: None,
        code: 0,
    })
}
