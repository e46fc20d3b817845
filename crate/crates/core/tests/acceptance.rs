//! Acceptance suite. Every criterion prints one PASS/FAIL line.
//!
//! Two criteria compare against closed forms that are internally
//! inconsistent as printed (a model that does not contain its own points,
//! and ordered pairs related to ours only by a symmetry of the tuple). For
//! those, the literal comparison is run and reported as FAIL, and the
//! consistent variant is run alongside it. The test asserts that exactly
//! these criteria fail and that their consistent variants pass; it runs
//! without the test harness so the report is always printed.

use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symtriple::curves::{
    euler_double, euler_double_via_group, mazur_check, quartic_to_weierstrass, torsion_certificate,
    MazurVerdict, Specialize, TorsionVerdict, NO_DIVISIBILITY,
};
use symtriple::families::{
    build_pipeline_numeric, family_123, family_124, family_24, family_m112, gen_symmetric_chain,
    lift_to_n, make_integer_family, positivity_window, symbolic_family_certificates,
    verify_solution, verify_theorem45_identities, SolutionTuple, SystemSpec, WorkedExample,
};
use symtriple::symfun::{check_reciprocal_identity, power_sum, sigma};
use symtriple::{Error, Field, PolyFrac, RatFun, Rational, Result};

struct Outcome {
    pass: bool,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            pass: true,
            notes: Vec::new(),
        }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.pass = false;
            self.notes.push(format!("failed: {}", what.into()));
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }
}

fn r(s: &str) -> Rational {
    s.parse().unwrap()
}

fn rf(s: &str) -> RatFun {
    s.parse().unwrap()
}

fn random_nonzero(rng: &mut ChaCha8Rng) -> Rational {
    let n: i64 = rng.gen_range(1..=99) * if rng.gen_bool(0.5) { 1 } else { -1 };
    Rational::new(n, rng.gen_range(1..=40)).unwrap()
}

fn same_multiset<F: Field>(a: &[F], b: &[F]) -> bool {
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

/// Twenty specialization points away from `{±1, 2, 1/2, 0, -2, -1/2}`.
fn sweep() -> Vec<Rational> {
    [
        "3", "4", "5", "6", "7", "-3", "-4", "-5", "1/3", "2/3", "3/2", "5/2", "-1/3", "-3/2",
        "-5/3", "7/3", "3/4", "-3/4", "4/3", "-7/2",
    ]
    .iter()
    .map(|s| r(s))
    .collect()
}

fn reciprocal_suite() -> Result<Outcome> {
    let mut out = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=6 {
        for _ in 0..100 {
            let xs: Vec<Rational> = (0..n).map(|_| random_nonzero(&mut rng)).collect();
            for i in 0..=n as i64 {
                out.require(
                    check_reciprocal_identity(i, &xs)?.equal,
                    format!("n = {n}, i = {i}, {xs:?}"),
                );
            }
        }
    }
    let q = RatFun::q();
    for n in 1..=3 {
        let xs: Vec<RatFun> = (0..n)
            .map(|k| {
                (q.clone() + &RatFun::from_i64(k as i64 + 1))
                    .checked_div(&(q.square() + &RatFun::from_i64(2 * k as i64 + 3)))
            })
            .collect::<Result<_>>()?;
        let vars: Vec<PolyFrac> = (1..=n).map(|k| PolyFrac::var(&format!("x{k}"))).collect();
        for i in 0..=n as i64 {
            out.require(
                check_reciprocal_identity(i, &xs)?.equal,
                format!("Q(q), n = {n}, i = {i}"),
            );
            out.require(
                check_reciprocal_identity(i, &vars)?.equal,
                format!("generic, n = {n}, i = {i}"),
            );
        }
    }
    Ok(out)
}

/// The literal check compares with the model exactly as printed; the
/// consistent check uses the model that carries the printed points and
/// discriminant.
fn worked_example_regression(ex: &WorkedExample) -> Result<(Outcome, Outcome)> {
    let mut literal = Outcome::new();
    let mut consistent = Outcome::new();
    let st = &ex.state;
    let h_ok = st.h() == WorkedExample::expected_h();
    literal.require(h_ok, "S^2 = H(P)");
    consistent.require(h_ok, "S^2 = H(P)");

    let (e, _) = quartic_to_weierstrass(st.model()?)?;
    let j = e.j_invariant();
    literal.require(
        j == ex.printed_model.j_invariant(),
        "j equals the j of Y^2 = X^3 + 27A X - 54B",
    );
    literal.note(format!(
        "printed model contains T: {}, contains W: {}",
        ex.printed_model.contains(&ex.t),
        ex.printed_model.contains(&ex.w)
    ));
    consistent.require(
        j == ex.corrected_model.j_invariant(),
        "j equals the j of Y^2 = X^3 - 27(A+180q^4) X + 54B",
    );
    consistent.require(e == ex.corrected_model, "model coefficients");

    let expanded = rf("2^16*3^12*q^8*(q^2+4q+4)*(4q^2+4q+1)*(2q^2-3q+2)*(2q^2+13q+2)");
    let minus = -(RatFun::from_i64(4) * &e.a().pow(3) + &(RatFun::from_i64(27) * &e.b().square()));
    let delta_ok = expanded == ex.delta && minus == ex.delta;
    literal.require(delta_ok, "discriminant factorization");
    consistent.require(delta_ok, "discriminant factorization");
    let printed_minus = -(RatFun::from_i64(4) * &ex.printed_model.a().pow(3)
        + &(RatFun::from_i64(27) * &ex.printed_model.b().square()));
    literal.note(format!(
        "-(4a^3+27b^2) of the printed model matches the displayed factorization: {}",
        printed_minus == ex.delta
    ));
    Ok((literal, consistent))
}

fn chain_regression(ex: &WorkedExample) -> Result<(Outcome, Outcome)> {
    let mut literal = Outcome::new();
    let mut consistent = Outcome::new();
    let a = rf("(2q^2+9q+2)/(2q)");
    for (k, (pp, qp)) in (2..).zip(&ex.pairs) {
        let (p, q) = ex.multiple(k)?;
        literal.require(
            p == *pp && q == *qp,
            format!("[{k}]U = ({pp}, {qp}) as an ordered pair"),
        );
        literal.note(format!("[{k}]U gives P = {p}, Q = {q}"));

        let theirs = WorkedExample::tuple(pp, qp)?;
        let ours = WorkedExample::tuple(&p, &q)?;
        for (label, t) in [("displayed", &theirs), ("computed", &ours)] {
            let ok = sigma(1, t) == a;
            literal.require(ok, format!("sigma_1 of the {label} tuple for k = {k}"));
            consistent.require(ok, format!("sigma_1 of the {label} tuple for k = {k}"));
        }
        consistent.require(
            same_multiset(&ours, &theirs),
            format!("[{k}]U gives the displayed tuple"),
        );
        let (pn, qn) = ex.multiple(-k)?;
        let q_ok = qn == *qp || qn == qp.inv()?;
        consistent.require(
            pn == *pp && q_ok,
            format!("[-{k}]U pulls back to the displayed P"),
        );
    }
    Ok((literal, consistent))
}

fn torsion(ex: &WorkedExample) -> Result<Outcome> {
    let mut out = Outcome::new();
    let e = &ex.state.curve_stage()?.group.curve;
    out.require(*e == ex.corrected_model, "pipeline model");
    out.require(
        torsion_certificate(e, &ex.t)? == TorsionVerdict::TwoTorsion,
        "T is 2-torsion",
    );
    out.require(
        torsion_certificate(e, &ex.w)? == TorsionVerdict::InfiniteOrder(NO_DIVISIBILITY.into()),
        "W has infinite order",
    );
    out.note(format!(
        "printed model: T gives {:?}",
        torsion_certificate(&ex.printed_model, &ex.t).map_err(|e| e.code())
    ));
    Ok(out)
}

fn euler(ex: &WorkedExample) -> Result<Outcome> {
    let mut out = Outcome::new();
    let stage = ex.state.curve_stage()?;
    let model = ex.state.model()?;
    let u = &stage.u;
    out.require(
        euler_double(model, u)? == euler_double_via_group(model, u)?,
        "over Q(q)",
    );
    for q0 in sweep() {
        let m = model.specialize(&q0)?;
        let u0 = (u.0.specialize(&q0)?, u.1.specialize(&q0)?);
        out.require(
            euler_double(&m, &u0)? == euler_double_via_group(&m, &u0)?,
            format!("q = {q0}"),
        );
    }
    out.note("Weierstrass route: [2] of the involution image, with U as identity");
    Ok(out)
}

fn specialization_sweep() -> Result<Outcome> {
    let mut out = Outcome::new();
    for q0 in sweep() {
        let st = build_pipeline_numeric(1, 3, &[r("1")], &r("2"), &q0)?;
        let stage = st.curve_stage()?;
        out.require(
            mazur_check(&stage.group.curve, &stage.w)? == MazurVerdict::InfiniteOrder,
            format!("W has infinite order at q = {q0}"),
        );
        let sols = gen_symmetric_chain(&st, 5)?;
        out.require(
            sols.len() == 5,
            format!("5 solutions at q = {q0}, got {}", sols.len()),
        );
        for (k, s) in sols.iter().enumerate() {
            out.require(
                verify_solution(s).pass,
                format!("q = {q0}, solution {k} verifies"),
            );
            let SystemSpec::SymmetricTriple { targets, .. } = &s.spec else {
                unreachable!()
            };
            let all = [
                sigma(1, &s.values),
                sigma(5, &s.values),
                sigma(6, &s.values),
            ];
            out.require(
                all[0] == all[1] && all[2] == Rational::one() && all[0] == targets[0],
                "system shape",
            );
            for other in &sols[..k] {
                out.require(
                    !same_multiset(&other.values, &s.values),
                    format!("q = {q0}: distinct"),
                );
            }
        }
    }
    Ok(out)
}

fn family_certificates() -> Result<Outcome> {
    let mut out = Outcome::new();
    let checks = symbolic_family_certificates()?;
    for family in ["family_123", "family_124", "family_m112", "family_24"] {
        out.require(
            checks.iter().any(|c| c.name.starts_with(family)),
            format!("{family} covered"),
        );
    }
    for c in &checks {
        out.require(c.pass, format!("{}: {}", c.name, c.residual));
    }
    Ok(out)
}

fn positivity() -> Result<Outcome> {
    let mut out = Outcome::new();
    let (a, d) = (r("2"), r("1"));
    let windows = positivity_window(&a, &d)?;
    out.require(
        windows == vec![(r("0"), r("4/3")), (r("4"), r("8"))],
        "intervals",
    );
    for (lo, hi) in windows {
        for k in 1..=50 {
            let t = lo.clone() + &((hi.clone() - &lo) * &Rational::new(k, 51)?);
            let sol = family_123(&a, &d, &t)?;
            out.require(
                sol.values.iter().all(Rational::is_positive),
                format!("t = {t}"),
            );
        }
    }
    Ok(out)
}

fn integer_scaling() -> Result<Outcome> {
    let mut out = Outcome::new();
    let m = num_bigint::BigInt::from(5);
    let d = r("1");
    let ts: Vec<Rational> = (1..=10).map(Rational::from).collect();
    // Search for the target a of the family so the primitive scaling already
    // has its first sum divisible by m.
    for an in 1..=60 {
        let a = Rational::from(an);
        let Ok(sols) = ts
            .iter()
            .map(|t| family_123(&a, &d, t))
            .collect::<Result<Vec<_>>>()
        else {
            continue;
        };
        let fam = make_integer_family(&sols, Some(&m))?;
        if !fam.primitive {
            continue;
        }
        out.note(format!("a = {a}, scale = {}", fam.scale));
        out.require(fam.solutions.len() == 10, "10 tuples");
        let first = &fam.solutions[0].certificate;
        for s in &fam.solutions {
            out.require(verify_solution(s).pass, "verifies");
            out.require(s.values.iter().all(Rational::is_integer), "integral");
            out.require(&s.certificate == first, "shared s_1, s_2, s_3");
        }
        let s1 = fam.solutions[0].spec.targets()[0]
            .to_integer()
            .expect("integral sum");
        out.require((s1 % &m).is_zero(), format!("{m} divides s_1"));
        return Ok(out);
    }
    out.require(false, "no a with a primitive family divisible by 5");
    Ok(out)
}

fn quartic_battery() -> Result<Outcome> {
    let mut out = Outcome::new();
    let report = verify_theorem45_identities()?;
    out.require(report.checks.len() == 8, "eight identities");
    for c in &report.checks {
        out.require(c.pass, format!("{}: {}", c.name, c.residual));
    }
    Ok(out)
}

fn lift_check() -> Result<Outcome> {
    let mut out = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let bases: Vec<SolutionTuple<Rational>> = vec![
        family_123(&r("2"), &r("1"), &r("1"))?,
        family_124(&r("3"), &r("2"), &r("1/2"))?,
        family_m112(&r("2"), &r("3"), &r("5"))?,
        family_24(&r("1"), &r("3"))?,
    ];
    for base in &bases {
        let SystemSpec::PowerTriple {
            n,
            exponents,
            targets,
        } = &base.spec
        else {
            unreachable!()
        };
        for extra in 1..=(8 - n) {
            let pad: Vec<Rational> = (0..extra).map(|_| random_nonzero(&mut rng)).collect();
            let lifted = lift_to_n(base, &pad)?;
            out.require(
                verify_solution(&lifted).pass,
                format!("{exponents:?} lifted by {extra}"),
            );
            for ((e, t), new) in exponents.iter().zip(targets).zip(lifted.spec.targets()) {
                out.require(
                    *new == t.clone() + &power_sum(*e, &pad)?,
                    format!("target for s_{e}"),
                );
            }
        }
    }
    Ok(out)
}

fn run(
    id: u32,
    title: &str,
    budget: Duration,
    f: impl FnOnce() -> Result<Outcome>,
) -> (bool, Duration) {
    let start = Instant::now();
    let outcome = f().unwrap_or_else(|e: Error| Outcome {
        pass: false,
        notes: vec![format!("error: {e}")],
    });
    let took = start.elapsed();
    let mut outcome = outcome;
    outcome.require(took <= budget, "time budget exceeded");
    let pass = outcome.pass;
    println!(
        "{} {id:>2} {title} ({:.3} s, budget {} s)",
        if pass { "PASS" } else { "FAIL" },
        took.as_secs_f64(),
        budget.as_secs()
    );
    for n in &outcome.notes {
        println!("        {n}");
    }
    (pass, took)
}

fn main() {
    let secs = Duration::from_secs;
    let ex = WorkedExample::new().expect("reference pipeline");

    let results = [
        (
            1,
            run(1, "reciprocal identity suite", secs(10), reciprocal_suite),
        ),
        (
            2,
            run(
                2,
                "worked example: curve, j-invariant, discriminant",
                secs(30),
                || Ok(worked_example_regression(&ex)?.0),
            ),
        ),
        (
            3,
            run(
                3,
                "worked example: second and third multiples as ordered pairs",
                secs(60),
                || Ok(chain_regression(&ex)?.0),
            ),
        ),
        (
            4,
            run(4, "torsion certificates for T and W", secs(5), || {
                torsion(&ex)
            }),
        ),
        (
            5,
            run(
                5,
                "tangent construction against the group law",
                secs(30),
                || euler(&ex),
            ),
        ),
        (
            6,
            run(
                6,
                "specialization sweep, 20 values of q",
                secs(60),
                specialization_sweep,
            ),
        ),
        (
            7,
            run(
                7,
                "power-sum family certificates",
                secs(20),
                family_certificates,
            ),
        ),
        (8, run(8, "positivity windows", secs(5), positivity)),
        (
            9,
            run(
                9,
                "integer family with divisible first sum",
                secs(5),
                integer_scaling,
            ),
        ),
        (
            10,
            run(
                10,
                "plane quartic identity battery",
                secs(120),
                quartic_battery,
            ),
        ),
        (11, run(11, "lift to longer tuples", secs(10), lift_check)),
    ];
    let (c2, _) = run(2, "consistent variant: corrected model", secs(30), || {
        Ok(worked_example_regression(&ex)?.1)
    });
    let (c3, _) = run(
        3,
        "consistent variant: tuples and negated multiples",
        secs(60),
        || Ok(chain_regression(&ex)?.1),
    );

    let known_deviations = [2, 3];
    let failed: Vec<u32> = results
        .iter()
        .filter(|(_, (p, _))| !p)
        .map(|(id, _)| *id)
        .collect();
    println!("failing criteria: {failed:?} (documented deviations: {known_deviations:?})");
    assert!(
        c2 && c3,
        "consistent variants of criteria 2 and 3 must pass"
    );
    assert_eq!(failed, known_deviations, "unexpected criterion outcome");
}
