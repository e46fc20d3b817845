use symtriple::curves::{quartic_to_weierstrass, Specialize};
use symtriple::families::{
    build_pipeline_numeric, build_pipeline_symbolic, family_123, gen_symmetric_chain, lift_to_n,
    make_integer_family, verify_solution, SolutionTuple, SystemSpec,
};
use symtriple::symfun::sigma;
use symtriple::{Error, Field, RatFun, Rational};

fn r(s: &str) -> Rational {
    s.parse().unwrap()
}

fn sorted(v: &[Rational]) -> Vec<String> {
    let mut s: Vec<String> = v.iter().map(ToString::to_string).collect();
    s.sort();
    s
}

#[test]
fn symbolic_chain_specializes_to_numeric_chain() {
    let sym = build_pipeline_symbolic(1, 3, &[r("1")], &r("2")).unwrap();
    let sym_chain = gen_symmetric_chain(&sym, 3).unwrap();
    for q0 in ["3", "5/2", "-4"] {
        let q0 = r(q0);
        let num = build_pipeline_numeric(1, 3, &[r("1")], &r("2"), &q0).unwrap();
        let num_chain = gen_symmetric_chain(&num, 3).unwrap();
        assert_eq!(num_chain.len(), sym_chain.len());
        for (s, n) in sym_chain.iter().zip(&num_chain) {
            let spec = s.map(|v| v.specialize(&q0)).unwrap();
            assert_eq!(sorted(&spec.values), sorted(&n.values));
        }
    }
}

#[test]
fn general_parameters_give_verified_chains() {
    for (i, n, t, p, q) in [
        (2, 4, vec!["2", "3"], "3", "5"),
        (3, 4, vec!["1/2", "-3"], "2", "7"),
        (2, 3, vec!["4"], "-2", "3/5"),
    ] {
        let t: Vec<Rational> = t.into_iter().map(r).collect();
        let state = build_pipeline_numeric(i, n, &t, &r(p), &r(q)).unwrap();
        let sols = gen_symmetric_chain(&state, 3).unwrap();
        assert!(!sols.is_empty(), "i = {i}, n = {n}");
        for s in &sols {
            assert!(verify_solution(s).pass);
            assert_eq!(s.values.len(), 2 * n);
            assert_eq!(
                sigma(i as i64, &s.values),
                sigma((2 * n - i) as i64, &s.values)
            );
            assert_eq!(sigma(2 * n as i64, &s.values), Rational::one());
        }
    }
}

#[test]
fn pipeline_curve_round_trips_symbolically() {
    let state = build_pipeline_symbolic(1, 3, &[r("1")], &r("2")).unwrap();
    let model = state.model().unwrap();
    let (e, maps) = quartic_to_weierstrass(model).unwrap();
    maps.verify_round_trip(model).unwrap();
    assert_eq!(&e, &state.curve_stage().unwrap().group.curve);
}

#[test]
fn json_round_trip_preserves_verification() {
    let state = build_pipeline_symbolic(1, 3, &[r("1")], &r("2")).unwrap();
    let sols = gen_symmetric_chain(&state, 2).unwrap();
    let text = serde_json::to_string(&sols).unwrap();
    let back: Vec<SolutionTuple<RatFun>> = serde_json::from_str(&text).unwrap();
    assert_eq!(back, sols);
    assert!(back.iter().all(|s| verify_solution(s).pass));
}

#[test]
fn lifted_integer_family() {
    let sols: Vec<_> = ["1", "2", "3"]
        .iter()
        .map(|t| {
            lift_to_n(
                &family_123(&r("2"), &r("1"), &r(t)).unwrap(),
                &[r("1/3"), r("-2")],
            )
            .unwrap()
        })
        .collect();
    let fam = make_integer_family(&sols, None).unwrap();
    assert!(fam.primitive);
    let SystemSpec::PowerTriple { n, .. } = &fam.spec else {
        panic!()
    };
    assert_eq!(*n, 6);
    for s in &fam.solutions {
        assert!(verify_solution(s).pass);
        assert_eq!(s.certificate, fam.solutions[0].certificate);
    }
}

#[test]
fn parameter_errors_are_typed() {
    assert!(matches!(
        build_pipeline_numeric(1, 3, &[r("0")], &r("2"), &r("3")),
        Err(Error::ZeroEntry(_))
    ));
    assert!(matches!(
        build_pipeline_numeric(4, 3, &[r("1")], &r("2"), &r("3")),
        Err(Error::InvalidParameter(_))
    ));
}
