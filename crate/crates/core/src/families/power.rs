use crate::error::{Error, Result};
use crate::exactalg::{Field, PolyFrac, Rational};
use crate::symfun::power_sum;

use super::identities::IdentityCheck;
use super::solution::{Constraint, Provenance, SolutionTuple, SystemSpec};

fn c<F: Field>(n: i64, d: i64) -> F {
    F::from_rational(&Rational::new(n, d).expect("nonzero literal denominator"))
}

/// Values of the `(1, 2, 3)` family, in any field.
pub fn family_123_values<F: Field>(a: &F, d: &F, t: &F) -> Result<Vec<F>> {
    let den = t.square() + &F::from_i64(16);
    let four = F::from_i64(4);
    let x1 = (F::from_i64(2) * &(four.clone() * a - &(d.clone() * t))).checked_div(&den)?;
    let x2 = (t.clone() * &(a.clone() * t + &(four.clone() * d)))
        .checked_div(&(F::from_i64(2) * &den))?;
    let x3 = ((t.clone() + &four) * &((a.clone() - d) * t + &(four.clone() * &(a.clone() + d))))
        .checked_div(&(four.clone() * &den))?;
    let x4 = ((t.clone() - &four) * &((a.clone() + d) * t + &(four.clone() * &(d.clone() - a))))
        .checked_div(&(four * &den))?;
    Ok(vec![x1, x2, x3, x4])
}

fn targets_123<F: Field>(a: &F, d: &F) -> Vec<F> {
    let (a2, d2) = (a.square(), d.square());
    vec![
        a.clone(),
        (F::from_i64(3) * &a2 + &d2) * &c(1, 8),
        a.clone() * &(F::from_i64(5) * &a2 + &(F::from_i64(3) * &d2)) * &c(1, 32),
    ]
}

pub fn family_124_values<F: Field>(a: &F, d: &F, t: &F) -> Result<Vec<F>> {
    let den = t.square() + &F::from_i64(3);
    let x1 = (F::from_i64(-2) * d * t).checked_div(&den)?;
    let x2 = (d.clone() * &(t.clone() - &F::one()) * &(t.clone() + &F::from_i64(3)))
        .checked_div(&(F::from_i64(2) * &den))?;
    let x3 = -(x1.clone() + &x2);
    Ok(vec![x1, x2, x3, a.clone()])
}

fn targets_124<F: Field>(a: &F, d: &F) -> Vec<F> {
    let (a2, d2) = (a.square(), d.square());
    vec![
        a.clone(),
        (F::from_i64(2) * &a2 + &d2) * &c(1, 2),
        (F::from_i64(8) * &a2.square() + &d2.square()) * &c(1, 8),
    ]
}

pub fn family_m112_values<F: Field>(a: &F, b: &F, t: &F) -> Result<Vec<F>> {
    let den = a.clone() * &(t.square() + t + &F::one());
    let ab1 = a.clone() * b - &F::one();
    let x1 = ((t.clone() + &F::one()) * &ab1).checked_div(&den)?;
    let x2 = t.clone() * &x1;
    let x3 = (-ab1 * t).checked_div(&den)?;
    Ok(vec![x1, x2, x3, a.inv()?])
}

fn targets_m112<F: Field>(a: &F, b: &F) -> Result<Vec<F>> {
    let ab = a.clone() * b;
    let c3 = (F::from_i64(2) - &(F::from_i64(2) * &ab) + &ab.square()).checked_div(&a.square())?;
    Ok(vec![a.clone(), b.clone(), c3])
}

pub fn family_24_values<F: Field>(d: &F, t: &F) -> Result<Vec<F>> {
    let one = F::one();
    let two = F::from_i64(2);
    let den = t.square() - t + &one;
    let t2 = t.square();
    let x1 = (t2.clone() + &(two.clone() * d * t) - d - &one).checked_div(&den)?;
    let x2 =
        (d.clone() * &t2 - &(two.clone() * &(d.clone() + &one) * t) + &one).checked_div(&den)?;
    let x3 = ((d.clone() + &one) * &t2 - &(two * t) - d).checked_div(&den)?;
    Ok(vec![x1, x2, x3])
}

fn targets_24<F: Field>(d: &F) -> Vec<F> {
    let m = d.square() + d + &F::one();
    vec![F::from_i64(2) * &m, F::from_i64(2) * &m.square()]
}

fn power_spec<F: Field>(n: usize, exponents: &[i64], targets: Vec<F>) -> SystemSpec<F> {
    SystemSpec::PowerTriple {
        n,
        exponents: exponents.to_vec(),
        targets,
    }
}

fn first_zero(values: &[Rational]) -> Result<()> {
    match values.iter().position(Field::is_zero) {
        Some(k) => Err(Error::ZeroEntry(k)),
        None => Ok(()),
    }
}

/// `s1 = a`, `s2 = (3a²+d²)/8`, `s3 = a(5a²+3d²)/32` for every `t`.
pub fn family_123(a: &Rational, d: &Rational, t: &Rational) -> Result<SolutionTuple<Rational>> {
    if a.is_zero() {
        return Err(Error::InvalidParameter("a must be nonzero".into()));
    }
    let prov = Provenance::new(
        "family_123",
        [
            ("a", a.to_string()),
            ("d", d.to_string()),
            ("t", t.to_string()),
        ],
    );
    SolutionTuple::certify(
        power_spec(4, &[1, 2, 3], targets_123(a, d)),
        family_123_values(a, d, t)?,
        prov,
    )
}

/// `s1 = a`, `s2 = (2a²+d²)/2`, `s4 = (8a⁴+d⁴)/8` for every `t`.
pub fn family_124(a: &Rational, d: &Rational, t: &Rational) -> Result<SolutionTuple<Rational>> {
    if a.is_zero() {
        return Err(Error::InvalidParameter("a must be nonzero".into()));
    }
    let prov = Provenance::new(
        "family_124",
        [
            ("a", a.to_string()),
            ("d", d.to_string()),
            ("t", t.to_string()),
        ],
    );
    SolutionTuple::certify(
        power_spec(4, &[1, 2, 4], targets_124(a, d)),
        family_124_values(a, d, t)?,
        prov,
    )
}

/// `s_{-1} = a`, `s1 = b`, `s2 = (2-2ab+a²b²)/a²`. The entries must all be
/// nonzero, which rules out `ab = 1` and `t ∈ {0, -1}`.
pub fn family_m112(a: &Rational, b: &Rational, t: &Rational) -> Result<SolutionTuple<Rational>> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::InvalidParameter("a and b must be nonzero".into()));
    }
    let values = family_m112_values(a, b, t)?;
    first_zero(&values)?;
    let prov = Provenance::new(
        "family_m112",
        [
            ("a", a.to_string()),
            ("b", b.to_string()),
            ("t", t.to_string()),
        ],
    );
    SolutionTuple::certify(
        power_spec(4, &[-1, 1, 2], targets_m112(a, b)?),
        values,
        prov,
    )
}

/// `s2 = 2(d²+d+1)`, `s4 = 2(d²+d+1)²` on triples.
pub fn family_24(d: &Rational, t: &Rational) -> Result<SolutionTuple<Rational>> {
    let prov = Provenance::new("family_24", [("d", d.to_string()), ("t", t.to_string())]);
    SolutionTuple::certify(
        power_spec(3, &[2, 4], targets_24(d)),
        family_24_values(d, t)?,
        prov,
    )
}

/// The two `t`-intervals on which every coordinate of the `(1, 2, 3)`
/// family is positive, for `0 < d < a`. A few interior points of each are
/// checked before returning.
pub fn positivity_window(a: &Rational, d: &Rational) -> Result<Vec<(Rational, Rational)>> {
    if !(d.is_positive() && d < a) {
        return Err(Error::InvalidParameter(format!(
            "need 0 < d < a, got a = {a}, d = {d}"
        )));
    }
    let four = Rational::from(4);
    let windows = vec![
        (Rational::zero(), four.clone() * &(a - d) / (a + d)),
        (four.clone(), four * a / d),
    ];
    for (lo, hi) in &windows {
        for k in 1..8 {
            let t = lo + &((hi - lo) * Rational::new(k, 8)?);
            let xs = family_123_values(a, d, &t)?;
            if let Some(x) = xs.iter().find(|x| !x.is_positive()) {
                return Err(Error::IdentityViolated(format!(
                    "coordinate {x} at t = {t} is not positive"
                )));
            }
        }
    }
    Ok(windows)
}

/// Appends `padding` to a power-sum solution. Each target grows by the
/// corresponding power sum of the padding.
pub fn lift_to_n<F: Field>(sol: &SolutionTuple<F>, padding: &[F]) -> Result<SolutionTuple<F>> {
    let SystemSpec::PowerTriple {
        n,
        exponents,
        targets,
    } = &sol.spec
    else {
        return Err(Error::InvalidParameter(
            "only power-sum systems can be lifted".into(),
        ));
    };
    if exponents.iter().any(|&e| e < 0) {
        if let Some(k) = padding.iter().position(Field::is_zero) {
            return Err(Error::ZeroEntry(n + k));
        }
    }
    let mut new_targets = Vec::with_capacity(targets.len());
    for (e, t) in exponents.iter().zip(targets) {
        let extra = if padding.is_empty() {
            F::zero()
        } else {
            power_sum(*e, padding)?
        };
        new_targets.push(t.clone() + &extra);
    }
    let mut values = sol.values.clone();
    values.extend_from_slice(padding);
    let spec = SystemSpec::PowerTriple {
        n: n + padding.len(),
        exponents: exponents.clone(),
        targets: new_targets,
    };
    let mut prov = sol.provenance.clone();
    if !padding.is_empty() {
        let pad: Vec<String> = padding.iter().map(ToString::to_string).collect();
        prov.params.insert("padding".into(), pad.join(","));
    }
    SolutionTuple::certify(spec, values, prov)
}

/// Checks each family's sums as identities in the field of fractions of
/// `Q[a, d, t]` (or `Q[a, b, t]`), with every parameter kept symbolic.
pub fn symbolic_family_certificates() -> Result<Vec<IdentityCheck>> {
    let (a, b, d, t) = (
        PolyFrac::var("a"),
        PolyFrac::var("b"),
        PolyFrac::var("d"),
        PolyFrac::var("t"),
    );
    let cases: Vec<(&str, Vec<i64>, Vec<PolyFrac>, Vec<PolyFrac>)> = vec![
        (
            "family_123",
            vec![1, 2, 3],
            family_123_values(&a, &d, &t)?,
            targets_123(&a, &d),
        ),
        (
            "family_124",
            vec![1, 2, 4],
            family_124_values(&a, &d, &t)?,
            targets_124(&a, &d),
        ),
        (
            "family_m112",
            vec![-1, 1, 2],
            family_m112_values(&a, &b, &t)?,
            targets_m112(&a, &b)?,
        ),
        (
            "family_24",
            vec![2, 4],
            family_24_values(&d, &t)?,
            targets_24(&d),
        ),
    ];
    let mut out = Vec::new();
    for (name, exps, values, targets) in cases {
        for (e, target) in exps.iter().zip(&targets) {
            let residual = Constraint::PowerSum(*e).eval(&values)? - target;
            out.push(IdentityCheck::new(
                &format!("{name} {}", Constraint::PowerSum(*e).name()),
                &format!("s_{e} = {target}"),
                residual.num(),
            ));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::verify_solution;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn rs(v: &[&str]) -> Vec<Rational> {
        v.iter().map(|s| r(s)).collect()
    }

    #[test]
    fn family_123_example() {
        let sol = family_123(&r("2"), &r("1"), &r("1")).unwrap();
        assert_eq!(sol.values, rs(&["14/17", "3/17", "65/68", "3/68"]));
        assert_eq!(sol.spec.targets(), rs(&["2", "13/8", "23/16"]).as_slice());
        assert!(verify_solution(&sol).pass);
        // d = a is allowed.
        assert!(family_123(&r("3"), &r("3"), &r("5")).is_ok());
    }

    #[test]
    fn family_124_example() {
        let sol = family_124(&r("1"), &r("1"), &r("1")).unwrap();
        assert_eq!(sol.values, rs(&["-1/2", "0", "1/2", "1"]));
        assert_eq!(sol.certificate["s_4"], r("9/8"));
    }

    #[test]
    fn family_m112_example_and_errors() {
        let sol = family_m112(&r("1"), &r("3"), &r("2")).unwrap();
        assert_eq!(sol.values, rs(&["6/7", "12/7", "-4/7", "1"]));
        assert_eq!(sol.certificate["s_-1"], r("1"));
        assert_eq!(sol.certificate["s_1"], r("3"));
        assert_eq!(sol.certificate["s_2"], r("5"));
        assert_eq!(
            family_m112(&r("2"), &r("1/2"), &r("2")).unwrap_err(),
            Error::ZeroEntry(0)
        );
        assert_eq!(
            family_m112(&r("2"), &r("1"), &r("0")).unwrap_err(),
            Error::ZeroEntry(1)
        );
        assert_eq!(
            family_m112(&r("2"), &r("1"), &r("-1")).unwrap_err(),
            Error::ZeroEntry(0)
        );
    }

    #[test]
    fn family_24_examples() {
        let sol = family_24(&r("1"), &r("0")).unwrap();
        assert_eq!(sol.values, rs(&["-2", "1", "-1"]));
        assert_eq!(sol.spec.targets(), rs(&["6", "18"]).as_slice());
        let sol = family_24(&r("0"), &r("7/3")).unwrap();
        assert_eq!(sol.spec.targets(), rs(&["2", "2"]).as_slice());
    }

    #[test]
    fn windows() {
        let w = positivity_window(&r("2"), &r("1")).unwrap();
        assert_eq!(w, vec![(r("0"), r("4/3")), (r("4"), r("8"))]);
        assert!(positivity_window(&r("1"), &r("2")).is_err());
        assert!(positivity_window(&r("1"), &r("0")).is_err());
    }

    #[test]
    fn lifting() {
        let sol = family_123(&r("2"), &r("1"), &r("1")).unwrap();
        let lifted = lift_to_n(&sol, &[r("1")]).unwrap();
        assert_eq!(
            lifted.spec.targets(),
            rs(&["3", "21/8", "39/16"]).as_slice()
        );
        assert_eq!(lifted.values.len(), 5);
        assert_eq!(lift_to_n(&sol, &[]).unwrap(), sol);

        let m = family_m112(&r("1"), &r("3"), &r("2")).unwrap();
        let lifted = lift_to_n(&m, &[r("2")]).unwrap();
        assert_eq!(lifted.spec.targets()[0], r("3/2"));
        assert_eq!(lift_to_n(&m, &[r("0")]).unwrap_err(), Error::ZeroEntry(4));
    }

    #[test]
    fn symbolic_certificates_hold() {
        let checks = symbolic_family_certificates().unwrap();
        assert_eq!(checks.len(), 11);
        for c in &checks {
            assert!(c.pass, "{} residual {}", c.name, c.residual);
        }
    }
}
