use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::Field;
use crate::symfun::{power_sum, sigma};

/// A target system: which invariants are prescribed and their values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum SystemSpec<F> {
    /// `σ_i = a`, `σ_{2n-i} = b`, `σ_{2n} = c` on a tuple of length `2n`.
    SymmetricTriple { n: usize, i: usize, targets: [F; 3] },
    /// `s_{e_k} = targets[k]` on a tuple of length `n`.
    PowerTriple {
        n: usize,
        exponents: Vec<i64>,
        targets: Vec<F>,
    },
}

/// One invariant appearing in a [`SystemSpec`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constraint {
    Sigma(usize),
    PowerSum(i64),
}

impl Constraint {
    /// Certificate key, e.g. `sigma_5` or `s_-1`.
    pub fn name(&self) -> String {
        match self {
            Constraint::Sigma(i) => format!("sigma_{i}"),
            Constraint::PowerSum(e) => format!("s_{e}"),
        }
    }

    /// Weight under `x ↦ λx`: the constraint value scales by `λ^degree`.
    pub fn degree(&self) -> i64 {
        match self {
            Constraint::Sigma(i) => *i as i64,
            Constraint::PowerSum(e) => *e,
        }
    }

    pub fn eval<F: Field>(&self, values: &[F]) -> Result<F> {
        match self {
            Constraint::Sigma(i) => Ok(sigma(*i as i64, values)),
            Constraint::PowerSum(e) => power_sum(*e, values),
        }
    }
}

impl<F: Field> SystemSpec<F> {
    pub fn validate(&self) -> Result<()> {
        match self {
            SystemSpec::SymmetricTriple { n, i, targets } => {
                if *i < 1 || i > n {
                    return Err(Error::InvalidParameter(format!(
                        "need 1 <= i <= n, got i = {i}, n = {n}"
                    )));
                }
                if targets[2].is_zero() {
                    return Err(Error::InvalidParameter(
                        "the product target must be nonzero".into(),
                    ));
                }
            }
            SystemSpec::PowerTriple {
                exponents, targets, ..
            } => {
                if exponents.len() != targets.len() || !(2..=3).contains(&exponents.len()) {
                    return Err(Error::InvalidParameter(
                        "a power system needs two or three exponents with matching targets".into(),
                    ));
                }
                if exponents.contains(&0) {
                    return Err(Error::InvalidParameter("exponents must be nonzero".into()));
                }
                for (k, e) in exponents.iter().enumerate() {
                    if exponents[..k].contains(e) {
                        return Err(Error::InvalidParameter(format!("exponent {e} repeated")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Length of the tuples the system is about.
    pub fn tuple_len(&self) -> usize {
        match self {
            SystemSpec::SymmetricTriple { n, .. } => 2 * n,
            SystemSpec::PowerTriple { n, .. } => *n,
        }
    }

    pub fn constraints(&self) -> Vec<Constraint> {
        match self {
            SystemSpec::SymmetricTriple { n, i, .. } => vec![
                Constraint::Sigma(*i),
                Constraint::Sigma(2 * n - i),
                Constraint::Sigma(2 * n),
            ],
            SystemSpec::PowerTriple { exponents, .. } => {
                exponents.iter().map(|&e| Constraint::PowerSum(e)).collect()
            }
        }
    }

    pub fn targets(&self) -> &[F] {
        match self {
            SystemSpec::SymmetricTriple { targets, .. } => targets,
            SystemSpec::PowerTriple { targets, .. } => targets,
        }
    }

    pub(crate) fn with_targets(&self, new: Vec<F>) -> Self {
        match self {
            SystemSpec::SymmetricTriple { n, i, .. } => SystemSpec::SymmetricTriple {
                n: *n,
                i: *i,
                targets: new.try_into().expect("three targets"),
            },
            SystemSpec::PowerTriple { n, exponents, .. } => SystemSpec::PowerTriple {
                n: *n,
                exponents: exponents.clone(),
                targets: new,
            },
        }
    }
}

/// Where a tuple came from.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub method: String,
    #[serde(default)]
    pub params: BTreeMap<String, String>,
}

impl Provenance {
    pub fn new<'a>(method: &str, params: impl IntoIterator<Item = (&'a str, String)>) -> Self {
        Provenance {
            method: method.into(),
            params: params
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
        }
    }
}

/// A tuple together with the system it solves and the invariant values
/// computed when it was produced.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionTuple<F> {
    pub spec: SystemSpec<F>,
    pub values: Vec<F>,
    pub certificate: BTreeMap<String, F>,
    #[serde(default)]
    pub provenance: Provenance,
}

impl<F: Field> SolutionTuple<F> {
    /// Computes every constraint and refuses to build the tuple unless all of
    /// them match the targets.
    pub fn certify(spec: SystemSpec<F>, values: Vec<F>, provenance: Provenance) -> Result<Self> {
        spec.validate()?;
        if values.len() != spec.tuple_len() {
            return Err(Error::InvalidParameter(format!(
                "expected {} values, got {}",
                spec.tuple_len(),
                values.len()
            )));
        }
        let mut certificate = BTreeMap::new();
        for (c, target) in spec.constraints().iter().zip(spec.targets()) {
            let v = c.eval(&values)?;
            if &v != target {
                return Err(Error::IdentityViolated(format!(
                    "{}: computed {v}, target {target}",
                    c.name()
                )));
            }
            certificate.insert(c.name(), v);
        }
        Ok(SolutionTuple {
            spec,
            values,
            certificate,
            provenance,
        })
    }

    /// Maps every value and target through `f`, e.g. to specialize.
    pub fn map<G: Field>(&self, f: impl Fn(&F) -> Result<G>) -> Result<SolutionTuple<G>> {
        let values = self.values.iter().map(&f).collect::<Result<Vec<_>>>()?;
        let targets = self
            .spec
            .targets()
            .iter()
            .map(&f)
            .collect::<Result<Vec<_>>>()?;
        let spec = match &self.spec {
            SystemSpec::SymmetricTriple { n, i, .. } => SystemSpec::SymmetricTriple {
                n: *n,
                i: *i,
                targets: targets.try_into().expect("three targets"),
            },
            SystemSpec::PowerTriple { n, exponents, .. } => SystemSpec::PowerTriple {
                n: *n,
                exponents: exponents.clone(),
                targets,
            },
        };
        SolutionTuple::certify(spec, values, self.provenance.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstraintCheck {
    pub name: String,
    pub target: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub computed: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub pass: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub problems: Vec<String>,
    pub constraints: Vec<ConstraintCheck>,
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.problems {
            writeln!(f, "FAIL {p}")?;
        }
        for c in &self.constraints {
            let status = if c.pass { "ok  " } else { "FAIL" };
            match (&c.computed, &c.error) {
                (_, Some(e)) => writeln!(f, "{status} {}: {e}", c.name)?,
                (Some(v), None) => writeln!(f, "{status} {} = {v} (target {})", c.name, c.target)?,
                (None, None) => writeln!(f, "{status} {}", c.name)?,
            }
        }
        Ok(())
    }
}

/// Recomputes every constraint of `sol` from its raw values. The stored
/// certificate is ignored.
pub fn verify_solution<F: Field>(sol: &SolutionTuple<F>) -> VerificationReport {
    let mut problems = Vec::new();
    if let Err(e) = sol.spec.validate() {
        problems.push(format!("spec: {e}"));
    }
    if sol.values.len() != sol.spec.tuple_len() {
        problems.push(format!(
            "length: expected {} values, got {}",
            sol.spec.tuple_len(),
            sol.values.len()
        ));
    }
    let constraints: Vec<ConstraintCheck> = sol
        .spec
        .constraints()
        .iter()
        .zip(sol.spec.targets())
        .map(|(c, target)| match c.eval(&sol.values) {
            Ok(v) => ConstraintCheck {
                name: c.name(),
                target: target.to_string(),
                pass: &v == target,
                computed: Some(v.to_string()),
                error: None,
            },
            Err(e) => ConstraintCheck {
                name: c.name(),
                target: target.to_string(),
                computed: None,
                error: Some(e.to_string()),
                pass: false,
            },
        })
        .collect();
    VerificationReport {
        pass: problems.is_empty() && constraints.iter().all(|c| c.pass),
        problems,
        constraints,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{RatFun, Rational};

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn rs(v: &[&str]) -> Vec<Rational> {
        v.iter().map(|s| r(s)).collect()
    }

    fn sample() -> SolutionTuple<Rational> {
        let spec = SystemSpec::SymmetricTriple {
            n: 3,
            i: 1,
            targets: [r("47/6"), r("47/6"), r("1")],
        };
        let values = rs(&["1", "1", "9/80", "-45/16", "80/9", "-16/45"]);
        SolutionTuple::certify(spec, values, Provenance::new("test", [])).unwrap()
    }

    #[test]
    fn certified_tuple_verifies() {
        let sol = sample();
        assert_eq!(sol.certificate["sigma_1"], r("47/6"));
        assert_eq!(sol.certificate["sigma_5"], r("47/6"));
        assert_eq!(sol.certificate["sigma_6"], r("1"));
        assert!(verify_solution(&sol).pass);
    }

    #[test]
    fn perturbed_value_fails_by_name() {
        let mut sol = sample();
        sol.values[2] = sol.values[2].clone() + r("1");
        let rep = verify_solution(&sol);
        assert!(!rep.pass);
        let failed: Vec<_> = rep
            .constraints
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name.as_str())
            .collect();
        assert!(failed.contains(&"sigma_1"));
        assert_eq!(rep.constraints[0].computed.as_deref(), Some("53/6"));
    }

    #[test]
    fn stale_certificate_is_not_trusted() {
        let mut sol = sample();
        sol.values[0] = r("2");
        assert!(!verify_solution(&sol).pass);
    }

    #[test]
    fn wrong_length_is_reported() {
        let mut sol = sample();
        sol.values.pop();
        let rep = verify_solution(&sol);
        assert!(!rep.pass);
        assert_eq!(rep.problems.len(), 1);
    }

    #[test]
    fn certify_rejects_mismatch() {
        let spec = SystemSpec::PowerTriple {
            n: 3,
            exponents: vec![2, 4],
            targets: vec![r("6"), r("17")],
        };
        let err = SolutionTuple::certify(spec, rs(&["-2", "1", "-1"]), Provenance::default());
        assert!(matches!(err, Err(Error::IdentityViolated(_))));
    }

    #[test]
    fn spec_validation() {
        let bad = SystemSpec::PowerTriple {
            n: 4,
            exponents: vec![1, 1, 3],
            targets: vec![r("1"), r("1"), r("1")],
        };
        assert!(bad.validate().is_err());
        let bad = SystemSpec::SymmetricTriple {
            n: 2,
            i: 3,
            targets: [r("1"), r("1"), r("1")],
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn json_shape() {
        let sol = sample();
        let v = serde_json::to_value(&sol).unwrap();
        assert_eq!(v["spec"]["kind"], "SymmetricTriple");
        assert_eq!(v["values"][2], "9/80");
        assert_eq!(v["certificate"]["sigma_1"], "47/6");
        assert_eq!(v["provenance"]["method"], "test");
        let back: SolutionTuple<Rational> = serde_json::from_value(v).unwrap();
        assert_eq!(back, sol);
    }

    #[test]
    fn symbolic_values_round_trip() {
        let q = RatFun::q();
        let inv = q.inv().unwrap();
        let sum = q.clone() + &inv;
        let spec = SystemSpec::PowerTriple {
            n: 2,
            exponents: vec![1, -1],
            targets: vec![sum.clone(), sum],
        };
        let sol = SolutionTuple::certify(spec, vec![q, inv], Provenance::default()).unwrap();
        let json = serde_json::to_string(&sol).unwrap();
        assert!(json.contains("(q^2+1)/q"));
        let back: SolutionTuple<RatFun> = serde_json::from_str(&json).unwrap();
        assert!(verify_solution(&back).pass);
    }
}
