use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{Field, Rational};

use super::solution::{SolutionTuple, SystemSpec};

/// Integer solutions obtained from rational ones by a common scaling.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntegerFamily {
    pub spec: SystemSpec<Rational>,
    pub solutions: Vec<SolutionTuple<Rational>>,
    /// The factor every tuple was multiplied by.
    pub scale: Rational,
    /// Whether the gcd of all entries of all tuples is 1.
    pub primitive: bool,
}

/// Scales a set of solutions of one system to integer tuples, making the
/// set primitive. When `divisible_by` is given and the first target of the
/// primitive set is not a multiple of it, an extra integer factor is
/// applied, at the cost of primitivity.
pub fn make_integer_family(
    sols: &[SolutionTuple<Rational>],
    divisible_by: Option<&BigInt>,
) -> Result<IntegerFamily> {
    let first = sols
        .first()
        .ok_or_else(|| Error::InvalidParameter("no solutions to scale".into()))?;
    if sols.iter().any(|s| s.spec != first.spec) {
        return Err(Error::InvalidParameter(
            "solutions do not share one system".into(),
        ));
    }
    let all = || sols.iter().flat_map(|s| s.values.iter());
    let lambda = Rational::lcm_denominators(all());
    let g = all()
        .map(|v| v.numer() * (&lambda / v.denom()))
        .fold(BigInt::zero(), |acc, x| acc.gcd(&x));
    if g.is_zero() {
        return Err(Error::InvalidParameter("all entries are zero".into()));
    }
    let mut scale = Rational::new(lambda, g)?;
    let constraints = first.spec.constraints();
    let scaled_targets = |scale: &Rational| -> Result<Vec<Rational>> {
        constraints
            .iter()
            .zip(first.spec.targets())
            .map(|(c, t)| Ok(t.clone() * &scale.powi(c.degree())?))
            .collect()
    };

    let mut primitive = true;
    if let Some(m) = divisible_by {
        if !m.is_positive() {
            return Err(Error::InvalidParameter("modulus must be positive".into()));
        }
        if constraints[0].degree() <= 0 {
            return Err(Error::InvalidParameter(
                "divisibility needs a constraint of positive degree first".into(),
            ));
        }
        let s = scaled_targets(&scale)?[0]
            .to_integer()
            .ok_or_else(|| Error::NonIntegral("first target is not an integer".into()))?;
        if !s.is_multiple_of(m) {
            // s·k is a multiple of m, and so is s·k^e for e >= 1.
            let k = m / s.gcd(m);
            primitive = k.is_one();
            scale = scale * Rational::from(k);
        }
    }

    let spec = first.spec.with_targets(scaled_targets(&scale)?);
    let solutions = sols
        .iter()
        .map(|s| {
            let values = s.values.iter().map(|v| v.clone() * &scale).collect();
            let mut prov = s.provenance.clone();
            prov.params.insert("scale".into(), scale.to_string());
            SolutionTuple::certify(spec.clone(), values, prov)
        })
        .collect::<Result<Vec<_>>>()?;
    debug_assert!(solutions
        .iter()
        .all(|s| s.values.iter().all(Rational::is_integer)));
    Ok(IntegerFamily {
        spec,
        solutions,
        scale,
        primitive,
    })
}
