use super::field::Field;
use super::mpoly::MPoly;
use super::poly::UPoly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Determinant of a square matrix of polynomials by fraction-free
/// elimination. Every division is exact (Sylvester's identity), so entries
/// stay polynomial throughout.
pub fn bareiss_det(mut m: Vec<Vec<MPoly>>) -> MPoly {
    let n = m.len();
    if n == 0 {
        return MPoly::one();
    }
    let mut negate = false;
    let mut prev = MPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            // Prefer the pivot with the fewest terms among nonzero entries.
            let Some(p) = (k + 1..n)
                .filter(|&i| !m[i][k].is_zero())
                .min_by_key(|&i| m[i][k].num_terms())
            else {
                return MPoly::zero();
            };
            m.swap(k, p);
            negate = !negate;
        }
        let pivot = m[k][k].clone();
        for i in k + 1..n {
            let lead = m[i][k].clone();
            for j in k + 1..n {
                let t = &(&m[i][j] * &pivot) - &(&lead * &m[k][j]);
                m[i][j] = t.exact_div(&prev).expect("Bareiss step is exact");
            }
            m[i][k] = MPoly::zero();
        }
        prev = pivot;
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

fn sylvester(f: &[MPoly], g: &[MPoly]) -> Vec<Vec<MPoly>> {
    // Coefficient slices are lowest degree first; rows hold highest first.
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![MPoly::zero(); size];
        for (k, c) in f.iter().rev().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![MPoly::zero(); size];
        for (k, c) in g.iter().rev().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Resultant of `f` and `g` with respect to `var`, as a polynomial in the
/// remaining variables.
pub fn resultant(f: &MPoly, g: &MPoly, var: &str) -> Result<MPoly> {
    let df = f.degree_in(var).unwrap_or(0);
    let dg = g.degree_in(var).unwrap_or(0);
    if df == 0 || dg == 0 {
        return Err(Error::DegreeZero(var.to_string()));
    }
    let det = bareiss_det(sylvester(&f.coeffs_in(var), &g.coeffs_in(var)));
    Ok(det.compact())
}

/// Univariate resultant through the Sylvester determinant. Independent of
/// the Euclidean route in [`UPoly::resultant`].
pub fn upoly_resultant_sylvester(f: &UPoly, g: &UPoly) -> Result<Rational> {
    let lift = |p: &UPoly| -> Vec<MPoly> {
        p.coeffs()
            .iter()
            .map(|c| MPoly::constant(c.clone()))
            .collect()
    };
    match (f.degree(), g.degree()) {
        (None, _) | (_, None) => Ok(Rational::zero()),
        (Some(0), _) | (_, Some(0)) => Err(Error::DegreeZero("x".into())),
        _ => Ok(bareiss_det(sylvester(&lift(f), &lift(g))).constant_term()),
    }
}
