use std::collections::BTreeMap;

use super::field::Field;
use super::mpoly::{MPoly, Monomial};
use super::rational::Rational;
use crate::error::Result;

/// Solves `A x = b` exactly by Gauss-Jordan elimination.
///
/// Returns one solution (free unknowns set to zero) or `None` when the
/// system is inconsistent.
pub fn solve_linear(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        b.swap(r, p);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for j in c..cols {
            a[r][j] = &a[r][j] * &inv;
        }
        b[r] = &b[r] * &inv;
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    let t = &f * &a[r][j];
                    a[i][j] = &a[i][j] - &t;
                }
                let t = &f * &b[r];
                b[i] = &b[i] - &t;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if b[r..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = b[i].clone();
    }
    Some(x)
}

fn monomials_up_to(nvars: usize, max_deg: u32) -> Vec<Vec<u32>> {
    fn rec(prefix: &mut Vec<u32>, left: usize, budget: u32, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in 0..=budget {
            prefix.push(k);
            rec(prefix, left - 1, budget - k, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), nvars, max_deg, &mut out);
    out
}

/// Finds `g` with `target = g · f` by solving for the coefficients of a
/// generic `g` of degree `deg target - deg f`. Returns `None` when no such
/// polynomial exists.
pub fn find_cofactor(target: &MPoly, f: &MPoly) -> Result<Option<MPoly>> {
    if target.is_zero() {
        return Ok(Some(MPoly::zero()));
    }
    let (Some(dt), Some(df)) = (target.total_degree(), f.total_degree()) else {
        return Ok(None);
    };
    if dt < df {
        return Ok(None);
    }
    let probe = target + &(f * &MPoly::zero());
    let vars = probe.vars().to_vec();
    let (t, f) = (target.with_vars(&vars), f.with_vars(&vars));
    let unknowns = monomials_up_to(vars.len(), dt - df);

    // Row index per monomial of the product, column per unknown.
    let mut rows: BTreeMap<Monomial, Vec<Rational>> = BTreeMap::new();
    for (col, e) in unknowns.iter().enumerate() {
        for (m, c) in f.terms() {
            let key = Monomial(m.0.iter().zip(e).map(|(a, b)| a + b).collect());
            let row = rows
                .entry(key)
                .or_insert_with(|| vec![Rational::zero(); unknowns.len()]);
            row[col] = &row[col] + c;
        }
    }
    for (m, _) in t.terms() {
        rows.entry(m.clone())
            .or_insert_with(|| vec![Rational::zero(); unknowns.len()]);
    }
    let rhs: Vec<Rational> = rows
        .keys()
        .map(|m| {
            t.terms()
                .find(|(tm, _)| *tm == m)
                .map(|(_, c)| c.clone())
                .unwrap_or_else(Rational::zero)
        })
        .collect();
    let a: Vec<Vec<Rational>> = rows.into_values().collect();
    let Some(x) = solve_linear(a, rhs) else {
        return Ok(None);
    };
    let g = MPoly::from_terms(vars, unknowns.into_iter().zip(x))?;
    Ok(Some(g))
}
