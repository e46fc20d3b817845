//! Elementary symmetric polynomials, power sums and the reciprocal-tuple
//! identities built on them.
//!
//! Every function is generic over [`Field`], so the same code evaluates
//! numeric tuples over `Q` and symbolic tuples over `Q(q)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::Field;

/// An ordered tuple of field elements.
pub type ValueTuple<F> = Vec<F>;

/// All elementary symmetric values `σ_0..σ_n` at once, read off as the
/// coefficients of `Π (1 + x_j z)`.
pub fn sigma_all<F: Field>(xs: &[F]) -> Vec<F> {
    let mut e = Vec::with_capacity(xs.len() + 1);
    e.push(F::one());
    for x in xs {
        e.push(F::zero());
        for k in (1..e.len()).rev() {
            let t = e[k - 1].clone() * x;
            e[k] = std::mem::replace(&mut e[k], F::zero()) + t;
        }
    }
    e
}

/// `σ_i(xs)`, with `σ_0 = 1` and `σ_i = 0` for `i < 0` or `i > n`.
///
/// Only the first `i` coefficients of the product are tracked, so the cost
/// is `O(n·i)` field operations.
pub fn sigma<F: Field>(i: i64, xs: &[F]) -> F {
    if i < 0 || i as usize > xs.len() {
        return F::zero();
    }
    let i = i as usize;
    let mut e = vec![F::zero(); i + 1];
    e[0] = F::one();
    for (seen, x) in xs.iter().enumerate() {
        for k in (1..=i.min(seen + 1)).rev() {
            let t = e[k - 1].clone() * x;
            e[k] = std::mem::replace(&mut e[k], F::zero()) + t;
        }
    }
    e.pop().expect("nonempty")
}

/// `s_e(xs) = Σ x_j^e` for a nonzero integer exponent.
pub fn power_sum<F: Field>(e: i64, xs: &[F]) -> Result<F> {
    if e == 0 {
        return Err(Error::InvalidParameter(
            "power-sum exponent must be nonzero".into(),
        ));
    }
    xs.iter().enumerate().try_fold(F::zero(), |acc, (k, x)| {
        if e < 0 && x.is_zero() {
            return Err(Error::ZeroEntry(k));
        }
        Ok(acc + x.powi(e)?)
    })
}

/// `(x_1, .., x_n, 1/x_1, .., 1/x_n)`.
pub fn reciprocal_extend<F: Field>(xs: &[F]) -> Result<ValueTuple<F>> {
    let mut out = xs.to_vec();
    for (k, x) in xs.iter().enumerate() {
        out.push(x.inv().map_err(|_| Error::ZeroEntry(k))?);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReciprocalReport<F> {
    pub i: i64,
    pub lhs: F,
    pub rhs: F,
    pub equal: bool,
}

/// Compares `σ_i` and `σ_{2n-i}` of the reciprocal extension of `xs`.
pub fn check_reciprocal_identity<F: Field>(i: i64, xs: &[F]) -> Result<ReciprocalReport<F>> {
    let n = xs.len() as i64;
    if !(0..=n).contains(&i) {
        return Err(Error::InvalidParameter(format!(
            "index {i} outside 0..={n}"
        )));
    }
    let ext = reciprocal_extend(xs)?;
    let all = sigma_all(&ext);
    let lhs = all[i as usize].clone();
    let rhs = all[(2 * n - i) as usize].clone();
    let equal = lhs == rhs;
    Ok(ReciprocalReport { i, lhs, rhs, equal })
}

/// `Σ_k σ_{i-k}(base) σ_k(extras)`, checked against `σ_i(base ∥ extras)`.
pub fn expansion_coeffs<F: Field>(i: i64, base: &[F], extras: &[F]) -> Result<F> {
    let total = (base.len() + extras.len()) as i64;
    if i > total {
        return Err(Error::InvalidParameter(format!(
            "index {i} exceeds length {total}"
        )));
    }
    let sb = sigma_all(base);
    let se = sigma_all(extras);
    let at = |v: &[F], j: i64| {
        if j < 0 {
            F::zero()
        } else {
            v.get(j as usize).cloned().unwrap_or_else(F::zero)
        }
    };
    let mut acc = F::zero();
    for k in 0..=i.max(0) {
        acc = acc + at(&sb, i - k) * &at(&se, k);
    }
    let joined: Vec<F> = base.iter().chain(extras).cloned().collect();
    let direct = sigma(i, &joined);
    if acc != direct {
        return Err(Error::IdentityViolated(format!(
            "expansion of sigma_{i}: {acc} != {direct}"
        )));
    }
    Ok(acc)
}

/// `u_k = σ_{i-k}(T, 1/T)` for `k = 0..4`. An empty `T` follows the
/// convention `σ_0(∅) = 1` and `σ_j(∅) = 0` otherwise.
pub fn u_coeffs<F: Field>(i: i64, t: &[F]) -> Result<[F; 5]> {
    let ext = reciprocal_extend(t)?;
    let all = sigma_all(&ext);
    Ok(std::array::from_fn(|k| {
        let j = i - k as i64;
        if j < 0 {
            F::zero()
        } else {
            all.get(j as usize).cloned().unwrap_or_else(F::zero)
        }
    }))
}
