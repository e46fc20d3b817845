//! Seeded random checks of the reciprocal and expansion identities.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symtriple::families::IdentityCheck;
use symtriple::symfun::{check_reciprocal_identity, expansion_coeffs};
use symtriple::{Field, RatFun, Rational, Result};

const TUPLES: usize = 100;

fn nonzero_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num: i64 = rng.gen_range(1..=60) * if rng.gen_bool(0.5) { -1 } else { 1 };
    Rational::new(num, rng.gen_range(1..=30)).expect("positive denominator")
}

/// `(c1·q + c2) / (q² + c3)` with `c1 ≠ 0`, never the zero function.
fn nonzero_ratfun(rng: &mut ChaCha8Rng) -> Result<RatFun> {
    let c = |rng: &mut ChaCha8Rng| RatFun::constant(nonzero_rational(rng));
    let q = RatFun::q();
    let num = c(rng) * &q + &c(rng);
    let den = q.clone() * &q + &c(rng);
    num.checked_div(&den)
}

fn reciprocal_for<F: Field>(n: usize, tuples: &[Vec<F>]) -> Result<Option<String>> {
    for xs in tuples {
        for i in 0..=n as i64 {
            let r = check_reciprocal_identity(i, xs)?;
            if !r.equal {
                return Ok(Some(format!("i = {i}, x = {xs:?}: {} != {}", r.lhs, r.rhs)));
            }
        }
    }
    Ok(None)
}

/// `σ_i = σ_{2n-i}` on `(x, 1/x)`: 100 random rational tuples for each
/// `n ≤ 6`, and random tuples over `Q(q)` for `n ≤ 3`.
pub fn reciprocal_checks(seed: u64) -> Result<Vec<IdentityCheck>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for n in 1..=6 {
        let tuples: Vec<Vec<Rational>> = (0..TUPLES)
            .map(|_| (0..n).map(|_| nonzero_rational(&mut rng)).collect())
            .collect();
        let bad = reciprocal_for(n, &tuples)?;
        out.push(IdentityCheck::outcome(
            &format!("reciprocal_q_n{n}"),
            &format!("sigma_i(x, 1/x) = sigma_(2n-i)(x, 1/x) for n = {n}, 0 <= i <= n, {TUPLES} rational tuples"),
            bad.is_none(),
            bad.unwrap_or_default(),
        ));
    }
    for n in 1..=3 {
        let tuples = (0..10)
            .map(|_| {
                (0..n)
                    .map(|_| nonzero_ratfun(&mut rng))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let bad = reciprocal_for(n, &tuples)?;
        out.push(IdentityCheck::outcome(
            &format!("reciprocal_qq_n{n}"),
            &format!("sigma_i(x, 1/x) = sigma_(2n-i)(x, 1/x) over Q(q) for n = {n}"),
            bad.is_none(),
            bad.unwrap_or_default(),
        ));
    }
    Ok(out)
}

/// `σ_i(A ∥ B) = Σ_k σ_{i-k}(A) σ_k(B)` on random splits.
pub fn expansion_checks(seed: u64) -> Result<Vec<IdentityCheck>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut out = Vec::new();
    for len in 1..=6usize {
        let mut detail = String::new();
        for _ in 0..TUPLES {
            let split = rng.gen_range(0..=len);
            let xs: Vec<Rational> = (0..len).map(|_| nonzero_rational(&mut rng)).collect();
            let (base, extras) = xs.split_at(split);
            for i in 0..=len as i64 {
                if let Err(e) = expansion_coeffs(i, base, extras) {
                    detail = e.to_string();
                }
            }
        }
        out.push(IdentityCheck::outcome(
            &format!("expansion_len{len}"),
            &format!(
                "sigma_i of a joined tuple of length {len} expands over the split, {TUPLES} tuples"
            ),
            detail.is_empty(),
            detail,
        ));
    }
    Ok(out)
}
