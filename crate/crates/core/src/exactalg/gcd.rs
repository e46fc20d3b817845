//! Univariate gcd over Q via the subresultant remainder sequence over Z.
//!
//! Rational inputs are first cleared to primitive integer polynomials. The
//! subresultant sequence keeps every intermediate in Z[x] and divides out
//! the predictable factor `g·h^δ` at each step, so coefficient growth stays
//! linear in the degree instead of exponential.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::Field;
use super::poly::{Poly, UPoly};
use super::rational::Rational;

type ZPoly = Vec<BigInt>;

fn trim(p: &mut ZPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Splits `f` as `content · primitive`, where the primitive part has integer
/// coefficients with gcd 1 and a positive leading coefficient.
///
/// Returns `(0, [])` for the zero polynomial.
pub fn content_and_primitive(f: &UPoly) -> (Rational, Vec<BigInt>) {
    if f.is_zero() {
        return (Rational::zero(), Vec::new());
    }
    let l = Rational::lcm_denominators(f.coeffs());
    let ints: ZPoly = f
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&l / c.denom()))
        .collect();
    let mut g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if ints.last().expect("nonzero").is_negative() {
        g = -g;
    }
    let prim = ints.iter().map(|c| c / &g).collect();
    (Rational::new(g, l).expect("nonzero lcm"), prim)
}

fn zcontent(p: &ZPoly) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn zprimitive(p: &ZPoly) -> ZPoly {
    let g = zcontent(p);
    let g = if p.last().is_some_and(|c| c.is_negative()) {
        -g
    } else {
        g
    };
    p.iter().map(|c| c / &g).collect()
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) · a mod b`.
fn prem(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.clone();
    let steps = a.len() - db;
    for _ in 0..steps {
        let k = r.len() - 1;
        let lr = r[k].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[k - db + j] -= &lr * bc;
        }
        r.pop();
    }
    trim(&mut r);
    r
}

fn to_upoly(p: &ZPoly) -> UPoly {
    Poly::from_coeffs(p.iter().map(|c| Rational::from(c.clone())).collect())
}

/// Monic gcd of two rational polynomials. `gcd(f, 0) = monic(f)` and
/// `gcd(0, 0) = 0`.
pub fn upoly_gcd(f: &UPoly, g: &UPoly) -> UPoly {
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    let (_, pf) = content_and_primitive(f);
    let (_, pg) = content_and_primitive(g);
    let (mut a, mut b) = if pf.len() >= pg.len() {
        (pf, pg)
    } else {
        (pg, pf)
    };
    if b.len() == 1 {
        return UPoly::one();
    }
    let mut gg = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = (a.len() - b.len()) as u32;
        let r = prem(&a, &b);
        if r.is_empty() {
            return to_upoly(&zprimitive(&b)).monic();
        }
        if r.len() == 1 {
            return UPoly::one();
        }
        let divisor = &gg * num_traits::pow(h.clone(), delta as usize);
        a = b;
        b = r.iter().map(|c| c / &divisor).collect();
        gg = a.last().expect("nonzero").clone();
        // h <- g^δ / h^(δ-1)
        h = match delta {
            0 => h,
            1 => gg.clone(),
            _ => {
                num_traits::pow(gg.clone(), delta as usize)
                    / num_traits::pow(h, (delta - 1) as usize)
            }
        };
    }
}

/// Plain Euclidean gcd over Q, kept as an independent reference route.
pub fn euclid_gcd(f: &UPoly, g: &UPoly) -> UPoly {
    f.gcd(g)
}
