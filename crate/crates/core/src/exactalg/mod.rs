//! Exact arithmetic: rationals, polynomials, rational functions, resultants.

mod field;
mod gcd;
mod linsolve;
mod mpoly;
mod poly;
mod polyfrac;
mod ratfun;
mod rational;
mod resultant;

pub use field::Field;
pub use gcd::{content_and_primitive, euclid_gcd, upoly_gcd};
pub use linsolve::{find_cofactor, solve_linear};
pub use mpoly::{MPoly, Monomial};
pub use poly::{Poly, UPoly};
pub use polyfrac::PolyFrac;
pub use ratfun::RatFun;
pub use rational::Rational;
pub use resultant::{bareiss_det, resultant, upoly_resultant_sylvester};
