//! Exact construction and verification of rational and integer tuples that
//! share prescribed values of elementary symmetric polynomials or power sums.
//!
//! The crate is layered bottom-up:
//!
//! * [`exactalg`] provides rationals, univariate and multivariate
//!   polynomials, the rational function field `Q(q)` and resultants.
//! * [`symfun`] evaluates elementary symmetric polynomials and power sums.
//! * [`curves`] implements Weierstrass arithmetic, quartic models and their
//!   birational transforms, torsion certificates and specialization.
//! * [`families`] builds the curve pipeline and the closed-form power-sum
//!   families, and verifies every tuple it emits.

pub mod curves;
pub mod error;
pub mod exactalg;
pub mod families;
pub mod symfun;

pub use error::{Error, Result};
pub use exactalg::{Field, MPoly, Poly, PolyFrac, RatFun, Rational, UPoly};
