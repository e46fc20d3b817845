//! Elliptic curves over `Q` and `Q(q)`: the short Weierstrass group law,
//! quartic models `S² = H(P)` with their birational maps, Euler's tangent
//! construction, torsion certificates and specialization `q := q0`.

mod quartic;
mod specialize;
mod torsion;
mod weierstrass;

pub use quartic::{
    euler_double, euler_double_via_group, quartic_group_op, quartic_to_weierstrass, BirationalPair,
    QuarticGroup, QuarticModel,
};
pub use specialize::{specialize_point_on, Specialize};
pub use torsion::{
    mazur_check, torsion_certificate, MazurVerdict, TorsionVerdict, NON_POLYNOMIAL, NO_DIVISIBILITY,
};
pub use weierstrass::{CurvePoint, LongWeierstrass, WeierstrassCurve};
