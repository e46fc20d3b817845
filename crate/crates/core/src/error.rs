use thiserror::Error;

/// Errors raised by the arithmetic, curve and family layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("zero entry at index {0} where a nonzero value is required")]
    ZeroEntry(usize),

    #[error("polynomial has degree 0 in `{0}`")]
    DegreeZero(String),

    #[error("division is not exact")]
    InexactDivision,

    #[error("point is not on the curve")]
    NotOnCurve,

    #[error("singular curve: {0}")]
    Singular(String),

    #[error("singular specialization at q = {0}")]
    SingularSpecialization(String),

    #[error("denominator vanishes at q = {0}")]
    DenominatorVanishes(String),

    #[error("base point is a branch point")]
    BranchPoint,

    #[error("point at infinity: {0}")]
    PointAtInfinity(String),

    #[error("exceptional point: {0}")]
    Exceptional(String),

    #[error("degenerate: {0}")]
    Degenerate(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("cannot certify infinite order; supply different parameters ({0})")]
    CannotCertify(String),

    #[error("non-integral model cannot be scaled: {0}")]
    NonIntegral(String),

    #[error("identity violated: {0}")]
    IdentityViolated(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Short machine-readable code, used by the CLI's structured stderr.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "division_by_zero",
            Error::ZeroEntry(_) => "zero_entry",
            Error::DegreeZero(_) => "degree_zero",
            Error::InexactDivision => "inexact_division",
            Error::NotOnCurve => "not_on_curve",
            Error::Singular(_) => "singular",
            Error::SingularSpecialization(_) => "singular_specialization",
            Error::DenominatorVanishes(_) => "denominator_vanishes",
            Error::BranchPoint => "branch_point",
            Error::PointAtInfinity(_) => "point_at_infinity",
            Error::Exceptional(_) => "exceptional_point",
            Error::Degenerate(_) => "degenerate",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::CannotCertify(_) => "cannot_certify",
            Error::NonIntegral(_) => "non_integral",
            Error::IdentityViolated(_) => "identity_violated",
            Error::Parse(_) => "parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
