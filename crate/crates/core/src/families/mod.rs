//! Solution generators and verifiers.
//!
//! The chain construction turns the known solution of
//! `σ_i = σ_{2n-i} = a, σ_{2n} = 1` into a curve and walks multiples of a
//! point on it. The power-sum families are closed-form parametrizations.
//! Every generator certifies its output before returning it.

mod chain;
mod identities;
mod integer;
mod power;
mod solution;
mod worked_example;

pub use chain::{
    build_pipeline, build_pipeline_numeric, build_pipeline_symbolic, gen_symmetric_chain, solve_q,
    ChainField, CurveStage, PipelineState, Stage, DEFAULT_CHAIN_LIMIT,
};
pub use identities::{
    factorization_residual, resultant_124_check, verify_theorem45_identities, IdentityCheck,
    IdentityReport,
};
pub use integer::{make_integer_family, IntegerFamily};
pub use power::{
    family_123, family_123_values, family_124, family_124_values, family_24, family_24_values,
    family_m112, family_m112_values, lift_to_n, positivity_window, symbolic_family_certificates,
};
pub use solution::{
    verify_solution, Constraint, ConstraintCheck, Provenance, SolutionTuple, SystemSpec,
    VerificationReport,
};
pub use worked_example::{worked_example_checks, WorkedExample};
