//! Global controllability of driftless control systems
//! `x' = x (u_1 X_1 + … + u_m X_m)` on matrix symmetric spaces.
//!
//! The tangent structure of a symmetric space at its base point is a
//! Lie triple system: a real vector space closed under the double
//! bracket `[[A,B],C]`. A driftless system is globally controllable
//! exactly when the Lie triple system generated by its control
//! matrices spans the whole tangent space, and this crate decides that
//! by iterating the double-bracket filtration with a tolerance-aware
//! rank certificate.
//!
//! The pieces:
//!
//! * [`matrix`] — complex dense matrices, commutators, the scaled
//!   truncated-series exponential; integer-entry matrices follow an
//!   exact path with literal zero residuals.
//! * [`span`] — real-linear spans, modified Gram-Schmidt rank, and
//!   membership tests.
//! * [`engine`] — the closure iteration, the controllability verdict
//!   with bracket-word certificates, Lie-triple-system axiom checks,
//!   and minimal-control search.
//! * [`flow`] — flow composition: the ten-factor commutator curve,
//!   recursive word flows, and the chained-flow Jacobian rank
//!   certificate.
//! * [`catalog`] — built-in bases for the worked symmetric spaces,
//!   with provenance notes on corrections and published-value
//!   divergences.
//!
//! With the default `parallel` feature the bracket sweeps, subset
//! searches and Jacobian columns run on the rayon pool; results are
//! merged in input order, so output is identical with or without it.

pub mod catalog;
pub mod engine;
pub mod error;
mod exec;
pub mod flow;
pub mod matrix;
pub mod span;
pub mod word;

pub use engine::{
    chow_check, is_lts_subspace, lts_closure, minimal_generators, verify_lts_axioms, AxiomOptions,
    AxiomReport, ChowResult, ClosureOptions, ClosureReport, GeneratorSet, SearchMode,
};
pub use error::Error;
pub use flow::{
    double_bracket_estimate, double_bracket_estimate_richardson, flow, gamma_curve,
    normalized_tangent_estimate, normalized_word_flow, phi_jacobian_rank, word_flow, FlowProgram,
    PhiRank, TangencyReport,
};
pub use matrix::{commutator, double_bracket, expm, Matrix};
pub use span::{span_rank, BasisSet, DEFAULT_TOL};
pub use word::BracketWord;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
