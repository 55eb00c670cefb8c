//! Quantum and classical projection models for question-order effects.
//!
//! The crate evaluates two-dimensional projection models of sequential
//! yes/no questions, in two flavours:
//!
//! * [`projection`]: complex amplitudes and explicit matrix algebra
//!   (outer-product projectors, matrix-vector products, squared norms).
//! * [`classical`]: the same geometry over real amplitudes.
//!
//! [`closed_form`] holds the simplified trigonometric expressions for every
//! sequence probability. They are kept as an independent route and used to
//! cross-check the matrix path, never to compute it.
//!
//! On top of the models sit the Gallup poll data ([`datasets`]), the rotation
//! fit ([`fitting`]), probability surfaces ([`sweep`]), basis frames for
//! multiple observers ([`observers`]) and the self-check suite ([`verify`]).

pub mod classical;
pub mod closed_form;
pub mod datasets;
mod error;
pub mod fitting;
pub mod interference;
pub mod observers;
pub mod projection;
pub mod search;
pub mod sweep;
mod types;
pub mod verify;

pub use error::{Error, Result};
pub use types::{Answer, Direction, Model, Question};

/// Tolerance for checking that caller-supplied probabilities are normalized.
pub const NORMALIZATION_TOL: f64 = 1e-9;

/// Tolerance for algebraic identities (idempotency, completeness, oracle agreement).
pub const IDENTITY_TOL: f64 = 1e-12;
