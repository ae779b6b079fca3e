//! Verification of modular data for rational conformal field theories.
//!
//! The numeric core is generic over [`scalar::Real`] (`f32`, `f64`); conformal
//! weights and central charges are exact rationals. The aliases below fix the
//! scalar to `f64`, which is what the tolerances are calibrated for.

// Negated comparisons are deliberate: a NaN residual must fail.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod catalog;
pub mod characters;
pub mod error;
pub mod fb;
pub mod io;
pub mod linalg;
pub mod modular_data;
pub mod pipeline;
pub mod report;
pub mod scalar;
pub mod verlinde;

pub use error::{Error, Result};
pub use modular_data::{FusionTensor, LabelSet};
pub use pipeline::{run, run_dir, RunConfig};
pub use report::{CheckResult, Severity, VerificationReport};
pub use scalar::Rational;

pub type Complex64 = scalar::C<f64>;
pub type Matrix = linalg::CMatrix<f64>;
pub type ModularData = modular_data::ModularData<f64>;
pub type FbData = fb::FbData<f64>;
pub type FbEntries = fb::FbEntries<f64>;
pub type Bundle = io::Bundle<f64>;
pub type Fixture = catalog::Fixture<f64>;

pub type ModularData32 = modular_data::ModularData<f32>;
pub type Matrix32 = linalg::CMatrix<f32>;
