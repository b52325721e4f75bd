//! Exact deformation quantization of polynomial Poisson structures.
//!
//! The crate builds star products for constant, linear and quadratic
//! Poisson bivectors, the curved A∞-structures on the exterior algebra they
//! induce, the dual (cobar) differential, and a rewriting presentation of
//! the quotient T(V)[ħ]/I. The [`verify`] module checks, at bounded degree
//! and ħ-order, that the quantized algebra is isomorphic to that quotient.

pub mod ainfty;
pub mod algebra;
pub mod catalog;
pub mod cli;
pub mod cobar;
pub mod error;
pub mod expr;
pub mod linalg;
pub mod problem;
pub mod rewrite;
pub mod serial;
pub mod starprod;
pub mod verify;

pub use error::{Error, Result};
