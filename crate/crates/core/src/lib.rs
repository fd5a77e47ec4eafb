//! Exact symbolic engine for the Lie algebra of solenoidal, completely
//! integrable polynomial vector fields with a nilpotent triple-zero
//! linearization.

pub mod bases;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod liealg;
pub mod linalg;
pub mod normalform;
pub mod parse;
pub mod poisson;
pub mod ratpoly;
pub mod sl2core;
pub mod vfield;

pub use error::{Error, Result};
pub use ratpoly::{Monomial, Poly, Rational, Var};
pub use vfield::VField;
