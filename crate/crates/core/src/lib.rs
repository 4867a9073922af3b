//! Exact construction of the AMN polynomials `P_m(t)`,
//! verification of their rational root sets, and numerical evaluation of
//! the associated Weyl–Dirac zero modes.
//!
//! The exact half ([`algebra`], [`recurrence`], [`roots`]) never touches
//! floating point. The [`field`] module converts exact coefficients to
//! doubles only at evaluation time.

pub mod algebra;
pub mod error;
pub mod field;
pub mod growth;
pub mod recurrence;
pub mod roots;

pub use algebra::{rat, IntPoly, RatPoly, Rational};
pub use error::{Error, Result};
