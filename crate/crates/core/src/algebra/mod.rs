//! Exact scalars and dense univariate polynomials over ℚ and ℤ.
//!
//! Everything here is pure and allocation-only; no floating point is used
//! except in the explicit [`to_f64`] conversion at the field boundary.

mod intpoly;
mod poly;
mod rational;

pub use intpoly::{primitive_integer_form, IntPoly};
pub use poly::{poly_arith, PolyOp, RatPoly};
pub use rational::{format_rational, parse_rational, rat, to_f64, Rational};
