use thiserror::Error;

use crate::algebra::Rational;

/// Errors produced by the exact pipeline and the field evaluators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cannot normalize zero polynomial")]
    ZeroPolynomial,

    #[error("seed defined for m ≥ 1")]
    SeedOrder,

    #[error("P_m defined for m ≥ 1")]
    PolynomialOrder,

    #[error("monotonicity check needs m_max ≥ 2 (got {0})")]
    ChainTooShort(usize),

    #[error("pair index must be j−1 (expected {expected}, got {found})")]
    PairIndex { expected: usize, found: usize },

    #[error("step index j = {j} outside [2, {m}]")]
    StepOutOfRange { m: usize, j: usize },

    #[error("lift requires an exact (L_m) solution")]
    NotASolution,

    #[error("coefficients of order {m} do not satisfy (L_m): first nonzero residual at equation {equation}")]
    InvalidField { m: usize, equation: usize },

    #[error("spinor vanishes at x")]
    SpinorVanishes,

    #[error("quadrature did not converge: estimate {estimate} with error {error}")]
    QuadratureNotConverged { estimate: f64, error: f64 },

    #[error("trial division bound {bound} exceeded while factoring {value}")]
    FactorBoundExceeded { bound: u64, value: String },

    #[error("rational root search needs a nonconstant polynomial")]
    ConstantPolynomial,

    #[error("P_{m} does not vanish at predicted root {root}: value {value}")]
    RootDoesNotVanish {
        m: usize,
        root: Box<Rational>,
        value: Box<Rational>,
    },

    #[error("P_{m} differs from d_m·∏(t − λ_j) at t^{power}: expected {expected}, found {found}")]
    FactorizationMismatch {
        m: usize,
        power: usize,
        expected: Box<Rational>,
        found: Box<Rational>,
    },

    #[error("constant term check failed for m = {m}: d_m·(−1)^(m+1)·∏λ_j = {product}, −c_m = {expected}")]
    ConstantTermMismatch {
        m: usize,
        product: Box<Rational>,
        expected: Box<Rational>,
    },

    #[error("monotonicity violated: root {root} of P_{previous} is not a root of P_{m}")]
    MonotonicityViolation {
        m: usize,
        previous: usize,
        root: Box<Rational>,
    },

    #[error("invalid rational literal {0:?}")]
    ParseRational(String),
}

pub type Result<T> = std::result::Result<T, Error>;
