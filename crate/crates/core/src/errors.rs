//! Error types shared across the library.

use thiserror::Error;

/// Violation report produced by knot-vector validation. The first violated
/// invariant wins; indices are signed, in `-m..=n+m`.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum KnotVectorError {
    #[error("knot array must hold n + 2m + 1 = {expected} values, got {got}")]
    WrongLength { expected: usize, got: usize },

    #[error("degree must be positive")]
    ZeroDegree,

    #[error("span count n must be positive")]
    ZeroSpanCount,

    #[error("knot t_{index} is non-finite")]
    NonFinite { index: isize },

    #[error("knots must be nondecreasing, but t_{index} > t_{next}", next = index + 1)]
    NotNondecreasing { index: isize },

    #[error("degenerate domain: t_0 = t_n")]
    DegenerateDomain,

    #[error("inner knot t_{index} has multiplicity {multiplicity}, maximum is {max}")]
    InnerMultiplicity {
        index: isize,
        multiplicity: usize,
        max: usize,
    },
}

/// Errors raised by curve/surface construction and evaluation.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum EvalError {
    #[error("invalid knot vector: {0}")]
    Knots(#[from] KnotVectorError),

    #[error("parameter {u} outside the domain [{lo}, {hi}]")]
    OutOfDomain { u: f64, lo: f64, hi: f64 },

    #[error("knot span {span} is empty")]
    EmptySpan { span: usize },

    #[error("curves passed to a shared-knot pipeline have differing knot vectors")]
    MixedKnotVectors,

    #[error("expected {expected} control points, got {got}")]
    ControlPointCount { expected: usize, got: usize },

    #[error("control net must be {rows} x {cols}, got {got_rows} x {got_cols}")]
    ControlNetShape {
        rows: usize,
        cols: usize,
        got_rows: usize,
        got_cols: usize,
    },

    #[error("point dimension must be {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("control coordinates must be finite")]
    NonFiniteCoordinate,

    #[error("coefficient vector must be non-empty")]
    EmptyCoefficients,
}

/// Errors raised by the reference oracles.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("divided-difference nodes must be nondecreasing (violated at position {index})")]
    DecreasingNodes { index: usize },
}
