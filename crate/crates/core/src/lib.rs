//! B-spline basis functions in Bernstein-Bezier form.
//!
//! The central piece is [`bbf::compute_table`], which finds the
//! Bernstein-Bezier coefficients of every degree-`m` B-spline basis function
//! over every non-empty knot span in time proportional to the number of
//! coefficients. With the table in hand, [`eval`] computes basis values in
//! O(m) per function and B-spline curve points faster than the de Boor-Cox
//! algorithm when several curves share knots or many points are needed;
//! [`surface`] does the same for tensor-product surfaces. The [`oracle`]
//! module holds independent reference implementations (divided differences,
//! the degree recurrence, de Boor-Cox) used for verification and as
//! benchmark baselines, and [`bench`](mod@bench) drives the seeded
//! experiments behind the `bspline-bbf` binary.

pub mod bbf;
pub mod bench;
#[cfg(test)]
pub(crate) mod fixtures;
pub mod bernstein;
pub(crate) mod dd;
pub mod errors;
pub mod eval;
pub mod io;
pub mod knots;
pub mod ops;
pub mod oracle;
pub mod rng;
pub mod scalar;
pub mod surface;

pub use bbf::{compute_table, BBCoeffTable};
pub use errors::{EvalError, KnotVectorError, OracleError};
pub use eval::{BSplineCurve, PointGrid};
pub use knots::KnotVector;
pub use ops::{NoTally, OpCounter, OpTally};
pub use scalar::{Field, Scalar};
pub use surface::TensorProductSurface;
