//! Exact B-splines over rational knots.
//!
//! Every function is kept as exact polynomial pieces, so cell restrictions
//! and derivative jumps across knot lines come out as rational coefficients.

pub mod knot;
pub mod poly;
pub mod tensor;

use thiserror::Error;

use ptspline_exact::{format_rational, Rational};

pub use knot::{KnotVector, Piece};
pub use poly::{BiPoly, UniPoly};
pub use tensor::{Edge, SplineCombination, SplineTag, TensorBSpline};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BSplineError {
    #[error("a knot vector needs at least two knots, got {0}")]
    TooFewKnots(usize),
    #[error("knots must be non-decreasing")]
    Decreasing,
    #[error("first and last knot coincide")]
    EmptySupport,
    #[error("a knot lies inside ({}, {})", format_rational(.lo), format_rational(.hi))]
    KnotInside { lo: Rational, hi: Rational },
}
