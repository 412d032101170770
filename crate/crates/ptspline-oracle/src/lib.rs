//! Brute-force checks that share no code with the constructive pipeline.
//!
//! The dimension is the nullity of a system over per-cell polynomial
//! coefficients that matches one-sided derivatives across every shared edge.
//! Cells and edge coverage are recomputed here from the raw segments.

pub mod cells;
pub mod dimension;
pub mod verify;

pub use dimension::{
    conformality_system, exceeds_size_guideline, oracle_dimension, oracle_nullity,
    ConformalitySystem, SIZE_GUIDELINE,
};
pub use verify::{
    function_rank, smoothness_violation, verify_completeness, verify_independence,
    verify_smoothness, Violation,
};
