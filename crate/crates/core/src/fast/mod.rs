//! O(N² log N) evaluation through matrix decompositions of `[A B; −B A]`
//! into chirp multiplications, chirp convolutions, Fourier transforms and
//! affine resampling.
//!
//! The inverse transform uses the conjugate kernel and is realised as the
//! exact reversal of the forward plan, so forward-then-inverse is the
//! identity to rounding for the chirp-convolution algorithm.

pub mod ops;
pub mod plan;

pub use ops::{
    affine_resample, affine_resample_onto, chirp_convolve, chirp_multiply, fourier2d, Direction,
};
pub use plan::{
    gaussian_response, plan_algorithm1, plan_algorithm2, plan_for, Algorithm, OperatorPlan, Step,
};

use crate::error::Result;
use crate::grid::ComplexGrid;
use crate::params::{blocks_from_params, ParamSet};

/// Builds the plan for `p`, or `None` at the identity point.
pub fn plan_params(p: &ParamSet, algorithm: Algorithm) -> Result<Option<OperatorPlan>> {
    if p.is_identity() {
        return Ok(None);
    }
    Ok(Some(plan_for(&blocks_from_params(p)?, algorithm)?))
}

/// Forward transform on the input grid's geometry.
pub fn nsfrft_fast(p: &ParamSet, f: &ComplexGrid, algorithm: Algorithm) -> Result<ComplexGrid> {
    match plan_params(p, algorithm)? {
        None => Ok(f.clone()),
        Some(plan) => plan.execute(f),
    }
}

/// Inverse transform (conjugate kernel) on the input grid's geometry.
pub fn nsfrft_fast_inverse(
    p: &ParamSet,
    big_f: &ComplexGrid,
    algorithm: Algorithm,
) -> Result<ComplexGrid> {
    match plan_params(p, algorithm)? {
        None => Ok(big_f.clone()),
        Some(plan) => plan.inverse().execute(big_f),
    }
}
