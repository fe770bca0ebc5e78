//! Kernels of the three classical special cases, written from their own
//! definitions rather than from the general coefficients.
#![allow(dead_code)]

use num_complex::Complex64;
use std::f64::consts::PI;

pub const J: Complex64 = Complex64::new(0.0, 1.0);

/// One-dimensional fractional Fourier kernel `K_α(u, x)`, `α ∉ πℤ`.
pub fn frft_kernel(alpha: f64, u: f64, x: f64) -> Complex64 {
    let cot = 1.0 / alpha.tan();
    let amp = ((Complex64::new(1.0, 0.0) - J * cot) / (2.0 * PI)).sqrt();
    amp * (J * (0.5 * cot * (x * x + u * u) - u * x / alpha.sin())).exp()
}

pub fn separable_kernel(a1: f64, a2: f64, x: f64, y: f64, u: f64, v: f64) -> Complex64 {
    frft_kernel(a1, u, x) * frft_kernel(a2, v, y)
}

pub fn gyrator_kernel(phi: f64, x: f64, y: f64, u: f64, v: f64) -> Complex64 {
    let amp = (1.0 / phi.sin()).abs() / (2.0 * PI);
    amp * (J * ((u * v + x * y) / phi.tan() - (u * y + v * x) / phi.sin())).exp()
}

pub fn coupled_kernel(alpha: f64, beta: f64, x: f64, y: f64, u: f64, v: f64) -> Complex64 {
    let gamma = 0.5 * (alpha + beta);
    let delta = 0.5 * (alpha - beta);
    let a = J / (2.0 * gamma.tan());
    let b = J * delta.cos() / gamma.sin();
    let c = J * delta.sin() / gamma.sin();
    let d = -J * (J * gamma).exp() / (2.0 * PI * gamma.sin());
    d * (a * (x * x + y * y + u * u + v * v) - b * (u * x + v * y) - c * (v * x - u * y)).exp()
}

/// Largest deviation of `ours / theirs` from a single constant, together
/// with that constant.
pub fn ratio_spread(ours: &[Complex64], theirs: &[Complex64]) -> (f64, Complex64) {
    let r0 = ours[0] / theirs[0];
    let spread = ours
        .iter()
        .zip(theirs)
        .map(|(a, b)| (a / b - r0).norm())
        .fold(0.0, f64::max);
    (spread, r0)
}
