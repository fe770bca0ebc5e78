//! Deterministic test-signal generators.

use super::{ComplexGrid, Geometry};
use crate::error::Result;
use crate::linalg::CMat2;
use crate::params::{derive_coeffs, ParamSet};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Normalized 1D Hermite–Gaussian function `ψ_m(x)`, evaluated with the
/// stable three-term recurrence.
pub fn hermite_psi(m: usize, x: f64) -> f64 {
    let mut prev = 0.0;
    let mut cur = PI.powf(-0.25) * (-0.5 * x * x).exp();
    for k in 0..m {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `ψ_m(x)·ψ_n(y)`.
pub fn hermite_gaussian_2d(m: usize, n: usize, geometry: Geometry) -> ComplexGrid {
    ComplexGrid::from_real(geometry, |x, y| hermite_psi(m, x) * hermite_psi(n, y))
}

/// Second-order Hermite–Gaussian test signal
/// `4·e^{−(x²+y²)/2}·(4x²y² − 2(x²+y²) + 1)`.
pub fn g1_signal(geometry: Geometry) -> ComplexGrid {
    ComplexGrid::from_real(geometry, |x, y| {
        let r2 = x * x + y * y;
        4.0 * (-0.5 * r2).exp() * (4.0 * x * x * y * y - 2.0 * r2 + 1.0)
    })
}

/// `ψ₁ψ₂ + ψ₃ψ₁`.
pub fn g2_signal(geometry: Geometry) -> ComplexGrid {
    ComplexGrid::from_real(geometry, |x, y| {
        hermite_psi(1, x) * hermite_psi(2, y) + hermite_psi(3, x) * hermite_psi(1, y)
    })
}

/// `exp(−(x² + y²))`, the separable target of the denoising experiments.
pub fn gaussian_target(geometry: Geometry) -> ComplexGrid {
    ComplexGrid::from_real(geometry, |x, y| (-(x * x + y * y)).exp())
}

/// `exp(−(x² + 1.5xy + y²))`, the nonseparable denoising target.
pub fn coupled_gaussian_target(geometry: Geometry) -> ComplexGrid {
    ComplexGrid::from_real(geometry, |x, y| (-(x * x + 1.5 * x * y + y * y)).exp())
}

/// `amp·exp(−½ xᵀMx)` for complex symmetric `M`.
pub fn complex_gaussian(amp: Complex64, m: &CMat2, geometry: Geometry) -> ComplexGrid {
    ComplexGrid::from_fn(geometry, |x, y| amp * (-0.5 * m.quad_form(x, y)).exp())
}

/// Newton-ring intensity `I0 + A·cos(Kπ[(x−x0)² + (y−y0)²] + π)` with
/// `K = 2/(λR)`. Coordinates are in the same physical units as `λ` and `R`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NewtonRings {
    pub i0: f64,
    pub amplitude: f64,
    pub wavelength: f64,
    pub radius: f64,
    pub x0: f64,
    pub y0: f64,
}

impl Default for NewtonRings {
    fn default() -> Self {
        NewtonRings {
            i0: 2.0,
            amplitude: 2.0,
            wavelength: 600e-9,
            radius: 0.4,
            x0: 0.0,
            y0: 0.0,
        }
    }
}

impl NewtonRings {
    pub fn k(&self) -> f64 {
        2.0 / (self.wavelength * self.radius)
    }

    pub fn intensity(&self, x: f64, y: f64) -> f64 {
        let r2 = (x - self.x0).powi(2) + (y - self.y0).powi(2);
        self.i0 + self.amplitude * (self.k() * PI * r2 + PI).cos()
    }
}

pub fn newton_rings(rings: &NewtonRings, geometry: Geometry) -> ComplexGrid {
    ComplexGrid::from_real(geometry, |x, y| rings.intensity(x, y))
}

/// Pixel pitch (metres) at which the default rings show a handful of
/// fringes across a 200-pixel frame without aliasing at the corners.
pub const NEWTON_PIXEL_PITCH: f64 = 10e-6;

/// Rings sampled at `pitch` metres per pixel, with the samples carried on
/// the dimensionless transform `geometry`.
pub fn newton_image(rings: &NewtonRings, geometry: Geometry, pitch: f64) -> ComplexGrid {
    let physical = Geometry {
        dx: pitch,
        dy: pitch,
        ..geometry
    };
    ComplexGrid::from_parts(geometry, newton_rings(rings, physical).into_values())
}

/// `exp(j·sign·(cxx·x² + cxy·xy + cyy·y² + lx·x + ly·y))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChirpSpec {
    pub cxx: f64,
    pub cxy: f64,
    pub cyy: f64,
    pub lx: f64,
    pub ly: f64,
    pub sign: f64,
}

impl ChirpSpec {
    pub fn quadratic(sign: f64, cxx: f64, cxy: f64, cyy: f64) -> Self {
        ChirpSpec {
            cxx,
            cxy,
            cyy,
            lx: 0.0,
            ly: 0.0,
            sign,
        }
    }

    /// Strongly coupled chirp `exp(−j(0.866x² − 2xy + 0.866y²))`.
    pub fn f1() -> Self {
        ChirpSpec::quadratic(-1.0, 0.866, -2.0, 0.866)
    }

    /// Weakly coupled chirp `exp(j(0.2897x² + 0.0061xy + 0.2877y²))`.
    pub fn f2() -> Self {
        ChirpSpec::quadratic(1.0, 0.2897, 0.0061, 0.2877)
    }

    /// Interference chirp with linear terms.
    pub fn f3() -> Self {
        ChirpSpec {
            cxx: 0.2816,
            cxy: 0.1552,
            cyy: 0.3064,
            lx: 5.4319,
            ly: -6.7898,
            sign: 1.0,
        }
    }

    pub fn phase(&self, x: f64, y: f64) -> f64 {
        self.sign
            * (self.cxx * x * x + self.cxy * x * y + self.cyy * y * y + self.lx * x + self.ly * y)
    }

    /// Largest local spatial frequency `|∇φ|` over the box
    /// `[−x_max, x_max] × [−y_max, y_max]`, attained at a corner since the
    /// gradient is affine.
    pub fn max_local_frequency(&self, x_max: f64, y_max: f64) -> f64 {
        let mut best: f64 = 0.0;
        for sx in [-1.0, 1.0] {
            for sy in [-1.0, 1.0] {
                let (x, y) = (sx * x_max, sy * y_max);
                let gx = 2.0 * self.cxx * x + self.cxy * y + self.lx;
                let gy = self.cxy * x + 2.0 * self.cyy * y + self.ly;
                best = best.max(gx.hypot(gy));
            }
        }
        best
    }
}

pub fn chirp(spec: &ChirpSpec, geometry: Geometry) -> ComplexGrid {
    ComplexGrid::from_fn(geometry, |x, y| Complex64::from_polar(1.0, spec.phase(x, y)))
}

/// The quadratic chirp that the transform with parameters `p` collapses to
/// a point: `exp(−j(p1x² + p2xy + p3y²)/(2T))`.
pub fn matched_chirp_spec(p: &ParamSet) -> Result<ChirpSpec> {
    let c = derive_coeffs(p)?;
    let s = 1.0 / (2.0 * c.t);
    Ok(ChirpSpec::quadratic(-1.0, c.p1 * s, c.p2 * s, c.p3 * s))
}

pub fn matched_chirp_for(p: &ParamSet, geometry: Geometry) -> Result<ComplexGrid> {
    Ok(chirp(&matched_chirp_spec(p)?, geometry))
}
