//! Operator plans: ordered products of elementary operators that realise a
//! given `[A B; −B A]`, plus the global constant that makes the product
//! agree with the kernel normalization.

use super::ops::{self, Direction};
use crate::error::{Error, Result};
use crate::grid::ComplexGrid;
use crate::linalg::{CMat2, Mat2, Mat4};
use crate::params::{kernel_constant, SymplecticSpec};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// One elementary operator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Step {
    ChirpMultiply(Mat2),
    ChirpConvolve(Mat2),
    Fourier2D(Direction),
    /// Resamples onto the reciprocal lattice of the current geometry.
    Affine(Mat2),
}

impl Step {
    /// 4×4 representative acting on `(position, frequency)`.
    pub fn symplectic(&self) -> Mat4 {
        let i = Mat2::IDENTITY;
        let z = Mat2::ZERO;
        match *self {
            Step::ChirpMultiply(s) => Mat4::from_blocks(i, z, s, i),
            Step::ChirpConvolve(s) => Mat4::from_blocks(i, s, z, i),
            Step::Fourier2D(Direction::Forward) => Mat4::from_blocks(z, i, -i, z),
            Step::Fourier2D(Direction::Inverse) => Mat4::from_blocks(z, -i, i, z),
            Step::Affine(l) => {
                let lit = l.inverse().map(|m| m.transpose()).unwrap_or(Mat2::ZERO);
                Mat4::from_blocks(l, z, z, lit)
            }
        }
    }

    pub fn inverse(&self) -> Step {
        match *self {
            Step::ChirpMultiply(s) => Step::ChirpMultiply(-s),
            Step::ChirpConvolve(s) => Step::ChirpConvolve(-s),
            Step::Fourier2D(Direction::Forward) => Step::Fourier2D(Direction::Inverse),
            Step::Fourier2D(Direction::Inverse) => Step::Fourier2D(Direction::Forward),
            Step::Affine(l) => Step::Affine(l.inverse().unwrap_or(Mat2::ZERO)),
        }
    }

    pub fn apply(&self, f: &ComplexGrid) -> Result<ComplexGrid> {
        match self {
            Step::ChirpMultiply(s) => ops::chirp_multiply(f, s),
            Step::ChirpConvolve(s) => ops::chirp_convolve(f, s),
            Step::Fourier2D(d) => Ok(ops::fourier2d(f, *d)),
            Step::Affine(l) => ops::affine_resample(f, l),
        }
    }

    /// How a complex Gaussian `amp·exp(−½xᵀMx)` passes through this step
    /// in the continuous setting: returns the new `(amp, M)`.
    fn propagate_gaussian(&self, amp: Complex64, m: CMat2) -> (Complex64, CMat2) {
        match *self {
            Step::ChirpMultiply(s) => (amp, m.add_imag(s, -1.0)),
            Step::ChirpConvolve(s) => {
                let n = m.inverse().add_imag(s, 1.0);
                (
                    amp / (m.sqrt_det_gaussian() * n.sqrt_det_gaussian()),
                    n.inverse(),
                )
            }
            Step::Fourier2D(_) => (amp / m.sqrt_det_gaussian(), m.inverse()),
            Step::Affine(l) => {
                let li = l.inverse().unwrap_or(Mat2::ZERO);
                (amp / l.det().abs().sqrt(), m.congruence(li))
            }
        }
    }
}

/// Which decomposition produced a plan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Algorithm {
    /// Chirp multiply, affine, Fourier, chirp multiply.
    I,
    /// Chirp multiply, chirp convolve, chirp multiply — optionally preceded
    /// by a chirp convolution that symmetrizes `B`.
    II,
}

impl std::str::FromStr for Algorithm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fast1" | "I" | "1" => Ok(Algorithm::I),
            "fast2" | "II" | "2" => Ok(Algorithm::II),
            _ => Err(Error::InvalidParams(format!("unknown algorithm {s:?}"))),
        }
    }
}

/// An ordered list of steps (applied first to last) and a global scale.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorPlan {
    pub steps: Vec<Step>,
    pub scale: Complex64,
    pub algorithm: Option<Algorithm>,
}

impl OperatorPlan {
    pub fn identity() -> Self {
        OperatorPlan {
            steps: Vec::new(),
            scale: Complex64::new(1.0, 0.0),
            algorithm: None,
        }
    }

    /// Product of the step representatives, later steps on the left.
    pub fn symplectic(&self) -> Mat4 {
        self.steps
            .iter()
            .fold(Mat4::identity(), |acc, s| s.symplectic() * acc)
    }

    /// The exact discrete inverse: steps reversed and inverted, scale
    /// reciprocated.
    pub fn inverse(&self) -> OperatorPlan {
        OperatorPlan {
            steps: self.steps.iter().rev().map(Step::inverse).collect(),
            scale: Complex64::new(1.0, 0.0) / self.scale,
            algorithm: self.algorithm,
        }
    }

    pub fn execute(&self, f: &ComplexGrid) -> Result<ComplexGrid> {
        let mut g = f.clone();
        for step in &self.steps {
            g = step.apply(&g)?;
        }
        if self.scale != Complex64::new(1.0, 0.0) {
            g = g.scale(self.scale);
        }
        Ok(g)
    }

    /// Chooses the global scale so that the continuous counterpart of the
    /// step chain carries the kernel normalization `1/(2π√(−T))`.
    ///
    /// Both sides are evaluated on the Gaussian `exp(−½|x|²)`: the target
    /// transform maps it to a Gaussian of amplitude `2π·C/√det(I − jB⁻¹A)`,
    /// and each step's action on a Gaussian is known in closed form.
    fn calibrate(&mut self, spec: &SymplecticSpec) -> Result<()> {
        let (target_amp, _) = gaussian_response(spec, Complex64::new(1.0, 0.0), identity_c())?;
        let (chain_amp, _) = self.gaussian_response(Complex64::new(1.0, 0.0), identity_c());
        self.scale = target_amp / chain_amp;
        Ok(())
    }

    /// Largest position or frequency half-extent that the unit phase-space
    /// ball reaches at any stage of the chain. A signal occupying radius
    /// `r` needs `r·extent` to fit both the window half-width and the
    /// Nyquist frequency of the grid at every stage.
    pub fn phase_space_extent(&self) -> f64 {
        let mut acc = Mat4::identity();
        let mut worst = 1.0f64;
        for s in &self.steps {
            acc = s.symplectic() * acc;
            worst = worst.max(phase_space_extent(&acc));
        }
        worst
    }

    /// Continuous response of the step chain (scale excluded) to
    /// `amp·exp(−½xᵀMx)`.
    pub fn gaussian_response(&self, amp: Complex64, m: CMat2) -> (Complex64, CMat2) {
        self.steps
            .iter()
            .fold((amp, m), |(a, m), s| s.propagate_gaussian(a, m))
    }
}

fn identity_c() -> CMat2 {
    CMat2::from_real(Mat2::IDENTITY)
}

/// Closed-form transform of `amp·exp(−½xᵀMx)` (`Re M ≻ 0`): the output is
/// `amp'·exp(−½uᵀM'u)`. Used both to calibrate plans and as an independent
/// oracle in tests.
pub fn gaussian_response(
    spec: &SymplecticSpec,
    amp: Complex64,
    m: CMat2,
) -> Result<(Complex64, CMat2)> {
    let t = spec.t();
    let binv = spec.b.inverse().ok_or(Error::ZeroT { t })?;
    let p = binv * spec.a;
    let q = spec.a * binv;
    // ∫ exp(−½xᵀ(M − jP)x − j xᵀB⁻¹u) dx = 2π/√det(M − jP) · exp(−½ uᵀB⁻ᵀ(M − jP)⁻¹B⁻¹u)
    let w = m.add_imag(p, -1.0);
    let amp_out = kernel_constant(t) * 2.0 * PI * amp / w.sqrt_det_gaussian();
    let m_out = w.inverse().congruence(binv).add_imag(q, -1.0);
    Ok((amp_out, m_out))
}

/// |det| below which chirp-convolution factors are considered singular.
pub const SINGULAR_TOL: f64 = 1e-6;

fn binv_checked(spec: &SymplecticSpec) -> Result<Mat2> {
    let t = spec.t();
    if t.abs() <= 1e-12 {
        return Err(Error::ZeroT { t });
    }
    spec.b.inverse().ok_or(Error::ZeroT { t })
}

fn require_symmetric(name: &'static str, m: Mat2) -> Result<Mat2> {
    if m.asymmetry() > 1e-9 * m.max_abs().max(1.0) {
        return Err(Error::NonSymmetricFactor {
            name,
            matrix: m.0,
        });
    }
    Ok(m.symmetrize())
}

/// Chirp multiply by `B⁻¹A`, affine by `B⁻ᵀ`, Fourier, chirp multiply by
/// `AB⁻¹`.
pub fn plan_algorithm1(spec: &SymplecticSpec) -> Result<OperatorPlan> {
    let binv = binv_checked(spec)?;
    let pre = require_symmetric("B⁻¹A", binv * spec.a)?;
    let post = require_symmetric("AB⁻¹", spec.a * binv)?;
    let mut plan = OperatorPlan {
        steps: vec![
            Step::ChirpMultiply(pre),
            Step::Affine(binv.transpose()),
            Step::Fourier2D(Direction::Forward),
            Step::ChirpMultiply(post),
        ],
        scale: Complex64::new(1.0, 0.0),
        algorithm: Some(Algorithm::I),
    };
    // The affine step stays even when Λ = I: it is what moves the samples
    // onto the lattice from which the Fourier step returns to the input
    // spacing.
    plan.steps
        .retain(|s| !matches!(s, Step::ChirpMultiply(m) if m.max_abs() < 1e-14));
    plan.calibrate(spec)?;
    Ok(plan)
}

/// Three-factor form for symmetric `B`: chirp multiply by `B⁻¹(A−I)`,
/// chirp convolve by `B`, chirp multiply by `(A−I)B⁻¹`.
fn three_factor(a: Mat2, b: Mat2) -> Result<Vec<Step>> {
    let binv = b.inverse().ok_or(Error::SingularS(b.det()))?;
    let ami = a - Mat2::IDENTITY;
    let s1 = require_symmetric("B⁻¹(A−I)", binv * ami)?;
    let s2 = require_symmetric("(A−I)B⁻¹", ami * binv)?;
    Ok(vec![
        Step::ChirpMultiply(s1),
        Step::ChirpConvolve(b.symmetrize()),
        Step::ChirpMultiply(s2),
    ])
}

/// Tolerance for treating `B` as symmetric.
const B_SYM_TOL: f64 = 1e-12;

/// Chirp-multiply / chirp-convolve decomposition. Symmetric `B` uses the
/// three-factor form directly. Otherwise a leading chirp convolution by a
/// symmetric `H` is split off so that the remainder has symmetric
/// `B' = B − AH` (see [`choose_h`]). Falls back to [`plan_algorithm1`] with
/// a warning when every admissible factor is near-singular.
pub fn plan_algorithm2(spec: &SymplecticSpec) -> Result<OperatorPlan> {
    binv_checked(spec)?;
    let (a, b) = (spec.a, spec.b);
    let steps = if b.asymmetry() <= B_SYM_TOL {
        if b.det().abs() < SINGULAR_TOL {
            return fallback(spec, "B is near-singular");
        }
        three_factor(a, b.symmetrize())?
    } else {
        let h = match choose_h(a, b) {
            Ok(h) => h,
            Err(e) => return fallback(spec, &e.to_string()),
        };
        let b2 = (b - a * h).symmetrize();
        let d2 = a + b * h;
        let b2inv = b2.inverse().ok_or(Error::SingularS(b2.det()))?;
        let s1 = require_symmetric("B′⁻¹(A−I)", b2inv * (a - Mat2::IDENTITY))?;
        let s2 = require_symmetric("(D′−I)B′⁻¹", (d2 - Mat2::IDENTITY) * b2inv)?;
        vec![
            Step::ChirpConvolve(h),
            Step::ChirpMultiply(s1),
            Step::ChirpConvolve(b2),
            Step::ChirpMultiply(s2),
        ]
    };
    let mut plan = OperatorPlan {
        steps,
        scale: Complex64::new(1.0, 0.0),
        algorithm: Some(Algorithm::II),
    };
    plan.calibrate(spec)?;
    Ok(plan)
}

fn fallback(spec: &SymplecticSpec, why: &str) -> Result<OperatorPlan> {
    log::warn!("chirp-convolution decomposition unavailable ({why}); using affine decomposition");
    plan_algorithm1(spec)
}

/// The symmetric `H = [[h1, h2], [h2, h3]]` with `B − AH` symmetric form a
/// 2-parameter affine family (one linear constraint on three unknowns).
/// Each factor's chirp rate bounds how much bandwidth and spatial extent
/// the discrete grid must carry, so we minimise the largest spectral norm
/// among `H`, `B′` and the two chirp-multiply matrices, subject to
/// `|det H|` and `|det B′|` staying clear of [`SINGULAR_TOL`].
pub fn choose_h(a: Mat2, b: Mat2) -> Result<Mat2> {
    // Constraint: −A10·h1 + (A00 − A11)·h2 + A01·h3 = B01 − B10.
    let coef = [-a.0[1][0], a.0[0][0] - a.0[1][1], a.0[0][1]];
    let rhs = b.0[0][1] - b.0[1][0];
    let n2: f64 = coef.iter().map(|c| c * c).sum();
    if n2 < 1e-20 {
        return Err(Error::DecompositionFailure(format!(
            "A is a multiple of the identity, so no symmetric H can symmetrize B (asymmetry {:e})",
            b.asymmetry()
        )));
    }
    let h0: Vec<f64> = coef.iter().map(|c| c * rhs / n2).collect();
    let (e1, e2) = null_basis(coef);
    let make = |s: f64, t: f64| {
        let h = [
            h0[0] + s * e1[0] + t * e2[0],
            h0[1] + s * e1[1] + t * e2[1],
            h0[2] + s * e1[2] + t * e2[2],
        ];
        Mat2::new(h[0], h[1], h[1], h[2])
    };
    let cost = |s: f64, t: f64| -> f64 {
        let h = make(s, t);
        let b2 = (b - a * h).symmetrize();
        let (dh, db) = (h.det().abs(), b2.det().abs());
        if dh < SINGULAR_TOL || db < SINGULAR_TOL {
            return f64::INFINITY;
        }
        let b2inv = match b2.inverse() {
            Some(m) => m,
            None => return f64::INFINITY,
        };
        let s1 = (b2inv * (a - Mat2::IDENTITY)).symmetrize();
        let conv_h = Step::ChirpConvolve(h).symplectic();
        let after_s1 = Step::ChirpMultiply(s1).symplectic() * conv_h;
        let after_b2 = Step::ChirpConvolve(b2).symplectic() * after_s1;
        [conv_h, after_s1, after_b2]
            .iter()
            .map(phase_space_extent)
            .fold(0.0, f64::max)
    };
    // Coarse scan followed by pattern-search refinement.
    let mut best = (f64::INFINITY, 0.0, 0.0);
    let span = 4.0;
    let steps = 40;
    for i in 0..=steps {
        for j in 0..=steps {
            let s = -span + 2.0 * span * i as f64 / steps as f64;
            let t = -span + 2.0 * span * j as f64 / steps as f64;
            let c = cost(s, t);
            if c < best.0 {
                best = (c, s, t);
            }
        }
    }
    if !best.0.is_finite() {
        return Err(Error::DecompositionFailure(
            "every symmetrizing H leaves H or B′ singular".into(),
        ));
    }
    let mut h = span / steps as f64;
    while h > 1e-9 {
        let mut improved = false;
        for (ds, dt) in [(h, 0.0), (-h, 0.0), (0.0, h), (0.0, -h)] {
            let c = cost(best.1 + ds, best.2 + dt);
            if c < best.0 {
                best = (c, best.1 + ds, best.2 + dt);
                improved = true;
            }
        }
        if !improved {
            h *= 0.5;
        }
    }
    Ok(make(best.1, best.2))
}

/// Largest position or frequency half-extent of the image of the unit
/// phase-space ball under `m`: the larger singular value of its top and
/// bottom 2×4 halves.
fn phase_space_extent(m: &Mat4) -> f64 {
    let half = |r: usize| -> f64 {
        let (p, q) = (m.block(r, 0), m.block(r, 1));
        let gram = p * p.transpose() + q * q.transpose();
        gram.sym_eigenvalues().1.max(gram.sym_eigenvalues().0).sqrt()
    };
    half(0).max(half(1))
}

/// Orthonormal basis of the plane orthogonal to `c` in ℝ³.
fn null_basis(c: [f64; 3]) -> ([f64; 3], [f64; 3]) {
    let n = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt();
    let u = [c[0] / n, c[1] / n, c[2] / n];
    let pick = if u[0].abs() < 0.9 {
        [1.0, 0.0, 0.0]
    } else {
        [0.0, 1.0, 0.0]
    };
    let d: f64 = pick.iter().zip(&u).map(|(a, b)| a * b).sum();
    let mut e1 = [pick[0] - d * u[0], pick[1] - d * u[1], pick[2] - d * u[2]];
    let n1 = (e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]).sqrt();
    e1 = e1.map(|v| v / n1);
    let e2 = [
        u[1] * e1[2] - u[2] * e1[1],
        u[2] * e1[0] - u[0] * e1[2],
        u[0] * e1[1] - u[1] * e1[0],
    ];
    (e1, e2)
}

pub fn plan_for(spec: &SymplecticSpec, algorithm: Algorithm) -> Result<OperatorPlan> {
    match algorithm {
        Algorithm::I => plan_algorithm1(spec),
        Algorithm::II => plan_algorithm2(spec),
    }
}
