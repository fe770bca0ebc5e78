//! Transform parameters and their algebra.
//!
//! A transform is selected by five numbers `(a, b, c, d, θ)` with
//! `a² + b² + c² + d² = 1`. From them we derive the scalar `T`, the nine
//! kernel coefficients, and the 2×2 blocks `A`, `B` such that the transform
//! is the linear canonical transform with matrix `[A B; −B A]`, a 4D
//! rotation of the joint space/frequency coordinates `(x, y, u, v)`.
//!
//! The point `(1, 0, 0, 0, 0)` has `T = 0` and is defined as the identity
//! transform; every operation that needs a kernel rejects it explicitly.
//!
//! No coordinate permutation is needed to compare [`rotation4_from_params`]
//! with the classical separable, gyrator and coupled rotation matrices: with
//! the embeddings below they coincide entry by entry in `(x, y, u, v)` order.

use crate::error::{Error, Result};
use crate::linalg::{Mat2, Mat4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Tolerance on the unit-sphere constraint.
pub const SPHERE_TOL: f64 = 1e-12;
/// Largest relative norm error that [`ParamSet::new`] silently renormalizes.
pub const RENORMALIZE_TOL: f64 = 1e-6;
/// |T| at or below this is treated as zero.
pub const T_EPS: f64 = 1e-12;

/// The five transform parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamSet {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub theta: f64,
}

impl ParamSet {
    /// Validating constructor. Inputs within [`RENORMALIZE_TOL`] of the unit
    /// sphere are renormalized; anything further off is rejected, as is any
    /// non-identity point with vanishing `T`.
    pub fn new(a: f64, b: f64, c: f64, d: f64, theta: f64) -> Result<Self> {
        let vals = [a, b, c, d, theta];
        if vals.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParams(format!("non-finite value in {vals:?}")));
        }
        let n2 = a * a + b * b + c * c + d * d;
        let p = if (n2 - 1.0).abs() <= SPHERE_TOL {
            ParamSet { a, b, c, d, theta }
        } else if (n2.sqrt() - 1.0).abs() < RENORMALIZE_TOL {
            Self::unit(a, b, c, d, theta)
        } else {
            return Err(Error::InvalidParams(format!(
                "a²+b²+c²+d² = {n2} is not 1 (relative error above {RENORMALIZE_TOL:e})"
            )));
        };
        p.check_t()?;
        Ok(p)
    }

    /// Projects `(a, b, c, d)` onto the unit sphere before validating. Use this
    /// for values quoted to a few decimals, which rarely satisfy the sphere
    /// constraint to the strict tolerance.
    pub fn normalized(a: f64, b: f64, c: f64, d: f64, theta: f64) -> Result<Self> {
        let n = (a * a + b * b + c * c + d * d).sqrt();
        if !(n.is_finite() && n > 0.0 && theta.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "cannot normalize ({a}, {b}, {c}, {d}, {theta})"
            )));
        }
        let p = Self::unit(a, b, c, d, theta);
        p.check_t()?;
        Ok(p)
    }

    fn unit(a: f64, b: f64, c: f64, d: f64, theta: f64) -> Self {
        let n = (a * a + b * b + c * c + d * d).sqrt();
        ParamSet {
            a: a / n,
            b: b / n,
            c: c / n,
            d: d / n,
            theta,
        }
    }

    fn check_t(&self) -> Result<()> {
        if self.is_identity() {
            return Ok(());
        }
        let t = self.t();
        if t.abs() <= T_EPS {
            return Err(Error::ZeroT { t });
        }
        Ok(())
    }

    /// The identity point `(1, 0, 0, 0, 0)`.
    pub const fn identity() -> Self {
        ParamSet {
            a: 1.0,
            b: 0.0,
            c: 0.0,
            d: 0.0,
            theta: 0.0,
        }
    }

    /// The 2D Fourier transform `(1, 0, 0, 0, π/2)`.
    pub fn fourier() -> Self {
        ParamSet {
            a: 1.0,
            b: 0.0,
            c: 0.0,
            d: 0.0,
            theta: PI / 2.0,
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// `T = (a² + b²) sin²θ − (c² + d²) cos²θ`.
    pub fn t(&self) -> f64 {
        let (s, co) = self.theta.sin_cos();
        self.a * self.a * s * s + self.b * self.b * s * s
            - self.c * self.c * co * co
            - self.d * self.d * co * co
    }

    pub fn with_theta(&self, theta: f64) -> Result<Self> {
        ParamSet::new(self.a, self.b, self.c, self.d, theta)
    }

    pub fn as_array(&self) -> [f64; 5] {
        [self.a, self.b, self.c, self.d, self.theta]
    }
}

/// `T` and the nine kernel coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivedCoeffs {
    pub t: f64,
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    pub m1: f64,
    pub m2: f64,
    pub m3: f64,
    pub m4: f64,
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
}

impl DerivedCoeffs {
    /// Kernel normalization `1 / (2π √(−T))` with the principal square root
    /// of the complex number `−T`. Direct and fast paths both use this.
    pub fn kernel_constant(&self) -> Complex64 {
        kernel_constant(self.t)
    }

    /// The cross-coefficient matrix `[m1 m2; m3 m4]`.
    pub fn m_matrix(&self) -> Mat2 {
        Mat2::new(self.m1, self.m2, self.m3, self.m4)
    }
}

pub fn kernel_constant(t: f64) -> Complex64 {
    let root = Complex64::new(-t, 0.0).sqrt();
    Complex64::new(1.0, 0.0) / (2.0 * PI * root)
}

pub fn derive_coeffs(p: &ParamSet) -> Result<DerivedCoeffs> {
    if p.is_identity() {
        return Err(Error::IdentityPoint);
    }
    let t = p.t();
    if t.abs() <= T_EPS {
        return Err(Error::ZeroT { t });
    }
    let ParamSet { a, b, c, d, theta } = *p;
    let (s, co) = theta.sin_cos();
    let sc = s * co;
    Ok(DerivedCoeffs {
        t,
        p1: sc - a * c + b * d,
        p2: -2.0 * (b * c + a * d),
        p3: sc + a * c - b * d,
        m1: -a * s + c * co,
        m2: b * s + d * co,
        m3: -b * s + d * co,
        m4: -a * s - c * co,
        k1: sc - a * c - b * d,
        k2: 2.0 * (b * c - a * d),
        k3: sc + a * c + b * d,
    })
}

/// The blocks `A`, `B` of the transform matrix `[A B; −B A]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymplecticSpec {
    pub a: Mat2,
    pub b: Mat2,
}

impl SymplecticSpec {
    pub fn new(a: Mat2, b: Mat2) -> Self {
        SymplecticSpec { a, b }
    }

    /// `[A B; −B A]`.
    pub fn matrix(&self) -> Mat4 {
        Mat4::from_blocks(self.a, self.b, -self.b, self.a)
    }

    /// `det B`, which equals `T` for specs built from a parameter set.
    pub fn t(&self) -> f64 {
        self.b.det()
    }

    pub fn is_valid(&self, tol: f64) -> bool {
        let m = self.matrix();
        m.orthogonality_defect() <= tol && (m.det() - 1.0).abs() <= tol
    }
}

pub fn blocks_from_params(p: &ParamSet) -> Result<SymplecticSpec> {
    if p.is_identity() {
        return Err(Error::IdentityPoint);
    }
    let ParamSet { a, b, c, d, theta } = *p;
    let (s, co) = theta.sin_cos();
    let am = Mat2::new(
        a * co - c * s,
        b * co - d * s,
        -b * co - d * s,
        a * co + c * s,
    );
    let bm = Mat2::new(
        a * s + c * co,
        b * s + d * co,
        -b * s + d * co,
        a * s - c * co,
    );
    Ok(SymplecticSpec::new(am, bm))
}

/// The inverse transform's blocks, `(Aᵀ, −Bᵀ)`.
pub fn invert_spec(s: &SymplecticSpec) -> SymplecticSpec {
    SymplecticSpec::new(s.a.transpose(), -s.b.transpose())
}

/// The 4D rotation acting on `(x, y, u, v)` that maps the Wigner
/// distribution of the output back onto that of the input:
/// `W_F(z) = W_f(R z)`.
pub fn rotation4_from_params(p: &ParamSet) -> Mat4 {
    let ParamSet { a, b, c, d, theta } = *p;
    let (s, co) = theta.sin_cos();
    Mat4([
        [
            a * co - c * s,
            -b * co - d * s,
            -a * s - c * co,
            b * s - d * co,
        ],
        [
            b * co - d * s,
            a * co + c * s,
            -b * s - d * co,
            -a * s + c * co,
        ],
        [
            a * s + c * co,
            -b * s + d * co,
            a * co - c * s,
            -b * co - d * s,
        ],
        [
            b * s + d * co,
            a * s - c * co,
            b * co - d * s,
            a * co + c * s,
        ],
    ])
}

/// Matrix-level composition: the rotation of applying `first` then
/// `second`. Whether the composite is itself a member of the family with
/// closed-form parameters is not claimed.
pub fn compose_specs(first: &SymplecticSpec, second: &SymplecticSpec) -> Mat4 {
    second.matrix() * first.matrix()
}

/// Left and right unit quaternions of a 4D rotation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuaternionPair {
    pub left: [f64; 4],
    pub right: [f64; 4],
}

/// Matrix of left multiplication by the quaternion `a + bi + cj + dk`.
pub fn left_matrix(q: [f64; 4]) -> Mat4 {
    let [a, b, c, d] = q;
    Mat4([
        [a, -b, -c, -d],
        [b, a, -d, c],
        [c, d, a, -b],
        [d, -c, b, a],
    ])
}

/// Matrix of right multiplication by the quaternion `p + qi + rj + sk`.
pub fn right_matrix(q: [f64; 4]) -> Mat4 {
    let [p, q, r, s] = q;
    Mat4([
        [p, -q, -r, -s],
        [q, p, s, -r],
        [r, -s, p, q],
        [s, r, -q, p],
    ])
}

impl QuaternionPair {
    pub fn rotation(&self) -> Mat4 {
        left_matrix(self.left) * right_matrix(self.right)
    }
}

fn basis(i: usize) -> [f64; 4] {
    let mut e = [0.0; 4];
    e[i] = 1.0;
    e
}

/// Splits a 4D rotation into left/right unit quaternions.
///
/// The sixteen products `L(e_i)·R(e_j)` are signed permutation matrices
/// that are mutually orthogonal under the Frobenius product with squared
/// norm 4, so `l_i r_j = ⟨L(e_i)R(e_j), R⟩ / 4` recovers the rank-one outer
/// product directly. The pair is unique up to a global sign; we make the
/// first non-negligible component of `left` positive.
pub fn quaternion_factorize(r: &Mat4) -> Result<QuaternionPair> {
    let defect = r.orthogonality_defect();
    let det = r.det();
    if defect > 1e-9 || (det - 1.0).abs() > 1e-9 {
        return Err(Error::NotARotation {
            orthogonality: defect,
            det,
        });
    }
    let mut outer = [[0.0; 4]; 4];
    for (i, row) in outer.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            let e = left_matrix(basis(i)) * right_matrix(basis(j));
            *v = e
                .0
                .iter()
                .flatten()
                .zip(r.0.iter().flatten())
                .map(|(x, y)| x * y)
                .sum::<f64>()
                / 4.0;
        }
    }
    let norm = |v: &[f64; 4]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let best = (0..4)
        .max_by(|&x, &y| norm(&outer[x]).total_cmp(&norm(&outer[y])))
        .unwrap();
    let rn = norm(&outer[best]);
    let mut right = outer[best].map(|v| v / rn);
    let mut left = [0.0; 4];
    for (i, l) in left.iter_mut().enumerate() {
        *l = (0..4).map(|j| outer[i][j] * right[j]).sum();
    }
    let ln = norm(&left);
    left = left.map(|v| v / ln);
    if let Some(first) = left.iter().find(|v| v.abs() > 1e-12) {
        if *first < 0.0 {
            left = left.map(|v| -v);
            right = right.map(|v| -v);
        }
    }
    Ok(QuaternionPair { left, right })
}

/// Parameters reproducing the separable transform with angles `α1`, `α2`.
pub fn params_from_sfrft(alpha1: f64, alpha2: f64) -> Result<ParamSet> {
    let half_diff = 0.5 * (alpha1 - alpha2);
    let p = ParamSet {
        a: half_diff.cos(),
        b: 0.0,
        c: half_diff.sin(),
        d: 0.0,
        theta: 0.5 * (alpha1 + alpha2),
    };
    finish_embedding(p)
}

/// Parameters reproducing the gyrator transform with angle `φ`.
pub fn params_from_gt(phi: f64) -> Result<ParamSet> {
    let p = ParamSet {
        a: phi.cos(),
        b: 0.0,
        c: 0.0,
        d: phi.sin(),
        theta: 0.0,
    };
    finish_embedding(p)
}

/// Parameters reproducing the coupled transform with angles `α`, `β`.
pub fn params_from_cfrft(alpha: f64, beta: f64) -> Result<ParamSet> {
    let gamma = 0.5 * (alpha + beta);
    let delta = 0.5 * (alpha - beta);
    let p = ParamSet {
        a: delta.cos(),
        b: -delta.sin(),
        c: 0.0,
        d: 0.0,
        theta: gamma,
    };
    finish_embedding(p)
}

fn finish_embedding(p: ParamSet) -> Result<ParamSet> {
    if p.is_identity() {
        return Ok(p);
    }
    let t = p.t();
    if t.abs() <= T_EPS {
        return Err(Error::ZeroT { t });
    }
    Ok(p)
}

/// JSON parameter descriptor. Accepts the explicit five-tuple or one of the
/// special-case shorthands:
///
/// ```json
/// {"a": 0.5, "b": 0.5, "c": 0.5, "d": 0.5, "theta": 1.0472}
/// {"sfrft": [1.2, 0.7]}
/// {"gt": 0.5}
/// {"cfrft": [1.0, 0.4]}
/// ```
///
/// Explicit tuples may carry `"normalize": true` to project values quoted
/// to a few decimals onto the unit sphere.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamDescriptor {
    Explicit {
        a: f64,
        b: f64,
        c: f64,
        d: f64,
        theta: f64,
        #[serde(default, skip_serializing_if = "std::ops::Not::not")]
        normalize: bool,
    },
    Sfrft {
        sfrft: [f64; 2],
    },
    Gt {
        gt: f64,
    },
    Cfrft {
        cfrft: [f64; 2],
    },
}

impl ParamDescriptor {
    pub fn resolve(&self) -> Result<ParamSet> {
        match *self {
            ParamDescriptor::Explicit {
                a,
                b,
                c,
                d,
                theta,
                normalize,
            } => {
                if normalize {
                    ParamSet::normalized(a, b, c, d, theta)
                } else {
                    ParamSet::new(a, b, c, d, theta)
                }
            }
            ParamDescriptor::Sfrft { sfrft } => params_from_sfrft(sfrft[0], sfrft[1]),
            ParamDescriptor::Gt { gt } => params_from_gt(gt),
            ParamDescriptor::Cfrft { cfrft } => params_from_cfrft(cfrft[0], cfrft[1]),
        }
    }

    pub fn from_params(p: &ParamSet) -> Self {
        ParamDescriptor::Explicit {
            a: p.a,
            b: p.b,
            c: p.c,
            d: p.d,
            theta: p.theta,
            normalize: false,
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Uniform point on the unit 3-sphere (normalized Gaussian 4-vector) with
/// `θ` uniform on `[0, 2π)`.
pub fn random_params(rng: &mut impl rand::Rng) -> ParamSet {
    use rand_distr::{Distribution, StandardNormal};
    loop {
        let v: [f64; 4] = std::array::from_fn(|_| StandardNormal.sample(rng));
        let theta = rng.random_range(0.0..2.0 * PI);
        if let Ok(p) = ParamSet::normalized(v[0], v[1], v[2], v[3], theta) {
            return p;
        }
    }
}

/// [`random_params`] restricted to `|T| ≥ min_t`, away from the near-singular
/// kernels whose direct evaluation needs much finer sampling.
pub fn random_params_with_t(rng: &mut impl rand::Rng, min_t: f64) -> ParamSet {
    loop {
        let p = random_params(rng);
        if p.t().abs() >= min_t {
            return p;
        }
    }
}

/// Parameter sets quoted in the literature this crate was validated against.
/// Values carry four decimals and are projected onto the unit sphere.
pub mod published {
    use super::ParamSet;
    use std::f64::consts::PI;

    fn n(a: f64, b: f64, c: f64, d: f64, theta: f64) -> ParamSet {
        ParamSet::normalized(a, b, c, d, theta).expect("published parameter set is valid")
    }

    /// Accuracy experiment, first matrix.
    pub fn accuracy1() -> ParamSet {
        n(0.4033, 0.1555, 0.2851, -0.8555, PI / 8.0)
    }

    /// Accuracy experiment, second matrix.
    pub fn accuracy2() -> ParamSet {
        n(0.1745, 0.5951, -0.7329, 0.2798, PI / 9.0)
    }

    /// Reversibility experiment.
    pub fn reversibility() -> ParamSet {
        n(-0.1601, 0.6966, 0.2625, 0.6483, PI / 6.0)
    }

    /// Encryption key used in the image-encryption experiment.
    pub fn encryption() -> ParamSet {
        n(0.7548, 0.4147, -0.0442, -0.5063, PI / 3.0)
    }

    /// Deliberately wrong decryption key.
    pub fn wrong_key() -> ParamSet {
        n(0.5, 0.5, 0.5, 0.5, PI / 5.0)
    }

    /// Matched to the strongly coupled chirp `exp(−j(0.866x² − 2xy + 0.866y²))`.
    pub fn chirp1() -> ParamSet {
        n(0.5, 0.5, 0.5, 0.5, PI / 3.0)
    }

    /// Matched to the weakly coupled chirp `exp(j(0.2897x² + 0.0061xy + 0.2877y²))`.
    pub fn chirp2() -> ParamSet {
        n(-0.0046, 0.0016, -0.0241, 0.9997, PI / 6.0)
    }

    /// Matched to the first interference chirp.
    pub fn chirp3() -> ParamSet {
        n(-0.0692, 0.0938, -0.8823, 0.4560, PI / 6.0)
    }

    /// Matched to the second interference chirp.
    pub fn chirp4() -> ParamSet {
        n(0.1019, -0.2525, 0.8944, -0.3548, PI / 7.0)
    }
}
