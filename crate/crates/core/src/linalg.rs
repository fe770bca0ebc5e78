//! Small fixed-size matrices used by the parameter algebra and the operator
//! decompositions. Everything here is 2×2 or 4×4, so plain arrays beat a
//! general linear-algebra dependency.

use num_complex::Complex64;
use std::ops::{Add, Mul, Neg, Sub};

/// Real 2×2 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Default, serde::Serialize, serde::Deserialize)]
pub struct Mat2(pub [[f64; 2]; 2]);

impl Mat2 {
    pub const ZERO: Mat2 = Mat2([[0.0, 0.0], [0.0, 0.0]]);
    pub const IDENTITY: Mat2 = Mat2([[1.0, 0.0], [0.0, 1.0]]);

    pub fn new(m00: f64, m01: f64, m10: f64, m11: f64) -> Self {
        Mat2([[m00, m01], [m10, m11]])
    }

    pub fn diag(d0: f64, d1: f64) -> Self {
        Mat2([[d0, 0.0], [0.0, d1]])
    }

    pub fn scaled_identity(s: f64) -> Self {
        Mat2::diag(s, s)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.0[r][c]
    }

    pub fn transpose(&self) -> Self {
        let m = self.0;
        Mat2([[m[0][0], m[1][0]], [m[0][1], m[1][1]]])
    }

    pub fn det(&self) -> f64 {
        let m = self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn trace(&self) -> f64 {
        self.0[0][0] + self.0[1][1]
    }

    /// Inverse, or `None` when the determinant is exactly zero.
    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d == 0.0 || !d.is_finite() {
            return None;
        }
        let m = self.0;
        Some(Mat2([
            [m[1][1] / d, -m[0][1] / d],
            [-m[1][0] / d, m[0][0] / d],
        ]))
    }

    pub fn scale(&self, s: f64) -> Self {
        let m = self.0;
        Mat2([[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]])
    }

    /// |m01 − m10|.
    pub fn asymmetry(&self) -> f64 {
        (self.0[0][1] - self.0[1][0]).abs()
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.asymmetry() <= tol
    }

    /// Symmetric part (M + Mᵀ)/2.
    pub fn symmetrize(&self) -> Self {
        let off = 0.5 * (self.0[0][1] + self.0[1][0]);
        Mat2([[self.0[0][0], off], [off, self.0[1][1]]])
    }

    pub fn frobenius(&self) -> f64 {
        self.0.iter().flatten().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().fold(0.0f64, |a, v| a.max(v.abs()))
    }

    /// Singular values, largest first.
    pub fn singular_values(&self) -> (f64, f64) {
        let m = self.0;
        let a = m[0][0] * m[0][0] + m[1][0] * m[1][0];
        let b = m[0][0] * m[0][1] + m[1][0] * m[1][1];
        let d = m[0][1] * m[0][1] + m[1][1] * m[1][1];
        let half_tr = 0.5 * (a + d);
        let disc = (0.25 * (a - d) * (a - d) + b * b).sqrt();
        let s1 = (half_tr + disc).max(0.0).sqrt();
        let s2 = (half_tr - disc).max(0.0).sqrt();
        (s1, s2)
    }

    /// 2-norm condition number; infinite for singular matrices.
    pub fn condition(&self) -> f64 {
        let (s1, s2) = self.singular_values();
        if s2 == 0.0 {
            f64::INFINITY
        } else {
            s1 / s2
        }
    }

    /// Eigenvalues of a symmetric matrix (uses the symmetric part).
    pub fn sym_eigenvalues(&self) -> (f64, f64) {
        let s = self.symmetrize().0;
        let half_tr = 0.5 * (s[0][0] + s[1][1]);
        let disc = (0.25 * (s[0][0] - s[1][1]).powi(2) + s[0][1] * s[0][1]).sqrt();
        (half_tr + disc, half_tr - disc)
    }

    pub fn apply(&self, v: [f64; 2]) -> [f64; 2] {
        let m = self.0;
        [
            m[0][0] * v[0] + m[0][1] * v[1],
            m[1][0] * v[0] + m[1][1] * v[1],
        ]
    }

    /// vᵀ M v.
    pub fn quad_form(&self, x: f64, y: f64) -> f64 {
        let m = self.0;
        m[0][0] * x * x + (m[0][1] + m[1][0]) * x * y + m[1][1] * y * y
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        let a = self.0;
        let b = o.0;
        Mat2([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        let (a, b) = (self.0, o.0);
        Mat2([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        self + (-o)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale(-1.0)
    }
}

/// Real 4×4 matrix, row-major. Block layout `[P Q; R S]` with 2×2 blocks.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Mat4(pub [[f64; 4]; 4]);

impl Mat4 {
    pub fn identity() -> Self {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        Mat4(m)
    }

    pub fn from_blocks(tl: Mat2, tr: Mat2, bl: Mat2, br: Mat2) -> Self {
        let mut m = [[0.0; 4]; 4];
        for r in 0..2 {
            for c in 0..2 {
                m[r][c] = tl.0[r][c];
                m[r][c + 2] = tr.0[r][c];
                m[r + 2][c] = bl.0[r][c];
                m[r + 2][c + 2] = br.0[r][c];
            }
        }
        Mat4(m)
    }

    pub fn block(&self, br: usize, bc: usize) -> Mat2 {
        let (r0, c0) = (2 * br, 2 * bc);
        Mat2([
            [self.0[r0][c0], self.0[r0][c0 + 1]],
            [self.0[r0 + 1][c0], self.0[r0 + 1][c0 + 1]],
        ])
    }

    pub fn transpose(&self) -> Self {
        let mut t = [[0.0; 4]; 4];
        for (r, row) in self.0.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                t[c][r] = *v;
            }
        }
        Mat4(t)
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn det(&self) -> f64 {
        let mut m = self.0;
        let mut det = 1.0;
        for col in 0..4 {
            let pivot = (col..4)
                .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
                .unwrap();
            if m[pivot][col] == 0.0 {
                return 0.0;
            }
            if pivot != col {
                m.swap(pivot, col);
                det = -det;
            }
            det *= m[col][col];
            for r in col + 1..4 {
                let f = m[r][col] / m[col][col];
                for c in col..4 {
                    m[r][c] -= f * m[col][c];
                }
            }
        }
        det
    }

    pub fn max_abs_diff(&self, other: &Mat4) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .fold(0.0f64, |a, (x, y)| a.max((x - y).abs()))
    }

    /// max |MᵀM − I|.
    pub fn orthogonality_defect(&self) -> f64 {
        (self.transpose() * *self).max_abs_diff(&Mat4::identity())
    }

    pub fn apply(&self, v: [f64; 4]) -> [f64; 4] {
        let mut out = [0.0; 4];
        for (r, row) in self.0.iter().enumerate() {
            out[r] = row.iter().zip(v.iter()).map(|(a, b)| a * b).sum();
        }
        out
    }
}

impl Mul for Mat4 {
    type Output = Mat4;
    fn mul(self, o: Mat4) -> Mat4 {
        let mut m = [[0.0; 4]; 4];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                *v = (0..4).map(|k| self.0[r][k] * o.0[k][c]).sum();
            }
        }
        Mat4(m)
    }
}

/// Complex 2×2 matrix; used for the covariance of complex Gaussians when
/// fixing the global constants of operator chains analytically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMat2(pub [[Complex64; 2]; 2]);

impl CMat2 {
    pub fn from_real(m: Mat2) -> Self {
        let c = |v: f64| Complex64::new(v, 0.0);
        CMat2([[c(m.0[0][0]), c(m.0[0][1])], [c(m.0[1][0]), c(m.0[1][1])]])
    }

    /// `xᵀ M x` for real `x`.
    pub fn quad_form(&self, x: f64, y: f64) -> Complex64 {
        let m = &self.0;
        m[0][0] * x * x + (m[0][1] + m[1][0]) * x * y + m[1][1] * y * y
    }

    /// `self + j·s·m` for real m.
    pub fn add_imag(&self, m: Mat2, s: f64) -> Self {
        let mut out = self.0;
        for r in 0..2 {
            for c in 0..2 {
                out[r][c] += Complex64::new(0.0, s * m.0[r][c]);
            }
        }
        CMat2(out)
    }

    pub fn det(&self) -> Complex64 {
        let m = self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn inverse(&self) -> Self {
        let d = self.det();
        let m = self.0;
        CMat2([[m[1][1] / d, -m[0][1] / d], [-m[1][0] / d, m[0][0] / d]])
    }

    /// Congruence Lᵀ M L with real L.
    pub fn congruence(&self, l: Mat2) -> Self {
        let lt = CMat2::from_real(l.transpose());
        let lc = CMat2::from_real(l);
        lt.mul(self).mul(&lc)
    }

    pub fn mul(&self, o: &CMat2) -> CMat2 {
        let (a, b) = (self.0, o.0);
        let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                *v = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        CMat2(m)
    }

    /// √det for a complex symmetric matrix whose real part is positive
    /// definite: the product of the principal roots of the eigenvalues,
    /// which is the branch that makes the Gaussian integral formula
    /// continuous on that domain.
    pub fn sqrt_det_gaussian(&self) -> Complex64 {
        let m = self.0;
        let half_tr = (m[0][0] + m[1][1]) * 0.5;
        let disc = (half_tr * half_tr - self.det()).sqrt();
        let l1 = half_tr + disc;
        let l2 = half_tr - disc;
        l1.sqrt() * l2.sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mat2_inverse_roundtrip() {
        let m = Mat2::new(0.3, -1.2, 2.5, 0.7);
        let p = m * m.inverse().unwrap();
        assert!((p - Mat2::IDENTITY).max_abs() < 1e-15);
    }

    #[test]
    fn singular_values_match_norms() {
        let m = Mat2::new(1.0, 2.0, 3.0, 4.0);
        let (s1, s2) = m.singular_values();
        assert!((s1 * s2 - m.det().abs()).abs() < 1e-12);
        assert!((s1 * s1 + s2 * s2 - m.frobenius().powi(2)).abs() < 1e-12);
    }

    #[test]
    fn mat4_det_of_permutation() {
        let mut p = Mat4::identity();
        p.0.swap(0, 3);
        assert_eq!(p.det(), -1.0);
        assert_eq!(Mat4::identity().det(), 1.0);
    }

    #[test]
    fn gaussian_sqrt_det_is_continuous_branch() {
        // M = I − jS with S = diag(3, −5): principal roots per eigenvalue.
        let m = CMat2::from_real(Mat2::IDENTITY).add_imag(Mat2::diag(3.0, -5.0), -1.0);
        let expected = Complex64::new(1.0, -3.0).sqrt() * Complex64::new(1.0, 5.0).sqrt();
        assert!((m.sqrt_det_gaussian() - expected).norm() < 1e-14);
    }
}
