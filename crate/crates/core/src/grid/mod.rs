//! Sampled complex 2D signals.
//!
//! Index `(m, n)` of an `rows × cols` grid sits at
//! `((m − rows/2)·dx, (n − cols/2)·dy)` (integer division), so the sample
//! at `(rows/2, cols/2)` is exactly the origin. The first index runs along
//! `x`; storage is row-major.

pub mod io;
pub mod metrics;
pub mod noise;
pub mod signals;

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Sampling geometry of a grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Geometry {
    pub rows: usize,
    pub cols: usize,
    pub dx: f64,
    pub dy: f64,
}

impl Default for Geometry {
    /// 200 × 200 samples at spacing 0.1772 on both axes.
    fn default() -> Self {
        Geometry::square(200, 0.1772)
    }
}

impl Geometry {
    pub fn new(rows: usize, cols: usize, dx: f64, dy: f64) -> Result<Self> {
        let g = Geometry { rows, cols, dx, dy };
        g.validate()?;
        Ok(g)
    }

    pub fn square(n: usize, spacing: f64) -> Self {
        Geometry {
            rows: n,
            cols: n,
            dx: spacing,
            dy: spacing,
        }
    }

    /// Square grid whose spacing `√(2π/n)` makes the unitary DFT map the
    /// grid onto itself.
    pub fn self_dual(n: usize) -> Self {
        Geometry::square(n, (2.0 * std::f64::consts::PI / n as f64).sqrt())
    }

    pub fn validate(&self) -> Result<()> {
        if self.rows < 2 || self.cols < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2×2 samples, got {}×{}",
                self.rows, self.cols
            )));
        }
        if !(self.dx > 0.0 && self.dy > 0.0 && self.dx.is_finite() && self.dy.is_finite()) {
            return Err(Error::InvalidGrid(format!(
                "spacings must be positive, got dx={} dy={}",
                self.dx, self.dy
            )));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.rows * self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn x(&self, m: usize) -> f64 {
        centered(m, self.rows) * self.dx
    }

    pub fn y(&self, n: usize) -> f64 {
        centered(n, self.cols) * self.dy
    }

    pub fn xs(&self) -> Vec<f64> {
        (0..self.rows).map(|m| self.x(m)).collect()
    }

    pub fn ys(&self) -> Vec<f64> {
        (0..self.cols).map(|n| self.y(n)).collect()
    }

    /// Continuous-coordinate area of one sample.
    pub fn cell(&self) -> f64 {
        self.dx * self.dy
    }

    /// Spacing of the unitary DFT's output: `2π / (N·d)` per axis.
    pub fn reciprocal(&self) -> Geometry {
        use std::f64::consts::PI;
        Geometry {
            rows: self.rows,
            cols: self.cols,
            dx: 2.0 * PI / (self.rows as f64 * self.dx),
            dy: 2.0 * PI / (self.cols as f64 * self.dy),
        }
    }

    pub fn same_as(&self, other: &Geometry, rel_tol: f64) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && ((self.dx - other.dx) / self.dx).abs() <= rel_tol
            && ((self.dy - other.dy) / self.dy).abs() <= rel_tol
    }
}

/// Signed offset of index `i` from the center of an axis of length `len`.
pub fn centered(i: usize, len: usize) -> f64 {
    i as f64 - (len / 2) as f64
}

/// A uniformly sampled complex 2D signal.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexGrid {
    geometry: Geometry,
    values: Vec<Complex64>,
}

impl ComplexGrid {
    pub fn new(geometry: Geometry, values: Vec<Complex64>) -> Result<Self> {
        geometry.validate()?;
        if values.len() != geometry.len() {
            return Err(Error::InvalidGrid(format!(
                "{} values for a {}×{} grid",
                values.len(),
                geometry.rows,
                geometry.cols
            )));
        }
        if values.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::InvalidGrid("non-finite sample".into()));
        }
        Ok(ComplexGrid { geometry, values })
    }

    /// Builder used internally where values are finite by construction.
    pub(crate) fn from_parts(geometry: Geometry, values: Vec<Complex64>) -> Self {
        debug_assert_eq!(values.len(), geometry.len());
        ComplexGrid { geometry, values }
    }

    pub fn zeros(geometry: Geometry) -> Self {
        ComplexGrid::from_parts(geometry, vec![Complex64::new(0.0, 0.0); geometry.len()])
    }

    /// Samples `f(x, y)` at every grid point.
    pub fn from_fn(geometry: Geometry, f: impl Fn(f64, f64) -> Complex64) -> Self {
        let xs = geometry.xs();
        let ys = geometry.ys();
        let values = xs
            .iter()
            .flat_map(|&x| ys.iter().map(move |&y| (x, y)))
            .map(|(x, y)| f(x, y))
            .collect();
        ComplexGrid::from_parts(geometry, values)
    }

    pub fn from_real(geometry: Geometry, f: impl Fn(f64, f64) -> f64) -> Self {
        ComplexGrid::from_fn(geometry, |x, y| Complex64::new(f(x, y), 0.0))
    }

    pub fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    pub fn rows(&self) -> usize {
        self.geometry.rows
    }

    pub fn cols(&self) -> usize {
        self.geometry.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.geometry.rows, self.geometry.cols)
    }

    pub fn dx(&self) -> f64 {
        self.geometry.dx
    }

    pub fn dy(&self) -> f64 {
        self.geometry.dy
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn get(&self, m: usize, n: usize) -> Complex64 {
        self.values[m * self.geometry.cols + n]
    }

    pub fn set(&mut self, m: usize, n: usize, v: Complex64) {
        let cols = self.geometry.cols;
        self.values[m * cols + n] = v;
    }

    pub fn row(&self, m: usize) -> &[Complex64] {
        let c = self.geometry.cols;
        &self.values[m * c..(m + 1) * c]
    }

    /// Same samples, relabelled with a different geometry of equal shape.
    pub fn with_geometry(mut self, geometry: Geometry) -> Result<Self> {
        if geometry.rows != self.rows() || geometry.cols != self.cols() {
            return Err(Error::DimensionMismatch {
                left: self.shape(),
                right: (geometry.rows, geometry.cols),
            });
        }
        geometry.validate()?;
        self.geometry = geometry;
        Ok(self)
    }

    /// `Σ|f|²` without quadrature weights.
    pub fn sum_sq(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum()
    }

    /// Continuous energy estimate `Σ|f|²·dx·dy`.
    pub fn energy(&self) -> f64 {
        self.sum_sq() * self.geometry.cell()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn map(&self, mut f: impl FnMut(Complex64) -> Complex64) -> ComplexGrid {
        ComplexGrid::from_parts(self.geometry, self.values.iter().map(|&v| f(v)).collect())
    }

    /// Pointwise combination of two grids of equal shape; the geometry of
    /// `self` is kept.
    pub fn zip_map(
        &self,
        other: &ComplexGrid,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<ComplexGrid> {
        self.check_shape(other)?;
        Ok(ComplexGrid::from_parts(
            self.geometry,
            self.values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        ))
    }

    pub fn check_shape(&self, other: &ComplexGrid) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(())
    }

    pub fn scale(&self, s: Complex64) -> ComplexGrid {
        self.map(|v| v * s)
    }

    pub fn conj(&self) -> ComplexGrid {
        self.map(|v| v.conj())
    }

    pub fn add(&self, other: &ComplexGrid) -> Result<ComplexGrid> {
        self.zip_map(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &ComplexGrid) -> Result<ComplexGrid> {
        self.zip_map(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &ComplexGrid) -> Result<ComplexGrid> {
        self.zip_map(other, |a, b| a * b)
    }

    /// Pointwise magnitude as a real-valued grid.
    pub fn magnitude(&self) -> ComplexGrid {
        self.map(|v| Complex64::new(v.norm(), 0.0))
    }

    pub fn real_part(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.re).collect()
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.values.iter().all(|v| v.im.abs() <= tol)
    }

    /// Index of the largest-magnitude sample, ties resolved to the first.
    pub fn argmax_abs(&self) -> (usize, usize) {
        let mut best = 0;
        let mut best_v = -1.0;
        for (i, v) in self.values.iter().enumerate() {
            let a = v.norm_sqr();
            if a > best_v {
                best_v = a;
                best = i;
            }
        }
        (best / self.cols(), best % self.cols())
    }
}
