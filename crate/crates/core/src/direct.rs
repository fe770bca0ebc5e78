//! Direct O(N⁴) evaluation by Riemann summation of the kernel.
//!
//! Slow but assumption-free; the fast algorithms are validated against it.

use crate::error::{Error, Result};
use crate::grid::{ComplexGrid, Geometry};
use crate::linalg::Mat2;
use crate::params::{derive_coeffs, DerivedCoeffs, ParamSet};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

/// The transform kernel at `(x, y) → (u, v)`.
pub fn kernel_value(c: &DerivedCoeffs, x: f64, y: f64, u: f64, v: f64) -> Complex64 {
    let t = c.t;
    let phase = (c.p1 * x * x + c.p2 * x * y + c.p3 * y * y) / (2.0 * t)
        + (c.m1 * u * x + c.m2 * v * x + c.m3 * u * y + c.m4 * v * y) / t
        + (c.k1 * u * u + c.k2 * u * v + c.k3 * v * v) / (2.0 * t);
    c.kernel_constant() * Complex64::from_polar(1.0, phase)
}

/// Forward transform of `f` sampled onto `out`, with quadrature weight
/// `dx·dy`. The identity point returns `f` unchanged.
pub fn nsfrft_direct(p: &ParamSet, f: &ComplexGrid, out: Geometry) -> Result<ComplexGrid> {
    if p.is_identity() {
        return Ok(f.clone());
    }
    out.validate()?;
    let c = derive_coeffs(p)?;
    let t = c.t;
    let g = *f.geometry();
    let weight = g.cell();
    let h = ComplexGrid::from_fn(g, |x, y| {
        Complex64::from_polar(weight, (c.p1 * x * x + c.p2 * x * y + c.p3 * y * y) / (2.0 * t))
    })
    .mul(f)?;
    let omega = c.m_matrix().scale(1.0 / t);
    let k = c.kernel_constant();
    let sums = bilinear_phase_sum(&h, out, omega);
    Ok(post_chirp(out, sums, |u, v| {
        k * Complex64::from_polar(1.0, (c.k1 * u * u + c.k2 * u * v + c.k3 * v * v) / (2.0 * t))
    }))
}

/// Inverse transform (conjugate kernel) of `big_f` sampled onto `out`.
pub fn nsfrft_inverse_direct(
    p: &ParamSet,
    big_f: &ComplexGrid,
    out: Geometry,
) -> Result<ComplexGrid> {
    if p.is_identity() {
        return Ok(big_f.clone());
    }
    out.validate()?;
    let c = derive_coeffs(p)?;
    let t = c.t;
    let g = *big_f.geometry();
    let weight = g.cell();
    let h = ComplexGrid::from_fn(g, |u, v| {
        Complex64::from_polar(
            weight,
            -(c.k1 * u * u + c.k2 * u * v + c.k3 * v * v) / (2.0 * t),
        )
    })
    .mul(big_f)?;
    let omega = c.m_matrix().transpose().scale(-1.0 / t);
    let k = c.kernel_constant().conj();
    let sums = bilinear_phase_sum(&h, out, omega);
    Ok(post_chirp(out, sums, |x, y| {
        k * Complex64::from_polar(1.0, -(c.p1 * x * x + c.p2 * x * y + c.p3 * y * y) / (2.0 * t))
    }))
}

fn post_chirp(
    out: Geometry,
    mut sums: Vec<Complex64>,
    chirp: impl Fn(f64, f64) -> Complex64,
) -> ComplexGrid {
    let xs = out.xs();
    let ys = out.ys();
    for (i, s) in sums.iter_mut().enumerate() {
        *s *= chirp(xs[i / out.cols], ys[i % out.cols]);
    }
    ComplexGrid::from_parts(out, sums)
}

/// For every output point `w = (u, v)`, computes
/// `Σ_{m,n} h[m,n] · exp(j (x_m, y_n)·(Ω w))`.
///
/// The inner exponentials are generated by complex-rotation recurrences
/// from one `exp` per axis, which keeps the O(N⁴) loop multiply-only.
fn bilinear_phase_sum(h: &ComplexGrid, out: Geometry, omega: Mat2) -> Vec<Complex64> {
    let g = *h.geometry();
    let (rows, cols) = (g.rows, g.cols);
    let x0 = g.x(0);
    let y0 = g.y(0);
    let us = out.xs();
    let vs = out.ys();
    let values = h.values();
    let mut result = vec![Complex64::new(0.0, 0.0); out.len()];
    result
        .par_chunks_mut(out.cols)
        .enumerate()
        .for_each(|(p, row_out)| {
            let u = us[p];
            let mut inner = vec![Complex64::new(0.0, 0.0); rows];
            for (q, slot) in row_out.iter_mut().enumerate() {
                let [wx, wy] = omega.apply([u, vs[q]]);
                let step_y = Complex64::from_polar(1.0, wy * g.dy);
                let start_y = Complex64::from_polar(1.0, wy * y0);
                for (m, acc) in inner.iter_mut().enumerate() {
                    let row = &values[m * cols..(m + 1) * cols];
                    let mut e = start_y;
                    let mut s = Complex64::new(0.0, 0.0);
                    for &hv in row {
                        s += hv * e;
                        e *= step_y;
                    }
                    *acc = s;
                }
                let step_x = Complex64::from_polar(1.0, wx * g.dx);
                let mut e = Complex64::from_polar(1.0, wx * x0);
                let mut total = Complex64::new(0.0, 0.0);
                for s in &inner {
                    total += s * e;
                    e *= step_x;
                }
                *slot = total;
            }
        });
    result
}

/// Output spacing that gives the direct sum roughly unitary sampling on an
/// `n`-point axis: `du·dx·n ≈ 2π|T| / max|m_i|`.
pub fn unitary_output_spacing(p: &ParamSet, dx: f64, n: usize) -> Result<f64> {
    let c = derive_coeffs(p)?;
    let mmax = [c.m1, c.m2, c.m3, c.m4]
        .iter()
        .fold(0.0f64, |a, b| a.max(b.abs()));
    if mmax == 0.0 {
        return Err(Error::ZeroT { t: c.t });
    }
    Ok(2.0 * PI * c.t.abs() / (mmax * dx * n as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::signals;

    #[test]
    fn kernel_magnitude_is_constant() {
        let p = ParamSet::normalized(0.3, -0.5, 0.7, 0.2, 0.9).unwrap();
        let c = derive_coeffs(&p).unwrap();
        let expect = 1.0 / (2.0 * PI * c.t.abs().sqrt());
        for (x, y, u, v) in [(0.1, 2.0, -1.0, 0.5), (3.0, -2.0, 1.5, 0.0)] {
            assert!((kernel_value(&c, x, y, u, v).norm() - expect).abs() < 1e-14);
        }
    }

    #[test]
    fn identity_is_bitwise_copy() {
        let f = signals::g1_signal(Geometry::square(16, 0.4));
        let out = nsfrft_direct(&ParamSet::identity(), &f, Geometry::square(4, 1.0)).unwrap();
        assert_eq!(out, f);
    }

    #[test]
    fn matches_naive_quadruple_sum() {
        let p = ParamSet::normalized(0.4, 0.2, -0.6, 0.5, 0.7).unwrap();
        let c = derive_coeffs(&p).unwrap();
        let g = Geometry::new(6, 5, 0.5, 0.6).unwrap();
        let f = signals::g2_signal(g);
        let out = Geometry::new(4, 7, 0.3, 0.4).unwrap();
        let fast = nsfrft_direct(&p, &f, out).unwrap();
        for i in 0..out.rows {
            for j in 0..out.cols {
                let mut s = Complex64::new(0.0, 0.0);
                for m in 0..g.rows {
                    for n in 0..g.cols {
                        s += f.get(m, n) * kernel_value(&c, g.x(m), g.y(n), out.x(i), out.y(j));
                    }
                }
                s *= g.cell();
                assert!((s - fast.get(i, j)).norm() < 1e-12);
            }
        }
        let back = nsfrft_inverse_direct(&p, &fast, g).unwrap();
        for m in 0..g.rows {
            for n in 0..g.cols {
                let mut s = Complex64::new(0.0, 0.0);
                for i in 0..out.rows {
                    for j in 0..out.cols {
                        s += fast.get(i, j)
                            * kernel_value(&c, g.x(m), g.y(n), out.x(i), out.y(j)).conj();
                    }
                }
                s *= out.cell();
                assert!((s - back.get(m, n)).norm() < 1e-12);
            }
        }
    }
}
