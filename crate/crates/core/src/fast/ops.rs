//! Elementary operators of the fast decompositions.
//!
//! Each operator is the discrete counterpart of a continuous linear
//! canonical transform; the comment on each states its 4×4 symplectic
//! representative acting on `(position, frequency)`.

use crate::error::{Error, Result};
use crate::grid::{centered, ComplexGrid, Geometry};
use crate::linalg::Mat2;
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};
use std::f64::consts::PI;
use std::sync::Arc;

const SYM_TOL: f64 = 1e-10;

fn check_symmetric(s: &Mat2) -> Result<()> {
    let asym = s.asymmetry();
    if asym > SYM_TOL * s.max_abs().max(1.0) {
        return Err(Error::NonSymmetric(asym));
    }
    Ok(())
}

/// Multiplies by `exp(j·½·xᵀSx)`. Representative `[I 0; S I]`.
pub fn chirp_multiply(f: &ComplexGrid, s: &Mat2) -> Result<ComplexGrid> {
    check_symmetric(s)?;
    Ok(apply_quadratic_phase(f, s, 0.5))
}

fn apply_quadratic_phase(f: &ComplexGrid, s: &Mat2, factor: f64) -> ComplexGrid {
    let g = *f.geometry();
    let xs = g.xs();
    let ys = g.ys();
    let mut out = f.clone();
    out.values_mut()
        .par_chunks_mut(g.cols)
        .enumerate()
        .for_each(|(m, row)| {
            let x = xs[m];
            for (n, v) in row.iter_mut().enumerate() {
                *v *= Complex64::from_polar(1.0, factor * s.quad_form(x, ys[n]));
            }
        });
    out
}

/// Chirp convolution realised in the frequency domain: transform, multiply
/// by `exp(−j·½·kᵀSk)`, transform back. Representative `[I S; 0 I]`.
/// Exactly unitary on the grid, with `chirp_convolve(−S)` its exact inverse.
pub fn chirp_convolve(f: &ComplexGrid, s: &Mat2) -> Result<ComplexGrid> {
    check_symmetric(s)?;
    let det = s.det();
    if det.abs() <= 1e-12 {
        return Err(Error::SingularS(det));
    }
    let spec = fourier2d(f, Direction::Forward);
    let spec = apply_quadratic_phase(&spec, s, -0.5);
    Ok(fourier2d(&spec, Direction::Inverse))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Direction {
    Forward,
    Inverse,
}

/// Continuous-calibrated 2D Fourier transform on centered grids:
/// forward `(dx·dy/2π)·Σ f·e^{−j(xu+yv)}`, inverse with `e^{+j(…)}`.
/// The output lives on the reciprocal geometry (spacing `2π/(N·d)`), so
/// `Σ|F|²·du·dv = Σ|f|²·dx·dy` exactly. Representative `[0 I; −I 0]`
/// forward, `[0 −I; I 0]` inverse.
pub fn fourier2d(f: &ComplexGrid, direction: Direction) -> ComplexGrid {
    let g = *f.geometry();
    let out_geom = g.reciprocal();
    let mut data = f.values().to_vec();
    let inverse = direction == Direction::Inverse;
    centered_dft_rows(&mut data, g.rows, g.cols, inverse);
    let mut t = transpose(&data, g.rows, g.cols);
    centered_dft_rows(&mut t, g.cols, g.rows, inverse);
    let mut data = transpose(&t, g.cols, g.rows);
    let scale = g.cell() / (2.0 * PI);
    data.par_iter_mut().for_each(|v| *v *= scale);
    ComplexGrid::from_parts(out_geom, data)
}

fn transpose(data: &[Complex64], rows: usize, cols: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); data.len()];
    out.par_chunks_mut(rows).enumerate().for_each(|(c, col)| {
        for (r, v) in col.iter_mut().enumerate() {
            *v = data[r * cols + c];
        }
    });
    out
}

/// Centered DFT of every row: `out[p] = Σ_m in[m]·e^{∓2πi(m−c)(p−c)/N}`
/// with `c = N/2`, built from a plain FFT with pre- and post-twiddles.
fn centered_dft_rows(data: &mut [Complex64], rows: usize, cols: usize, inverse: bool) {
    let n = cols;
    let c = (n / 2) as f64;
    let sign = if inverse { -1.0 } else { 1.0 };
    let fft: Arc<dyn Fft<f64>> = {
        let mut planner = FftPlanner::new();
        if inverse {
            planner.plan_fft_inverse(n)
        } else {
            planner.plan_fft_forward(n)
        }
    };
    let twiddle: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(1.0, sign * 2.0 * PI * c * k as f64 / n as f64))
        .collect();
    let global = Complex64::from_polar(1.0, -sign * 2.0 * PI * c * c / n as f64);
    debug_assert_eq!(data.len(), rows * cols);
    data.par_chunks_mut(n).for_each_init(
        || vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()],
        |scratch, row| {
            for (v, w) in row.iter_mut().zip(&twiddle) {
                *v *= w;
            }
            fft.process_with_scratch(row, scratch);
            for (v, w) in row.iter_mut().zip(&twiddle) {
                *v *= w * global;
            }
        },
    );
}

/// Area-preserving coordinate change `g(x) = f(Λ⁻¹x)/√|det Λ|`, evaluated
/// by bicubic (Keys, a = −½) interpolation, zero outside the input.
/// Representative `[Λ 0; 0 Λ⁻ᵀ]`.
///
/// The result is sampled on the reciprocal of the input geometry, the
/// lattice on which a following [`fourier2d`] lands back on the original
/// spacing.
pub fn affine_resample(f: &ComplexGrid, lambda: &Mat2) -> Result<ComplexGrid> {
    let out = f.geometry().reciprocal();
    affine_resample_onto(f, lambda, out)
}

/// [`affine_resample`] onto an explicit output geometry.
pub fn affine_resample_onto(f: &ComplexGrid, lambda: &Mat2, out: Geometry) -> Result<ComplexGrid> {
    let det = lambda.det();
    if det.abs() <= 1e-12 {
        return Err(Error::SingularB(det));
    }
    let inv = lambda.inverse().ok_or(Error::SingularB(det))?;
    let amp = 1.0 / det.abs().sqrt();
    let g = *f.geometry();
    let (cr, cc) = ((g.rows / 2) as f64, (g.cols / 2) as f64);
    let xs = out.xs();
    let ys = out.ys();
    let mut values = vec![Complex64::new(0.0, 0.0); out.len()];
    values
        .par_chunks_mut(out.cols)
        .enumerate()
        .for_each(|(m, row)| {
            for (n, v) in row.iter_mut().enumerate() {
                let [sx, sy] = inv.apply([xs[m], ys[n]]);
                *v = amp * bicubic(f, sx / g.dx + cr, sy / g.dy + cc);
            }
        });
    Ok(ComplexGrid::from_parts(out, values))
}

fn keys(t: f64) -> f64 {
    const A: f64 = -0.5;
    let t = t.abs();
    if t <= 1.0 {
        (A + 2.0) * t * t * t - (A + 3.0) * t * t + 1.0
    } else if t < 2.0 {
        A * t * t * t - 5.0 * A * t * t + 8.0 * A * t - 4.0 * A
    } else {
        0.0
    }
}

/// Interpolates at fractional index `(r, c)`; samples outside are zero.
fn bicubic(f: &ComplexGrid, r: f64, c: f64) -> Complex64 {
    let (rows, cols) = (f.rows() as isize, f.cols() as isize);
    let r0 = r.floor() as isize;
    let c0 = c.floor() as isize;
    if r0 < -2 || c0 < -2 || r0 > rows + 1 || c0 > cols + 1 {
        return Complex64::new(0.0, 0.0);
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for i in r0 - 1..=r0 + 2 {
        if i < 0 || i >= rows {
            continue;
        }
        let wr = keys(r - i as f64);
        if wr == 0.0 {
            continue;
        }
        for j in c0 - 1..=c0 + 2 {
            if j < 0 || j >= cols {
                continue;
            }
            acc += f.get(i as usize, j as usize) * (wr * keys(c - j as f64));
        }
    }
    acc
}

/// Frequency sample `k` of the reciprocal axis for index `i` of `len`.
pub fn reciprocal_coordinate(i: usize, len: usize, spacing: f64) -> f64 {
    centered(i, len) * 2.0 * PI / (len as f64 * spacing)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::signals;

    fn gaussian(g: Geometry) -> ComplexGrid {
        ComplexGrid::from_real(g, |x, y| (-(x * x + y * y) / 2.0).exp())
    }

    #[test]
    fn centered_dft_matches_naive_for_odd_and_even() {
        for n in [5usize, 6] {
            let data: Vec<Complex64> = (0..n)
                .map(|k| Complex64::new(k as f64 * 0.3 - 1.0, (k * k) as f64 * 0.1))
                .collect();
            let mut fast = data.clone();
            centered_dft_rows(&mut fast, 1, n, false);
            let c = (n / 2) as f64;
            for p in 0..n {
                let mut s = Complex64::new(0.0, 0.0);
                for (m, v) in data.iter().enumerate() {
                    let ph = -2.0 * PI * (m as f64 - c) * (p as f64 - c) / n as f64;
                    s += v * Complex64::from_polar(1.0, ph);
                }
                assert!((s - fast[p]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn gaussian_is_fourier_fixed_point() {
        let f = gaussian(Geometry::default());
        let out = fourier2d(&f, Direction::Forward);
        let expect = gaussian(*out.geometry());
        let err = out.sub(&expect).unwrap().max_abs();
        assert!(err < 1e-4, "{err}");
    }

    #[test]
    fn double_fourier_is_parity() {
        let f = signals::g2_signal(Geometry::default());
        let ff = fourier2d(&fourier2d(&f, Direction::Forward), Direction::Forward);
        let (r, c) = f.shape();
        let mut worst: f64 = 0.0;
        for m in 1..r {
            for n in 1..c {
                worst = worst.max((ff.get(m, n) - f.get(r - m, c - n)).norm());
            }
        }
        assert!(worst < 1e-6, "{worst}");
    }

    #[test]
    fn chirp_convolve_is_exactly_invertible_and_unitary() {
        let f = signals::g1_signal(Geometry::square(64, 0.3));
        let s = Mat2::new(0.7, -0.4, -0.4, 1.3);
        let y = chirp_convolve(&f, &s).unwrap();
        assert!(((y.sum_sq() - f.sum_sq()) / f.sum_sq()).abs() < 1e-12);
        let back = chirp_convolve(&y, &-s).unwrap();
        let err = back.sub(&f).unwrap().sum_sq() / f.sum_sq();
        assert!(err < 1e-24, "{err}");
    }

    #[test]
    fn chirp_ops_reject_bad_matrices() {
        let f = ComplexGrid::zeros(Geometry::square(8, 0.5));
        let asym = Mat2::new(1.0, 0.5, 0.0, 1.0);
        assert!(matches!(chirp_multiply(&f, &asym), Err(Error::NonSymmetric(_))));
        assert!(matches!(
            chirp_convolve(&f, &Mat2::diag(1.0, 0.0)),
            Err(Error::SingularS(_))
        ));
        assert!(matches!(
            affine_resample(&f, &Mat2::ZERO),
            Err(Error::SingularB(_))
        ));
    }

    #[test]
    fn affine_identity_and_dilation() {
        let g = Geometry::self_dual(64);
        let f = gaussian(g);
        let same = affine_resample(&f, &Mat2::IDENTITY).unwrap();
        assert!(same.sub(&f).unwrap().max_abs() < 1e-12);

        let wide = affine_resample(&f, &Mat2::scaled_identity(2.0)).unwrap();
        let expect = ComplexGrid::from_real(g, |x, y| 0.5 * (-(x * x + y * y) / 8.0).exp());
        assert!(wide.sub(&expect).unwrap().max_abs() < 2e-3);
        assert!(((wide.energy() - f.energy()) / f.energy()).abs() < 1e-3);
    }

    #[test]
    fn rotation_preserves_energy() {
        let g = Geometry::square(128, 0.15);
        let f = signals::g2_signal(g);
        let (s, c) = 0.6f64.sin_cos();
        let rot = affine_resample_onto(&f, &Mat2::new(c, -s, s, c), g).unwrap();
        assert!(((rot.energy() - f.energy()) / f.energy()).abs() < 1e-3);
    }
}
