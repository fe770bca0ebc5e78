//! Quality metrics.

use super::ComplexGrid;
use crate::error::Result;

/// `Σ|a − reference|² / Σ|reference|²`.
pub fn nmse(a: &ComplexGrid, reference: &ComplexGrid) -> Result<f64> {
    a.check_shape(reference)?;
    let num: f64 = a
        .values()
        .iter()
        .zip(reference.values())
        .map(|(x, y)| (x - y).norm_sqr())
        .sum();
    Ok(num / reference.sum_sq())
}

/// Accuracy NMSE of a fast result `g` against the direct result `g0`.
pub fn nmse_ac(g: &ComplexGrid, g0: &ComplexGrid) -> Result<f64> {
    nmse(g, g0)
}

/// Reversibility NMSE of a round-tripped signal against the original.
pub fn nmse_re(round_trip: &ComplexGrid, original: &ComplexGrid) -> Result<f64> {
    nmse(round_trip, original)
}

/// Mean squared difference of magnitudes, `mean (|a| − |b|)²`.
pub fn mse(a: &ComplexGrid, b: &ComplexGrid) -> Result<f64> {
    a.check_shape(b)?;
    let s: f64 = a
        .values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| (x.norm() - y.norm()).powi(2))
        .sum();
    Ok(s / a.values().len() as f64)
}

/// `10·log10(peak² / mse)` with `peak = max|reference|`; `+∞` for a perfect
/// match.
pub fn psnr(test: &ComplexGrid, reference: &ComplexGrid) -> Result<f64> {
    let e = mse(test, reference)?;
    if e == 0.0 {
        return Ok(f64::INFINITY);
    }
    let peak = reference.max_abs();
    Ok(10.0 * (peak * peak / e).log10())
}

const SSIM_K1: f64 = 0.01;
const SSIM_K2: f64 = 0.03;
const SSIM_WINDOW: usize = 8;

/// Mean structural similarity of magnitudes over all 8×8 windows (stride 1,
/// uniform weights). The dynamic range is taken from the reference.
pub fn ssim(test: &ComplexGrid, reference: &ComplexGrid) -> Result<f64> {
    test.check_shape(reference)?;
    let (rows, cols) = reference.shape();
    let a: Vec<f64> = test.values().iter().map(|v| v.norm()).collect();
    let b: Vec<f64> = reference.values().iter().map(|v| v.norm()).collect();
    let (lo, hi) = b
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &v| (l.min(v), h.max(v)));
    let range = if hi > lo { hi - lo } else { 1.0 };
    let c1 = (SSIM_K1 * range).powi(2);
    let c2 = (SSIM_K2 * range).powi(2);
    let w = SSIM_WINDOW.min(rows).min(cols);
    let n = (w * w) as f64;
    let mut total = 0.0;
    let mut count = 0usize;
    for i in 0..=rows - w {
        for j in 0..=cols - w {
            let (mut sa, mut sb, mut saa, mut sbb, mut sab) = (0.0, 0.0, 0.0, 0.0, 0.0);
            for di in 0..w {
                let base = (i + di) * cols + j;
                for k in base..base + w {
                    let (x, y) = (a[k], b[k]);
                    sa += x;
                    sb += y;
                    saa += x * x;
                    sbb += y * y;
                    sab += x * y;
                }
            }
            let (ma, mb) = (sa / n, sb / n);
            let va = saa / n - ma * ma;
            let vb = sbb / n - mb * mb;
            let cov = sab / n - ma * mb;
            total += ((2.0 * ma * mb + c1) * (2.0 * cov + c2))
                / ((ma * ma + mb * mb + c1) * (va + vb + c2));
            count += 1;
        }
    }
    Ok(total / count as f64)
}
