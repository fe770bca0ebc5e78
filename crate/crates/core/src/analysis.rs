//! Checks of the transform's structural claims: the Wigner distribution is
//! rotated by the 4D matrix, and matched chirps collapse to points.

use crate::error::{Error, Result};
use crate::fast::{self, Algorithm, Direction};
use crate::grid::{centered, ComplexGrid, Geometry};
use crate::params::{derive_coeffs, rotation4_from_params, ParamSet};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Largest grid side accepted by [`wigner2d`]; the output is side⁴ values.
pub const WIGNER_MAX: usize = 32;

/// Sampled 2D Wigner distribution `W(x, y, u, v)`.
///
/// Position samples are the signal's grid. Lags are `τ = 2k·dx` so that
/// `x ± τ/2` stays on the grid; frequency samples are therefore spaced
/// `π/(N·dx)` and centered like every other axis.
#[derive(Debug, Clone)]
pub struct Wigner {
    pub geometry: Geometry,
    pub du: f64,
    pub dv: f64,
    values: Vec<Complex64>,
}

impl Wigner {
    fn idx(&self, m: usize, n: usize, p: usize, q: usize) -> usize {
        let (r, c) = (self.geometry.rows, self.geometry.cols);
        ((m * c + n) * r + p) * c + q
    }

    pub fn get(&self, m: usize, n: usize, p: usize, q: usize) -> Complex64 {
        self.values[self.idx(m, n, p, q)]
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn u(&self, p: usize) -> f64 {
        centered(p, self.geometry.rows) * self.du
    }

    pub fn v(&self, q: usize) -> f64 {
        centered(q, self.geometry.cols) * self.dv
    }

    /// Quadrilinear interpolation at continuous `(x, y, u, v)`; zero
    /// outside the sampled box.
    pub fn interpolate(&self, z: [f64; 4]) -> Complex64 {
        let g = &self.geometry;
        let dims = [g.rows, g.cols, g.rows, g.cols];
        let steps = [g.dx, g.dy, self.du, self.dv];
        let mut base = [0usize; 4];
        let mut frac = [0.0; 4];
        for a in 0..4 {
            let t = z[a] / steps[a] + (dims[a] / 2) as f64;
            let f = t.floor();
            if f < 0.0 || f as usize + 1 >= dims[a] {
                return Complex64::new(0.0, 0.0);
            }
            base[a] = f as usize;
            frac[a] = t - f;
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for corner in 0..16 {
            let mut w = 1.0;
            let mut ix = [0usize; 4];
            for a in 0..4 {
                let bit = (corner >> a) & 1;
                ix[a] = base[a] + bit;
                w *= if bit == 1 { frac[a] } else { 1.0 - frac[a] };
            }
            if w != 0.0 {
                acc += self.get(ix[0], ix[1], ix[2], ix[3]) * w;
            }
        }
        acc
    }
}

/// `W(x,y,u,v) = ΣΣ f(x+τ/2, y+η/2)·f*(x−τ/2, y−η/2)·e^{−j(uτ+vη)}·dτ·dη`.
pub fn wigner2d(f: &ComplexGrid) -> Result<Wigner> {
    let g = *f.geometry();
    let side = g.rows.max(g.cols);
    if side > WIGNER_MAX {
        return Err(Error::TooLarge {
            size: side,
            limit: WIGNER_MAX,
        });
    }
    let (rows, cols) = (g.rows, g.cols);
    let lag_geom = Geometry {
        rows,
        cols,
        dx: 2.0 * g.dx,
        dy: 2.0 * g.dy,
    };
    let slabs: Vec<Vec<Complex64>> = (0..rows * cols)
        .into_par_iter()
        .map(|mn| {
            let (m, n) = ((mn / cols) as isize, (mn % cols) as isize);
            let mut k = ComplexGrid::zeros(lag_geom);
            for a in 0..rows {
                let ka = a as isize - (rows / 2) as isize;
                let (p1, m1) = (m + ka, m - ka);
                if p1 < 0 || m1 < 0 || p1 >= rows as isize || m1 >= rows as isize {
                    continue;
                }
                for b in 0..cols {
                    let kb = b as isize - (cols / 2) as isize;
                    let (p2, m2) = (n + kb, n - kb);
                    if p2 < 0 || m2 < 0 || p2 >= cols as isize || m2 >= cols as isize {
                        continue;
                    }
                    let v = f.get(p1 as usize, p2 as usize)
                        * f.get(m1 as usize, m2 as usize).conj();
                    k.set(a, b, v);
                }
            }
            // fourier2d carries dτ·dη/2π; restore the plain lag sum.
            fast::fourier2d(&k, Direction::Forward)
                .scale(Complex64::new(2.0 * PI, 0.0))
                .into_values()
        })
        .collect();
    let freq = lag_geom.reciprocal();
    Ok(Wigner {
        geometry: g,
        du: freq.dx,
        dv: freq.dy,
        values: slabs.concat(),
    })
}

/// Square geometry on which the Wigner position and frequency lattices
/// coincide (`π/(N·d) = d`).
pub fn wigner_geometry(n: usize) -> Geometry {
    Geometry::square(n, (PI / n as f64).sqrt())
}

/// Outcome of comparing `W_F(z)` with `W_f(Rz)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WdRotationReport {
    pub points: usize,
    /// Largest `|W_F(z) − W_f(Rz)|` divided by `max|W_f|`.
    pub max_relative_deviation: f64,
    pub mean_relative_deviation: f64,
}

/// Draws `count` sample points uniformly from the ball of the given radius
/// in `(x, y, u, v)`.
pub fn interior_points(count: usize, radius: f64, seed: u64) -> Vec<[f64; 4]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let z: [f64; 4] = std::array::from_fn(|_| rng.random_range(-radius..radius));
        if z.iter().map(|v| v * v).sum::<f64>() <= radius * radius {
            out.push(z);
        }
    }
    out
}

/// Transforms `f` (Algorithm II) and compares Wigner distributions at the
/// given points through the 4D rotation.
pub fn verify_wd_rotation(
    p: &ParamSet,
    f: &ComplexGrid,
    points: &[[f64; 4]],
) -> Result<WdRotationReport> {
    let big_f = fast::nsfrft_fast(p, f, Algorithm::II)?;
    let wf = wigner2d(f)?;
    let wbig = wigner2d(&big_f)?;
    let r = rotation4_from_params(p);
    let scale = wf.max_abs();
    let devs: Vec<f64> = points
        .iter()
        .map(|&z| (wbig.interpolate(z) - wf.interpolate(r.apply(z))).norm() / scale)
        .collect();
    Ok(WdRotationReport {
        points: devs.len(),
        max_relative_deviation: devs.iter().copied().fold(0.0, f64::max),
        mean_relative_deviation: devs.iter().sum::<f64>() / devs.len().max(1) as f64,
    })
}

/// Where a transformed chirp peaks and how concentrated it is.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ImpulseReport {
    pub peak_index: (usize, usize),
    /// `|F|²` at the peak over total `Σ|F|²`.
    pub peak_fraction: f64,
    /// Energy in the 3×3 block around the predicted bin over the total.
    pub neighborhood_fraction: f64,
    pub predicted_index: (usize, usize),
    pub predicted_uv: (f64, f64),
}

/// Output coordinates of the point a matched chirp with linear phase
/// `lx·x + ly·y` collapses to: the solution of
/// `[m1 m2; m3 m4]·(u, v) = −T·(lx, ly)`.
pub fn predicted_impulse(p: &ParamSet, lx: f64, ly: f64) -> Result<(f64, f64)> {
    let c = derive_coeffs(p)?;
    let m = c.m_matrix();
    let inv = m.inverse().ok_or(Error::ZeroT { t: c.t })?;
    let [u, v] = inv.apply([-c.t * lx, -c.t * ly]);
    Ok((u, v))
}

pub fn impulse_report(p: &ParamSet, big_f: &ComplexGrid, lx: f64, ly: f64) -> Result<ImpulseReport> {
    let (u, v) = predicted_impulse(p, lx, ly)?;
    let g = big_f.geometry();
    let to_index = |c: f64, d: f64, len: usize| -> usize {
        let i = (c / d).round() + (len / 2) as f64;
        i.clamp(0.0, (len - 1) as f64) as usize
    };
    let predicted = (to_index(u, g.dx, g.rows), to_index(v, g.dy, g.cols));
    let peak = big_f.argmax_abs();
    let total = big_f.sum_sq();
    Ok(ImpulseReport {
        peak_index: peak,
        peak_fraction: big_f.get(peak.0, peak.1).norm_sqr() / total,
        neighborhood_fraction: block_energy(big_f, predicted, 1) / total,
        predicted_index: predicted,
        predicted_uv: (u, v),
    })
}

/// `Σ|F|²` over the `(2r+1)²` block centred at `c`, clipped to the grid.
pub fn block_energy(f: &ComplexGrid, c: (usize, usize), r: usize) -> f64 {
    let mut s = 0.0;
    for i in c.0.saturating_sub(r)..=(c.0 + r).min(f.rows() - 1) {
        for j in c.1.saturating_sub(r)..=(c.1 + r).min(f.cols() - 1) {
            s += f.get(i, j).norm_sqr();
        }
    }
    s
}
