//! Multiplicative filtering in the transform domain.

use crate::error::Result;
use crate::fast::{plan_params, Algorithm};
use crate::grid::{ComplexGrid, Geometry};
use crate::params::ParamSet;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MaskKind {
    Optimal,
    Bandpass,
    Bandstop,
}

/// Transfer function on the transform-domain grid.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterMask {
    pub values: ComplexGrid,
    pub kind: MaskKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum BandKind {
    Pass,
    Stop,
}

/// Forward transform, mask, inverse transform — all through one plan.
struct Filterer {
    plan: Option<crate::fast::OperatorPlan>,
    inverse: Option<crate::fast::OperatorPlan>,
}

impl Filterer {
    fn new(p: &ParamSet) -> Result<Self> {
        let plan = plan_params(p, Algorithm::II)?;
        let inverse = plan.as_ref().map(|pl| pl.inverse());
        Ok(Filterer { plan, inverse })
    }

    fn forward(&self, f: &ComplexGrid) -> Result<ComplexGrid> {
        match &self.plan {
            None => Ok(f.clone()),
            Some(pl) => pl.execute(f),
        }
    }

    fn backward(&self, f: &ComplexGrid) -> Result<ComplexGrid> {
        match &self.inverse {
            None => Ok(f.clone()),
            Some(pl) => pl.execute(f),
        }
    }
}

/// `F_P⁻¹[ H · F_P[f] ]`.
pub fn multiplicative_filter(f: &ComplexGrid, p: &ParamSet, h: &FilterMask) -> Result<ComplexGrid> {
    let fl = Filterer::new(p)?;
    fl.backward(&fl.forward(f)?.mul(&h.values)?)
}

/// Wiener mask `|F_P[clean]|² / (|F_P[clean]|² + σ²)`. White noise of
/// per-sample variance `σ²` keeps that variance through the unitary
/// transform, so the noise spectrum is flat.
pub fn optimal_mask(clean: &ComplexGrid, noise_var: f64, p: &ParamSet) -> Result<FilterMask> {
    let spectrum = Filterer::new(p)?.forward(clean)?;
    Ok(wiener(&spectrum, noise_var))
}

fn wiener(spectrum: &ComplexGrid, noise_var: f64) -> FilterMask {
    let values = spectrum.map(|s| {
        let sg = s.norm_sqr();
        let h = if sg == 0.0 && noise_var == 0.0 { 1.0 } else { sg / (sg + noise_var) };
        Complex64::new(h, 0.0)
    });
    FilterMask {
        values,
        kind: MaskKind::Optimal,
    }
}

/// Builds the Wiener mask for `p` and applies it to `observed`, reusing a
/// single plan for the three transforms.
pub fn optimal_filter(
    observed: &ComplexGrid,
    clean: &ComplexGrid,
    noise_var: f64,
    p: &ParamSet,
) -> Result<(ComplexGrid, FilterMask)> {
    let fl = Filterer::new(p)?;
    let mask = wiener(&fl.forward(clean)?, noise_var);
    let out = fl.backward(&fl.forward(observed)?.mul(&mask.values)?)?;
    Ok((out, mask))
}

/// Disk of `radius` bins around `center`: ones inside for a pass band,
/// zeros inside for a stop band.
pub fn band_mask(geometry: Geometry, center: (usize, usize), radius: f64, kind: BandKind) -> FilterMask {
    let mut values = ComplexGrid::zeros(geometry);
    for i in 0..geometry.rows {
        for j in 0..geometry.cols {
            let di = i as f64 - center.0 as f64;
            let dj = j as f64 - center.1 as f64;
            let inside = di * di + dj * dj <= radius * radius;
            let keep = inside == (kind == BandKind::Pass);
            values.set(i, j, Complex64::new(if keep { 1.0 } else { 0.0 }, 0.0));
        }
    }
    FilterMask {
        values,
        kind: match kind {
            BandKind::Pass => MaskKind::Bandpass,
            BandKind::Stop => MaskKind::Bandstop,
        },
    }
}

/// Finds the impulse (argmax of `|F_P[f]|`), masks a disk around it and
/// transforms back.
pub fn band_filter(f: &ComplexGrid, p: &ParamSet, kind: BandKind, radius: f64) -> Result<ComplexGrid> {
    let fl = Filterer::new(p)?;
    let spectrum = fl.forward(f)?;
    let mask = band_mask(*spectrum.geometry(), spectrum.argmax_abs(), radius, kind);
    fl.backward(&spectrum.mul(&mask.values)?)
}
