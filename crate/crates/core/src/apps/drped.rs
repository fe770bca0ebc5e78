//! Double random phase encoding with two NSFRFT stages.

use crate::error::Result;
use crate::fast::{plan_params, Algorithm};
use crate::grid::{metrics, ComplexGrid, Geometry};
use crate::params::{published, ParamDescriptor, ParamSet};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Two transform parameter sets and two unit-modulus phase masks.
#[derive(Debug, Clone)]
pub struct KeyMaterial {
    pub params1: ParamSet,
    pub params2: ParamSet,
    pub mask1: ComplexGrid,
    pub mask2: ComplexGrid,
    pub seed: u64,
}

/// On-disk key: parameters plus the mask seed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KeyFile {
    pub params1: ParamDescriptor,
    pub params2: ParamDescriptor,
    pub seed: u64,
}

impl KeyMaterial {
    /// Masks drawn from one ChaCha stream: all of `mask1`, then `mask2`.
    pub fn generate(params1: ParamSet, params2: ParamSet, geometry: Geometry, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut mask = || {
            let values = (0..geometry.len())
                .map(|_| Complex64::from_polar(1.0, 2.0 * PI * rng.random::<f64>()))
                .collect();
            ComplexGrid::new(geometry, values).expect("length matches geometry")
        };
        let mask1 = mask();
        let mask2 = mask();
        KeyMaterial {
            params1,
            params2,
            mask1,
            mask2,
            seed,
        }
    }

    /// Both stages at the published encryption parameters.
    pub fn standard(geometry: Geometry, seed: u64) -> Self {
        let p = published::encryption();
        Self::generate(p, p, geometry, seed)
    }

    pub fn from_file(key: &KeyFile, geometry: Geometry) -> Result<Self> {
        Ok(Self::generate(key.params1.resolve()?, key.params2.resolve()?, geometry, key.seed))
    }

    pub fn to_file(&self) -> KeyFile {
        KeyFile {
            params1: ParamDescriptor::from_params(&self.params1),
            params2: ParamDescriptor::from_params(&self.params2),
            seed: self.seed,
        }
    }

    /// Same masks, different transform parameters.
    pub fn with_params(&self, params1: ParamSet, params2: ParamSet) -> Self {
        KeyMaterial {
            params1,
            params2,
            ..self.clone()
        }
    }
}

fn forward(p: &ParamSet, f: &ComplexGrid) -> Result<ComplexGrid> {
    match plan_params(p, Algorithm::II)? {
        None => Ok(f.clone()),
        Some(plan) => plan.execute(f),
    }
}

fn inverse(p: &ParamSet, f: &ComplexGrid) -> Result<ComplexGrid> {
    match plan_params(p, Algorithm::II)? {
        None => Ok(f.clone()),
        Some(plan) => plan.inverse().execute(f),
    }
}

/// `F₂[ D₂ · F₁[ D₁ · img ] ]`.
pub fn drped_encrypt(img: &ComplexGrid, key: &KeyMaterial) -> Result<ComplexGrid> {
    let stage1 = forward(&key.params1, &img.mul(&key.mask1)?)?;
    forward(&key.params2, &stage1.mul(&key.mask2)?)
}

/// `D₁* · F₁⁻¹[ D₂* · F₂⁻¹[ ct ] ]`.
pub fn drped_decrypt(ct: &ComplexGrid, key: &KeyMaterial) -> Result<ComplexGrid> {
    let stage2 = inverse(&key.params2, ct)?.mul(&key.mask2.conj())?;
    inverse(&key.params1, &stage2)?.mul(&key.mask1.conj())
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SweepRow {
    pub delta: f64,
    pub mse: f64,
}

/// Decrypts with `θ + δ` on both stages for `δ` from `−range` to `range`.
pub fn key_sensitivity_sweep(
    img: &ComplexGrid,
    key: &KeyMaterial,
    range: f64,
    step: f64,
) -> Result<Vec<SweepRow>> {
    let ct = drped_encrypt(img, key)?;
    let count = (2.0 * range / step).round() as i64;
    (0..=count)
        .map(|i| {
            let delta = -range + i as f64 * step;
            let delta = if delta.abs() < 1e-12 { 0.0 } else { delta };
            let k = key.with_params(
                key.params1.with_theta(key.params1.theta + delta)?,
                key.params2.with_theta(key.params2.theta + delta)?,
            );
            let mse = metrics::mse(&drped_decrypt(&ct, &k)?, img)?;
            Ok(SweepRow { delta, mse })
        })
        .collect()
}
