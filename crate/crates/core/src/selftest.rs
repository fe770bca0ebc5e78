//! Quick invariant suite behind `nsfrft selftest`.

use crate::analysis::impulse_report;
use crate::apps::{drped_decrypt, drped_encrypt, KeyMaterial};
use crate::direct::nsfrft_direct;
use crate::fast::{self, plan_for, Algorithm};
use crate::grid::{metrics, signals, Geometry};
use crate::linalg::{CMat2, Mat2};
use crate::params::{self, blocks_from_params, derive_coeffs, published, rotation4_from_params};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub limit: f64,
    pub passed: bool,
}

impl Check {
    fn below(name: &'static str, value: f64, limit: f64) -> Self {
        Check {
            name,
            value,
            limit,
            passed: value.is_finite() && value < limit,
        }
    }
}

impl std::fmt::Display for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {:<28} {:.3e} (limit {:.0e})", self.name, self.value, self.limit)
    }
}

fn worst(values: impl Iterator<Item = crate::Result<f64>>) -> f64 {
    values
        .map(|v| v.unwrap_or(f64::INFINITY))
        .fold(0.0, |a, b| if b.is_nan() { f64::INFINITY } else { a.max(b) })
}

/// `det B = T`, `R` orthogonal with unit determinant, `m1m4 − m2m3 = T`.
pub fn params_soundness(count: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = worst((0..count).map(|_| {
        let p = params::random_params(&mut rng);
        let c = derive_coeffs(&p)?;
        let s = blocks_from_params(&p)?;
        let r = rotation4_from_params(&p);
        let m = c.m_matrix();
        Ok([
            (s.b.det() - c.t).abs(),
            r.orthogonality_defect(),
            (r.det() - 1.0).abs(),
            (m.det() - c.t).abs(),
        ]
        .into_iter()
        .fold(0.0, f64::max))
    }));
    Check::below("parameter soundness", v, 1e-10)
}

/// Composed step matrices reproduce the requested symplectic matrix.
pub fn plan_soundness(count: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = worst((0..count).flat_map(|_| {
        let spec = blocks_from_params(&params::random_params(&mut rng));
        [Algorithm::I, Algorithm::II].map(|alg| {
            let spec = spec.as_ref().map_err(|e| crate::Error::InvalidParams(e.to_string()))?;
            let plan = plan_for(spec, alg)?;
            Ok(plan.symplectic().max_abs_diff(&spec.matrix()))
        })
    }));
    Check::below("plan soundness", v, 1e-10)
}

/// Random parameter set whose Algorithm II plan keeps every intermediate
/// within `max_extent` of the unit phase-space ball.
pub fn well_conditioned_params(rng: &mut ChaCha8Rng, max_extent: f64) -> params::ParamSet {
    loop {
        let p = params::random_params_with_t(rng, 0.3);
        let ok = blocks_from_params(&p)
            .and_then(|s| plan_for(&s, Algorithm::II))
            .map(|plan| plan.phase_space_extent() <= max_extent)
            .unwrap_or(false);
        if ok {
            return p;
        }
    }
}

/// Algorithm II against a 4×-oversampled direct sum and against the
/// closed-form Gaussian response, on a 64-point grid, for parameter sets
/// the grid can carry (see [`crate::fast::OperatorPlan::phase_space_extent`]).
pub fn oracle_agreement(count: usize, seed: u64) -> [Check; 2] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = Geometry::self_dual(64);
    let fine = Geometry::square(256, g.dx / 4.0);
    let f = signals::hermite_gaussian_2d(1, 2, g);
    let f_fine = signals::hermite_gaussian_2d(1, 2, fine);
    let g0 = signals::hermite_gaussian_2d(0, 0, g);
    let mut direct_worst = 0.0f64;
    let mut closed_worst = 0.0f64;
    for _ in 0..count {
        let p = well_conditioned_params(&mut rng, 2.0);
        let res = (|| -> crate::Result<(f64, f64)> {
            let truth = nsfrft_direct(&p, &f_fine, g)?;
            let ours = fast::nsfrft_fast(&p, &f, Algorithm::II)?;
            let spec = blocks_from_params(&p)?;
            let (amp, m) = fast::gaussian_response(
                &spec,
                Complex64::new(1.0 / PI.sqrt(), 0.0),
                CMat2::from_real(Mat2::IDENTITY),
            )?;
            let exact = signals::complex_gaussian(amp, &m, g);
            let ours0 = fast::nsfrft_fast(&p, &g0, Algorithm::II)?;
            Ok((metrics::nmse(&ours, &truth)?, metrics::nmse(&ours0, &exact)?))
        })();
        let (a, b) = res.unwrap_or((f64::INFINITY, f64::INFINITY));
        direct_worst = direct_worst.max(a);
        closed_worst = closed_worst.max(b);
    }
    [
        Check::below("oracle: oversampled direct", direct_worst, 1e-6),
        Check::below("oracle: Gaussian closed form", closed_worst, 1e-9),
    ]
}

/// Forward then inverse for both fast algorithms.
pub fn round_trips() -> [Check; 2] {
    let g = Geometry::default();
    let f = signals::g2_signal(g);
    let p = published::reversibility();
    let trip = |alg| -> f64 {
        fast::nsfrft_fast(&p, &f, alg)
            .and_then(|big| fast::nsfrft_fast_inverse(&p, &big, alg))
            .and_then(|back| metrics::nmse_re(&back, &f))
            .unwrap_or(f64::INFINITY)
    };
    [
        Check::below("round trip (algorithm II)", trip(Algorithm::II), 1e-12),
        Check::below("round trip (algorithm I)", trip(Algorithm::I), 1e-1),
    ]
}

pub fn drped_round_trip(seed: u64) -> Check {
    let g = Geometry::default();
    let img = signals::gaussian_target(g);
    let key = KeyMaterial::standard(g, seed);
    let v = drped_encrypt(&img, &key)
        .and_then(|ct| drped_decrypt(&ct, &key))
        .and_then(|back| metrics::mse(&back, &img))
        .unwrap_or(f64::INFINITY);
    Check::below("DRPED round trip", v, 1e-20)
}

/// Distance in bins between the observed and predicted impulse of the
/// shifted matched chirp.
pub fn impulse_localization() -> Check {
    let g = Geometry::default();
    let p = published::chirp3();
    let spec = signals::ChirpSpec::f3();
    let v = (|| -> crate::Result<f64> {
        let big = fast::nsfrft_fast(&p, &signals::chirp(&spec, g), Algorithm::II)?;
        let r = impulse_report(&p, &big, spec.lx, spec.ly)?;
        let d0 = r.peak_index.0.abs_diff(r.predicted_index.0);
        let d1 = r.peak_index.1.abs_diff(r.predicted_index.1);
        Ok(d0.max(d1) as f64)
    })()
    .unwrap_or(f64::INFINITY);
    Check::below("impulse localization (bins)", v, 1.5)
}

/// Runs every check.
pub fn run(seed: u64) -> Vec<Check> {
    let mut out = vec![params_soundness(500, seed), plan_soundness(200, seed)];
    out.extend(oracle_agreement(4, seed));
    out.extend(round_trips());
    out.push(drped_round_trip(seed));
    out.push(impulse_localization());
    out
}
