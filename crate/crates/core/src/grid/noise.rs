//! Additive white Gaussian noise at a prescribed SNR.

use super::ComplexGrid;
use crate::error::{Error, Result};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

/// Noise variance that yields `snr_db` against the mean sample power of `g`.
pub fn noise_variance_for(g: &ComplexGrid, snr_db: f64) -> f64 {
    let power = g.sum_sq() / g.values().len() as f64;
    power / 10f64.powf(snr_db / 10.0)
}

/// Adds white Gaussian noise so that `10·log10(P_signal / P_noise) = snr_db`.
///
/// Real-valued grids (imaginary parts exactly zero) get real noise; anything
/// else gets circularly symmetric complex noise with the same total power.
/// Deterministic for a given seed.
pub fn add_awgn(g: &ComplexGrid, snr_db: f64, seed: u64) -> Result<ComplexGrid> {
    if !snr_db.is_finite() {
        return Err(Error::InvalidParams(format!(
            "SNR must be finite, got {snr_db}; omit noise instead"
        )));
    }
    let var = noise_variance_for(g, snr_db);
    Ok(add_noise_with_variance(g, var, seed))
}

pub fn add_noise_with_variance(g: &ComplexGrid, var: f64, seed: u64) -> ComplexGrid {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let real = g.is_real(0.0);
    let sd = if real { var.sqrt() } else { (var / 2.0).sqrt() };
    let normal = Normal::new(0.0, sd).expect("finite non-negative deviation");
    g.map(|v| {
        if real {
            v + Complex64::new(normal.sample(&mut rng), 0.0)
        } else {
            v + Complex64::new(normal.sample(&mut rng), normal.sample(&mut rng))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{signals, Geometry};

    #[test]
    fn zero_db_noise_matches_signal_power() {
        let g = signals::g1_signal(Geometry::default());
        let noisy = add_awgn(&g, 0.0, 7).unwrap();
        let noise = noisy.sub(&g).unwrap();
        let ratio = noise.sum_sq() / g.sum_sq();
        assert!((ratio - 1.0).abs() < 0.02, "ratio {ratio}");
        assert!(noisy.is_real(0.0));
    }

    #[test]
    fn complex_noise_power() {
        let g = signals::chirp(&signals::ChirpSpec::f1(), Geometry::default());
        let noisy = add_awgn(&g, 3.0, 1).unwrap();
        let noise = noisy.sub(&g).unwrap();
        let snr = 10.0 * (g.sum_sq() / noise.sum_sq()).log10();
        assert!((snr - 3.0).abs() < 0.1, "snr {snr}");
    }

    #[test]
    fn seeded_noise_is_deterministic() {
        let g = signals::g2_signal(Geometry::square(32, 0.3));
        assert_eq!(add_awgn(&g, 0.0, 42).unwrap(), add_awgn(&g, 0.0, 42).unwrap());
        assert_ne!(add_awgn(&g, 0.0, 42).unwrap(), add_awgn(&g, 0.0, 43).unwrap());
    }

    #[test]
    fn infinite_snr_rejected() {
        let g = signals::g2_signal(Geometry::square(8, 0.3));
        assert!(add_awgn(&g, f64::INFINITY, 0).is_err());
    }
}
