//! Wiener filtering of noisy Gaussians in the transform domain, with the
//! parameters chosen by a genetic search and compared against the Fourier
//! domain.
//!
//! cargo run --release --example optimal_filter [generations]

use nsfrft::apps::{ga_search, GaConfig, SearchSpace};
use nsfrft::grid::{metrics, noise, signals};
use nsfrft::{Geometry, ParamSet};

fn main() -> nsfrft::Result<()> {
    let generations = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(50);
    let config = GaConfig {
        generations,
        ..GaConfig::default()
    };
    let g = Geometry::default();
    for (name, clean) in [
        ("separable", signals::gaussian_target(g)),
        ("coupled", signals::coupled_gaussian_target(g)),
    ] {
        for snr in [-5.0, 0.0, 5.0] {
            let noisy = noise::add_awgn(&clean, snr, 42)?;
            let var = noise::noise_variance_for(&clean, snr);
            let ft = ga_search(&noisy, &clean, var, &SearchSpace::Point(ParamSet::fourier()), &config)?;
            let best = ga_search(&noisy, &clean, var, &SearchSpace::Full, &config)?;
            println!(
                "{name:<9} SNR {snr:+} dB  log10 MSE: noisy {:.3}  Fourier {:.4}  searched {:.4}  SSIM {:.3}  at {:?}",
                metrics::mse(&noisy, &clean)?.log10(),
                ft.mse.log10(),
                best.mse.log10(),
                metrics::ssim(&best.filtered, &clean)?,
                best.params.as_array().map(|v| (v * 1e4).round() / 1e4),
            );
        }
    }
    Ok(())
}
