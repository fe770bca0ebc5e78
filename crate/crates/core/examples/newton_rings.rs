//! Denoising a simulated Newton fringe pattern with the searched Wiener
//! filter.

use nsfrft::apps::{ga_search, GaConfig, SearchSpace};
use nsfrft::grid::{io, metrics, noise, signals};
use nsfrft::{Geometry, ParamSet};

fn main() -> nsfrft::Result<()> {
    let out = std::env::temp_dir().join("nsfrft-examples");
    std::fs::create_dir_all(&out)?;
    let g = Geometry::default();
    let clean = signals::newton_image(&signals::NewtonRings::default(), g, signals::NEWTON_PIXEL_PITCH);
    let config = GaConfig {
        generations: 20,
        ..GaConfig::default()
    };
    for snr in [-5.0, 0.0, 5.0] {
        let noisy = noise::add_awgn(&clean, snr, 42)?;
        let var = noise::noise_variance_for(&clean, snr);
        let ft = ga_search(&noisy, &clean, var, &SearchSpace::Point(ParamSet::fourier()), &config)?;
        let best = ga_search(&noisy, &clean, var, &SearchSpace::Full, &config)?;
        println!("SNR {snr:+} dB");
        for (name, img) in [("noisy", &noisy), ("Fourier", &ft.filtered), ("searched", &best.filtered)] {
            println!(
                "  {name:<9} log10 MSE {:.4}  PSNR {:.2} dB  SSIM {:.4}",
                metrics::mse(img, &clean)?.log10(),
                metrics::psnr(img, &clean)?,
                metrics::ssim(img, &clean)?
            );
        }
        if snr == 0.0 {
            io::write_png(out.join("rings_noisy.png"), std::slice::from_ref(&noisy))?;
            io::write_png(out.join("rings_filtered.png"), std::slice::from_ref(&best.filtered))?;
        }
    }
    println!("images written to {}", out.display());
    Ok(())
}
