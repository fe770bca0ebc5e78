//! Per-channel optimal filtering of a PNG (grayscale or RGB). Without an
//! argument a synthetic RGB test card is generated first.
//!
//! cargo run --release --example image_pipeline [input.png]

use nsfrft::apps::{ga_search, GaConfig, SearchSpace};
use nsfrft::grid::{io, metrics, noise, signals};
use nsfrft::{ComplexGrid, Geometry};

fn test_card(g: Geometry) -> Vec<ComplexGrid> {
    let rings = signals::newton_image(&signals::NewtonRings::default(), g, signals::NEWTON_PIXEL_PITCH);
    vec![
        rings.scale((0.25).into()),
        signals::coupled_gaussian_target(g),
        ComplexGrid::from_real(g, |x, y| 0.5 + 0.5 * (0.4 * x).sin() * (0.3 * y).cos()),
    ]
}

fn main() -> nsfrft::Result<()> {
    let out = std::env::temp_dir().join("nsfrft-examples");
    std::fs::create_dir_all(&out)?;
    let g = Geometry::default();
    let input = match std::env::args().nth(1) {
        Some(p) => p.into(),
        None => {
            let p = out.join("test_card.png");
            io::write_png(&p, &test_card(g))?;
            p
        }
    };
    let channels = io::read_png(&input, g.dx, g.dy)?;
    let config = GaConfig {
        population: 12,
        generations: 8,
        ..GaConfig::default()
    };
    let mut noisy_all = Vec::new();
    let mut filtered_all = Vec::new();
    for (i, clean) in channels.iter().enumerate() {
        let noisy = noise::add_awgn(clean, 0.0, 42 + i as u64)?;
        let var = noise::noise_variance_for(clean, 0.0);
        let r = ga_search(&noisy, clean, var, &SearchSpace::Full, &config)?;
        println!(
            "channel {i}: PSNR {:.2} → {:.2} dB, SSIM {:.3} → {:.3}",
            metrics::psnr(&noisy, clean)?,
            metrics::psnr(&r.filtered, clean)?,
            metrics::ssim(&noisy, clean)?,
            metrics::ssim(&r.filtered, clean)?
        );
        noisy_all.push(noisy);
        filtered_all.push(r.filtered);
    }
    io::write_png(out.join("pipeline_noisy.png"), &noisy_all)?;
    io::write_png(out.join("pipeline_filtered.png"), &filtered_all)?;
    println!("wrote {}", out.display());
    Ok(())
}
