//! Wall-clock comparison of the direct sum and both fast algorithms.
//!
//! cargo run --release --example benchmark [sizes, default 64,128,200]

use nsfrft::grid::{metrics, signals};
use nsfrft::params::published;
use nsfrft::{direct, fast, Algorithm, Geometry};
use std::time::Instant;

fn main() -> nsfrft::Result<()> {
    let sizes: Vec<usize> = std::env::args()
        .nth(1)
        .map(|s| s.split(',').filter_map(|v| v.parse().ok()).collect())
        .unwrap_or_else(|| vec![64, 128, 200]);
    let p = published::accuracy1();
    println!("{:>5} {:>10} {:>10} {:>10} {:>8} {:>11}", "N", "direct s", "fast1 s", "fast2 s", "speedup", "fast2 NMSE");
    for n in sizes {
        let g = Geometry::self_dual(n);
        let f = signals::g1_signal(g);
        let t = Instant::now();
        let reference = direct::nsfrft_direct(&p, &f, g)?;
        let td = t.elapsed().as_secs_f64();
        let t = Instant::now();
        fast::nsfrft_fast(&p, &f, Algorithm::I)?;
        let t1 = t.elapsed().as_secs_f64();
        let t = Instant::now();
        let out = fast::nsfrft_fast(&p, &f, Algorithm::II)?;
        let t2 = t.elapsed().as_secs_f64();
        println!(
            "{n:>5} {td:>10.4} {t1:>10.5} {t2:>10.5} {:>7.0}× {:>11.3e}",
            td / t2,
            metrics::nmse_ac(&out, &reference)?
        );
    }
    Ok(())
}
