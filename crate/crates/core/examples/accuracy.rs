//! Fast algorithms against the direct Riemann sum on the two Hermite–Gaussian
//! test inputs, with timings.
//!
//! cargo run --release --example accuracy

use nsfrft::grid::{metrics, signals};
use nsfrft::params::published;
use nsfrft::{direct, fast, Algorithm, Geometry};
use std::time::Instant;

fn main() -> nsfrft::Result<()> {
    let g = Geometry::default();
    for (set, p) in [("set 1", published::accuracy1()), ("set 2", published::accuracy2())] {
        for (name, f) in [("g1", signals::g1_signal(g)), ("g2", signals::g2_signal(g))] {
            let t = Instant::now();
            let reference = direct::nsfrft_direct(&p, &f, g)?;
            let t_direct = t.elapsed().as_secs_f64();
            print!("{set} {name}: direct {t_direct:.2}s");
            for alg in [Algorithm::I, Algorithm::II] {
                let t = Instant::now();
                let out = fast::nsfrft_fast(&p, &f, alg)?;
                let secs = t.elapsed().as_secs_f64();
                let err = metrics::nmse_ac(&out, &reference)?;
                print!(" | {alg:?} {secs:.4}s NMSE {err:.3e}");
            }
            println!();
        }
    }
    Ok(())
}
