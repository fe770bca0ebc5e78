//! A chirp whose quadratic phase matches the kernel collapses to a point;
//! linear phase terms move the point to a predictable bin.

use nsfrft::analysis::{block_energy, impulse_report};
use nsfrft::grid::signals::{self, ChirpSpec};
use nsfrft::params::published;
use nsfrft::{direct, Geometry, ParamSet};

fn main() -> nsfrft::Result<()> {
    let g = Geometry::default();
    for (name, p, spec) in [
        ("f1 / P1", published::chirp1(), ChirpSpec::f1()),
        ("f2 / P2", published::chirp2(), ChirpSpec::f2()),
        ("f3 / P3", published::chirp3(), ChirpSpec::f3()),
    ] {
        let f = signals::chirp(&spec, g);
        let big = direct::nsfrft_direct(&p, &f, g)?;
        let r = impulse_report(&p, &big, spec.lx, spec.ly)?;
        let ft = direct::nsfrft_direct(&ParamSet::fourier(), &f, g)?;
        let ft_share = block_energy(&ft, ft.argmax_abs(), 1) / ft.sum_sq();
        println!(
            "{name}: peak {:?}, predicted {:?}, 3×3 share {:.1}% (Fourier point: {:.2}%)",
            r.peak_index,
            r.predicted_index,
            100.0 * r.neighborhood_fraction,
            100.0 * ft_share
        );
    }
    Ok(())
}
