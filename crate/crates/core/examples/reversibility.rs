//! Forward transform followed by the inverse, for each evaluator.

use nsfrft::grid::{metrics, signals};
use nsfrft::params::published;
use nsfrft::{direct, fast, Algorithm, Geometry};

fn main() -> nsfrft::Result<()> {
    let g = Geometry::default();
    let f = signals::g2_signal(g);
    let p = published::reversibility();
    println!("T = {:.4}", p.t());

    for alg in [Algorithm::I, Algorithm::II] {
        let big = fast::nsfrft_fast(&p, &f, alg)?;
        let back = fast::nsfrft_fast_inverse(&p, &big, alg)?;
        println!("{alg:?}: NMSE_re {:.3e}", metrics::nmse_re(&back, &f)?);
    }

    // The direct sum samples the kernel as given; at this |T| its output
    // carries periodic replicas, which the inverse sum cannot undo.
    let big = direct::nsfrft_direct(&p, &f, g)?;
    let back = direct::nsfrft_inverse_direct(&p, &big, g)?;
    println!("direct: NMSE_re {:.3e}", metrics::nmse_re(&back, &f)?);
    let du = direct::unitary_output_spacing(&p, g.dx, g.rows)?;
    let out = Geometry::square(g.rows, du);
    let back = direct::nsfrft_inverse_direct(&p, &direct::nsfrft_direct(&p, &f, out)?, g)?;
    println!("direct, output spacing {du:.4}: NMSE_re {:.3e}", metrics::nmse_re(&back, &f)?);
    Ok(())
}
