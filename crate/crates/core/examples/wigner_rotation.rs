//! The transform rotates the Wigner distribution in (x, y, u, v): compare
//! W of the output with W of the input at rotated coordinates.

use nsfrft::analysis::{interior_points, verify_wd_rotation, wigner_geometry};
use nsfrft::grid::signals;
use nsfrft::params::published;
use nsfrft::{ComplexGrid, ParamSet};
use num_complex::Complex64;

fn main() -> nsfrft::Result<()> {
    let points = interior_points(20, 2.0, 7);
    for n in [16, 24, 32] {
        let g = wigner_geometry(n);
        let centered = signals::hermite_gaussian_2d(0, 0, g);
        // Displaced and modulated, so the check is not rotation invariant.
        let coherent = ComplexGrid::from_fn(g, |x, y| {
            let r2 = (x - 0.7f64).powi(2) + (y + 0.4f64).powi(2);
            Complex64::from_polar((-r2 / 2.0).exp(), 0.8 * x - 0.5 * y)
        });
        for (name, p) in [
            ("Fourier", ParamSet::fourier()),
            ("set 1", published::accuracy1()),
            ("encryption", published::encryption()),
        ] {
            let a = verify_wd_rotation(&p, &centered, &points)?;
            let b = verify_wd_rotation(&p, &coherent, &points)?;
            println!(
                "N={n:<2} {name:<10} ψ0: max {:.2}%  coherent: max {:.2}%",
                100.0 * a.max_relative_deviation,
                100.0 * b.max_relative_deviation
            );
        }
    }
    Ok(())
}
