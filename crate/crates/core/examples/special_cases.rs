//! The separable FRFT, the gyrator and the coupled FRFT as points of the
//! parameter sphere, and the quaternion structure of the 4D rotation.

use nsfrft::params::{self, quaternion_factorize, rotation4_from_params};
use nsfrft::ParamSet;
use std::f64::consts::FRAC_PI_2;

fn show(name: &str, p: &ParamSet) -> nsfrft::Result<()> {
    let r = rotation4_from_params(p);
    let q = quaternion_factorize(&r)?;
    println!(
        "{name:<18} (a,b,c,d,θ) = {:?}\n{:<18} T = {:+.4}, |R − L·R'| = {:.1e}, left {:?}, right {:?}",
        p.as_array().map(|v| (v * 1e4).round() / 1e4),
        "",
        p.t(),
        q.rotation().max_abs_diff(&r),
        q.left.map(|v| (v * 1e4).round() / 1e4),
        q.right.map(|v| (v * 1e4).round() / 1e4),
    );
    Ok(())
}

fn main() -> nsfrft::Result<()> {
    show("Fourier", &ParamSet::fourier())?;
    show("SFRFT(0.9, 0.4)", &params::params_from_sfrft(0.9, 0.4)?)?;
    show("SFRFT(π/2, π/2)", &params::params_from_sfrft(FRAC_PI_2, FRAC_PI_2)?)?;
    show("gyrator(0.7)", &params::params_from_gt(0.7)?)?;
    show("CFRFT(1.1, 0.3)", &params::params_from_cfrft(1.1, 0.3)?)?;
    show("published set", &params::published::accuracy1())?;
    Ok(())
}
