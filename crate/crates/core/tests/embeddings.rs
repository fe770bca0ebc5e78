//! The separable FRFT, gyrator and coupled FRFT kernels, written out
//! independently, against the general kernel at their embedding points.

mod common;

use common::{coupled_kernel, gyrator_kernel, ratio_spread, separable_kernel, J};
use nsfrft::direct::kernel_value;
use nsfrft::params::{derive_coeffs, params_from_cfrft, params_from_gt, params_from_sfrft};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn points(rng: &mut ChaCha8Rng) -> Vec<[f64; 4]> {
    (0..50)
        .map(|_| std::array::from_fn(|_| rng.random_range(-3.0..3.0)))
        .collect()
}

#[test]
fn separable_frft_kernel_matches() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..10 {
        let (a1, a2) = (rng.random_range(0.2..3.0), rng.random_range(0.2..3.0));
        let c = derive_coeffs(&params_from_sfrft(a1, a2).unwrap()).unwrap();
        let pts = points(&mut rng);
        let ours: Vec<_> = pts.iter().map(|&[x, y, u, v]| kernel_value(&c, x, y, u, v)).collect();
        let theirs: Vec<_> = pts
            .iter()
            .map(|&[x, y, u, v]| separable_kernel(a1, a2, x, y, u, v))
            .collect();
        let (spread, r0) = ratio_spread(&ours, &theirs);
        assert!(spread < 1e-10, "α = ({a1}, {a2}): spread {spread:e}");
        // The two constants are square roots of numbers whose ratio is
        // e^{−j(α1+α2)}; only the branch of the product is free.
        let expect = (-J * (a1 + a2)).exp();
        assert!((r0 * r0 - expect).norm() < 1e-10, "ratio² = {}", r0 * r0);
    }
}

#[test]
fn gyrator_kernel_matches() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..10 {
        let phi = rng.random_range(0.2..3.0);
        let c = derive_coeffs(&params_from_gt(phi).unwrap()).unwrap();
        let pts = points(&mut rng);
        let ours: Vec<_> = pts.iter().map(|&[x, y, u, v]| kernel_value(&c, x, y, u, v)).collect();
        let theirs: Vec<_> = pts
            .iter()
            .map(|&[x, y, u, v]| gyrator_kernel(phi, x, y, u, v))
            .collect();
        let (spread, r0) = ratio_spread(&ours, &theirs);
        assert!(spread < 1e-10, "φ = {phi}: spread {spread:e}");
        assert!((r0 - 1.0).norm() < 1e-10, "ratio = {r0}");
    }
}

#[test]
fn coupled_frft_kernel_matches() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let (al, be): (f64, f64) = (rng.random_range(0.2..3.0), rng.random_range(0.2..3.0));
        if (0.5 * (al + be)).sin().abs() < 0.1 {
            continue;
        }
        let c = derive_coeffs(&params_from_cfrft(al, be).unwrap()).unwrap();
        let pts = points(&mut rng);
        let ours: Vec<_> = pts.iter().map(|&[x, y, u, v]| kernel_value(&c, x, y, u, v)).collect();
        let theirs: Vec<_> = pts
            .iter()
            .map(|&[x, y, u, v]| coupled_kernel(al, be, x, y, u, v))
            .collect();
        let (spread, r0) = ratio_spread(&ours, &theirs);
        assert!(spread < 1e-10, "(α, β) = ({al}, {be}): spread {spread:e}");
        // d(γ) carries e^{jγ}/sin γ where the general constant has 1/|sin γ|.
        let gamma = 0.5 * (al + be);
        let expect = (-J * gamma).exp() * gamma.sin().signum();
        assert!((r0 - expect).norm() < 1e-10, "ratio = {r0}, expected {expect}");
    }
}
