//! Analytic properties of the transform checked on sampled grids.

use nsfrft::analysis::{interior_points, verify_wd_rotation, wigner_geometry};
use nsfrft::direct::{kernel_value, nsfrft_direct, nsfrft_inverse_direct, unitary_output_spacing};
use nsfrft::fast::{self, fourier2d, Algorithm, Direction};
use nsfrft::grid::{metrics, signals, ComplexGrid, Geometry};
use nsfrft::linalg::Mat2;
use nsfrft::params::{self, derive_coeffs, published, DerivedCoeffs, ParamSet};
use nsfrft::selftest;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const J: Complex64 = Complex64::new(0.0, 1.0);

/// `Σ f(x,y)·K(x,y,u,v)·dx·dy` at one output point.
fn transform_at(c: &DerivedCoeffs, f: &ComplexGrid, u: f64, v: f64) -> Complex64 {
    let g = f.geometry();
    let mut s = Complex64::new(0.0, 0.0);
    for m in 0..g.rows {
        for n in 0..g.cols {
            s += f.get(m, n) * kernel_value(c, g.x(m), g.y(n), u, v);
        }
    }
    s * g.cell()
}

fn quad(m: &Mat2, a: [f64; 2], b: [f64; 2]) -> f64 {
    let mb = m.apply(b);
    a[0] * mb[0] + a[1] * mb[1]
}

fn chirp_matrices(c: &DerivedCoeffs) -> (Mat2, Mat2) {
    (
        Mat2::new(c.p1, 0.5 * c.p2, 0.5 * c.p2, c.p3),
        Mat2::new(c.k1, 0.5 * c.k2, 0.5 * c.k2, c.k3),
    )
}

fn relative_error(a: &[Complex64], b: &[Complex64]) -> f64 {
    let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum();
    num / b.iter().map(|y| y.norm_sqr()).sum::<f64>()
}

#[test]
fn oversampled_direct_and_closed_form_agree_with_fast() {
    for check in selftest::oracle_agreement(6, 11) {
        println!("{check}");
        assert!(check.passed, "{check}");
    }
}

#[test]
fn fourier_point_is_minus_j_times_fourier() {
    let g = Geometry::self_dual(64);
    let f = signals::g2_signal(g);
    let ours = fast::nsfrft_fast(&ParamSet::fourier(), &f, Algorithm::II).unwrap();
    let reference = fourier2d(&f, Direction::Forward).scale(-J);
    assert!(metrics::nmse(&ours, &reference).unwrap() < 1e-24);
    let h = signals::hermite_gaussian_2d(2, 1, g);
    let direct = nsfrft_direct(&ParamSet::fourier(), &h, g).unwrap();
    let fft = fast::nsfrft_fast(&ParamSet::fourier(), &h, Algorithm::II).unwrap();
    assert!(metrics::nmse(&fft, &direct).unwrap() < 1e-24);
}

/// Hermite–Gaussians are eigenfunctions: `ψ_mn ↦ (−j)^{m+n+1}·ψ_mn` once
/// the kernel's `1/√(−1) = −j` is included.
#[test]
fn hermite_gaussians_are_eigenfunctions_at_the_fourier_point() {
    let g = Geometry::self_dual(64);
    for (m, n) in [(0, 0), (1, 0), (2, 1), (3, 3)] {
        let h = signals::hermite_gaussian_2d(m, n, g);
        let out = fast::nsfrft_fast(&ParamSet::fourier(), &h, Algorithm::II).unwrap();
        let expect = h.scale((-J).powu(m as u32 + n as u32 + 1));
        let e = metrics::nmse(&out, &expect).unwrap();
        assert!(e < 1e-20, "ψ_{m}{n}: {e:e}");
    }
}

/// Two quarter turns are the parity operator with an extra sign: the
/// metaplectic lift of `−I`.
#[test]
fn two_fourier_steps_give_negated_parity() {
    let g = Geometry::self_dual(64);
    let f = ComplexGrid::from_fn(g, |x, y| {
        (-(x - 1.3).powi(2) - 0.5 * (y + 0.8).powi(2)).exp() * (J * 0.7 * x).exp()
    });
    let p = ParamSet::fourier();
    let twice = fast::nsfrft_fast(&p, &fast::nsfrft_fast(&p, &f, Algorithm::II).unwrap(), Algorithm::II)
        .unwrap();
    let n = g.rows;
    let mut parity = ComplexGrid::zeros(g);
    for i in 0..n {
        for k in 0..n {
            parity.set(i, k, -f.get((n - i) % n, (n - k) % n));
        }
    }
    assert!(metrics::nmse(&twice, &parity).unwrap() < 1e-24);
}

#[test]
fn inverse_undoes_forward_for_random_parameters() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let g = Geometry::self_dual(48);
    let f = signals::g1_signal(g);
    for _ in 0..20 {
        let p = params::random_params_with_t(&mut rng, 0.05);
        let big = fast::nsfrft_fast(&p, &f, Algorithm::II).unwrap();
        let back = fast::nsfrft_fast_inverse(&p, &big, Algorithm::II).unwrap();
        assert!(metrics::nmse_re(&back, &f).unwrap() < 1e-20);
    }
}

#[test]
fn direct_sum_is_linear() {
    let g = Geometry::square(24, 0.4);
    let p = published::accuracy2();
    let (f, h) = (signals::g1_signal(g), signals::hermite_gaussian_2d(1, 2, g));
    let (a, b) = (Complex64::new(0.3, -1.2), Complex64::new(-2.0, 0.5));
    let lhs = nsfrft_direct(&p, &f.scale(a).add(&h.scale(b)).unwrap(), g).unwrap();
    let rhs = nsfrft_direct(&p, &f, g)
        .unwrap()
        .scale(a)
        .add(&nsfrft_direct(&p, &h, g).unwrap().scale(b))
        .unwrap();
    assert!(metrics::nmse(&lhs, &rhs).unwrap() < 1e-26);
}

#[test]
fn direct_round_trip_at_the_fourier_point() {
    let g = Geometry::self_dual(64);
    let f = signals::hermite_gaussian_2d(0, 0, g);
    let p = ParamSet::fourier();
    let back = nsfrft_inverse_direct(&p, &nsfrft_direct(&p, &f, g).unwrap(), g).unwrap();
    assert!(metrics::nmse_re(&back, &f).unwrap() < 1e-3);
}

/// Holds on the input geometry for parameter sets whose input chirp the
/// grid resolves; a wider output window would pick up periodic replicas
/// of the sum.
#[test]
fn direct_sum_conserves_energy_of_contained_inputs() {
    let g = Geometry::default();
    let f = signals::g1_signal(g);
    for p in [published::accuracy1(), published::accuracy2()] {
        let big = nsfrft_direct(&p, &f, g).unwrap();
        let rel = (big.energy() - f.energy()).abs() / f.energy();
        assert!(rel < 0.01, "relative energy change {rel}");
    }
}

/// The Gram matrix of the sampled kernel is the identity whenever the
/// bilinear phase maps the sampling lattice onto its DFT dual.
#[test]
fn sampled_kernel_is_orthonormal_on_dual_lattices() {
    let n = 16;
    let dx = (2.0 * std::f64::consts::PI / n as f64).sqrt();
    let g = Geometry::square(n, dx);
    let cases = [
        ParamSet::fourier(),
        params::params_from_sfrft(1.0, 1.0).unwrap(),
        params::params_from_gt(0.8).unwrap(),
        params::params_from_sfrft(1.2, 0.7).unwrap(),
    ];
    for p in cases {
        let c = derive_coeffs(&p).unwrap();
        let tau = 2.0 * std::f64::consts::PI * c.t.abs() / (dx * n as f64);
        let mx = c.m1.abs().max(c.m2.abs());
        let my = c.m3.abs().max(c.m4.abs());
        // Per-axis spacing; equal to the scalar rule when |m| agree.
        let out = Geometry::new(n, n, tau / mx, tau / my).unwrap();
        if (mx - my).abs() < 1e-12 {
            let du = unitary_output_spacing(&p, dx, n).unwrap();
            assert!((du - out.dx).abs() < 1e-12);
        }
        let columns: Vec<ComplexGrid> = (0..n * n)
            .map(|k| {
                let mut e = ComplexGrid::zeros(g);
                e.values_mut()[k] = Complex64::new(1.0, 0.0);
                nsfrft_direct(&p, &e, out).unwrap()
            })
            .collect();
        let scale = out.cell() / g.cell();
        let mut worst = 0.0f64;
        for i in 0..n * n {
            for k in i..n * n {
                let v: Complex64 = columns[i]
                    .values()
                    .iter()
                    .zip(columns[k].values())
                    .map(|(a, b)| a.conj() * b)
                    .sum::<Complex64>()
                    * scale;
                let target = if i == k { 1.0 } else { 0.0 };
                worst = worst.max((v - target).norm());
            }
        }
        assert!(worst < 0.1, "{p:?}: Gram defect {worst}");
    }
}

fn contained_test_signal() -> ComplexGrid {
    signals::hermite_gaussian_2d(1, 2, Geometry::square(48, 0.35))
}

/// `F[f(· − τ)](u) = e^{jφ(u)}·F[f](u + M⁻¹Pτ)` with
/// `φ = (½τᵀPτ + τᵀMu − uᵀKδ − ½δᵀKδ)/T`, obtained by substituting
/// `x → x + τ` in the kernel.
#[test]
fn shift_becomes_phase_and_offset() {
    let f = contained_test_signal();
    let g = *f.geometry();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for p in [published::accuracy1(), published::encryption(), params::params_from_gt(0.6).unwrap()] {
        let c = derive_coeffs(&p).unwrap();
        let (pm, km) = chirp_matrices(&c);
        let m = c.m_matrix();
        let (bx, by) = (rng.random_range(-3..=3), rng.random_range(-3..=3));
        let tau = [bx as f64 * g.dx, by as f64 * g.dy];
        let shifted = ComplexGrid::from_real(g, |x, y| {
            signals::hermite_psi(1, x - tau[0]) * signals::hermite_psi(2, y - tau[1])
        });
        let delta = m.inverse().unwrap().apply(pm.apply(tau));
        let (mut lhs, mut rhs) = (Vec::new(), Vec::new());
        for _ in 0..30 {
            let u = [rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0)];
            let phase = (0.5 * quad(&pm, tau, tau) + quad(&m, tau, u)
                - quad(&km, u, delta)
                - 0.5 * quad(&km, delta, delta))
                / c.t;
            lhs.push(transform_at(&c, &shifted, u[0], u[1]));
            rhs.push(
                (J * phase).exp() * transform_at(&c, &f, u[0] + delta[0], u[1] + delta[1]),
            );
        }
        let e = relative_error(&lhs, &rhs);
        assert!(e < 1e-2, "shift ({bx}, {by}) bins: {e:e}");
    }
}

/// `F[e^{jnᵀx}f](u) = e^{−j(uᵀKδ + ½δᵀKδ)/T}·F[f](u + δ)` with `δ = T·M⁻¹n`.
#[test]
fn modulation_becomes_phase_and_offset() {
    let f = contained_test_signal();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for p in [published::accuracy2(), published::reversibility()] {
        let c = derive_coeffs(&p).unwrap();
        let (_, km) = chirp_matrices(&c);
        let nvec = [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)];
        let modulated = f.zip_map(&ComplexGrid::from_fn(*f.geometry(), |x, y| {
            (J * (nvec[0] * x + nvec[1] * y)).exp()
        }), |a, b| a * b)
        .unwrap();
        let delta = c.m_matrix().inverse().unwrap().apply(nvec).map(|v| v * c.t);
        let (mut lhs, mut rhs) = (Vec::new(), Vec::new());
        for _ in 0..30 {
            let u = [rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0)];
            let phase = -(quad(&km, u, delta) + 0.5 * quad(&km, delta, delta)) / c.t;
            lhs.push(transform_at(&c, &modulated, u[0], u[1]));
            rhs.push((J * phase).exp() * transform_at(&c, &f, u[0] + delta[0], u[1] + delta[1]));
        }
        let e = relative_error(&lhs, &rhs);
        assert!(e < 1e-2, "modulation {nvec:?}: {e:e}");
    }
}

#[test]
fn matched_chirp_collapses_under_direct_sum() {
    let g = Geometry::square(128, 0.1772);
    for p in [published::chirp1(), published::chirp2()] {
        let f = signals::matched_chirp_for(&p, g).unwrap();
        let big = nsfrft_direct(&p, &f, g).unwrap();
        let peak = big.argmax_abs();
        let peak_energy = big.get(peak.0, peak.1).norm_sqr();
        let mean_off = (big.sum_sq() - peak_energy) / (g.len() - 1) as f64;
        assert_eq!(peak, (g.rows / 2, g.cols / 2));
        assert!(peak_energy >= 50.0 * mean_off, "ratio {}", peak_energy / mean_off);
    }
}

/// At the Fourier point the rotation is exact on the sampled grid, so the
/// deviation is pure discretization and shrinks as the grid refines.
#[test]
fn wigner_rotation_at_the_fourier_point() {
    let points = interior_points(200, 1.5, 3);
    let mut last = f64::INFINITY;
    for n in [16, 24, 32] {
        let g = wigner_geometry(n);
        let f = signals::hermite_gaussian_2d(0, 0, g);
        let r = verify_wd_rotation(&ParamSet::fourier(), &f, &points).unwrap();
        assert!(r.max_relative_deviation < 0.05, "N = {n}: {}", r.max_relative_deviation);
        assert!(r.max_relative_deviation <= last + 1e-12, "N = {n}: not decreasing");
        last = r.max_relative_deviation;
    }
}

#[test]
fn wigner_rotation_for_coupled_parameters() {
    let points = interior_points(200, 1.5, 4);
    let g = wigner_geometry(32);
    let f = signals::hermite_gaussian_2d(0, 0, g);
    for p in [published::accuracy1(), published::encryption()] {
        let r = verify_wd_rotation(&p, &f, &points).unwrap();
        assert!(r.max_relative_deviation < 0.1, "{}", r.max_relative_deviation);
    }
}
