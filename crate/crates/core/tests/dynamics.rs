use std::f64::consts::PI;

use num_complex::Complex64;
use rsbivector::dynamics::{
    evolve_with_current, step_rk4_fd, step_vacuum_spectral, wave_equation_residual, EvolutionConfig, FdOrder,
    FourCurrentSource, GaussianPulse, NoCurrent, SolenoidalCurrent, TrigField,
};
use rsbivector::field::{Bivector, Handedness, PlaneWaveSpec};
use rsbivector::grid::FieldGrid;
use rsbivector::spectral::Spectral;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn lattice_wave(n: usize, h: f64, m: [i32; 3], hand: Handedness, amp: f64) -> PlaneWaveSpec {
    let base = 2.0 * PI / (n as f64 * h);
    PlaneWaveSpec::new(m.map(|v| v as f64 * base), hand, amp).unwrap()
}

fn superposition(n: usize, h: f64) -> FieldGrid {
    let waves = [
        lattice_wave(n, h, [1, 0, 0], Handedness::Right, 1.0),
        lattice_wave(n, h, [0, 2, -1], Handedness::Left, 0.5),
        lattice_wave(n, h, [3, -1, 2], Handedness::Right, 0.25),
    ];
    FieldGrid::from_fn(n, h, |x| {
        let p = [0.0, x[0], x[1], x[2]];
        Bivector(waves.iter().map(|w| rsbivector::field::plane_wave(w, &p).0).sum())
    })
    .unwrap()
}

#[test]
fn spectral_energy_and_divergence_over_thousand_steps() {
    let (n, h) = (32, 0.25);
    let g = superposition(n, h);
    let cfg = EvolutionConfig::spectral(0.05, 1000);
    let (_, log) = evolve_with_current(&g, &NoCurrent, &cfg).unwrap();
    let e0 = log.records()[0].energy;
    let drift = log.records().iter().map(|r| (r.energy - e0).abs() / e0).fold(0.0, f64::max);
    assert!(drift <= 1e-12, "energy drift {drift:e}");
    assert!(log.max_div_b() <= 1e-12, "div B {:e}", log.max_div_b());
}

/// Exact solution of the semi-discrete system `∂ₜΨ = −i∇_fd×Ψ` for a single
/// lattice mode: rotation about the modified wavevector.
fn semi_discrete(n: usize, h: f64, m: [i32; 3], amp: [Complex64; 3], order: FdOrder, t: f64) -> FieldGrid {
    let base = 2.0 * PI / (n as f64 * h);
    let k = m.map(|v| v as f64 * base);
    let keff = k.map(|kk| match order {
        FdOrder::Second => (kk * h).sin() / h,
        FdOrder::Fourth => (8.0 * (kk * h).sin() - (2.0 * kk * h).sin()) / (6.0 * h),
    });
    let kn = (keff[0] * keff[0] + keff[1] * keff[1] + keff[2] * keff[2]).sqrt();
    let u = keff.map(|v| v / kn);
    let (s, co) = (kn * t).sin_cos();
    let dot = u[0] * amp[0] + u[1] * amp[1] + u[2] * amp[2];
    let cross = [
        amp[2] * u[1] - amp[1] * u[2],
        amp[0] * u[2] - amp[2] * u[0],
        amp[1] * u[0] - amp[0] * u[1],
    ];
    // d/dt v = keff × v, so the cross term enters with + sin
    let v: [Complex64; 3] = std::array::from_fn(|i| amp[i] * co + cross[i] * s + dot * u[i] * (1.0 - co));
    FieldGrid::from_fn(n, h, |x| {
        let ph = Complex64::from_polar(1.0, k[0] * x[0] + k[1] * x[1] + k[2] * x[2]);
        Bivector(nalgebra::Vector3::new(v[0] * ph, v[1] * ph, v[2] * ph))
    })
    .unwrap()
}

#[test]
fn semi_discrete_oracle_is_consistent() {
    // at t = 0 the oracle reproduces the data, and for tiny t its derivative is −i curl_fd
    let (n, h) = (8, 0.5);
    let amp = [c(1.0, 0.0), c(0.0, 1.0), c(0.0, 0.0)];
    let m = [0, 0, 1];
    let g0 = semi_discrete(n, h, m, amp, FdOrder::Fourth, 0.0);
    let e = 1e-6;
    let gp = semi_discrete(n, h, m, amp, FdOrder::Fourth, e);
    let gm = semi_discrete(n, h, m, amp, FdOrder::Fourth, -e);
    let curl = rsbivector::dynamics::curl_fd(&g0, FdOrder::Fourth);
    for i in 0..g0.len() {
        let d = (gp.data()[i].0 - gm.data()[i].0) / c(2.0 * e, 0.0);
        assert!((d + curl.data()[i].0 * c(0.0, 1.0)).norm() < 1e-8);
    }
}

fn rk4_error(dt: f64, t_end: f64, order: FdOrder) -> f64 {
    let (n, h) = (16, 0.5);
    let m = [1, 2, -1];
    let amp = [c(0.3, 0.1), c(-0.2, 0.5), c(0.4, -0.3)];
    let mut g = semi_discrete(n, h, m, amp, order, 0.0);
    let steps = (t_end / dt).round() as usize;
    for _ in 0..steps {
        g = step_rk4_fd(&g, dt, order).unwrap();
    }
    g.max_abs_diff(&semi_discrete(n, h, m, amp, order, t_end)).unwrap()
}

#[test]
fn rk4_temporal_order_is_four() {
    for order in [FdOrder::Second, FdOrder::Fourth] {
        let e1 = rk4_error(0.2, 4.0, order);
        let e2 = rk4_error(0.1, 4.0, order);
        let e3 = rk4_error(0.05, 4.0, order);
        for (a, b) in [(e1, e2), (e2, e3)] {
            let ratio = a / b;
            let p = ratio.log2();
            assert!((p - 4.0).abs() <= 0.3, "{order:?}: order {p} ({a:e} -> {b:e})");
            assert!((12.0..=20.0).contains(&ratio));
        }
    }
}

#[test]
fn schemes_agree_to_discretization_error() {
    let (n, h) = (16, 0.25);
    let w = lattice_wave(n, h, [1, 0, 1], Handedness::Left, 1.0);
    let g0 = FieldGrid::sample(n, h, &w, 0.0).unwrap();
    let exact = FieldGrid::sample(n, h, &w, 0.5).unwrap();
    let spectral = step_vacuum_spectral(&g0, 0.5);
    let mut fd2 = g0.clone();
    let mut fd4 = g0.clone();
    for _ in 0..50 {
        fd2 = step_rk4_fd(&fd2, 0.01, FdOrder::Second).unwrap();
        fd4 = step_rk4_fd(&fd4, 0.01, FdOrder::Fourth).unwrap();
    }
    let e_sp = spectral.max_abs_diff(&exact).unwrap();
    let e2 = fd2.max_abs_diff(&exact).unwrap();
    let e4 = fd4.max_abs_diff(&exact).unwrap();
    assert!(e_sp <= 1e-12);
    assert!(e4 < e2 && e2 < 0.05, "{e2} {e4}");
}

fn pulse(length: f64) -> GaussianPulse {
    GaussianPulse {
        profile: TrigField::lattice(
            length,
            &[([1, 0, 0], [0.8, 0.0, 0.3], 0.2), ([0, 1, -1], [0.1, 0.5, 0.2], -0.7), ([2, 1, 0], [0.0, 0.0, 0.4], 1.1)],
        ),
        center: 1.0,
        width: 0.3,
    }
}

#[test]
fn gaussian_pulse_respects_gauss_law() {
    let (n, h) = (32, 0.25);
    let g = superposition(n, h);
    let src = pulse(n as f64 * h);
    let cfg = EvolutionConfig::spectral(0.02, 150);
    let (end, log) = evolve_with_current(&g, &src, &cfg).unwrap();
    assert!(log.max_gauss_residual() <= 1e-6, "gauss {:e}", log.max_gauss_residual());
    assert!(log.max_div_b() <= 1e-12);
    // the pulse leaves charge behind: ∇·E at the end equals the accumulated ρ
    let div = Spectral::for_grid(&end).divergence(&end);
    let rho_max = (0..end.len()).map(|i| src.charge(end.position(i), 3.0).abs()).fold(0.0, f64::max);
    let div_max = div.iter().map(|z| z.re.abs()).fold(0.0, f64::max);
    assert!(rho_max > 0.1 && (div_max - rho_max).abs() < 1e-6);
}

#[test]
fn rk4_pulse_gauss_residual_bounded_by_scheme_error() {
    let (n, h) = (16, 0.5);
    let g = superposition(n, h);
    let src = pulse(n as f64 * h);
    let (_, log) = evolve_with_current(&g, &src, &EvolutionConfig::rk4(0.05, 60, FdOrder::Fourth)).unwrap();
    let residual = log.max_gauss_residual();
    assert!(residual > 0.0 && residual < 0.05, "{residual:e}");
}

#[test]
fn solenoidal_source_keeps_gauss_residual_tiny() {
    let (n, h) = (32, 0.25);
    let g = superposition(n, h);
    let src = SolenoidalCurrent {
        potential: TrigField::lattice(n as f64 * h, &[([1, 1, 0], [0.0, 0.3, 0.6], 0.1), ([0, 0, 2], [1.0, -0.5, 0.0], 0.0)]),
    };
    let (end, log) = evolve_with_current(&g, &src, &EvolutionConfig::spectral(0.05, 100)).unwrap();
    assert!(log.max_gauss_residual() <= 1e-10, "{:e}", log.max_gauss_residual());
    assert!(end.max_abs_diff(&g).unwrap() > 1e-3);
}

#[test]
fn wave_equation_residual_shrinks_with_dt() {
    let (n, h) = (16, 0.5);
    let w = lattice_wave(n, h, [1, 1, 0], Handedness::Right, 1.0);
    let residual = |dt: f64| {
        let snaps = [-dt, 0.0, dt].map(|t| FieldGrid::sample(n, h, &w, 0.7 + t).unwrap());
        wave_equation_residual([&snaps[0], &snaps[1], &snaps[2]], dt).unwrap()
    };
    let (r1, r2) = (residual(0.1), residual(0.05));
    assert!(r1 / r2 > 3.8 && r1 / r2 < 4.2, "{r1} {r2}");

    let mut cfg = EvolutionConfig::spectral(0.05, 4);
    cfg.track_wave_residual = true;
    let g = FieldGrid::sample(n, h, &w, 0.0).unwrap();
    let (_, log) = evolve_with_current(&g, &NoCurrent, &cfg).unwrap();
    let tracked: Vec<f64> = log.records().iter().filter_map(|r| r.wave_residual).collect();
    assert_eq!(tracked.len(), 3);
    assert!(tracked.iter().all(|&r| r < 2.0 * r2));
}
