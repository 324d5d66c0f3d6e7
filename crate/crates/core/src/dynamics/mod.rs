//! Time evolution of the bivector field, `∂ₜΨ = −i∇×Ψ − j`.
//!
//! Two schemes are provided:
//!
//! * [`Scheme::SpectralExact`]: each Fourier mode obeys `∂ₜΨ̂ = k×Ψ̂`, a rotation
//!   about k̂ at angular rate |k|, applied in closed form. Sources enter through
//!   the Duhamel integral evaluated by a fixed quadrature rule.
//! * [`Scheme::Rk4Fd`]: classical Runge–Kutta with a centered finite-difference
//!   curl of order 2 or 4.
//!
//! The charge density is never evolved. It is read back from `∇·Re Ψ` and
//! compared with the continuity integral supplied by the source.

mod log;
mod source;

pub use log::{ConservationLog, LogRecord, CSV_HEADER};
pub use source::{FourCurrentSource, GaussianPulse, NoCurrent, SolenoidalCurrent, TrigField, TrigTerm};

use nalgebra::Vector3;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::Bivector;
use crate::grid::FieldGrid;
use crate::linalg::{CVector3, I};
use crate::spectral::{Spectral, Spectrum};

pub const DEFAULT_CFL: f64 = 0.5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    SpectralExact,
    Rk4Fd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FdOrder {
    Second,
    Fourth,
}

/// Quadrature of the source term over one step in the spectral scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SourceQuadrature {
    Midpoint,
    GaussLegendre3,
}

impl SourceQuadrature {
    /// Nodes in `[0, 1]` and weights summing to one.
    fn rule(self) -> &'static [(f64, f64)] {
        const GL3: [(f64, f64); 3] = [
            (0.112_701_665_379_258_31, 5.0 / 18.0),
            (0.5, 8.0 / 18.0),
            (0.887_298_334_620_741_7, 5.0 / 18.0),
        ];
        match self {
            Self::Midpoint => &[(0.5, 1.0)],
            Self::GaussLegendre3 => &GL3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvolutionConfig {
    pub dt: f64,
    pub steps: usize,
    pub scheme: Scheme,
    pub fd_order: FdOrder,
    pub cfl: f64,
    pub quadrature: SourceQuadrature,
    /// Record the discrete wave-equation residual for each interior snapshot.
    pub track_wave_residual: bool,
}

impl EvolutionConfig {
    pub fn spectral(dt: f64, steps: usize) -> Self {
        Self {
            dt,
            steps,
            scheme: Scheme::SpectralExact,
            fd_order: FdOrder::Fourth,
            cfl: DEFAULT_CFL,
            quadrature: SourceQuadrature::GaussLegendre3,
            track_wave_residual: false,
        }
    }

    pub fn rk4(dt: f64, steps: usize, fd_order: FdOrder) -> Self {
        Self { scheme: Scheme::Rk4Fd, fd_order, ..Self::spectral(dt, steps) }
    }

    pub fn validate(&self, h: f64) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::InvalidConfig(format!("dt = {} must be positive and finite", self.dt)));
        }
        if !(self.cfl > 0.0 && self.cfl.is_finite()) {
            return Err(Error::InvalidConfig(format!("cfl = {} must be positive", self.cfl)));
        }
        if self.scheme == Scheme::Rk4Fd {
            check_cfl(self.dt, h, self.cfl)?;
        }
        Ok(())
    }
}

fn check_cfl(dt: f64, h: f64, cfl: f64) -> Result<()> {
    let limit = cfl * h;
    if dt > limit {
        return Err(Error::CflViolation { dt, cfl, limit });
    }
    Ok(())
}

/// `exp(dt [k×]) v`: rotation of `v` about k̂ by angle `|k| dt`.
fn rotate_mode(k: [f64; 3], dt: f64, v: CVector3) -> CVector3 {
    let kn = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
    if kn == 0.0 {
        return v;
    }
    let khat = CVector3::new(
        Complex64::new(k[0] / kn, 0.0),
        Complex64::new(k[1] / kn, 0.0),
        Complex64::new(k[2] / kn, 0.0),
    );
    let (sin, cos) = (kn * dt).sin_cos();
    let along = khat.dot(&v);
    v.scale(cos) + khat.cross(&v).scale(sin) + khat * (along * (1.0 - cos))
}

fn propagate(sp: &Spectral, spec: &mut Spectrum, dt: f64) {
    for i in 0..spec[0].len() {
        let v = rotate_mode(sp.wavevector(i), dt, CVector3::new(spec[0][i], spec[1][i], spec[2][i]));
        spec[0][i] = v[0];
        spec[1][i] = v[1];
        spec[2][i] = v[2];
    }
}

/// One exact vacuum step of length `dt`.
pub fn step_vacuum_spectral(grid: &FieldGrid, dt: f64) -> FieldGrid {
    let sp = Spectral::for_grid(grid);
    let mut spec = sp.forward(grid);
    propagate(&sp, &mut spec, dt);
    grid.with_data(sp.inverse(&spec))
}

/// Centered periodic derivative of one component along `axis`.
fn fd_derivative(comp: &[Complex64], n: usize, h: f64, axis: usize, order: FdOrder) -> Vec<Complex64> {
    let stride = [n * n, n, 1][axis];
    let shifted = |idx: usize, s: isize| {
        let coord = (idx / stride) % n;
        let moved = (coord as isize + s).rem_euclid(n as isize) as usize;
        idx - coord * stride + moved * stride
    };
    (0..comp.len())
        .map(|i| match order {
            FdOrder::Second => (comp[shifted(i, 1)] - comp[shifted(i, -1)]) / (2.0 * h),
            FdOrder::Fourth => {
                (-comp[shifted(i, 2)] + comp[shifted(i, 1)] * 8.0 - comp[shifted(i, -1)] * 8.0 + comp[shifted(i, -2)])
                    / (12.0 * h)
            }
        })
        .collect()
}

fn components(grid: &FieldGrid) -> [Vec<Complex64>; 3] {
    std::array::from_fn(|c| grid.data().iter().map(|b| b.0[c]).collect())
}

/// Finite-difference curl.
pub fn curl_fd(grid: &FieldGrid, order: FdOrder) -> FieldGrid {
    let (n, h) = (grid.n(), grid.h());
    let c = components(grid);
    let d = |comp: usize, axis: usize| fd_derivative(&c[comp], n, h, axis, order);
    let (d1c2, d2c1) = (d(2, 1), d(1, 2));
    let (d2c0, d0c2) = (d(0, 2), d(2, 0));
    let (d0c1, d1c0) = (d(1, 0), d(0, 1));
    let data = (0..grid.len())
        .map(|i| Bivector(CVector3::new(d1c2[i] - d2c1[i], d2c0[i] - d0c2[i], d0c1[i] - d1c0[i])))
        .collect();
    grid.with_data(data)
}

/// Finite-difference divergence.
pub fn divergence_fd(grid: &FieldGrid, order: FdOrder) -> Vec<Complex64> {
    let (n, h) = (grid.n(), grid.h());
    let c = components(grid);
    let parts: [Vec<Complex64>; 3] = std::array::from_fn(|a| fd_derivative(&c[a], n, h, a, order));
    (0..grid.len()).map(|i| parts[0][i] + parts[1][i] + parts[2][i]).collect()
}

fn sample_current(src: &dyn FourCurrentSource, grid: &FieldGrid, t: f64) -> Vec<Vector3<f64>> {
    (0..grid.len()).map(|i| src.current(grid.position(i), t)).collect()
}

fn current_grid(src: &dyn FourCurrentSource, grid: &FieldGrid, t: f64) -> FieldGrid {
    let j = sample_current(src, grid, t);
    grid.with_data(
        j.iter()
            .map(|v| Bivector(CVector3::from_fn(|k, _| Complex64::new(v[k], 0.0))))
            .collect(),
    )
}

/// `−i∇_fd×Ψ − j(t)`.
fn rhs(grid: &FieldGrid, order: FdOrder, src: &dyn FourCurrentSource, t: f64) -> FieldGrid {
    let mut out = curl_fd(grid, order).map(|b| Bivector(b.0 * -I));
    if !src.is_zero() {
        out.add_real(&sample_current(src, grid, t), -1.0);
    }
    out
}

fn rk4_step(grid: &FieldGrid, t: f64, dt: f64, order: FdOrder, src: &dyn FourCurrentSource) -> FieldGrid {
    let half = Complex64::new(0.5 * dt, 0.0);
    let k1 = rhs(grid, order, src, t);
    let mut y = grid.clone();
    y.axpy(half, k1.data());
    let k2 = rhs(&y, order, src, t + 0.5 * dt);
    let mut y = grid.clone();
    y.axpy(half, k2.data());
    let k3 = rhs(&y, order, src, t + 0.5 * dt);
    let mut y = grid.clone();
    y.axpy(Complex64::new(dt, 0.0), k3.data());
    let k4 = rhs(&y, order, src, t + dt);

    let mut out = grid.clone();
    let sixth = dt / 6.0;
    for (i, o) in out.data_mut().iter_mut().enumerate() {
        let incr = k1.data()[i].0 + (k2.data()[i].0 + k3.data()[i].0).scale(2.0) + k4.data()[i].0;
        o.0 += incr.scale(sixth);
    }
    out
}

/// One classical RK4 vacuum step with a finite-difference curl.
pub fn step_rk4_fd(grid: &FieldGrid, dt: f64, order: FdOrder) -> Result<FieldGrid> {
    EvolutionConfig::rk4(dt, 1, order).validate(grid.h())?;
    Ok(rk4_step(grid, 0.0, dt, order, &NoCurrent))
}

/// Tolerance of the setup continuity check, relative to `1 + max|∇·j|`.
pub const CONTINUITY_TOL: f64 = 1e-6;

/// Checks `ρ̇ + ∇·j = 0` on the grid at a few times in `[0, t_end]`; returns
/// the largest residual or a [`Error::ContinuityViolation`].
pub fn check_continuity(src: &dyn FourCurrentSource, grid: &FieldGrid, t_end: f64) -> Result<f64> {
    if src.is_zero() {
        return Ok(0.0);
    }
    let sp = Spectral::for_grid(grid);
    let samples = 8;
    let d = 1e-3;
    let mut worst = 0.0f64;
    let mut worst_t = 0.0;
    let mut scale = 0.0f64;
    for s in 0..=samples {
        let t = t_end * s as f64 / samples as f64;
        let div_j = sp.divergence(&current_grid(src, grid, t));
        for (i, dj) in div_j.iter().enumerate() {
            let x = grid.position(i);
            let rho_dot = (-src.charge(x, t + 2.0 * d) + 8.0 * src.charge(x, t + d) - 8.0 * src.charge(x, t - d)
                + src.charge(x, t - 2.0 * d))
                / (12.0 * d);
            let r = (rho_dot + dj.re).abs();
            scale = scale.max(dj.re.abs());
            if r > worst {
                worst = r;
                worst_t = t;
            }
        }
    }
    if worst > CONTINUITY_TOL * (1.0 + scale) {
        return Err(Error::ContinuityViolation { residual: worst, time: worst_t });
    }
    Ok(worst)
}

/// Conservation diagnostics of one state at time `time`.
pub fn conservation_record(
    sp: &Spectral,
    grid: &FieldGrid,
    src: &dyn FourCurrentSource,
    step: usize,
    time: f64,
) -> LogRecord {
    let div = sp.divergence(grid);
    let mut max_div_b = 0.0f64;
    let mut gauss = 0.0f64;
    for (i, z) in div.iter().enumerate() {
        max_div_b = max_div_b.max(z.im.abs());
        let rho = src.charge(grid.position(i), time);
        gauss = gauss.max((z.re - rho).abs());
    }
    let inv = grid.invariants();
    LogRecord {
        step,
        time,
        energy: inv.energy,
        poynting: inv.poynting,
        max_div_b,
        max_gauss_residual: gauss,
        wave_residual: None,
    }
}

/// Integrates `∂ₜΨ = −i∇×Ψ − j` from `t = 0` for `cfg.steps` steps. The log
/// starts with the initial state.
pub fn evolve_with_current(
    grid: &FieldGrid,
    src: &dyn FourCurrentSource,
    cfg: &EvolutionConfig,
) -> Result<(FieldGrid, ConservationLog)> {
    evolve_with_callback(grid, src, cfg, |_, _| Ok(()))
}

/// As [`evolve_with_current`], calling `on_step(step, grid)` after each step.
pub fn evolve_with_callback(
    grid: &FieldGrid,
    src: &dyn FourCurrentSource,
    cfg: &EvolutionConfig,
    mut on_step: impl FnMut(usize, &FieldGrid) -> Result<()>,
) -> Result<(FieldGrid, ConservationLog)> {
    cfg.validate(grid.h())?;
    check_continuity(src, grid, cfg.dt * cfg.steps as f64)?;

    let sp = Spectral::for_grid(grid);
    let mut log = ConservationLog::new();
    log.push(conservation_record(&sp, grid, src, 0, 0.0));
    let mut current = grid.clone();
    let mut previous: Option<FieldGrid> = None;
    let mut spectrum = match cfg.scheme {
        Scheme::SpectralExact => Some(sp.forward(grid)),
        Scheme::Rk4Fd => None,
    };

    for step in 1..=cfg.steps {
        let t = (step - 1) as f64 * cfg.dt;
        let next = match spectrum.as_mut() {
            Some(spec) => {
                propagate(&sp, spec, cfg.dt);
                if !src.is_zero() {
                    for &(node, weight) in cfg.quadrature.rule() {
                        let s = node * cfg.dt;
                        let mut js = sp.forward(&current_grid(src, grid, t + s));
                        propagate(&sp, &mut js, cfg.dt - s);
                        let w = weight * cfg.dt;
                        for (dst, add) in spec.iter_mut().zip(&js) {
                            for (d, a) in dst.iter_mut().zip(add) {
                                *d -= a * w;
                            }
                        }
                    }
                }
                grid.with_data(sp.inverse(spec))
            }
            None => rk4_step(&current, t, cfg.dt, cfg.fd_order, src),
        };
        if !next.is_finite() {
            return Err(Error::NonFiniteField(step));
        }

        let mut rec = conservation_record(&sp, &next, src, step, step as f64 * cfg.dt);
        if cfg.track_wave_residual {
            if let Some(prev) = &previous {
                rec.wave_residual = Some(wave_equation_residual([prev, &current, &next], cfg.dt)?);
            }
        }
        log.push(rec);
        on_step(step, &next)?;
        previous = Some(std::mem::replace(&mut current, next));
    }
    Ok((current, log))
}

/// `max |(Ψ₊ − 2Ψ₀ + Ψ₋)/dt² − ΔΨ₀|` over sites, a discrete check of `□Ψ = 0`.
pub fn wave_equation_residual(history: [&FieldGrid; 3], dt: f64) -> Result<f64> {
    let [prev, cur, next] = history;
    if !prev.same_shape(cur) || !cur.same_shape(next) {
        return Err(Error::GridMismatch);
    }
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidArgument(format!("dt = {dt} must be positive")));
    }
    let lap = Spectral::for_grid(cur).laplacian(cur);
    let inv_dt2 = 1.0 / (dt * dt);
    Ok((0..cur.len())
        .map(|i| {
            let second = (next.data()[i].0 - cur.data()[i].0.scale(2.0) + prev.data()[i].0).scale(inv_dt2);
            (second - lap.data()[i].0).norm()
        })
        .fold(0.0, f64::max))
}
