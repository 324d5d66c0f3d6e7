//! Mass-term obstructions for the three-component field and the working
//! two-component contrast.

use nalgebra::{Matrix2, Matrix3, Vector3};
use num_complex::{Complex, Complex64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::bases::{epsilon, pauli, CMatrix2};
use crate::error::{Error, Result};
use crate::linalg::CMatrix3;
use crate::repr::generators;

/// Candidates with `|det S|` at or below this are rejected.
pub const MIN_DET: f64 = 1e-8;

/// Regression floor for [`minimize_linear_residual`]: half of the infimum
/// observed in an independent multi-start run.
pub const LINEAR_FLOOR: f64 = 0.5;

/// A linear candidate `S` for `S Σ̃_k S⁻¹ = −Σ̃_k`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearAnsatz {
    s: CMatrix3,
    s_inv: CMatrix3,
}

impl LinearAnsatz {
    pub fn new(s: CMatrix3) -> Result<Self> {
        let det = s.determinant().norm();
        if !det.is_finite() || det <= MIN_DET {
            return Err(Error::Singular(det));
        }
        let s_inv = s.try_inverse().ok_or(Error::Singular(det))?;
        Ok(Self { s, s_inv })
    }

    pub fn matrix(&self) -> &CMatrix3 {
        &self.s
    }
}

fn tilde_norm() -> f64 {
    generators().sigma_tilde().iter().map(|m| m.norm_squared()).sum()
}

/// `Σ_k ‖S Σ̃_k S⁻¹ + Σ̃_k‖²_F / Σ_k ‖Σ̃_k‖²_F`.
pub fn linear_mass_residual(s: &LinearAnsatz) -> f64 {
    let basis = generators();
    let num: f64 = basis
        .sigma_tilde()
        .iter()
        .map(|t| (s.s * t * s.s_inv + t).norm_squared())
        .sum();
    num / tilde_norm()
}

/// Residual and its gradient with respect to the real and imaginary parts of `S`,
/// packed as a complex matrix.
fn residual_and_gradient(s: &LinearAnsatz) -> (f64, CMatrix3) {
    let basis = generators();
    let c = tilde_norm();
    let mut f = 0.0;
    let mut acc = CMatrix3::zeros();
    for t in basis.sigma_tilde() {
        let m = s.s * t * s.s_inv;
        let r = m + t;
        f += r.norm_squared();
        let rh = r.adjoint();
        acc += m * rh - rh * m;
    }
    let grad = (s.s_inv * acc).adjoint() * Complex64::new(2.0 / c, 0.0);
    (f / c, grad)
}

/// All 48 signed permutation matrices.
pub fn signed_permutations() -> Vec<Matrix3<f64>> {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out = Vec::with_capacity(48);
    for p in PERMS {
        for signs in 0..8u8 {
            let mut m = Matrix3::zeros();
            for (row, &col) in p.iter().enumerate() {
                m[(row, col)] = if signs >> row & 1 == 1 { -1.0 } else { 1.0 };
            }
            out.push(m);
        }
    }
    out
}

/// Result of the multi-start search.
#[derive(Clone, Copy, Debug)]
pub struct LinearSearch {
    pub best: CMatrix3,
    pub infimum: f64,
    pub restarts: usize,
    pub seed: u64,
}

const DESCENT_ITERS: usize = 300;

/// Rescales to unit determinant; the residual is invariant under `S → cS`.
fn normalize(s: CMatrix3) -> CMatrix3 {
    let det = s.determinant();
    s / det.powf(1.0 / 3.0)
}

fn random_candidate(rng: &mut ChaCha8Rng) -> CMatrix3 {
    CMatrix3::from_fn(|_, _| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
}

fn descend(start: CMatrix3) -> Option<(f64, CMatrix3)> {
    let mut cur = LinearAnsatz::new(normalize(start)).ok()?;
    let (mut f, mut g) = residual_and_gradient(&cur);
    let mut step = 0.1;
    for _ in 0..DESCENT_ITERS {
        let gn = g.norm_squared();
        if gn < 1e-24 {
            break;
        }
        let mut accepted = false;
        while step > 1e-12 {
            let trial = normalize(cur.s - g * Complex64::new(step, 0.0));
            if let Ok(t) = LinearAnsatz::new(trial) {
                let (ft, gt) = residual_and_gradient(&t);
                if ft <= f - 1e-4 * step * gn {
                    cur = t;
                    f = ft;
                    g = gt;
                    accepted = true;
                    step *= 2.0;
                    break;
                }
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    Some((f, cur.s))
}

/// Multi-start projected gradient descent on [`linear_mass_residual`].
///
/// Restart `r` draws its starting point from a ChaCha stream `r` under `seed`,
/// so the result does not depend on thread scheduling.
pub fn minimize_linear_residual(restarts: usize, seed: u64) -> Result<LinearSearch> {
    if restarts == 0 {
        return Err(Error::InvalidArgument("restarts must be at least 1".into()));
    }
    let best = (0..restarts)
        .into_par_iter()
        .filter_map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(r as u64);
            descend(random_candidate(&mut rng)).map(|(f, s)| (f, r, s))
        })
        .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)))
        .ok_or_else(|| Error::InvalidArgument("no restart produced an invertible candidate".into()))?;
    Ok(LinearSearch { best: best.2, infimum: best.0, restarts, seed })
}

/// An antilinear candidate `S = S̃ K`, `K` complex conjugation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AntilinearAnsatz {
    st: CMatrix3,
}

impl AntilinearAnsatz {
    pub fn new(st: CMatrix3) -> Result<Self> {
        if st.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("antilinear ansatz"));
        }
        Ok(Self { st })
    }

    /// `Π ‖row_i(S̃)‖`, an upper bound on `|det S̃|` and the natural scale of
    /// rounding errors in it.
    pub fn hadamard_bound(&self) -> f64 {
        self.st.row_iter().map(|r| r.norm()).product()
    }

    /// `det(S̃ S̃*)`.
    pub fn square_determinant(&self) -> Complex64 {
        (self.st * self.st.map(|z| z.conj())).determinant()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct AntilinearReport {
    pub samples: usize,
    pub seed: u64,
    /// Smallest `Re det(S̃ S̃*)` seen.
    pub min_det: f64,
    /// Largest `|Im det(S̃ S̃*)|`, relative to the squared Hadamard bound.
    pub max_imag: f64,
    /// Largest `|det(S̃ S̃*) − |det S̃|²|`, same scale.
    pub max_mismatch: f64,
    /// `det(−Id₃)`.
    pub target: f64,
}

/// Samples random complex `S̃` and confirms `det(S̃ S̃*) = |det S̃|² ≥ 0`, which
/// can never equal `det(−Id₃) = −1`.
pub fn antilinear_obstruction(samples: usize, seed: u64) -> Result<AntilinearReport> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = AntilinearReport {
        samples,
        seed,
        min_det: f64::INFINITY,
        max_imag: 0.0,
        max_mismatch: 0.0,
        target: -CMatrix3::identity().determinant().re,
    };
    for _ in 0..samples {
        let a = AntilinearAnsatz::new(random_candidate(&mut rng))?;
        let d = a.square_determinant();
        let scale = a.hadamard_bound().powi(2).max(f64::MIN_POSITIVE);
        rep.min_det = rep.min_det.min(d.re);
        rep.max_imag = rep.max_imag.max(d.im.abs() / scale);
        rep.max_mismatch = rep.max_mismatch.max((d.re - a.st.determinant().norm_sqr()).abs() / scale);
    }
    Ok(rep)
}

/// Exact Gaussian-integer arithmetic for the 2×2 contrast.
type IMatrix2 = Matrix2<Complex<i64>>;

fn exact(m: &CMatrix2) -> IMatrix2 {
    m.map(|z| Complex::new(z.re as i64, z.im as i64))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PauliReport {
    /// `max_k max_entry |ε σ_k* ε⁻¹ + σ_k|`, in integer units.
    pub residual: i64,
    pub epsilon_squared_is_minus_id: bool,
    pub det_epsilon: i64,
}

/// Checks `ε σ_k* ε⁻¹ = −σ_k` exactly.
pub fn pauli_contrast() -> PauliReport {
    let eps = exact(&epsilon());
    let eps_inv = -eps;
    let mut residual = 0;
    for s in pauli().iter().map(exact) {
        let lhs = eps * s.map(|z| z.conj()) * eps_inv;
        let r = lhs + s;
        residual = r.iter().map(|z| z.re.abs().max(z.im.abs())).fold(residual, i64::max);
    }
    let minus_id = -IMatrix2::identity();
    let det = eps[(0, 0)] * eps[(1, 1)] - eps[(0, 1)] * eps[(1, 0)];
    PauliReport {
        residual,
        epsilon_squared_is_minus_id: eps * eps == minus_id && eps_inv * eps == IMatrix2::identity(),
        det_epsilon: det.re,
    }
}

/// Determinant residual of the two-component Majorana equation for the plane
/// wave `w e^{−ip·x} + …` after eliminating `w*`: `m² |det K|` with
/// `K = mη*ε + P*(mηε)⁻¹P`, `P = p⁰ − σ⃗·p⃗`. This equals `(p² − m²)²`.
pub fn majorana_residual(p0: f64, p: [f64; 3], m: f64, eta: Complex64) -> Result<f64> {
    if !(m > 0.0 && m.is_finite()) {
        return Err(Error::InvalidArgument(format!("mass m = {m} must be positive")));
    }
    if !((eta.norm() - 1.0).abs() <= 1e-12) {
        return Err(Error::InvalidArgument(format!("eta = {eta} is not a unit phase")));
    }
    let s = pauli();
    let eps = epsilon();
    let pm = CMatrix2::identity() * Complex64::new(p0, 0.0)
        - (0..3).map(|k| s[k] * Complex64::new(p[k], 0.0)).sum::<CMatrix2>();
    let a = eps * (eta * m);
    let a_inv = a.try_inverse().ok_or(Error::Singular(0.0))?;
    let k = a.map(|z| z.conj()) + pm.map(|z| z.conj()) * a_inv * pm;
    Ok(m * m * k.determinant().norm())
}

#[derive(Clone, Copy, Debug)]
pub struct MajoranaReport {
    pub energy: f64,
    pub on_shell: f64,
}

/// Residual at the on-shell energy `p⁰ = √(|p|² + m²)`.
pub fn majorana_dispersion(p: [f64; 3], m: f64, eta: Complex64) -> Result<MajoranaReport> {
    let energy = (Vector3::from(p).norm_squared() + m * m).sqrt();
    Ok(MajoranaReport { energy, on_shell: majorana_residual(energy, p, m, eta)? })
}
