//! Dirac-style covariance: it holds for spinors, fails for the bivector Γ's
//! under boosts, and is replaced by an identity mixing in `Λ^a_0`.

use num_complex::Complex64;

use super::bases::{CMatrix4, SmallRepBases};
use crate::error::{Error, Result};
use crate::linalg::{expm, max_abs, metric, CMatrix3};
use crate::repr::{correspondence, generators, AlgebraParams};

/// Regression floor for boost residuals at `‖ξ‖ ≥ 0.1`: half of the minimum
/// observed in an independent sweep.
pub const COVARIANCE_FLOOR: f64 = 0.025;

/// Spatial blocks with `|det|` at or below this are treated as singular.
pub const MIN_SPATIAL_DET: f64 = 1e-12;

/// `Q_D = exp(−(i/2) ω_{μν} σ^{μν})` with `ω_{μν} = g_{μα} (ξ·L + α·S)^α_ν`.
pub fn dirac_spinor_matrix(bases: &SmallRepBases, p: &AlgebraParams) -> CMatrix4 {
    let omega = metric() * p.lorentz_generator();
    let mut gen = CMatrix4::zeros();
    for m in 0..4 {
        for n in 0..4 {
            gen += bases.spinor_generators[m][n] * Complex64::new(0.0, -0.5 * omega[(m, n)]);
        }
    }
    expm(&gen)
}

/// `max_α max_entry |Q_D⁻¹ γ^α Q_D − Λ^α_ν γ^ν|`.
pub fn dirac_covariance_check(p: &AlgebraParams) -> f64 {
    let bases = SmallRepBases::new();
    let (lambda, _) = correspondence(p);
    let q = dirac_spinor_matrix(&bases, p);
    let Some(q_inv) = q.try_inverse() else { return f64::INFINITY };
    let l = lambda.matrix();
    (0..4)
        .map(|a| {
            let lhs = q_inv * bases.gamma[a] * q;
            let rhs: CMatrix4 = (0..4).map(|n| bases.gamma[n] * Complex64::new(l[(a, n)], 0.0)).sum();
            max_abs(&(lhs - rhs))
        })
        .fold(0.0, f64::max)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CovarianceFailure {
    /// Residual for the rotation part of `p` alone (with `Q⁻¹`).
    pub rotation: f64,
    /// Residual for `p` with `Q⁻¹ Γ^α Q`.
    pub inverse: f64,
    /// With `Qᵀ Γ^α Q`.
    pub transpose: f64,
    /// With `Q* Γ^α Q`.
    pub conjugate: f64,
}

impl CovarianceFailure {
    /// Smallest residual over the three variants.
    pub fn boost(&self) -> f64 {
        self.inverse.min(self.transpose).min(self.conjugate)
    }
}

fn bivector_residual(p: &AlgebraParams, left: impl Fn(&CMatrix3) -> CMatrix3) -> f64 {
    let (lambda, q) = correspondence(p);
    let basis = generators();
    let gamma = basis.gamma();
    let l = lambda.matrix();
    let lq = left(q.matrix());
    (0..4)
        .map(|a| {
            let lhs = lq * gamma[a] * q.matrix();
            let rhs: CMatrix3 = (0..4).map(|n| gamma[n] * Complex64::new(l[(a, n)], 0.0)).sum();
            max_abs(&(lhs - rhs))
        })
        .fold(0.0, f64::max)
}

/// `max_α max_entry |X Γ^α Q − Λ^α_ν Γ^ν|` for `X ∈ {Q⁻¹, Qᵀ, Q*}`.
pub fn bivector_covariance_failure(p: &AlgebraParams) -> CovarianceFailure {
    // Q is complex orthogonal, so Q⁻¹ = Qᵀ
    let inverse = |q: &CMatrix3| q.try_inverse().unwrap_or(q.transpose());
    CovarianceFailure {
        rotation: bivector_residual(&p.rotation_part(), inverse),
        inverse: bivector_residual(p, inverse),
        transpose: bivector_residual(p, |q| q.transpose()),
        conjugate: bivector_residual(p, |q| q.map(|z| z.conj())),
    }
}

/// `max_{ν,d,c} |Γ^ν_{dc} − Λ̃^d_a Γ^μ_{ab} Λ_μ^ν Q_{bc} − Λ̃^d_a Λ^a_0 δ^ν_c|`
/// with `Λ̃ = (Λ^a_b)⁻¹` and `Λ_μ^ν = (Λ⁻¹)^ν_μ`.
pub fn bispi_identity_check(p: &AlgebraParams) -> Result<f64> {
    let (lambda, q) = correspondence(p);
    let block = lambda.spatial_block();
    let det = block.determinant();
    if !(det.abs() > MIN_SPATIAL_DET) {
        return Err(Error::SingularSpatialBlock(det.abs()));
    }
    let tilde = block.try_inverse().ok_or(Error::SingularSpatialBlock(det.abs()))?;
    let inv = lambda.inverse();
    let li = inv.matrix();
    let l = lambda.matrix();
    let basis = generators();
    let gamma = basis.gamma();
    let q = q.matrix();
    let mut worst = 0.0f64;
    for nu in 0..4 {
        // Γ^μ Λ_μ^ν
        let mixed: CMatrix3 = (0..4).map(|mu| gamma[mu] * Complex64::new(li[(nu, mu)], 0.0)).sum();
        let tilde_c = tilde.map(|x| Complex64::new(x, 0.0));
        let main = tilde_c * mixed * q;
        for d in 0..3 {
            for c in 0..3 {
                let shift: f64 = if nu == c + 1 { (0..3).map(|a| tilde[(d, a)] * l[(a + 1, 0)]).sum() } else { 0.0 };
                let r = gamma[nu][(d, c)] - main[(d, c)] - shift;
                worst = worst.max(r.norm());
            }
        }
    }
    Ok(worst)
}
