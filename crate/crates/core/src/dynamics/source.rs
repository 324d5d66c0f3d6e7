//! Charge-current sources `(ρ, j)` obeying `ρ̇ + ∇·j = 0`.

use std::f64::consts::PI;

use nalgebra::Vector3;

/// A space-time current density together with the charge density it implies.
///
/// `charge` must be `ρ(0) − ∫₀ᵗ ∇·j dt`; implementations provide it in closed
/// form or by quadrature. Consistency is checked on the grid before a run.
pub trait FourCurrentSource: Sync {
    fn current(&self, x: [f64; 3], t: f64) -> Vector3<f64>;

    fn charge(&self, x: [f64; 3], t: f64) -> f64;

    /// True when `j ≡ 0`; lets steppers skip source evaluation.
    fn is_zero(&self) -> bool {
        false
    }
}

/// No charges, no currents.
#[derive(Clone, Copy, Debug, Default)]
pub struct NoCurrent;

impl FourCurrentSource for NoCurrent {
    fn current(&self, _x: [f64; 3], _t: f64) -> Vector3<f64> {
        Vector3::zeros()
    }

    fn charge(&self, _x: [f64; 3], _t: f64) -> f64 {
        0.0
    }

    fn is_zero(&self) -> bool {
        true
    }
}

/// One real term `c cos(q·x + φ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrigTerm {
    pub coeff: Vector3<f64>,
    pub q: Vector3<f64>,
    pub phase: f64,
}

/// Real vector field `Σ c cos(q·x + φ)` with closed-form divergence and curl.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TrigField {
    pub terms: Vec<TrigTerm>,
}

impl TrigField {
    pub fn new(terms: Vec<TrigTerm>) -> Self {
        Self { terms }
    }

    /// A smooth field on the periodic box of side `length` built from the
    /// lattice wavevectors `modes` (integer multiples of `2π/length`).
    pub fn lattice(length: f64, modes: &[([i32; 3], [f64; 3], f64)]) -> Self {
        let base = 2.0 * PI / length;
        Self::new(
            modes
                .iter()
                .map(|(m, c, phase)| TrigTerm {
                    coeff: Vector3::from(*c),
                    q: Vector3::new(m[0] as f64, m[1] as f64, m[2] as f64) * base,
                    phase: *phase,
                })
                .collect(),
        )
    }

    fn arg(term: &TrigTerm, x: [f64; 3]) -> f64 {
        term.q.dot(&Vector3::from(x)) + term.phase
    }

    pub fn value(&self, x: [f64; 3]) -> Vector3<f64> {
        self.terms.iter().map(|t| t.coeff * Self::arg(t, x).cos()).sum()
    }

    pub fn divergence(&self, x: [f64; 3]) -> f64 {
        self.terms.iter().map(|t| -t.q.dot(&t.coeff) * Self::arg(t, x).sin()).sum()
    }

    pub fn curl(&self, x: [f64; 3]) -> Vector3<f64> {
        self.terms.iter().map(|t| -t.q.cross(&t.coeff) * Self::arg(t, x).sin()).sum()
    }
}

/// `j(x,t) = ĵ(x) g(t)` with a Gaussian envelope `g(t) = exp(−(t−t₀)²/2σ²)`.
///
/// The charge density is `ρ(x,t) = −∇·ĵ(x) · G(t)` with `G(t) = ∫₀ᵗ g`, evaluated
/// through the error function; the field starts uncharged.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussianPulse {
    pub profile: TrigField,
    pub center: f64,
    pub width: f64,
}

impl GaussianPulse {
    pub fn envelope(&self, t: f64) -> f64 {
        let s = (t - self.center) / self.width;
        (-0.5 * s * s).exp()
    }

    /// `∫₀ᵗ g(s) ds`.
    pub fn envelope_integral(&self, t: f64) -> f64 {
        let scale = self.width * std::f64::consts::SQRT_2;
        self.width
            * (PI / 2.0).sqrt()
            * (libm::erf((t - self.center) / scale) + libm::erf(self.center / scale))
    }
}

impl FourCurrentSource for GaussianPulse {
    fn current(&self, x: [f64; 3], t: f64) -> Vector3<f64> {
        self.profile.value(x) * self.envelope(t)
    }

    fn charge(&self, x: [f64; 3], t: f64) -> f64 {
        -self.profile.divergence(x) * self.envelope_integral(t)
    }
}

/// Static divergence-free current `j = ∇×M`; the charge density stays zero.
#[derive(Clone, Debug, PartialEq)]
pub struct SolenoidalCurrent {
    pub potential: TrigField,
}

impl FourCurrentSource for SolenoidalCurrent {
    fn current(&self, x: [f64; 3], _t: f64) -> Vector3<f64> {
        self.potential.curl(x)
    }

    fn charge(&self, _x: [f64; 3], _t: f64) -> f64 {
        0.0
    }
}
