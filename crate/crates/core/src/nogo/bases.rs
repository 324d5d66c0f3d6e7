//! Pauli and Dirac matrices.

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;

use crate::linalg::{commutator, I};

pub type CMatrix2 = Matrix2<Complex64>;
pub type CMatrix4 = Matrix4<Complex64>;

/// Pauli matrices, the 2d antisymmetric symbol `ε`, and Dirac matrices in the
/// standard representation together with `σ^{μν} = (i/4)[γ^μ, γ^ν]`.
#[derive(Clone, Debug)]
pub struct SmallRepBases {
    pub pauli: [CMatrix2; 3],
    pub epsilon: CMatrix2,
    pub gamma: [CMatrix4; 4],
    pub spinor_generators: [[CMatrix4; 4]; 4],
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn pauli() -> [CMatrix2; 3] {
    let z = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    [
        CMatrix2::new(z, one, one, z),
        CMatrix2::new(z, -I, I, z),
        CMatrix2::new(one, z, z, -one),
    ]
}

/// `ε = ((0, 1), (−1, 0))`.
pub fn epsilon() -> CMatrix2 {
    CMatrix2::new(c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0))
}

/// `γ⁰ = diag(1, 1, −1, −1)`, `γᵏ = ((0, σ_k), (−σ_k, 0))`.
pub fn dirac_gamma() -> [CMatrix4; 4] {
    let s = pauli();
    let mut g = [CMatrix4::zeros(); 4];
    for i in 0..4 {
        g[0][(i, i)] = c(if i < 2 { 1.0 } else { -1.0 }, 0.0);
    }
    for k in 0..3 {
        g[k + 1].fixed_view_mut::<2, 2>(0, 2).copy_from(&s[k]);
        g[k + 1].fixed_view_mut::<2, 2>(2, 0).copy_from(&(-s[k]));
    }
    g
}

impl SmallRepBases {
    pub fn new() -> Self {
        let gamma = dirac_gamma();
        let spinor_generators =
            std::array::from_fn(|m| std::array::from_fn(|n| commutator(&gamma[m], &gamma[n]) * c(0.0, 0.25)));
        Self { pauli: pauli(), epsilon: epsilon(), gamma, spinor_generators }
    }
}

impl Default for SmallRepBases {
    fn default() -> Self {
        Self::new()
    }
}
