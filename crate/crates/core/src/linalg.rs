//! Small dense-matrix helpers shared by the representation and no-go code.

use nalgebra::{ComplexField, DMatrix, Matrix3, Matrix4, SMatrix, Vector3};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix3 = Matrix3<Complex64>;
pub type CVector3 = Vector3<Complex64>;
pub type RMatrix4 = Matrix4<f64>;

pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Totally antisymmetric symbol on indices `0..3`, with ε₀₁₂ = 1.
pub fn levi_civita(l: usize, m: usize, n: usize) -> i8 {
    match (l, m, n) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

/// Minkowski metric diag(1, −1, −1, −1).
pub fn metric() -> RMatrix4 {
    RMatrix4::from_diagonal(&nalgebra::Vector4::new(1.0, -1.0, -1.0, -1.0))
}

/// `AB − BA` for statically sized square matrices.
pub fn commutator<T, const D: usize>(a: &SMatrix<T, D, D>, b: &SMatrix<T, D, D>) -> SMatrix<T, D, D>
where
    T: ComplexField,
{
    a * b - b * a
}

/// `AB − BA` for dynamically sized matrices; both must be square and of equal size.
pub fn commutator_dyn(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> Result<DMatrix<Complex64>> {
    if !a.is_square() || !b.is_square() || a.nrows() != b.nrows() {
        return Err(Error::DimensionMismatch {
            left: a.nrows().max(a.ncols()),
            right: b.nrows().max(b.ncols()),
        });
    }
    Ok(a * b - b * a)
}

/// Largest entry modulus.
pub fn max_abs<T, const R: usize, const C: usize>(m: &SMatrix<T, R, C>) -> f64
where
    T: ComplexField<RealField = f64>,
{
    m.iter().map(|e| e.clone().modulus()).fold(0.0, f64::max)
}

pub fn to_complex4(m: &RMatrix4) -> Matrix4<Complex64> {
    m.map(|x| Complex64::new(x, 0.0))
}

/// Matrix exponential by scaling and squaring of a truncated Taylor series.
///
/// The argument is scaled by 2⁻ˢ until its Frobenius norm is at most ½, the
/// series is summed to degree 18 in Horner form and the result squared `s`
/// times.
pub fn expm<T, const D: usize>(x: &SMatrix<T, D, D>) -> SMatrix<T, D, D>
where
    T: ComplexField<RealField = f64>,
{
    const DEGREE: usize = 18;
    let norm = x.norm();
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let scaled = x * T::from_real(0.5f64.powi(squarings));

    let id = SMatrix::<T, D, D>::identity();
    let mut acc = id.clone();
    for k in (1..=DEGREE).rev() {
        acc = &id + (&scaled * acc) * T::from_real(1.0 / k as f64);
    }
    for _ in 0..squarings {
        acc = &acc * &acc;
    }
    acc
}

/// Cross-product matrix `[a]ₓ` with `[a]ₓ v = a × v`.
pub fn skew(a: &Vector3<f64>) -> Matrix3<f64> {
    Matrix3::new(0.0, -a.z, a.y, a.z, 0.0, -a.x, -a.y, a.x, 0.0)
}
