//! Matrix representations of the restricted Lorentz group SO⁺(1,3) and of the
//! complex rotation group SO(3,ℂ).
//!
//! Both groups are parameterized by the same six real numbers, boost
//! rapidities ξ and rotation angles α:
//!
//! ```text
//! Λ = exp(ξ·L + α·S)        (4×4 real, acts on x^μ)
//! Q = exp(ξ·Σ̃ + α·Σ)        (3×3 complex, acts on Ψ)
//! ```
//!
//! The generator identification `S_l ↔ Σ_l`, `L_l ↔ Σ̃_l` is a Lie algebra
//! isomorphism, so the two exponentials are images of one abstract group
//! element. [`faraday_tensor_roundtrip`] checks this against the tensor
//! transformation `F' = Λ F Λᵀ` of the field strength.

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, commutator, levi_civita, max_abs, metric, skew, CMatrix3, CVector3, RMatrix4};

/// Tolerance for closed-form group identities.
pub const IDENTITY_TOL: f64 = 1e-12;
/// Tolerance for composed or roundtrip checks.
pub const ROUNDTRIP_TOL: f64 = 1e-10;

/// The fixed generator matrices: rotation generators `S_l` and boost
/// generators `L_l` of SO⁺(1,3), the real basis `Σ_l` of so(3), its
/// complexification `Σ̃_l = iΣ_l`, and the field-equation matrices `Γ^μ`,
/// `Γ̄^μ`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorBasis {
    s: [RMatrix4; 3],
    l: [RMatrix4; 3],
    sigma: [Matrix3<f64>; 3],
    sigma_tilde: [CMatrix3; 3],
    gamma: [CMatrix3; 4],
    gamma_bar: [CMatrix3; 4],
}

impl GeneratorBasis {
    pub fn s(&self) -> &[RMatrix4; 3] {
        &self.s
    }

    pub fn l(&self) -> &[RMatrix4; 3] {
        &self.l
    }

    pub fn sigma(&self) -> &[Matrix3<f64>; 3] {
        &self.sigma
    }

    pub fn sigma_tilde(&self) -> &[CMatrix3; 3] {
        &self.sigma_tilde
    }

    /// `Γ⁰ = Id₃`, `Γᵏ = −Σ̃_k`.
    pub fn gamma(&self) -> &[CMatrix3; 4] {
        &self.gamma
    }

    /// `Γ̄⁰ = Id₃`, `Γ̄ᵏ = +Σ̃_k`.
    pub fn gamma_bar(&self) -> &[CMatrix3; 4] {
        &self.gamma_bar
    }

    /// `Σ` promoted to complex entries.
    pub fn sigma_complex(&self) -> [CMatrix3; 3] {
        self.sigma.map(|m| m.map(|x| Complex64::new(x, 0.0)))
    }

    /// Returns a copy with `Σ̃_k` replaced. Only useful for negative tests of
    /// [`check_structure_constants`].
    pub fn with_sigma_tilde(mut self, k: usize, m: CMatrix3) -> Self {
        self.sigma_tilde[k] = m;
        self
    }

    /// Returns a copy with `S_k` replaced.
    pub fn with_s(mut self, k: usize, m: RMatrix4) -> Self {
        self.s[k] = m;
        self
    }
}

/// Builds the generator basis.
pub fn generators() -> GeneratorBasis {
    let mut s = [RMatrix4::zeros(); 3];
    let mut l = [RMatrix4::zeros(); 3];
    let mut sigma = [Matrix3::<f64>::zeros(); 3];
    for k in 0..3 {
        l[k][(0, k + 1)] = -1.0;
        l[k][(k + 1, 0)] = -1.0;
        for m in 0..3 {
            for n in 0..3 {
                let e = f64::from(levi_civita(k, m, n));
                sigma[k][(m, n)] = e;
                s[k][(m + 1, n + 1)] = e;
            }
        }
    }
    let sigma_tilde = sigma.map(|m| m.map(|x| Complex64::new(0.0, x)));
    let id = CMatrix3::identity();
    let gamma = [id, -sigma_tilde[0], -sigma_tilde[1], -sigma_tilde[2]];
    let gamma_bar = [id, sigma_tilde[0], sigma_tilde[1], sigma_tilde[2]];
    GeneratorBasis { s, l, sigma, sigma_tilde, gamma, gamma_bar }
}

/// Maximum residual per family of commutation relations.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureReport {
    /// `[S_l,S_m] = −ε_lmn S_n`
    pub rotation_rotation: f64,
    /// `[L_l,L_m] = +ε_lmn S_n`
    pub boost_boost: f64,
    /// `[L_l,S_m] = −ε_lmn L_n`
    pub boost_rotation: f64,
    /// `[Σ_l,Σ_m] = −ε_lmn Σ_n`
    pub sigma_sigma: f64,
    /// `[Σ̃_l,Σ̃_m] = +ε_lmn Σ_n`
    pub tilde_tilde: f64,
    /// `[Σ̃_l,Σ_m] = −ε_lmn Σ̃_n`
    pub tilde_sigma: f64,
    /// Homomorphism defect of `S_l ↦ Σ_l`, `L_l ↦ Σ̃_l` on all 36 ordered pairs.
    pub identification: f64,
    /// Number of relations checked (27 per group).
    pub relations: usize,
}

impl StructureReport {
    pub fn max_residual(&self) -> f64 {
        [
            self.rotation_rotation,
            self.boost_boost,
            self.boost_rotation,
            self.sigma_sigma,
            self.tilde_tilde,
            self.tilde_sigma,
            self.identification,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

fn family_residual<T, const D: usize>(
    a: &[nalgebra::SMatrix<T, D, D>; 3],
    b: &[nalgebra::SMatrix<T, D, D>; 3],
    target: &[nalgebra::SMatrix<T, D, D>; 3],
    sign: f64,
) -> f64
where
    T: nalgebra::ComplexField<RealField = f64>,
{
    let mut worst = 0.0f64;
    for l in 0..3 {
        for m in 0..3 {
            let mut expected = nalgebra::SMatrix::<T, D, D>::zeros();
            for n in 0..3 {
                let e = f64::from(levi_civita(l, m, n)) * sign;
                if e != 0.0 {
                    expected += &target[n] * T::from_real(e);
                }
            }
            let got = commutator(&a[l], &b[m]);
            worst = worst.max(max_abs(&(got - expected)));
        }
    }
    worst
}

/// Verifies all 27 + 27 commutation relations on `basis`, plus the
/// identification map between the two algebras.
pub fn check_structure_constants(basis: &GeneratorBasis) -> StructureReport {
    let sigma_c = basis.sigma_complex();
    let rotation_rotation = family_residual(&basis.s, &basis.s, &basis.s, -1.0);
    let boost_boost = family_residual(&basis.l, &basis.l, &basis.s, 1.0);
    let boost_rotation = family_residual(&basis.l, &basis.s, &basis.l, -1.0);
    let sigma_sigma = family_residual(&sigma_c, &sigma_c, &sigma_c, -1.0);
    let tilde_tilde = family_residual(&basis.sigma_tilde, &basis.sigma_tilde, &sigma_c, 1.0);
    let tilde_sigma = family_residual(&basis.sigma_tilde, &sigma_c, &basis.sigma_tilde, -1.0);
    let identification = identification_defect(basis);
    StructureReport {
        rotation_rotation,
        boost_boost,
        boost_rotation,
        sigma_sigma,
        tilde_tilde,
        tilde_sigma,
        identification,
        relations: 54,
    }
}

/// Expands every commutator of the six Lorentz generators in the Lorentz basis
/// and checks that the image basis reproduces the same expansion.
fn identification_defect(basis: &GeneratorBasis) -> f64 {
    let lorentz: Vec<RMatrix4> = basis.l.iter().chain(basis.s.iter()).copied().collect();
    let sigma_c = basis.sigma_complex();
    let image: Vec<CMatrix3> = basis.sigma_tilde.iter().chain(sigma_c.iter()).copied().collect();

    let mut worst = 0.0f64;
    for a in 0..6 {
        for b in 0..6 {
            let bracket = commutator(&lorentz[a], &lorentz[b]);
            let mut rebuilt = RMatrix4::zeros();
            let mut image_rebuilt = CMatrix3::zeros();
            for c in 0..6 {
                let coeff = bracket.dot(&lorentz[c]) / lorentz[c].norm_squared();
                rebuilt += lorentz[c] * coeff;
                image_rebuilt += image[c] * Complex64::new(coeff, 0.0);
            }
            // the Lorentz basis must span the bracket exactly
            worst = worst.max(max_abs(&(bracket - rebuilt)));
            let image_bracket = commutator(&image[a], &image[b]);
            worst = worst.max(max_abs(&(image_bracket - image_rebuilt)));
        }
    }
    worst
}

/// Boost rapidities ξ and rotation angles α.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlgebraParams {
    pub xi: Vector3<f64>,
    pub alpha: Vector3<f64>,
}

impl AlgebraParams {
    pub fn new(xi: [f64; 3], alpha: [f64; 3]) -> Result<Self> {
        if !xi.iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite("xi"));
        }
        if !alpha.iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite("alpha"));
        }
        Ok(Self { xi: Vector3::from(xi), alpha: Vector3::from(alpha) })
    }

    pub fn zero() -> Self {
        Self { xi: Vector3::zeros(), alpha: Vector3::zeros() }
    }

    pub fn boost(xi: [f64; 3]) -> Result<Self> {
        Self::new(xi, [0.0; 3])
    }

    pub fn rotation(alpha: [f64; 3]) -> Result<Self> {
        Self::new([0.0; 3], alpha)
    }

    pub fn is_pure_rotation(&self) -> bool {
        self.xi == Vector3::zeros()
    }

    pub fn is_pure_boost(&self) -> bool {
        self.alpha == Vector3::zeros()
    }

    /// The rotation part alone (ξ set to zero).
    pub fn rotation_part(&self) -> Self {
        Self { xi: Vector3::zeros(), alpha: self.alpha }
    }

    /// `ξ·L + α·S`.
    pub fn lorentz_generator(&self) -> RMatrix4 {
        let mut m = RMatrix4::zeros();
        for k in 0..3 {
            m[(0, k + 1)] = -self.xi[k];
            m[(k + 1, 0)] = -self.xi[k];
        }
        let rot = rotation_generator(&self.alpha);
        m.fixed_view_mut::<3, 3>(1, 1).copy_from(&rot);
        m
    }

    /// `ξ·Σ̃ + α·Σ`.
    pub fn complex_generator(&self) -> CMatrix3 {
        let rot = rotation_generator(&self.alpha);
        let boost = rotation_generator(&self.xi);
        CMatrix3::from_fn(|r, c| Complex64::new(rot[(r, c)], boost[(r, c)]))
    }
}

impl std::ops::Neg for AlgebraParams {
    type Output = Self;

    fn neg(self) -> Self {
        Self { xi: -self.xi, alpha: -self.alpha }
    }
}

/// `a·Σ`, which equals `−[a]ₓ`.
fn rotation_generator(a: &Vector3<f64>) -> Matrix3<f64> {
    -skew(a)
}

/// A restricted Lorentz transformation `Λ^μ_ν`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LorentzMatrix(RMatrix4);

impl LorentzMatrix {
    /// Validates `m` against the group conditions at tolerance `tol`.
    pub fn from_matrix(m: RMatrix4, tol: f64) -> Result<Self> {
        let candidate = Self(m);
        let (metric_res, det_res) = candidate.membership_residuals();
        if metric_res > tol || det_res > tol || m[(0, 0)] < 1.0 - tol {
            return Err(Error::InvalidArgument(format!(
                "not in SO+(1,3): metric residual {metric_res:e}, det residual {det_res:e}, L00 = {}",
                m[(0, 0)]
            )));
        }
        Ok(candidate)
    }

    pub fn identity() -> Self {
        Self(RMatrix4::identity())
    }

    pub fn matrix(&self) -> &RMatrix4 {
        &self.0
    }

    /// `(max |ΛᵀgΛ − g|, |det Λ − 1|)`.
    pub fn membership_residuals(&self) -> (f64, f64) {
        let g = metric();
        let metric_res = max_abs(&(self.0.transpose() * g * self.0 - g));
        (metric_res, (self.0.determinant() - 1.0).abs())
    }

    pub fn is_valid(&self, tol: f64) -> bool {
        let (a, b) = self.membership_residuals();
        a <= tol && b <= tol && self.0[(0, 0)] >= 1.0 - tol
    }

    /// `Λ⁻¹ = g Λᵀ g`.
    pub fn inverse(&self) -> Self {
        let g = metric();
        Self(g * self.0.transpose() * g)
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self(self.0 * other.0)
    }

    /// The 3×3 spatial block `Λ^a_b`.
    pub fn spatial_block(&self) -> Matrix3<f64> {
        self.0.fixed_view::<3, 3>(1, 1).into_owned()
    }

    pub fn apply(&self, x: &[f64; 4]) -> [f64; 4] {
        let v = self.0 * nalgebra::Vector4::from(*x);
        [v[0], v[1], v[2], v[3]]
    }
}

/// An element `Q` of SO(3,ℂ).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexRotation(CMatrix3);

impl ComplexRotation {
    pub fn from_matrix(m: CMatrix3, tol: f64) -> Result<Self> {
        let candidate = Self(m);
        let (orth, det) = candidate.membership_residuals();
        if orth > tol || det > tol {
            return Err(Error::InvalidArgument(format!(
                "not in SO(3,C): orthogonality residual {orth:e}, det residual {det:e}"
            )));
        }
        Ok(candidate)
    }

    pub fn identity() -> Self {
        Self(CMatrix3::identity())
    }

    pub fn matrix(&self) -> &CMatrix3 {
        &self.0
    }

    /// `(max |QᵀQ − Id|, |det Q − 1|)`; plain transpose, not adjoint.
    pub fn membership_residuals(&self) -> (f64, f64) {
        let orth = max_abs(&(self.0.transpose() * self.0 - CMatrix3::identity()));
        (orth, (self.0.determinant() - Complex64::new(1.0, 0.0)).norm())
    }

    pub fn is_valid(&self, tol: f64) -> bool {
        let (a, b) = self.membership_residuals();
        a <= tol && b <= tol
    }

    /// `Q⁻¹ = Qᵀ`.
    pub fn inverse(&self) -> Self {
        Self(self.0.transpose())
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self(self.0 * other.0)
    }

    pub fn apply(&self, v: &CVector3) -> CVector3 {
        self.0 * v
    }
}

/// `exp(ξ·L + α·S)`.
///
/// Pure rotations and pure boosts use closed forms; mixed parameters go
/// through [`linalg::expm`].
pub fn exp_lorentz(p: &AlgebraParams) -> LorentzMatrix {
    if p.is_pure_boost() {
        return LorentzMatrix(boost_closed_form(&p.xi));
    }
    if p.is_pure_rotation() {
        let mut m = RMatrix4::identity();
        m.fixed_view_mut::<3, 3>(1, 1).copy_from(&rotation_closed_form(&p.alpha));
        return LorentzMatrix(m);
    }
    LorentzMatrix(linalg::expm(&p.lorentz_generator()))
}

/// `exp(ξ·Σ̃ + α·Σ)`.
pub fn exp_complex_rotation(p: &AlgebraParams) -> ComplexRotation {
    if p.is_pure_boost() {
        return ComplexRotation(complex_boost_closed_form(&p.xi));
    }
    if p.is_pure_rotation() {
        return ComplexRotation(rotation_closed_form(&p.alpha).map(|x| Complex64::new(x, 0.0)));
    }
    ComplexRotation(linalg::expm(&p.complex_generator()))
}

/// The pair `(Λ, Q)` representing one abstract group element.
pub fn correspondence(p: &AlgebraParams) -> (LorentzMatrix, ComplexRotation) {
    (exp_lorentz(p), exp_complex_rotation(p))
}

/// `(Λ, Q)` for the word `exp(p₁)·exp(p₂)·…` evaluated in both representations.
pub fn correspondence_word(word: &[AlgebraParams]) -> (LorentzMatrix, ComplexRotation) {
    word.iter().fold((LorentzMatrix::identity(), ComplexRotation::identity()), |(l, q), p| {
        let (lp, qp) = correspondence(p);
        (l.compose(&lp), q.compose(&qp))
    })
}

/// Rodrigues form of `exp(α·Σ) = exp(−[α]ₓ)`.
fn rotation_closed_form(alpha: &Vector3<f64>) -> Matrix3<f64> {
    let theta = alpha.norm();
    if theta == 0.0 {
        return Matrix3::identity();
    }
    let k = skew(&(alpha / theta));
    Matrix3::identity() - k * theta.sin() + k * k * (1.0 - theta.cos())
}

fn boost_closed_form(xi: &Vector3<f64>) -> RMatrix4 {
    let theta = xi.norm();
    let mut m = RMatrix4::identity();
    if theta == 0.0 {
        return m;
    }
    let n = xi / theta;
    let (ch, sh) = (theta.cosh(), theta.sinh());
    m[(0, 0)] = ch;
    for a in 0..3 {
        m[(0, a + 1)] = -n[a] * sh;
        m[(a + 1, 0)] = -n[a] * sh;
        for b in 0..3 {
            m[(a + 1, b + 1)] += (ch - 1.0) * n[a] * n[b];
        }
    }
    m
}

/// `exp(ξ·Σ̃) = Id − i sinh|ξ| K + (1 − cosh|ξ|) K²` with `K = [ξ̂]ₓ`.
fn complex_boost_closed_form(xi: &Vector3<f64>) -> CMatrix3 {
    let theta = xi.norm();
    if theta == 0.0 {
        return CMatrix3::identity();
    }
    let k = skew(&(xi / theta));
    let k2 = k * k;
    let (ch, sh) = (theta.cosh(), theta.sinh());
    CMatrix3::from_fn(|r, c| {
        let id = if r == c { 1.0 } else { 0.0 };
        Complex64::new(id + (1.0 - ch) * k2[(r, c)], -sh * k[(r, c)])
    })
}

/// Contravariant field strength with `F^{i0} = E_i`, `F^{ij} = −ε_ijk B_k`.
pub fn field_strength(e: &Vector3<f64>, b: &Vector3<f64>) -> RMatrix4 {
    let mut f = RMatrix4::zeros();
    for i in 0..3 {
        f[(i + 1, 0)] = e[i];
        f[(0, i + 1)] = -e[i];
        for j in 0..3 {
            let mut v = 0.0;
            for k in 0..3 {
                v -= f64::from(levi_civita(i, j, k)) * b[k];
            }
            f[(i + 1, j + 1)] = v;
        }
    }
    f
}

/// Inverse of [`field_strength`].
pub fn electric_magnetic(f: &RMatrix4) -> (Vector3<f64>, Vector3<f64>) {
    let e = Vector3::new(f[(1, 0)], f[(2, 0)], f[(3, 0)]);
    let b = Vector3::new(-f[(2, 3)], -f[(3, 1)], -f[(1, 2)]);
    (e, b)
}

/// Lorentz transformation of (E, B) through the tensor route `F' = ΛFΛᵀ`.
pub fn transform_eb(lambda: &LorentzMatrix, e: &Vector3<f64>, b: &Vector3<f64>) -> (Vector3<f64>, Vector3<f64>) {
    let f = field_strength(e, b);
    let m = lambda.matrix();
    electric_magnetic(&(m * f * m.transpose()))
}

fn bivector_of(e: &Vector3<f64>, b: &Vector3<f64>) -> CVector3 {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    CVector3::from_fn(|k, _| Complex64::new(e[k] * s, b[k] * s))
}

/// `‖Q·Ψ(E,B) − Ψ(E',B')‖` for an explicit pair `(Λ, Q)`.
pub fn faraday_roundtrip_with(
    lambda: &LorentzMatrix,
    q: &ComplexRotation,
    e: &Vector3<f64>,
    b: &Vector3<f64>,
) -> f64 {
    let (e2, b2) = transform_eb(lambda, e, b);
    (q.apply(&bivector_of(e, b)) - bivector_of(&e2, &b2)).norm()
}

/// Compares the bivector action of `Q` with the tensor transformation of the
/// field strength under `Λ`, both built from `p`.
pub fn faraday_tensor_roundtrip(p: &AlgebraParams, e: &Vector3<f64>, b: &Vector3<f64>) -> f64 {
    let (lambda, q) = correspondence(p);
    faraday_roundtrip_with(&lambda, &q, e, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::I;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Independent oracle: plain power series, 30 terms.
    fn series<T, const D: usize>(x: &nalgebra::SMatrix<T, D, D>) -> nalgebra::SMatrix<T, D, D>
    where
        T: nalgebra::ComplexField<RealField = f64>,
    {
        let mut term = nalgebra::SMatrix::<T, D, D>::identity();
        let mut sum = term.clone();
        for k in 1..30 {
            term = (&term * x) * T::from_real(1.0 / k as f64);
            sum += &term;
        }
        sum
    }

    #[test]
    fn sigma_tilde_three_entries() {
        let b = generators();
        let st3 = b.sigma_tilde()[2];
        for r in 0..3 {
            for col in 0..3 {
                let want = match (r, col) {
                    (0, 1) => c(0.0, 1.0),
                    (1, 0) => c(0.0, -1.0),
                    _ => c(0.0, 0.0),
                };
                assert_eq!(st3[(r, col)], want);
            }
        }
    }

    #[test]
    fn boost_generator_l1() {
        let l1 = generators().l()[0];
        for r in 0..4 {
            for col in 0..4 {
                let want = if (r, col) == (0, 1) || (r, col) == (1, 0) { -1.0 } else { 0.0 };
                assert_eq!(l1[(r, col)], want);
            }
        }
    }

    #[test]
    fn gamma_zero_is_identity() {
        let b = generators();
        assert_eq!(b.gamma()[0], CMatrix3::identity());
        assert_eq!(b.gamma_bar()[0], CMatrix3::identity());
        for k in 0..3 {
            assert_eq!(b.gamma()[k + 1], -b.sigma_tilde()[k]);
            assert_eq!(b.gamma_bar()[k + 1], b.sigma_tilde()[k]);
        }
    }

    #[test]
    fn basis_invariants() {
        let b = generators();
        let allowed = [c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0)];
        for k in 0..3 {
            assert_eq!(b.sigma()[k].transpose(), -b.sigma()[k]);
            assert_eq!(b.sigma_tilde()[k].transpose(), -b.sigma_tilde()[k]);
            assert_eq!(b.sigma_tilde()[k], b.sigma_complex()[k] * I);
            assert_eq!(b.s()[k].transpose(), -b.s()[k]);
            assert_eq!(b.l()[k].transpose(), b.l()[k]);
            for z in b.sigma_tilde()[k].iter().chain(b.gamma()[k + 1].iter()) {
                assert!(allowed.contains(z));
            }
        }
    }

    #[test]
    fn commutator_examples() {
        let b = generators();
        assert_eq!(commutator(&b.s()[0], &b.s()[1]), -b.s()[2]);
        assert_eq!(commutator(&b.l()[0], &b.l()[0]), RMatrix4::zeros());
        assert_eq!(commutator(&b.sigma_tilde()[0], &b.sigma_tilde()[1]), b.sigma_complex()[2]);
    }

    #[test]
    fn structure_constants_exact() {
        let report = check_structure_constants(&generators());
        assert_eq!(report.max_residual(), 0.0);
        assert_eq!(report.identification, 0.0);
        assert_eq!(report.relations, 54);
    }

    #[test]
    fn corrupted_basis_detected() {
        let b = generators();
        let flipped = -b.sigma_tilde()[0];
        let report = check_structure_constants(&b.with_sigma_tilde(0, flipped));
        assert!(report.tilde_tilde > 0.0);
        assert!(report.identification > 0.0);

        let b = generators();
        let s0 = -b.s()[0];
        assert!(check_structure_constants(&b.with_s(0, s0)).rotation_rotation > 0.0);
    }

    #[test]
    fn exp_lorentz_single_axis_boost() {
        for xi in [0.1, 1.0, 2.0] {
            let lam = exp_lorentz(&AlgebraParams::boost([xi, 0.0, 0.0]).unwrap());
            let mut want = RMatrix4::identity();
            want[(0, 0)] = xi.cosh();
            want[(1, 1)] = xi.cosh();
            want[(0, 1)] = -xi.sinh();
            want[(1, 0)] = -xi.sinh();
            assert!(max_abs(&(lam.matrix() - want)) <= 1e-12);
        }
    }

    #[test]
    fn exp_identity() {
        assert_eq!(*exp_lorentz(&AlgebraParams::zero()).matrix(), RMatrix4::identity());
        assert_eq!(*exp_complex_rotation(&AlgebraParams::zero()).matrix(), CMatrix3::identity());
    }

    #[test]
    fn exp_lorentz_general_matches_series() {
        let p = AlgebraParams::new([0.3, 0.4, 0.0], [0.0, 0.0, 1.1]).unwrap();
        let lam = exp_lorentz(&p);
        let oracle = series(&p.lorentz_generator());
        assert!(max_abs(&(lam.matrix() - oracle)) <= 1e-12);
        assert!(lam.is_valid(1e-12));
        assert!(lam.matrix()[(0, 0)] >= 1.0);
    }

    #[test]
    fn closed_forms_match_series() {
        for p in [
            AlgebraParams::boost([0.7, -1.1, 0.4]).unwrap(),
            AlgebraParams::rotation([2.0, -0.5, 1.3]).unwrap(),
        ] {
            let lam = exp_lorentz(&p);
            assert!(max_abs(&(lam.matrix() - series(&p.lorentz_generator()))) <= 1e-12);
            let q = exp_complex_rotation(&p);
            assert!(max_abs(&(q.matrix() - series(&p.complex_generator()))) <= 1e-12);
        }
    }

    #[test]
    fn complex_boost_x1() {
        for xi in [0.1, 1.0, 2.0] {
            let q = exp_complex_rotation(&AlgebraParams::boost([xi, 0.0, 0.0]).unwrap());
            let (ch, sh) = (xi.cosh(), xi.sinh());
            let want = CMatrix3::new(
                c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0),
                c(0.0, 0.0), c(ch, 0.0), c(0.0, sh),
                c(0.0, 0.0), c(0.0, -sh), c(ch, 0.0),
            );
            assert!(max_abs(&(q.matrix() - want)) <= 1e-12);
        }
    }

    #[test]
    fn rotation_x1() {
        let a = 0.8f64;
        let q = exp_complex_rotation(&AlgebraParams::rotation([a, 0.0, 0.0]).unwrap());
        let want = Matrix3::new(1.0, 0.0, 0.0, 0.0, a.cos(), a.sin(), 0.0, -a.sin(), a.cos());
        assert!(max_abs(&(q.matrix() - want.map(|x| c(x, 0.0)))) <= 1e-12);
    }

    #[test]
    fn rotation_block_consistency() {
        let p = AlgebraParams::rotation([0.4, -1.7, 0.9]).unwrap();
        let (lam, q) = correspondence(&p);
        let block = lam.spatial_block().map(|x| c(x, 0.0));
        assert!(max_abs(&(q.matrix() - block)) <= 1e-12);
        assert!(q.matrix().iter().all(|z| z.im == 0.0));
    }

    #[test]
    fn inverse_pairs() {
        let p = AlgebraParams::new([0.5, -0.2, 1.0], [0.3, 0.9, -1.4]).unwrap();
        let (l1, q1) = correspondence(&p);
        let (l2, q2) = correspondence(&-p);
        assert!(max_abs(&(l1.compose(&l2).matrix() - RMatrix4::identity())) <= 1e-12);
        assert!(max_abs(&(q1.compose(&q2).matrix() - CMatrix3::identity())) <= 1e-12);
        assert!(max_abs(&(l1.inverse().matrix() - l2.matrix())) <= 1e-12);
        assert!(max_abs(&(q1.inverse().matrix() - q2.matrix())) <= 1e-12);
    }

    #[test]
    fn field_strength_roundtrip_is_exact() {
        let e = Vector3::new(0.3, -0.2, 0.9);
        let b = Vector3::new(-1.0, 0.5, 0.25);
        assert_eq!(electric_magnetic(&field_strength(&e, &b)), (e, b));
    }

    #[test]
    fn boost_table_single_entry() {
        let xi = 0.7f64;
        let p = AlgebraParams::boost([xi, 0.0, 0.0]).unwrap();
        let e = Vector3::new(0.0, 1.3, 0.0);
        let (e2, b2) = transform_eb(&exp_lorentz(&p), &e, &Vector3::zeros());
        let (gamma, beta) = (xi.cosh(), xi.tanh());
        assert!((e2[1] - gamma * 1.3).abs() <= 1e-12);
        assert!((b2[2] + gamma * beta * 1.3).abs() <= 1e-12);
        assert!(faraday_tensor_roundtrip(&p, &e, &Vector3::zeros()) <= 1e-12);
    }

    #[test]
    fn identity_roundtrip_zero() {
        let e = Vector3::new(0.1, 0.2, 0.3);
        let b = Vector3::new(-0.4, 0.5, -0.6);
        assert_eq!(faraday_tensor_roundtrip(&AlgebraParams::zero(), &e, &b), 0.0);
    }

    #[test]
    fn nonfinite_params_rejected() {
        assert!(AlgebraParams::new([f64::NAN, 0.0, 0.0], [0.0; 3]).is_err());
        assert!(AlgebraParams::new([0.0; 3], [0.0, f64::INFINITY, 0.0]).is_err());
    }

    #[test]
    fn validated_constructors() {
        assert!(LorentzMatrix::from_matrix(RMatrix4::identity() * 2.0, 1e-12).is_err());
        let lam = exp_lorentz(&AlgebraParams::new([0.2, 0.1, 0.0], [1.0, 0.0, 0.0]).unwrap());
        assert!(LorentzMatrix::from_matrix(*lam.matrix(), 1e-12).is_ok());
        assert!(ComplexRotation::from_matrix(CMatrix3::identity() * c(0.0, 1.0), 1e-12).is_err());
    }
}
