//! Complex bivector representation of the electromagnetic field.
//!
//! The field is packaged as Ψ = (E + iB)/√2, a complex three-vector that
//! transforms under SO(3,ℂ). This crate provides:
//!
//! * [`repr`]: generators of SO⁺(1,3) and SO(3,ℂ), their exponential maps and
//!   the parameter-level correspondence Λ ↔ Q, checked against the tensor
//!   transformation of the field strength.
//! * [`field`]: pointwise bivector values, plane waves, observables and
//!   analytic field maps that can be Lorentz transformed exactly.
//! * [`grid`] / [`spectral`] / [`io`]: periodic lattices of bivectors,
//!   spectral vector calculus and the `RSBV` binary dump format.
//! * [`dynamics`]: vacuum and current-driven evolution with conservation
//!   monitors.
//! * [`nogo`]: numerical certificates that no mass term can be attached to
//!   the bivector equation and that no Dirac-style covariance relation holds.

pub mod dynamics;
pub mod error;
pub mod field;
pub mod grid;
pub mod io;
pub mod linalg;
pub mod nogo;
pub mod repr;
pub mod spectral;

pub use error::{Error, Result};
pub use field::{Bivector, Handedness, PlaneWaveSpec};
pub use grid::FieldGrid;
pub use repr::{AlgebraParams, ComplexRotation, GeneratorBasis, LorentzMatrix};

pub use num_complex::Complex64;
