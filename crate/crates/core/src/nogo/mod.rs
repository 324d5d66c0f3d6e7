//! Numerical certificates for the obstructions to a mass term, to a gauge
//! potential, and to a Dirac-style covariance relation for the bivector field.

pub mod bases;
mod covariance;
mod gauge;
mod mass;

pub use bases::SmallRepBases;
pub use covariance::{
    bispi_identity_check, bivector_covariance_failure, dirac_covariance_check, dirac_spinor_matrix, CovarianceFailure,
    COVARIANCE_FLOOR, MIN_SPATIAL_DET,
};
pub use gauge::{gauge_potential_failure, rep_dimension_decomposition, tensor_product, Decomposition, GaugeFailure, SpinPair};
pub use mass::{
    antilinear_obstruction, linear_mass_residual, majorana_dispersion, majorana_residual, minimize_linear_residual,
    pauli_contrast, signed_permutations, AntilinearAnsatz, AntilinearReport, LinearAnsatz, LinearSearch,
    MajoranaReport, PauliReport, LINEAR_FLOOR, MIN_DET,
};
