//! Monotone quantum Fisher information metrics, Kubo-Ando matrix means, and
//! metric-adjusted skew information for finite-dimensional quantum states.
//!
//! The core is generic over the real scalar type (`f32`/`f64`) through the
//! [`scalar::Scalar`] trait; the `*64` aliases below fix the double-precision
//! instantiation that all shipped tolerances are sized for.
//!
//! Main entry points:
//!
//! - [`state`]: Hermitian observables, density matrices, spectral calculus.
//! - [`monotone`]: the catalog of symmetric normalized operator monotone
//!   functions and the tilde transform.
//! - [`means`]: scalar and matrix Kubo-Ando means plus the mean
//!   superoperator in a state's eigenbasis.
//! - [`qfi`]: monotone-metric inner products, variance/covariance, and the
//!   f-information computed by independent paths.
//! - [`inequalities`]: verifiers for the information sandwich, variance
//!   bound, scalar/mean equivalences, and optimality counterexamples.
//! - [`bloch`]: closed-form qubit (Bloch sphere) analysis.
//! - [`evolution`]: unitary orbits, constancy under commuting generators,
//!   unitary covariance of the metrics.

pub mod bloch;
pub mod eig;
pub mod error;
pub mod evolution;
pub mod inequalities;
pub mod matrix;
pub mod means;
pub mod monotone;
pub mod qfi;
pub mod random;
pub mod report;
pub mod scalar;
pub mod state;

pub use error::{Error, Result};
pub use report::CheckReport;
pub use scalar::Scalar;

/// Double-precision complex entry type.
pub type Complex64 = num_complex::Complex<f64>;
/// Double-precision dense complex matrix.
pub type CMatrix64 = matrix::CMatrix<f64>;
/// Double-precision Hermitian observable.
pub type Hermitian64 = state::HermitianMatrix<f64>;
/// Double-precision density matrix.
pub type Density64 = state::DensityMatrix<f64>;
/// Double-precision spectral decomposition.
pub type Spectral64 = eig::SpectralDecomposition<f64>;
/// Double-precision operator monotone function descriptor.
pub type Monotone64 = monotone::MonotoneFunction<f64>;
/// Double-precision Bloch vector.
pub type Bloch64 = bloch::BlochVector<f64>;
