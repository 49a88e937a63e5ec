//! Unitary orbits of states and invariance checks.
//!
//! A Hermitian generator H drives rho_H(t) = e^{-itH} rho e^{itH}, with
//! derivative i[rho_H(t), H]. When [A, H] = 0 the f-information of A is
//! constant along the orbit, a consequence of unitary covariance of the
//! monotone metrics. Both facts are verified numerically here.

use num_complex::Complex;

use crate::eig::SpectralDecomposition;
use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::monotone::MonotoneFunction;
use crate::qfi::{f_information, metric_norm_sq, InfoPath};
use crate::report::{relative_tolerance, CheckReport};
use crate::scalar::Scalar;
use crate::state::{commutator, DensityMatrix, HermitianMatrix};

/// Commutation threshold for the constancy hypothesis ||[A, H]||_F.
pub const COMMUTATION_TOLERANCE: f64 = 1e-12;
/// Unitarity threshold ||U*U - I||_F for covariance checks.
pub const UNITARITY_TOLERANCE: f64 = 1e-10;

/// An initial state, a Hermitian generator, and sample times.
#[derive(Debug, Clone)]
pub struct EvolutionSpec<S: Scalar> {
    rho0: DensityMatrix<S>,
    generator: HermitianMatrix<S>,
    times: Vec<S>,
    generator_spectral: SpectralDecomposition<S>,
}

impl<S: Scalar> EvolutionSpec<S> {
    /// Times must be finite and ascending.
    pub fn new(
        rho0: DensityMatrix<S>,
        generator: HermitianMatrix<S>,
        times: Vec<S>,
    ) -> Result<Self> {
        rho0.matrix().check_same_dim(generator.matrix())?;
        if times.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidParameter("times must be finite".into()));
        }
        if times.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidParameter(
                "times must be sorted ascending".into(),
            ));
        }
        let generator_spectral = crate::state::eig_hermitian(&generator)?;
        Ok(Self {
            rho0,
            generator,
            times,
            generator_spectral,
        })
    }

    pub fn initial_state(&self) -> &DensityMatrix<S> {
        &self.rho0
    }

    pub fn generator(&self) -> &HermitianMatrix<S> {
        &self.generator
    }

    pub fn times(&self) -> &[S] {
        &self.times
    }

    /// e^{-itH} by spectral calculus of the generator.
    pub fn propagator(&self, t: S) -> CMatrix<S> {
        self.generator_spectral
            .reconstruct_with_complex(|l| Complex::from_polar(S::one(), -t * l))
    }
}

/// rho_H(t) = e^{-itH} rho e^{itH}.
pub fn evolve<S: Scalar>(spec: &EvolutionSpec<S>, t: S) -> Result<DensityMatrix<S>> {
    let u = spec.propagator(t);
    let rotated = u.mul(spec.rho0.matrix()).mul(&u.adjoint());
    DensityMatrix::new(HermitianMatrix::new(rotated.symmetrized())?)
}

/// Checks that I_f(rho_H(t), A) stays at its t = 0 value across the
/// sample times. Requires [A, H] = 0; if the hypothesis fails the check
/// still runs, records the observed drift, and the report is marked.
pub fn constancy_check<S: Scalar>(
    f: &MonotoneFunction<S>,
    spec: &EvolutionSpec<S>,
    a: &HermitianMatrix<S>,
) -> Result<CheckReport> {
    f.require_regular()?;
    let commutation = commutator(a, spec.generator())?.frobenius_norm();
    let hypothesis_ok = commutation <= S::real(COMMUTATION_TOLERANCE);

    let i0 = f_information(
        f,
        spec.initial_state(),
        a,
        InfoPath::VarianceMinusCorrelation,
    )?
    .value;
    let mut drift = S::zero();
    for &t in spec.times() {
        let rho_t = evolve(spec, t)?;
        let i_t = f_information(f, &rho_t, a, InfoPath::VarianceMinusCorrelation)?.value;
        drift = drift.max((i_t - i0).abs());
    }

    let tolerance = relative_tolerance(1e-9, i0.as_f64());
    let mut report = CheckReport::new(
        "constancy",
        f.name(),
        spec.initial_state().dim(),
        0,
        drift.as_f64(),
        i0.as_f64(),
        -drift.as_f64(),
        tolerance,
    )
    .with_detail("commutator_norm", format!("{:e}", commutation.as_f64()))
    .with_detail("hypothesis", if hypothesis_ok { "ok" } else { "violated" });
    if !hypothesis_ok {
        report = report.with_detail("note", "[A,H] != 0: drift is expected to be nonzero");
    }
    Ok(report)
}

/// Checks metric invariance under a unitary frame change:
/// ||U*AU||^2_{U* rho U, f} = ||A||^2_{rho, f}.
pub fn unitary_covariance_check<S: Scalar>(
    f: &MonotoneFunction<S>,
    rho: &DensityMatrix<S>,
    a: &HermitianMatrix<S>,
    u: &CMatrix<S>,
) -> Result<CheckReport> {
    rho.matrix().check_same_dim(u)?;
    let unitarity = u.unitarity_deviation();
    if unitarity > S::real(UNITARITY_TOLERANCE) {
        return Err(Error::NotUnitary {
            deviation: unitarity.as_f64(),
        });
    }
    let base = metric_norm_sq(f, rho, a)?;
    let rho_rot = DensityMatrix::new(HermitianMatrix::new(
        rho.matrix().conjugate_by(u).symmetrized(),
    )?)?;
    let a_rot = HermitianMatrix::new(a.matrix().conjugate_by(u).symmetrized())?;
    let rotated = metric_norm_sq(f, &rho_rot, &a_rot)?;

    let deviation = (rotated - base).abs();
    let tolerance = relative_tolerance(1e-9, base.as_f64());
    Ok(CheckReport::new(
        "covariance",
        f.name(),
        rho.dim(),
        0,
        rotated.as_f64(),
        base.as_f64(),
        -deviation.as_f64(),
        tolerance,
    ))
}
