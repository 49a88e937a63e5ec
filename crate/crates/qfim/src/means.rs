//! Kubo-Ando matrix means.
//!
//! A matrix mean corresponds to an operator monotone function through
//! m_f(A, B) = A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2}; on commuting
//! arguments (in particular scalars) this collapses to m_f(x, y) = x f(y/x).
//! The same kernel drives the superoperator m_f(L_rho, R_rho), which acts
//! entrywise in the eigenbasis of the state and underlies every monotone
//! metric computation.

use log::warn;

use crate::eig::SpectralDecomposition;
use crate::error::{Error, Result};
use crate::monotone::MonotoneFunction;
use crate::scalar::Scalar;
use crate::state::{DensityMatrix, HermitianMatrix};

/// Condition number of the first argument above which `matrix_mean` logs
/// a warning.
pub const CONDITION_WARN: f64 = 1e12;

/// Scalar Kubo-Ando mean m_f(x, y) = x f(y/x), evaluated with the smaller
/// argument as base so the result is exactly symmetric.
///
/// Zero arguments are admitted only for non-regular f, where continuity
/// forces m_f(0, y) = y f(0) = 0; for regular f a nonpositive argument is
/// an error, as is any negative argument.
pub fn scalar_mean<S: Scalar>(f: &MonotoneFunction<S>, x: S, y: S) -> Result<S> {
    if x < S::zero() || y < S::zero() || ((x == S::zero() || y == S::zero()) && f.regular()) {
        return Err(Error::NonPositiveMeanInput {
            name: f.name().to_string(),
            x: x.as_f64(),
            y: y.as_f64(),
        });
    }
    Ok(mean_kernel(f, x, y))
}

/// Mean kernel with the zero-eigenvalue continuity rule for any f:
/// m_f(0, y) = y f(0) (the limit of x f(y/x) as x -> 0+), m_f(0, 0) = 0.
/// Used where eigenvalues of a state appear as arguments.
pub(crate) fn mean_kernel<S: Scalar>(f: &MonotoneFunction<S>, x: S, y: S) -> S {
    let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
    if lo == S::zero() {
        return hi * f.f_zero();
    }
    lo * f.eval(hi / lo)
}

/// Matrix mean m_f(A, B) = A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2} for
/// strictly positive definite Hermitian A, B.
pub fn matrix_mean<S: Scalar>(
    f: &MonotoneFunction<S>,
    a: &HermitianMatrix<S>,
    b: &HermitianMatrix<S>,
) -> Result<HermitianMatrix<S>> {
    a.matrix().check_same_dim(b.matrix())?;
    let sa = crate::state::eig_hermitian(a)?;
    let (amin, amax) = (sa.eigenvalues[0], sa.eigenvalues[sa.dim() - 1]);
    if amin <= S::zero() {
        return Err(Error::NotPositiveDefinite {
            min_eigenvalue: amin.as_f64(),
        });
    }
    let sb = crate::state::eig_hermitian(b)?;
    if sb.eigenvalues[0] <= S::zero() {
        return Err(Error::NotPositiveDefinite {
            min_eigenvalue: sb.eigenvalues[0].as_f64(),
        });
    }
    let cond = (amax / amin).as_f64();
    if cond > CONDITION_WARN {
        warn!("matrix_mean: condition number of A is {cond:e}");
    }

    let a_half = sa.reconstruct_with(|l| l.sqrt());
    let a_inv_half = sa.reconstruct_with(|l| l.sqrt().recip());
    let inner = HermitianMatrix::new(a_inv_half.mul(b.matrix()).mul(&a_inv_half).symmetrized())?;
    let f_inner = crate::state::matrix_function(&inner, |x| f.eval(x))?;
    HermitianMatrix::new(a_half.mul(f_inner.matrix()).mul(&a_half).symmetrized())
}

/// The superoperator m_f(L_rho, R_rho) in the eigenbasis of a fixed state:
/// entry (i, j) of the transformed matrix is scaled by m_f(lambda_i, lambda_j).
#[derive(Debug, Clone)]
pub struct MeanOperator<S: Scalar> {
    f: MonotoneFunction<S>,
    spectral: SpectralDecomposition<S>,
    min_eigenvalue: S,
    faithful: bool,
}

impl<S: Scalar> MeanOperator<S> {
    pub fn new(f: MonotoneFunction<S>, rho: &DensityMatrix<S>) -> Self {
        Self {
            f,
            spectral: rho.spectral().clone(),
            min_eigenvalue: rho.min_eigenvalue(),
            faithful: rho.faithful(),
        }
    }

    pub fn function(&self) -> &MonotoneFunction<S> {
        &self.f
    }

    fn transform(
        &self,
        x: &HermitianMatrix<S>,
        entry: impl Fn(S, S) -> S,
    ) -> Result<HermitianMatrix<S>> {
        if x.dim() != self.spectral.dim() {
            return Err(Error::DimensionMismatch {
                left: self.spectral.dim(),
                right: x.dim(),
            });
        }
        let lambdas = &self.spectral.eigenvalues;
        let mut tilde = self.spectral.to_eigenbasis(x.matrix());
        let n = tilde.dim();
        for i in 0..n {
            for j in 0..n {
                tilde[(i, j)] = tilde[(i, j)].scale(entry(lambdas[i], lambdas[j]));
            }
        }
        HermitianMatrix::new(self.spectral.from_eigenbasis(&tilde).symmetrized())
    }

    /// m_f(L_rho, R_rho) applied to X.
    pub fn apply(&self, x: &HermitianMatrix<S>) -> Result<HermitianMatrix<S>> {
        self.transform(x, |li, lj| mean_kernel(&self.f, li, lj))
    }

    /// m_f(L_rho, R_rho)^{-1} applied to X; requires a faithful state so
    /// every divisor m_f(lambda_i, lambda_j) is strictly positive.
    pub fn apply_inverse(&self, x: &HermitianMatrix<S>) -> Result<HermitianMatrix<S>> {
        if !self.faithful {
            return Err(Error::NonFaithful {
                min_eigenvalue: self.min_eigenvalue.as_f64(),
            });
        }
        self.transform(x, |li, lj| mean_kernel(&self.f, li, lj).recip())
    }
}
