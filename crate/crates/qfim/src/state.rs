//! Hermitian observables and density matrices.
//!
//! `HermitianMatrix` guarantees exact Hermitian storage after a symmetry
//! check on construction. `DensityMatrix` adds unit trace and a clamped
//! nonnegative spectrum, and caches its spectral decomposition since every
//! metric computation works in the state's eigenbasis.

use num_complex::Complex;

use crate::eig::{jacobi_hermitian, SpectralDecomposition};
use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::scalar::Scalar;

/// Construction tolerance for the Hermitian symmetry check.
pub const HERMITIAN_TOLERANCE: f64 = 1e-12;
/// Construction tolerance for |Tr(rho) - 1|.
pub const TRACE_TOLERANCE: f64 = 1e-12;
/// Eigenvalues with magnitude below this are clamped to 0; values below
/// the negative of it reject the matrix as a state.
pub const EIGENVALUE_CLAMP: f64 = 1e-12;
/// A state is faithful iff its smallest eigenvalue exceeds this.
pub const FAITHFULNESS_THRESHOLD: f64 = 1e-9;

/// n x n complex self-adjoint matrix.
#[derive(Debug, Clone)]
pub struct HermitianMatrix<S: Scalar> {
    data: CMatrix<S>,
}

impl<S: Scalar> HermitianMatrix<S> {
    /// Checks the symmetry deviation, then stores the symmetrized matrix
    /// (exactly Hermitian, real diagonal).
    pub fn new(m: CMatrix<S>) -> Result<Self> {
        let dev = m.hermitian_deviation();
        let tol = S::real(HERMITIAN_TOLERANCE);
        if dev > tol {
            return Err(Error::NotHermitian {
                max_deviation: dev.as_f64(),
                tolerance: HERMITIAN_TOLERANCE,
            });
        }
        Ok(Self {
            data: m.symmetrized(),
        })
    }

    /// Builds from the upper triangle of the generated entries; no check
    /// needed because the result is Hermitian by construction.
    pub fn from_upper_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex<S>) -> Self {
        let mut m = CMatrix::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex::new(f(i, i).re, S::zero());
            for j in i + 1..dim {
                let z = f(i, j);
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        Self { data: m }
    }

    pub fn from_real_diag(diag: &[S]) -> Self {
        Self {
            data: CMatrix::from_real_diag(diag),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            data: CMatrix::identity(dim),
        }
    }

    /// sigma_1 = [[0,1],[1,0]]
    pub fn pauli_x() -> Self {
        Self::from_upper_fn(2, |i, j| {
            if (i, j) == (0, 1) {
                Complex::new(S::one(), S::zero())
            } else {
                Complex::new(S::zero(), S::zero())
            }
        })
    }

    /// sigma_2 = [[0,-i],[i,0]]
    pub fn pauli_y() -> Self {
        Self::from_upper_fn(2, |i, j| {
            if (i, j) == (0, 1) {
                Complex::new(S::zero(), -S::one())
            } else {
                Complex::new(S::zero(), S::zero())
            }
        })
    }

    /// sigma_3 = [[1,0],[0,-1]]
    pub fn pauli_z() -> Self {
        Self::from_real_diag(&[S::one(), -S::one()])
    }

    pub fn dim(&self) -> usize {
        self.data.dim()
    }

    pub fn matrix(&self) -> &CMatrix<S> {
        &self.data
    }

    pub fn into_matrix(self) -> CMatrix<S> {
        self.data
    }

    /// Real trace (the stored diagonal is exactly real).
    pub fn trace(&self) -> S {
        self.data.trace().re
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.data.check_same_dim(&other.data)?;
        Ok(Self {
            data: self.data.add(&other.data),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.data.check_same_dim(&other.data)?;
        Ok(Self {
            data: self.data.sub(&other.data),
        })
    }

    pub fn scale(&self, by: S) -> Self {
        Self {
            data: self.data.scale_real(by),
        }
    }
}

/// Positive semidefinite, unit-trace Hermitian matrix with cached spectrum.
#[derive(Debug, Clone)]
pub struct DensityMatrix<S: Scalar> {
    base: HermitianMatrix<S>,
    spectral: SpectralDecomposition<S>,
}

impl<S: Scalar> DensityMatrix<S> {
    pub fn new(base: HermitianMatrix<S>) -> Result<Self> {
        let trace = base.trace();
        if (trace - S::one()).abs() > S::real(TRACE_TOLERANCE) {
            return Err(Error::InvalidTrace {
                trace: trace.as_f64(),
                tolerance: TRACE_TOLERANCE,
            });
        }
        let mut spectral = jacobi_hermitian(base.matrix())?;
        let clamp = S::real(EIGENVALUE_CLAMP);
        for l in spectral.eigenvalues.iter_mut() {
            if *l < -clamp {
                return Err(Error::NegativeEigenvalue { value: l.as_f64() });
            }
            if l.abs() < clamp {
                *l = S::zero();
            }
        }
        Ok(Self { base, spectral })
    }

    /// rho = I/n.
    pub fn maximally_mixed(dim: usize) -> Self {
        let p = S::one() / S::real(dim as f64);
        let base = HermitianMatrix::from_real_diag(&vec![p; dim]);
        Self::new(base).expect("I/n is a valid state")
    }

    /// Diagonal state from probabilities (renormalization is on the caller).
    pub fn from_probabilities(probs: &[S]) -> Result<Self> {
        Self::new(HermitianMatrix::from_real_diag(probs))
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn matrix(&self) -> &CMatrix<S> {
        self.base.matrix()
    }

    pub fn hermitian(&self) -> &HermitianMatrix<S> {
        &self.base
    }

    /// Clamped eigenvalues, ascending.
    pub fn eigenvalues(&self) -> &[S] {
        &self.spectral.eigenvalues
    }

    pub fn spectral(&self) -> &SpectralDecomposition<S> {
        &self.spectral
    }

    pub fn min_eigenvalue(&self) -> S {
        self.spectral.eigenvalues[0]
    }

    /// Strictly positive beyond the faithfulness threshold.
    pub fn faithful(&self) -> bool {
        self.min_eigenvalue() > S::real(FAITHFULNESS_THRESHOLD)
    }

    pub fn require_faithful(&self) -> Result<()> {
        if self.faithful() {
            Ok(())
        } else {
            Err(Error::NonFaithful {
                min_eigenvalue: self.min_eigenvalue().as_f64(),
            })
        }
    }
}

/// Spectral decomposition of a Hermitian matrix, eigenvalues ascending.
pub fn eig_hermitian<S: Scalar>(m: &HermitianMatrix<S>) -> Result<SpectralDecomposition<S>> {
    jacobi_hermitian(m.matrix())
}

/// U phi(Lambda) U^dagger by spectral functional calculus.
///
/// Errors when phi is undefined (non-finite) at some eigenvalue.
pub fn matrix_function<S: Scalar>(
    m: &HermitianMatrix<S>,
    phi: impl Fn(S) -> S,
) -> Result<HermitianMatrix<S>> {
    let spectral = eig_hermitian(m)?;
    for &l in &spectral.eigenvalues {
        if !phi(l).is_finite() {
            return Err(Error::FunctionUndefined { at: l.as_f64() });
        }
    }
    HermitianMatrix::new(spectral.reconstruct_with(phi))
}

/// AB - BA. Skew-Hermitian for Hermitian inputs.
pub fn commutator<S: Scalar>(a: &HermitianMatrix<S>, b: &HermitianMatrix<S>) -> Result<CMatrix<S>> {
    a.matrix().check_same_dim(b.matrix())?;
    Ok(a.matrix().mul(b.matrix()).sub(&b.matrix().mul(a.matrix())))
}

/// i(AB - BA), Hermitian and traceless for Hermitian inputs; this is the
/// tangent vector of the unitary orbit through the state.
pub fn i_commutator<S: Scalar>(
    a: &HermitianMatrix<S>,
    b: &HermitianMatrix<S>,
) -> Result<HermitianMatrix<S>> {
    let c = commutator(a, b)?;
    let i = Complex::new(S::zero(), S::one());
    HermitianMatrix::new(c.scale(i))
}

/// Re Tr(rho A).
pub fn expectation<S: Scalar>(rho: &DensityMatrix<S>, a: &HermitianMatrix<S>) -> Result<S> {
    rho.matrix().check_same_dim(a.matrix())?;
    let n = rho.dim();
    let mut acc = Complex::new(S::zero(), S::zero());
    for i in 0..n {
        for j in 0..n {
            acc = acc + rho.matrix()[(i, j)] * a.matrix()[(j, i)];
        }
    }
    Ok(acc.re)
}

/// A - Tr(rho A) I, the observable centered at the state.
pub fn center<S: Scalar>(
    a: &HermitianMatrix<S>,
    rho: &DensityMatrix<S>,
) -> Result<HermitianMatrix<S>> {
    let mean = expectation(rho, a)?;
    a.sub(&HermitianMatrix::identity(a.dim()).scale(mean))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn rho_82() -> DensityMatrix<f64> {
        DensityMatrix::<f64>::from_probabilities(&[0.8, 0.2]).unwrap()
    }

    #[test]
    fn rejects_non_hermitian_input() {
        let mut m = CMatrix::zeros(2);
        m[(0, 1)] = c(1.0, 0.0);
        m[(1, 0)] = c(0.5, 0.0);
        assert!(matches!(
            HermitianMatrix::new(m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn density_requires_unit_trace() {
        let m = HermitianMatrix::<f64>::from_real_diag(&[0.8, 0.8]);
        assert!(matches!(
            DensityMatrix::new(m),
            Err(Error::InvalidTrace { .. })
        ));
    }

    #[test]
    fn density_rejects_negative_spectrum() {
        let m = HermitianMatrix::<f64>::from_real_diag(&[1.2, -0.2]);
        assert!(matches!(
            DensityMatrix::new(m),
            Err(Error::NegativeEigenvalue { .. })
        ));
    }

    #[test]
    fn faithfulness_thresholds() {
        assert!(rho_82().faithful());
        let pure = DensityMatrix::<f64>::from_probabilities(&[1.0, 0.0]).unwrap();
        assert!(!pure.faithful());
        assert_eq!(pure.min_eigenvalue(), 0.0);
    }

    #[test]
    fn commutator_hand_value() {
        // [diag(0.8,0.2), sigma_1] = [[0, 0.6],[-0.6, 0]]
        let rho = HermitianMatrix::<f64>::from_real_diag(&[0.8, 0.2]);
        let k = commutator(&rho, &HermitianMatrix::<f64>::pauli_x()).unwrap();
        assert!((k[(0, 1)] - c(0.6, 0.0)).norm() < 1e-15);
        assert!((k[(1, 0)] - c(-0.6, 0.0)).norm() < 1e-15);
        assert!(k[(0, 0)].norm() < 1e-15 && k[(1, 1)].norm() < 1e-15);
    }

    #[test]
    fn commutator_of_matrix_with_itself_vanishes() {
        let a = HermitianMatrix::<f64>::pauli_y();
        let k = commutator(&a, &a).unwrap();
        assert!(k.frobenius_norm() == 0.0);
    }

    #[test]
    fn pauli_algebra() {
        // [sigma_1, sigma_2] = 2i sigma_3
        let k = commutator(
            &HermitianMatrix::<f64>::pauli_x(),
            &HermitianMatrix::<f64>::pauli_y(),
        )
        .unwrap();
        assert!((k[(0, 0)] - c(0.0, 2.0)).norm() < 1e-15);
        assert!((k[(1, 1)] - c(0.0, -2.0)).norm() < 1e-15);
        assert!(k[(0, 1)].norm() < 1e-15);
    }

    #[test]
    fn i_commutator_is_hermitian_traceless() {
        let rho = rho_82();
        let d = i_commutator(rho.hermitian(), &HermitianMatrix::<f64>::pauli_x()).unwrap();
        assert!(d.matrix().hermitian_deviation() == 0.0);
        assert!(d.trace().abs() < 1e-12);
    }

    #[test]
    fn sqrt_of_diagonal() {
        let m = HermitianMatrix::<f64>::from_real_diag(&[0.64, 0.04]);
        let r = matrix_function(&m, |x| x.sqrt()).unwrap();
        assert!((r.matrix()[(0, 0)] - c(0.8, 0.0)).norm() < 1e-14);
        assert!((r.matrix()[(1, 1)] - c(0.2, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn identity_function_returns_input() {
        let m = HermitianMatrix::from_upper_fn(3, |i, j| {
            c(0.3 * (i + j) as f64, 0.1 * (j as f64 - i as f64))
        });
        let r = matrix_function(&m, |x| x).unwrap();
        assert!(r.matrix().sub(m.matrix()).frobenius_norm() < 1e-10);
    }

    #[test]
    fn sqrt_undefined_on_negative_spectrum() {
        let m = HermitianMatrix::<f64>::from_real_diag(&[1.0, -1.0]);
        assert!(matches!(
            matrix_function(&m, |x| x.sqrt()),
            Err(Error::FunctionUndefined { .. })
        ));
    }

    #[test]
    fn centering_hand_values() {
        let rho = rho_82();
        // A = I centers to zero.
        let z = center(&HermitianMatrix::<f64>::identity(2), &rho).unwrap();
        assert!(z.matrix().frobenius_norm() < 1e-15);
        // Tr(rho sigma_3) = 0.6, so the centered matrix is sigma_3 - 0.6 I.
        let c3 = center(&HermitianMatrix::<f64>::pauli_z(), &rho).unwrap();
        assert!((c3.matrix()[(0, 0)].re - 0.4).abs() < 1e-15);
        assert!((c3.matrix()[(1, 1)].re + 1.6).abs() < 1e-15);
        // sigma_3 is already centered at I/2.
        let mixed = DensityMatrix::<f64>::maximally_mixed(2);
        let cz = center(&HermitianMatrix::<f64>::pauli_z(), &mixed).unwrap();
        assert!(
            cz.matrix()
                .sub(HermitianMatrix::<f64>::pauli_z().matrix())
                .frobenius_norm()
                < 1e-15
        );
    }

    #[test]
    fn centered_expectation_vanishes() {
        let rho = rho_82();
        let a = HermitianMatrix::from_upper_fn(2, |i, j| {
            c(1.0 + (i * j) as f64, if i != j { -0.4 } else { 0.0 })
        });
        let a0 = center(&a, &rho).unwrap();
        assert!(expectation(&rho, &a0).unwrap().abs() < 1e-12);
    }

    #[test]
    fn center_is_idempotent() {
        let rho = rho_82();
        let a = HermitianMatrix::<f64>::pauli_z();
        let once = center(&a, &rho).unwrap();
        let twice = center(&once, &rho).unwrap();
        assert!(once.matrix().sub(twice.matrix()).frobenius_norm() < 1e-12);
    }
}
