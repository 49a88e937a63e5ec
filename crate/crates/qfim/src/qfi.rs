//! Monotone metrics and metric-adjusted skew information.
//!
//! For a regular operator monotone function f the f-information of an
//! observable A at a state rho is
//!
//!   I_f = (f(0)/2) <D, D>_{rho,f}      with D = i[rho, A]   (metric path)
//!   I_f = Var(A) - C_{f~}(A_0)                              (variance path)
//!
//! The two are equal on faithful states; the variance path extends the
//! definition to every state. Keeping both routes independent makes each
//! one an oracle for the other. The classical Wigner-Yanase and SLD
//! informations also have direct formulas
//!
//!   I_WY  = -Tr([rho^{1/2}, A]^2) / 2
//!   I_SLD = Tr(rho L^2) / 4,   L solving L rho + rho L = 2i[rho, A],
//!
//! which coincide with the f-information at f = wy and f = sld.

use crate::error::{Error, Result};
use crate::means::mean_kernel;
use crate::monotone::MonotoneFunction;
use crate::scalar::Scalar;
use crate::state::{center, expectation, i_commutator, DensityMatrix, HermitianMatrix};

/// Entries of the SLD are zeroed when lambda_i + lambda_j falls below this;
/// there the right-hand side vanishes as well and zero is the minimal-norm
/// solution.
pub const SLD_KERNEL_THRESHOLD: f64 = 1e-12;

/// Values this far below zero indicate an internal inconsistency rather
/// than rounding.
pub const NEGATIVE_INFORMATION_FLOOR: f64 = -1e-10;

/// How an information value was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InfoPath {
    /// (f(0)/2) * ||i[rho, A]||^2_{rho, f}; needs a faithful state.
    Metric,
    /// Var(A) - C_{f~}(A_0); defined for every state.
    VarianceMinusCorrelation,
    /// The dedicated closed form; available for f = wy and f = sld only.
    Direct,
}

/// A computed information value along with its provenance.
#[derive(Debug, Clone)]
pub struct InformationResult<S: Scalar> {
    pub f_name: String,
    pub value: S,
    pub path: InfoPath,
    pub rho_faithful: bool,
    /// True when the raw value fell in [-1e-10, 0): reported as computed,
    /// flagged as negative rounding.
    pub negative_rounding: bool,
}

/// Var(A) = Tr(rho A^2) - Tr(rho A)^2.
pub fn variance<S: Scalar>(rho: &DensityMatrix<S>, a: &HermitianMatrix<S>) -> Result<S> {
    rho.matrix().check_same_dim(a.matrix())?;
    let second = rho.matrix().trace_product(&a.matrix().mul(a.matrix())).re;
    let first = expectation(rho, a)?;
    Ok(second - first * first)
}

/// Cov(A, B) = Re Tr(rho A B) - Tr(rho A) Tr(rho B), the real
/// (symmetrized) covariance; coincides with the variance at A = B.
pub fn covariance<S: Scalar>(
    rho: &DensityMatrix<S>,
    a: &HermitianMatrix<S>,
    b: &HermitianMatrix<S>,
) -> Result<S> {
    rho.matrix().check_same_dim(a.matrix())?;
    rho.matrix().check_same_dim(b.matrix())?;
    let mixed = rho.matrix().trace_product(&a.matrix().mul(b.matrix())).re;
    Ok(mixed - expectation(rho, a)? * expectation(rho, b)?)
}

fn require_metric_function<S: Scalar>(f: &MonotoneFunction<S>) -> Result<()> {
    if f.regular() || f.name() == "rld" {
        Ok(())
    } else {
        Err(Error::NonRegular {
            name: f.name().to_string(),
        })
    }
}

/// Monotone-metric inner product <A, B>_{rho,f} = Tr(A m_f(L,R)^{-1}(B)).
///
/// In the eigenbasis of rho this is sum_ij conj(a_ij) b_ij / m_f(l_i, l_j);
/// it requires a faithful state, and f regular or f = rld.
pub fn metric_inner<S: Scalar>(
    f: &MonotoneFunction<S>,
    rho: &DensityMatrix<S>,
    a: &HermitianMatrix<S>,
    b: &HermitianMatrix<S>,
) -> Result<S> {
    require_metric_function(f)?;
    rho.require_faithful()?;
    rho.matrix().check_same_dim(a.matrix())?;
    rho.matrix().check_same_dim(b.matrix())?;
    let lambdas = rho.eigenvalues();
    let a_tilde = rho.spectral().to_eigenbasis(a.matrix());
    let b_tilde = rho.spectral().to_eigenbasis(b.matrix());
    let n = rho.dim();
    let mut acc = S::zero();
    for i in 0..n {
        for j in 0..n {
            let w = (a_tilde[(i, j)].conj() * b_tilde[(i, j)]).re;
            acc += w / mean_kernel(f, lambdas[i], lambdas[j]);
        }
    }
    Ok(acc)
}

/// Squared metric norm ||A||^2_{rho,f}.
pub fn metric_norm_sq<S: Scalar>(
    f: &MonotoneFunction<S>,
    rho: &DensityMatrix<S>,
    a: &HermitianMatrix<S>,
) -> Result<S> {
    metric_inner(f, rho, a, a)
}

/// Correlation C_g(A_0) = Tr(m_g(L_rho, R_rho)(A_0) A_0), with A centered
/// internally. Defined for every state; zero eigenvalue pairs follow the
/// continuity rule of the mean kernel.
pub fn correlation<S: Scalar>(
    g: &MonotoneFunction<S>,
    rho: &DensityMatrix<S>,
    a: &HermitianMatrix<S>,
) -> Result<S> {
    rho.matrix().check_same_dim(a.matrix())?;
    let a0 = center(a, rho)?;
    let a_tilde = rho.spectral().to_eigenbasis(a0.matrix());
    let lambdas = rho.eigenvalues();
    let n = rho.dim();
    let mut acc = S::zero();
    for i in 0..n {
        for j in 0..n {
            acc += mean_kernel(g, lambdas[i], lambdas[j]) * a_tilde[(i, j)].norm_sqr();
        }
    }
    Ok(acc)
}

fn finish_information<S: Scalar>(
    f_name: &str,
    value: S,
    path: InfoPath,
    faithful: bool,
) -> Result<InformationResult<S>> {
    let floor = S::real(NEGATIVE_INFORMATION_FLOOR);
    if value < floor {
        return Err(Error::NegativeInformation {
            value: value.as_f64(),
        });
    }
    Ok(InformationResult {
        f_name: f_name.to_string(),
        value,
        path,
        rho_faithful: faithful,
        negative_rounding: value < S::zero(),
    })
}

/// Metric-adjusted skew information I_f(rho, A) along the requested path.
///
/// The variance path is the default and works on every state; the metric
/// path needs a faithful state and exists as an independent cross-check.
/// The direct path dispatches to the closed forms for f = wy and f = sld.
pub fn f_information<S: Scalar>(
    f: &MonotoneFunction<S>,
    rho: &DensityMatrix<S>,
    a: &HermitianMatrix<S>,
    path: InfoPath,
) -> Result<InformationResult<S>> {
    f.require_regular()?;
    rho.matrix().check_same_dim(a.matrix())?;
    let value = match path {
        InfoPath::Metric => {
            rho.require_faithful()?;
            let d = i_commutator(rho.hermitian(), a)?;
            let half = S::real(0.5);
            f.f_zero() * half * metric_norm_sq(f, rho, &d)?
        }
        InfoPath::VarianceMinusCorrelation => {
            let tilde = f.tilde()?;
            variance(rho, a)? - correlation(&tilde, rho, a)?
        }
        InfoPath::Direct => match f.name() {
            "wy" => wy_information_direct(rho, a)?,
            "sld" => sld_information(rho, a)?,
            other => {
                return Err(Error::InvalidParameter(format!(
                    "direct path exists only for wy and sld, not '{other}'"
                )))
            }
        },
    };
    finish_information(f.name(), value, path, rho.faithful())
}

/// I_WY = -Tr([rho^{1/2}, A]^2) / 2, evaluated literally.
pub fn wy_information_direct<S: Scalar>(
    rho: &DensityMatrix<S>,
    a: &HermitianMatrix<S>,
) -> Result<S> {
    rho.matrix().check_same_dim(a.matrix())?;
    let sqrt_rho =
        HermitianMatrix::new(rho.spectral().reconstruct_with(|l| l.sqrt()).symmetrized())?;
    let k = crate::state::commutator(&sqrt_rho, a)?;
    let half = S::real(0.5);
    Ok(-k.trace_product(&k).re * half)
}

/// Hermitian solution of L rho + rho L = 2i[rho, A].
///
/// In the eigenbasis of rho: L_ij = 2i (l_i - l_j) a_ij / (l_i + l_j),
/// with entries zeroed where l_i + l_j is below [`SLD_KERNEL_THRESHOLD`].
pub fn sld_solve<S: Scalar>(
    rho: &DensityMatrix<S>,
    a: &HermitianMatrix<S>,
) -> Result<HermitianMatrix<S>> {
    rho.matrix().check_same_dim(a.matrix())?;
    let lambdas = rho.eigenvalues();
    let a_tilde = rho.spectral().to_eigenbasis(a.matrix());
    let n = rho.dim();
    let threshold = S::real(SLD_KERNEL_THRESHOLD);
    let two = S::real(2.0);
    let mut l_tilde = crate::matrix::CMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let denom = lambdas[i] + lambdas[j];
            if denom <= threshold {
                continue;
            }
            let factor = two * (lambdas[i] - lambdas[j]) / denom;
            // 2i (l_i - l_j) a_ij / (l_i + l_j)
            let v = a_tilde[(i, j)].scale(factor);
            l_tilde[(i, j)] = num_complex::Complex::new(-v.im, v.re);
        }
    }
    HermitianMatrix::new(rho.spectral().from_eigenbasis(&l_tilde).symmetrized())
}

/// I_SLD = Tr(rho L^2) / 4.
pub fn sld_information<S: Scalar>(rho: &DensityMatrix<S>, a: &HermitianMatrix<S>) -> Result<S> {
    let l = sld_solve(rho, a)?;
    let l_sq = l.matrix().mul(l.matrix());
    Ok(rho.matrix().trace_product(&l_sq).re * S::real(0.25))
}

/// Frobenius residual ||L rho + rho L - 2i[rho, A]||_F of the SLD equation.
pub fn sld_residual<S: Scalar>(
    rho: &DensityMatrix<S>,
    a: &HermitianMatrix<S>,
    l: &HermitianMatrix<S>,
) -> Result<S> {
    let lhs = l
        .matrix()
        .mul(rho.matrix())
        .add(&rho.matrix().mul(l.matrix()));
    let rhs = i_commutator(rho.hermitian(), a)?
        .matrix()
        .scale_real(S::real(2.0));
    Ok(lhs.sub(&rhs).frobenius_norm())
}
