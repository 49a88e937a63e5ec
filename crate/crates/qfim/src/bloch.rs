//! Closed-form qubit analysis on the Bloch sphere.
//!
//! A 2x2 state in the Stokes parameterization is
//! rho = (I + x sigma_1 + y sigma_2 + z sigma_3)/2 with r = |(x,y,z)| <= 1
//! and eigenvalues (1 -+ r)/2. For every regular f the f-information has
//! the closed form
//!
//!   I_f = [1 - m_{f~}(1-r, 1+r)] |a_12|^2,
//!
//! with a_12 the off-diagonal element of the centered observable in the
//! eigenbasis of rho, which pins the SLD/f ratio to
//! r^2 / (1 - m_{f~}(1-r, 1+r)). The ratio tends to 1/(2 f(0)) as r -> 0
//! and to 1 as r -> 1.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::means::scalar_mean;
use crate::monotone::MonotoneFunction;
use crate::scalar::Scalar;
use crate::state::{center, DensityMatrix, HermitianMatrix};

/// Point in the Bloch ball.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector<S: Scalar> {
    pub x: S,
    pub y: S,
    pub z: S,
}

impl<S: Scalar> BlochVector<S> {
    pub fn new(x: S, y: S, z: S) -> Self {
        Self { x, y, z }
    }

    /// Radius r = sqrt(x^2 + y^2 + z^2); r = 1 on pure states.
    pub fn radius(&self) -> S {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }
}

/// rho = (I + x sigma_1 + y sigma_2 + z sigma_3) / 2; requires r <= 1.
pub fn state_from_bloch<S: Scalar>(v: &BlochVector<S>) -> Result<DensityMatrix<S>> {
    let r = v.radius();
    if r > S::one() + S::real(1e-12) {
        return Err(Error::InvalidParameter(format!(
            "Bloch radius {} exceeds 1",
            r.as_f64()
        )));
    }
    let half = S::real(0.5);
    let mut m = CMatrix::zeros(2);
    m[(0, 0)] = Complex::new((S::one() + v.z) * half, S::zero());
    m[(1, 1)] = Complex::new((S::one() - v.z) * half, S::zero());
    m[(0, 1)] = Complex::new(v.x * half, -v.y * half);
    m[(1, 0)] = Complex::new(v.x * half, v.y * half);
    DensityMatrix::new(HermitianMatrix::new(m)?)
}

/// Eigenbasis of the Bloch state built from the known rotation, columns
/// ordered by ascending eigenvalue ((1-r)/2 then (1+r)/2). Deterministic,
/// with no numeric eigensolve and no sign/phase ambiguity. Any basis (the
/// identity) serves at r = 0.
fn bloch_eigenbasis<S: Scalar>(v: &BlochVector<S>) -> CMatrix<S> {
    let r = v.radius();
    if r == S::zero() {
        return CMatrix::identity(2);
    }
    let half = S::real(0.5);
    let cos_theta = (v.z / r).max(-S::one()).min(S::one());
    let theta = cos_theta.acos();
    let (c, s) = ((theta * half).cos(), (theta * half).sin());
    let phi = v.y.atan2(v.x);
    let phase = Complex::new(phi.cos(), phi.sin());
    let mut u = CMatrix::zeros(2);
    // Column 0: eigenvector for (1-r)/2; column 1: for (1+r)/2.
    u[(0, 0)] = (-phase.conj()).scale(s);
    u[(1, 0)] = Complex::new(c, S::zero());
    u[(0, 1)] = Complex::new(c, S::zero());
    u[(1, 1)] = phase.scale(s);
    u
}

/// Closed-form f-information [1 - m_{f~}(1-r, 1+r)] |a_12|^2 for a qubit
/// state given by its Bloch vector.
pub fn bloch_f_information<S: Scalar>(
    f: &MonotoneFunction<S>,
    v: &BlochVector<S>,
    a: &HermitianMatrix<S>,
) -> Result<S> {
    f.require_regular()?;
    if a.dim() != 2 {
        return Err(Error::DimensionMismatch {
            left: 2,
            right: a.dim(),
        });
    }
    let rho = state_from_bloch(v)?;
    let a0 = center(a, &rho)?;
    let u = bloch_eigenbasis(v);
    let a_tilde = a0.matrix().conjugate_by(&u);
    let off_diag_sq = a_tilde[(0, 1)].norm_sqr();
    let r = v.radius();
    let tilde = f.tilde()?;
    let weight = S::one() - scalar_mean(&tilde, S::one() - r, S::one() + r)?;
    Ok(weight * off_diag_sq)
}

/// The ratio I_SLD / I_f = r^2 / (1 - m_{f~}(1-r, 1+r)) for 0 < r < 1.
pub fn sld_ratio<S: Scalar>(f: &MonotoneFunction<S>, r: S) -> Result<S> {
    f.require_regular()?;
    if r <= S::zero() || r >= S::one() {
        return Err(Error::InvalidParameter(format!(
            "sld_ratio needs 0 < r < 1, got {}",
            r.as_f64()
        )));
    }
    let tilde = f.tilde()?;
    let m = scalar_mean(&tilde, S::one() - r, S::one() + r)?;
    Ok(r * r / (S::one() - m))
}

/// Numeric limit of the ratio as r -> 0, equal to 1/(2 f(0)).
///
/// Samples r = 10^-k for k = 2..=6 and Richardson-extrapolates assuming a
/// quadratic leading error (the ratio is even in r to first order);
/// accepts when successive extrapolants agree within 1e-6.
pub fn ratio_limit_zero<S: Scalar>(f: &MonotoneFunction<S>) -> Result<S> {
    let ten = S::real(10.0);
    let values: Vec<S> = (2..=6)
        .map(|k| sld_ratio(f, ten.powi(-k)))
        .collect::<Result<_>>()?;
    let c99 = S::real(99.0);
    let c100 = S::real(100.0);
    let extrapolated: Vec<S> = values
        .windows(2)
        .map(|w| (c100 * w[1] - w[0]) / c99)
        .collect();
    let tol = S::real(1e-6);
    for pair in extrapolated.windows(2) {
        if (pair[1] - pair[0]).abs() <= tol * S::one().max(pair[1].abs()) {
            return Ok(pair[1]);
        }
    }
    Err(Error::LimitNonConvergence {
        prev: extrapolated[extrapolated.len() - 2].as_f64(),
        last: extrapolated[extrapolated.len() - 1].as_f64(),
    })
}

/// Numeric limit of the ratio as r -> 1, equal to 1/(1 - f~(0)) = 1.
///
/// Samples r = 1 - 10^-k for k = 2..=6; the error decays geometrically
/// (rate sqrt(10) for f~ with a square-root cusp, rate 10 otherwise), so
/// Aitken's delta-squared acceleration applies.
pub fn ratio_limit_one<S: Scalar>(f: &MonotoneFunction<S>) -> Result<S> {
    let ten = S::real(10.0);
    let values: Vec<S> = (2..=6)
        .map(|k| sld_ratio(f, S::one() - ten.powi(-k)))
        .collect::<Result<_>>()?;
    let tiny = S::real(1e-13);
    let mut accelerated = Vec::new();
    for w in values.windows(3) {
        let d1 = w[1] - w[0];
        let d2 = w[2] - w[1];
        if (d2 - d1).abs() < tiny {
            // Flat sequence: already converged.
            if d2.abs() < tiny {
                return Ok(w[2]);
            }
            continue;
        }
        accelerated.push(w[2] - d2 * d2 / (d2 - d1));
    }
    let tol = S::real(1e-5);
    for pair in accelerated.windows(2) {
        if (pair[1] - pair[0]).abs() <= tol * S::one().max(pair[1].abs()) {
            return Ok(pair[1]);
        }
    }
    match accelerated.last() {
        Some(&last) if accelerated.len() == 1 => Ok(last),
        Some(&last) => Err(Error::LimitNonConvergence {
            prev: accelerated[accelerated.len() - 2].as_f64(),
            last: last.as_f64(),
        }),
        None => Err(Error::LimitNonConvergence {
            prev: values[3].as_f64(),
            last: values[4].as_f64(),
        }),
    }
}
