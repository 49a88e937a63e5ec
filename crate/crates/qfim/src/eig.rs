//! Eigendecomposition of Hermitian matrices by cyclic Jacobi rotations.
//!
//! Each rotation is a complex plane rotation that annihilates one
//! off-diagonal pair; sweeps repeat until the off-diagonal Frobenius norm
//! falls under tolerance. Quadratic convergence makes this accurate and
//! entirely adequate at the dimensions this crate targets (n up to ~64).

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::scalar::Scalar;

/// Off-diagonal Frobenius tolerance, relative to max(1, ||M||_F).
pub const JACOBI_TOLERANCE: f64 = 1e-12;
/// Sweep cap before reporting non-convergence.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigenvalues (ascending) and a unitary whose columns are eigenvectors.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition<S: Scalar> {
    pub eigenvalues: Vec<S>,
    pub eigenvectors: CMatrix<S>,
}

impl<S: Scalar> SpectralDecomposition<S> {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// U phi(Lambda) U^dagger.
    pub fn reconstruct_with(&self, mut phi: impl FnMut(S) -> S) -> CMatrix<S> {
        let n = self.dim();
        let u = &self.eigenvectors;
        let phis: Vec<S> = self.eigenvalues.iter().map(|&l| phi(l)).collect();
        CMatrix::from_fn(n, |i, j| {
            let mut acc = Complex::new(S::zero(), S::zero());
            for k in 0..n {
                acc = acc + (u[(i, k)] * u[(j, k)].conj()).scale(phis[k]);
            }
            acc
        })
    }

    /// U Lambda U^dagger, the original matrix up to rounding.
    pub fn reconstruct(&self) -> CMatrix<S> {
        self.reconstruct_with(|l| l)
    }

    /// U phi(Lambda) U^dagger for complex-valued phi (e.g. e^{-i t lambda}).
    pub fn reconstruct_with_complex(&self, mut phi: impl FnMut(S) -> Complex<S>) -> CMatrix<S> {
        let n = self.dim();
        let u = &self.eigenvectors;
        let phis: Vec<Complex<S>> = self.eigenvalues.iter().map(|&l| phi(l)).collect();
        CMatrix::from_fn(n, |i, j| {
            let mut acc = Complex::new(S::zero(), S::zero());
            for k in 0..n {
                acc = acc + u[(i, k)] * u[(j, k)].conj() * phis[k];
            }
            acc
        })
    }

    /// Change of frame into the eigenbasis: U^dagger M U.
    pub fn to_eigenbasis(&self, m: &CMatrix<S>) -> CMatrix<S> {
        m.conjugate_by(&self.eigenvectors)
    }

    /// Back from the eigenbasis: U M U^dagger.
    pub fn from_eigenbasis(&self, m: &CMatrix<S>) -> CMatrix<S> {
        self.eigenvectors.mul(m).mul(&self.eigenvectors.adjoint())
    }
}

fn off_diagonal_norm<S: Scalar>(a: &CMatrix<S>) -> S {
    let n = a.dim();
    let mut acc = S::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Jacobi eigendecomposition of a Hermitian matrix given as raw storage.
///
/// The input is trusted to be Hermitian; callers go through
/// [`crate::state::HermitianMatrix`], which enforces that on construction.
pub fn jacobi_hermitian<S: Scalar>(m: &CMatrix<S>) -> Result<SpectralDecomposition<S>> {
    let n = m.dim();
    let mut a = m.clone();
    let mut v = CMatrix::identity(n);

    let scale = S::one().max(m.frobenius_norm());
    let tol = S::real(JACOBI_TOLERANCE) * scale;
    // Pivots this small cannot push the off-diagonal norm above tol.
    let skip = tol / S::real(n as f64);

    if n == 1 {
        return Ok(sorted(vec![a[(0, 0)].re], v));
    }

    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) <= tol {
            let eigenvalues: Vec<S> = (0..n).map(|i| a[(i, i)].re).collect();
            return Ok(sorted(eigenvalues, v));
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q, skip);
            }
        }
    }

    Err(Error::EigenNonConvergence {
        off_diagonal: off_diagonal_norm(&a).as_f64(),
        sweeps: JACOBI_MAX_SWEEPS,
    })
}

/// Annihilate the (p, q) entry with a unitary plane rotation.
fn rotate<S: Scalar>(a: &mut CMatrix<S>, v: &mut CMatrix<S>, p: usize, q: usize, skip: S) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag <= skip {
        return;
    }
    // Phase that makes the pivot real, then an ordinary real rotation.
    let phase = apq.unscale(mag);
    // Stable root of t^2 - 2*theta*t - 1 = 0, the annihilation condition
    // for this rotation convention.
    let theta = (a[(q, q)].re - a[(p, p)].re) / (S::real(2.0) * mag);
    let t = {
        let abs = theta.abs() + (theta * theta + S::one()).sqrt();
        if theta >= S::zero() {
            -abs.recip()
        } else {
            abs.recip()
        }
    };
    let c = (t * t + S::one()).sqrt().recip();
    let s = t * c;

    let sp = phase.scale(s); // s * e^{i alpha}
    let spc = phase.conj().scale(s); // s * e^{-i alpha}

    let n = a.dim();
    // A <- A G  (columns p, q)
    for i in 0..n {
        let vp = a[(i, p)];
        let vq = a[(i, q)];
        a[(i, p)] = vp.scale(c) + vq * spc;
        a[(i, q)] = vq.scale(c) - vp * sp;
    }
    // A <- G^dagger A  (rows p, q)
    for j in 0..n {
        let wp = a[(p, j)];
        let wq = a[(q, j)];
        a[(p, j)] = wp.scale(c) + wq * sp;
        a[(q, j)] = wq.scale(c) - wp * spc;
    }
    // The pivot is zero by construction; pin it and keep the diagonal real.
    a[(p, q)] = Complex::new(S::zero(), S::zero());
    a[(q, p)] = Complex::new(S::zero(), S::zero());
    a[(p, p)] = Complex::new(a[(p, p)].re, S::zero());
    a[(q, q)] = Complex::new(a[(q, q)].re, S::zero());

    // V <- V G
    for i in 0..n {
        let vp = v[(i, p)];
        let vq = v[(i, q)];
        v[(i, p)] = vp.scale(c) + vq * spc;
        v[(i, q)] = vq.scale(c) - vp * sp;
    }
}

fn sorted<S: Scalar>(eigenvalues: Vec<S>, v: CMatrix<S>) -> SpectralDecomposition<S> {
    let n = eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        eigenvalues[i]
            .partial_cmp(&eigenvalues[j])
            .expect("real eigenvalues")
    });
    let eigenvectors = CMatrix::from_fn(n, |i, j| v[(i, order[j])]);
    let eigenvalues = order.iter().map(|&k| eigenvalues[k]).collect();
    SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    }
}
