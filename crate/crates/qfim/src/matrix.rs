//! Dense square complex matrices.
//!
//! This is the minimal arithmetic layer under the Hermitian types: storage,
//! products, adjoints, norms, and the JSON literal format used by the CLI
//! and the test fixtures. Dimensions stay small (well under a few hundred),
//! so every product is the naive O(n^3) loop.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense square matrix of complex numbers, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix<S: Scalar> {
    dim: usize,
    data: Vec<Complex<S>>,
}

impl<S: Scalar> CMatrix<S> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex::new(S::zero(), S::zero()); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex::new(S::one(), S::zero());
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex<S>) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Diagonal matrix from real entries.
    pub fn from_real_diag(diag: &[S]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex::new(d, S::zero());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn trace(&self) -> Complex<S> {
        (0..self.dim).fold(Complex::new(S::zero(), S::zero()), |acc, i| {
            acc + self[(i, i)]
        })
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn frobenius_norm(&self) -> S {
        self.data
            .iter()
            .map(|z| z.norm_sqr())
            .fold(S::zero(), |a, b| a + b)
            .sqrt()
    }

    /// Largest deviation from Hermitian symmetry, max |m[i][j] - conj(m[j][i])|.
    pub fn hermitian_deviation(&self) -> S {
        let mut worst = S::zero();
        for i in 0..self.dim {
            for j in i..self.dim {
                let d = (self[(i, j)] - self[(j, i)].conj()).norm();
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }

    /// (M + M^dagger)/2 with the diagonal forced real.
    pub fn symmetrized(&self) -> Self {
        let half = S::real(0.5);
        let mut m = Self::from_fn(self.dim, |i, j| {
            (self[(i, j)] + self[(j, i)].conj()).scale(half)
        });
        for i in 0..self.dim {
            m[(i, i)] = Complex::new(m[(i, i)].re, S::zero());
        }
        m
    }

    pub fn scale(&self, by: Complex<S>) -> Self {
        Self::from_fn(self.dim, |i, j| self[(i, j)] * by)
    }

    pub fn scale_real(&self, by: S) -> Self {
        Self::from_fn(self.dim, |i, j| self[(i, j)].scale(by))
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim, other.dim);
        Self::from_fn(self.dim, |i, j| self[(i, j)] + other[(i, j)])
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim, other.dim);
        Self::from_fn(self.dim, |i, j| self[(i, j)] - other[(i, j)])
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a.re.is_zero() && a.im.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] = out[(i, j)] + a * other[(k, j)];
                }
            }
        }
        out
    }

    /// U^dagger M U, the change of basis into the frame whose columns are U.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        u.adjoint().mul(self).mul(u)
    }

    /// Tr(self * other) without forming the product.
    pub fn trace_product(&self, other: &Self) -> Complex<S> {
        debug_assert_eq!(self.dim, other.dim);
        let mut acc = Complex::new(S::zero(), S::zero());
        for i in 0..self.dim {
            for j in 0..self.dim {
                acc = acc + self[(i, j)] * other[(j, i)];
            }
        }
        acc
    }

    pub fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    /// ||U^dagger U - I||_F, the unitarity residual.
    pub fn unitarity_deviation(&self) -> S {
        self.adjoint()
            .mul(self)
            .sub(&Self::identity(self.dim))
            .frobenius_norm()
    }
}

impl<S: Scalar> std::ops::Index<(usize, usize)> for CMatrix<S> {
    type Output = Complex<S>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<S> {
        &self.data[i * self.dim + j]
    }
}

impl<S: Scalar> std::ops::IndexMut<(usize, usize)> for CMatrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<S> {
        &mut self.data[i * self.dim + j]
    }
}

/// JSON matrix literal: `{ "n": 2, "re": [[..],[..]], "im": [[..],[..]] }`, row-major.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixLiteral {
    pub n: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixLiteral {
    pub fn parse(text: &str) -> Result<Self> {
        let lit: MatrixLiteral =
            serde_json::from_str(text).map_err(|e| Error::MalformedLiteral(e.to_string()))?;
        lit.validate()?;
        Ok(lit)
    }

    fn validate(&self) -> Result<()> {
        let check = |name: &str, rows: &Vec<Vec<f64>>| -> Result<()> {
            if rows.len() != self.n || rows.iter().any(|r| r.len() != self.n) {
                return Err(Error::MalformedLiteral(format!(
                    "'{name}' must be a {n}x{n} array",
                    n = self.n
                )));
            }
            Ok(())
        };
        check("re", &self.re)?;
        check("im", &self.im)
    }

    pub fn to_matrix<S: Scalar>(&self) -> CMatrix<S> {
        CMatrix::from_fn(self.n, |i, j| {
            Complex::new(S::real(self.re[i][j]), S::real(self.im[i][j]))
        })
    }

    pub fn from_matrix<S: Scalar>(m: &CMatrix<S>) -> Self {
        let n = m.dim();
        Self {
            n,
            re: (0..n)
                .map(|i| (0..n).map(|j| m[(i, j)].re.as_f64()).collect())
                .collect(),
            im: (0..n)
                .map(|i| (0..n).map(|j| m[(i, j)].im.as_f64()).collect())
                .collect(),
        }
    }
}
