//! Seeded random states, observables, and unitaries.
//!
//! Everything here is a pure function of (dimension, seed): campaigns
//! partition seed ranges and results are reproducible bit for bit. Separate
//! generators derive distinct streams from the same user seed so that, for
//! example, the state and the observable of one trial are independent.

use num_complex::Complex;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::matrix::CMatrix;
use crate::scalar::Scalar;
use crate::state::{DensityMatrix, HermitianMatrix};

/// Mixing weight for the faithful variant: rho' = (1-eps) rho + eps I/n.
pub const FAITHFUL_MIX: f64 = 1e-4;

mod purpose {
    pub const DENSITY: u64 = 1;
    pub const OBSERVABLE: u64 = 2;
    pub const UNITARY: u64 = 3;
    pub const PURE: u64 = 4;
    pub const COMMUTING: u64 = 5;
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

fn rng_for(seed: u64, purpose: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix64(seed ^ splitmix64(purpose)))
}

fn standard_normal<S: Scalar>(rng: &mut ChaCha8Rng) -> S {
    let x: f64 = rng.sample(StandardNormal);
    S::real(x)
}

fn complex_normal<S: Scalar>(rng: &mut ChaCha8Rng) -> Complex<S> {
    let re = standard_normal(rng);
    let im = standard_normal(rng);
    Complex::new(re, im)
}

/// Square matrix of independent standard complex Gaussians.
fn ginibre<S: Scalar>(n: usize, rng: &mut ChaCha8Rng) -> CMatrix<S> {
    let mut g = CMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            g[(i, j)] = complex_normal(rng);
        }
    }
    g
}

/// Random density matrix rho = G G^dagger / Tr(G G^dagger).
///
/// With `faithful` the result is mixed with I/n so the spectrum is bounded
/// away from zero: rho' = (1 - eps) rho + eps I/n with eps = 1e-4.
pub fn random_density<S: Scalar>(n: usize, seed: u64, faithful: bool) -> DensityMatrix<S> {
    assert!(n >= 2, "random_density needs n >= 2");
    let mut rng = rng_for(seed, purpose::DENSITY);
    let g = ginibre::<S>(n, &mut rng);
    let gram = g.mul(&g.adjoint());
    let trace = gram.trace().re;
    let mut rho = gram.scale_real(trace.recip());
    if faithful {
        let eps = S::real(FAITHFUL_MIX);
        let mix = CMatrix::identity(n).scale_real(eps / S::real(n as f64));
        rho = rho.scale_real(S::one() - eps).add(&mix);
    }
    let base = HermitianMatrix::new(rho).expect("Gram matrix is Hermitian");
    DensityMatrix::new(base).expect("normalized Gram matrix is a state")
}

/// Random pure state rho = |psi><psi| with Haar-distributed |psi>.
pub fn random_pure<S: Scalar>(n: usize, seed: u64) -> DensityMatrix<S> {
    assert!(n >= 2, "random_pure needs n >= 2");
    let mut rng = rng_for(seed, purpose::PURE);
    let psi: Vec<Complex<S>> = (0..n).map(|_| complex_normal(&mut rng)).collect();
    let norm2: S = psi
        .iter()
        .map(|z| z.norm_sqr())
        .fold(S::zero(), |a, b| a + b);
    let projector = CMatrix::from_fn(n, |i, j| (psi[i] * psi[j].conj()).unscale(norm2));
    let base = HermitianMatrix::new(projector).expect("projector is Hermitian");
    DensityMatrix::new(base).expect("normalized projector is a state")
}

/// Random observable (G + G^dagger)/2 with G standard complex Gaussian.
pub fn random_observable<S: Scalar>(n: usize, seed: u64) -> HermitianMatrix<S> {
    assert!(n >= 2, "random_observable needs n >= 2");
    let mut rng = rng_for(seed, purpose::OBSERVABLE);
    let g = ginibre::<S>(n, &mut rng);
    HermitianMatrix::new(g.symmetrized()).expect("symmetrized matrix is Hermitian")
}

/// Random unitary from the QR step of a Ginibre matrix (modified
/// Gram-Schmidt, two orthogonalization passes).
#[allow(clippy::needless_range_loop)] // cols[k] and cols[j] are borrowed together
pub fn random_unitary<S: Scalar>(n: usize, seed: u64) -> CMatrix<S> {
    let mut rng = rng_for(seed, purpose::UNITARY);
    let g = ginibre::<S>(n, &mut rng);
    let mut cols: Vec<Vec<Complex<S>>> = (0..n)
        .map(|j| (0..n).map(|i| g[(i, j)]).collect())
        .collect();
    for j in 0..n {
        for _pass in 0..2 {
            for k in 0..j {
                let proj = inner(&cols[k], &cols[j]);
                for i in 0..n {
                    let correction = cols[k][i] * proj;
                    cols[j][i] = cols[j][i] - correction;
                }
            }
        }
        let norm = cols[j]
            .iter()
            .map(|z| z.norm_sqr())
            .fold(S::zero(), |a, b| a + b)
            .sqrt();
        for z in cols[j].iter_mut() {
            *z = z.unscale(norm);
        }
    }
    CMatrix::from_fn(n, |i, j| cols[j][i])
}

fn inner<S: Scalar>(a: &[Complex<S>], b: &[Complex<S>]) -> Complex<S> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.conj() * y)
        .fold(Complex::new(S::zero(), S::zero()), |acc, z| acc + z)
}

/// Commuting Hermitian pair (A, H) as quadratic polynomials of one random
/// Hermitian seed matrix, evaluated in its eigenbasis so the two share
/// eigenvectors to rounding.
pub fn random_commuting_pair<S: Scalar>(
    n: usize,
    seed: u64,
) -> (HermitianMatrix<S>, HermitianMatrix<S>) {
    let mut rng = rng_for(seed, purpose::COMMUTING);
    let g = ginibre::<S>(n, &mut rng);
    let k = g.symmetrized();
    let k = k.scale_real(S::one().max(k.frobenius_norm()).recip());
    let spectral = crate::eig::jacobi_hermitian(&k).expect("Hermitian seed matrix");

    let mut coeff =
        |_: usize| S::real(rng.sample::<f64, _>(rand::distr::StandardUniform) * 2.0 - 1.0);
    let (a0, a1, a2) = (coeff(0), coeff(1), coeff(2));
    let (b0, b1, b2) = (coeff(3), coeff(4), coeff(5));

    let a = spectral.reconstruct_with(|x| a0 + a1 * x + a2 * x * x);
    let h = spectral.reconstruct_with(|x| b0 + b1 * x + b2 * x * x);
    (
        HermitianMatrix::new(a).expect("polynomial of Hermitian is Hermitian"),
        HermitianMatrix::new(h).expect("polynomial of Hermitian is Hermitian"),
    )
}
