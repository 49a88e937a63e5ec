//! Symmetric normalized operator monotone functions.
//!
//! The class consists of functions f on (0, inf) with f(1) = 1, the
//! symmetry x f(1/x) = f(x), and operator monotonicity. A member is
//! *regular* when f(0) := lim_{x->0} f(x) is nonzero. The catalog covers
//! the classical members
//!
//! - `wy`:  ((1 + sqrt(x)) / 2)^2          f(0) = 1/4
//! - `sld`: (1 + x) / 2                    f(0) = 1/2
//! - `rld`: 2x / (1 + x)                   f(0) = 0 (non-regular)
//! - `mix:<s>`: (1-s) sld + s rld          f(0) = (1-s)/2
//!
//! plus the tilde transform f~(x) = [(x+1) - (x-1)^2 f(0)/f(x)] / 2 that
//! sends regular members to non-regular ones.

use std::sync::Arc;

use num_complex::Complex;

use crate::eig::jacobi_hermitian;
use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::random::random_observable;
use crate::report::CheckReport;
use crate::scalar::Scalar;

/// Below this distance from x = 1 the tilde transform switches to its
/// second-order Taylor form to avoid cancellation in (x-1)^2 f(0)/f(x).
pub const TILDE_TAYLOR_WINDOW: f64 = 1e-7;

type EvalFn<S> = Arc<dyn Fn(S) -> S + Send + Sync>;

/// Descriptor of one operator monotone function: a pointwise evaluator on
/// (0, inf), the limit at zero, and optionally a closed form for its tilde
/// transform.
#[derive(Clone)]
pub struct MonotoneFunction<S: Scalar> {
    name: String,
    eval: EvalFn<S>,
    f_at_zero: S,
    regular: bool,
    analytic_tilde: Option<EvalFn<S>>,
}

impl<S: Scalar> std::fmt::Debug for MonotoneFunction<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MonotoneFunction")
            .field("name", &self.name)
            .field("f_at_zero", &self.f_at_zero)
            .field("regular", &self.regular)
            .finish()
    }
}

impl<S: Scalar> MonotoneFunction<S> {
    /// Member with a known limit at zero.
    pub fn new(
        name: impl Into<String>,
        f_at_zero: S,
        eval: impl Fn(S) -> S + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            eval: Arc::new(eval),
            f_at_zero,
            regular: f_at_zero > S::zero(),
            analytic_tilde: None,
        }
    }

    /// Member from a bare evaluator; the limit at zero is taken
    /// numerically (see [`numeric_f_zero`]).
    pub fn from_eval(
        name: impl Into<String>,
        eval: impl Fn(S) -> S + Send + Sync + 'static,
    ) -> Result<Self> {
        let f_at_zero = numeric_f_zero(&eval)?;
        Ok(Self::new(name, f_at_zero, eval))
    }

    fn with_analytic_tilde(mut self, tilde: impl Fn(S) -> S + Send + Sync + 'static) -> Self {
        self.analytic_tilde = Some(Arc::new(tilde));
        self
    }

    /// f_WY(x) = ((1 + sqrt(x))/2)^2, with f~ = sqrt(x).
    pub fn wigner_yanase() -> Self {
        let half = S::real(0.5);
        Self::new("wy", S::real(0.25), move |x: S| {
            let t = (S::one() + x.sqrt()) * half;
            t * t
        })
        .with_analytic_tilde(|x: S| x.sqrt())
    }

    /// f_SLD(x) = (1 + x)/2, with f~ = 2x/(1+x).
    pub fn sld() -> Self {
        let half = S::real(0.5);
        let two = S::real(2.0);
        Self::new("sld", half, move |x: S| (S::one() + x) * half)
            .with_analytic_tilde(move |x: S| two * x / (S::one() + x))
    }

    /// f_RLD(x) = 2x/(1+x); non-regular.
    pub fn rld() -> Self {
        let two = S::real(2.0);
        Self::new("rld", S::zero(), move |x: S| two * x / (S::one() + x))
    }

    /// Convex combination (1-s) f_SLD + s f_RLD for s in [0, 1];
    /// f(0) = (1-s)/2, so the member is regular iff s < 1.
    pub fn mix(s: S) -> Result<Self> {
        if !(S::zero()..=S::one()).contains(&s) {
            return Err(Error::InvalidParameter(format!(
                "mix parameter s = {s} outside [0, 1]"
            )));
        }
        let half = S::real(0.5);
        let two = S::real(2.0);
        let name = format!("mix:{}", s.as_f64());
        Ok(Self::new(name, (S::one() - s) * half, move |x: S| {
            (S::one() - s) * (S::one() + x) * half + s * two * x / (S::one() + x)
        }))
    }

    /// Catalog member by CLI name: "wy", "sld", "rld", or "mix:<s>".
    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "wy" => Ok(Self::wigner_yanase()),
            "sld" => Ok(Self::sld()),
            "rld" => Ok(Self::rld()),
            _ => {
                if let Some(s) = name.strip_prefix("mix:") {
                    let s: f64 = s.parse().map_err(|_| Error::UnknownFunction {
                        name: name.to_string(),
                    })?;
                    Self::mix(S::real(s))
                } else {
                    Err(Error::UnknownFunction {
                        name: name.to_string(),
                    })
                }
            }
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, x: S) -> S {
        (self.eval)(x)
    }

    /// The limit f(0); zero exactly for non-regular members.
    pub fn f_zero(&self) -> S {
        self.f_at_zero
    }

    pub fn regular(&self) -> bool {
        self.regular
    }

    pub fn require_regular(&self) -> Result<()> {
        if self.regular {
            Ok(())
        } else {
            Err(Error::NonRegular {
                name: self.name.clone(),
            })
        }
    }

    /// The transform f~(x) = [(x+1) - (x-1)^2 f(0)/f(x)]/2, defined for
    /// regular f and always non-regular itself. Uses the stored closed
    /// form when one is available, otherwise the defining formula with a
    /// Taylor guard near x = 1.
    pub fn tilde(&self) -> Result<Self> {
        self.require_regular()?;
        let name = format!("tilde({})", self.name);
        if let Some(analytic) = &self.analytic_tilde {
            let g = Arc::clone(analytic);
            return Ok(Self {
                name,
                eval: g,
                f_at_zero: S::zero(),
                regular: false,
                analytic_tilde: None,
            });
        }
        Ok(Self {
            name,
            eval: Arc::new(tilde_formula_eval(Arc::clone(&self.eval), self.f_at_zero)),
            f_at_zero: S::zero(),
            regular: false,
            analytic_tilde: None,
        })
    }

    /// The tilde transform from the defining formula, ignoring any stored
    /// closed form. Cross-checking this against the closed form validates
    /// both routes.
    pub fn tilde_from_formula(&self) -> Result<Self> {
        self.require_regular()?;
        Ok(Self {
            name: format!("tilde({})", self.name),
            eval: Arc::new(tilde_formula_eval(Arc::clone(&self.eval), self.f_at_zero)),
            f_at_zero: S::zero(),
            regular: false,
            analytic_tilde: None,
        })
    }

    /// Central-difference estimate of f'(1); 1/2 for every symmetric
    /// normalized member.
    pub fn derivative_at_one(&self) -> S {
        let h = S::real(1e-5);
        (self.eval(S::one() + h) - self.eval(S::one() - h)) / (S::real(2.0) * h)
    }
}

fn tilde_formula_eval<S: Scalar>(eval: EvalFn<S>, f_at_zero: S) -> impl Fn(S) -> S {
    let half = S::real(0.5);
    let window = S::real(TILDE_TAYLOR_WINDOW);
    move |x: S| {
        let u = x - S::one();
        if u.abs() < window {
            // Second-order Taylor at 1 from f(1) = 1, f'(1) = 1/2,
            // tilde''(1) = -f(0).
            S::one() + u * half - f_at_zero * u * u * half
        } else {
            ((x + S::one()) - u * u * f_at_zero / eval(x)) * half
        }
    }
}

/// Default catalog: the named members plus three mixes.
pub fn catalog<S: Scalar>() -> Vec<MonotoneFunction<S>> {
    vec![
        MonotoneFunction::wigner_yanase(),
        MonotoneFunction::sld(),
        MonotoneFunction::rld(),
        MonotoneFunction::mix(S::real(0.25)).expect("0.25 in range"),
        MonotoneFunction::mix(S::real(0.5)).expect("0.5 in range"),
        MonotoneFunction::mix(S::real(0.75)).expect("0.75 in range"),
    ]
}

/// Catalog members with f(0) > 0.
pub fn regular_catalog<S: Scalar>() -> Vec<MonotoneFunction<S>> {
    catalog().into_iter().filter(|f| f.regular()).collect()
}

/// Numeric limit of an evaluator at 0+: values at x = 10^-k, k = 6..=12,
/// accepted when successive iterates agree within 1e-9.
pub fn numeric_f_zero<S: Scalar>(eval: &impl Fn(S) -> S) -> Result<S> {
    let ten = S::real(10.0);
    let tol = S::real(1e-9);
    let mut prev = eval(S::real(1e-6));
    for k in 7..=12 {
        let x = ten.powi(-k);
        let v = eval(x);
        if (v - prev).abs() < tol {
            return Ok(v);
        }
        prev = v;
    }
    let last = eval(ten.powi(-12));
    Err(Error::LimitNonConvergence {
        prev: prev.as_f64(),
        last: last.as_f64(),
    })
}

/// Central second difference of the tilde transform at 1, Richardson
/// extrapolated once with h = 1e-4. Equals -f(0) for every regular member.
pub fn tilde_second_derivative<S: Scalar>(f: &MonotoneFunction<S>) -> Result<S> {
    let tilde = f.tilde()?;
    let second = |h: S| {
        (tilde.eval(S::one() + h) - S::real(2.0) * tilde.eval(S::one()) + tilde.eval(S::one() - h))
            / (h * h)
    };
    let h = S::real(1e-4);
    let d1 = second(h);
    let d2 = second(h * S::real(0.5));
    Ok((S::real(4.0) * d2 - d1) / S::real(3.0))
}

/// Log-spaced grid of `points` values covering [lo, hi].
pub fn log_grid<S: Scalar>(lo: f64, hi: f64, points: usize) -> Vec<S> {
    assert!(points >= 2 && lo > 0.0 && hi > lo);
    let (llo, lhi) = (lo.log10(), hi.log10());
    (0..points)
        .map(|i| {
            let t = llo + (lhi - llo) * (i as f64) / ((points - 1) as f64);
            S::real(10f64.powf(t))
        })
        .collect()
}

/// Samples operator monotonicity evidence for `f`.
///
/// Checks, in order: normalization f(1) = 1; the symmetry x f(1/x) = f(x)
/// over the grid; positivity of divided-difference (Loewner) matrices on
/// sliding grid windows of size <= 6; and min eig(f(B) - f(A)) >= -1e-9
/// over seeded random ordered pairs A <= B of size `probe_dim`. Sampling
/// is evidence, not certification: failures prove non-membership, passes
/// do not prove membership.
pub fn check_membership<S: Scalar>(
    f: &MonotoneFunction<S>,
    grid: &[S],
    probe_dim: usize,
    seed: u64,
) -> CheckReport {
    assert!(probe_dim >= 2, "probe_dim must be at least 2");
    let normalization_dev = (f.eval(S::one()) - S::one()).abs();

    let mut symmetry_dev = S::zero();
    for &x in grid {
        let lhs = x * f.eval(x.recip());
        let rhs = f.eval(x);
        let dev = (lhs - rhs).abs() / S::one().max(rhs.abs());
        symmetry_dev = symmetry_dev.max(dev);
    }

    // Loewner matrices on windows of nearby grid points.
    let mut loewner_min = S::infinity();
    let window = 6.min(grid.len());
    let mut start = 0;
    while start + window <= grid.len() {
        let pts = &grid[start..start + window];
        if let Some(min_eig) = loewner_min_eigenvalue(f, pts) {
            loewner_min = loewner_min.min(min_eig);
        }
        start += (window / 2).max(1);
    }

    // Random ordered pairs A <= B = A + increment.
    let mut pairs_min = S::infinity();
    let mut witness: Option<u64> = None;
    for trial in 0..40u64 {
        let pair_seed = seed.wrapping_add(trial);
        let a = psd_probe::<S>(probe_dim, pair_seed, 0);
        let incr = psd_probe::<S>(probe_dim, pair_seed, 1);
        let b = a.add(&incr);
        let min_eig = match ordered_image_min_eig(f, &a, &b) {
            Some(v) => v,
            None => continue,
        };
        if min_eig < pairs_min {
            pairs_min = min_eig;
        }
        if min_eig < S::real(-1e-9) && witness.is_none() {
            witness = Some(pair_seed);
        }
    }

    let margin = loewner_min.min(pairs_min);
    let mut report = CheckReport::new(
        "membership",
        f.name(),
        probe_dim,
        seed,
        margin.as_f64(),
        0.0,
        margin.as_f64(),
        1e-9,
    )
    .with_detail(
        "normalization_dev",
        format!("{:e}", normalization_dev.as_f64()),
    )
    .with_detail("symmetry_dev", format!("{:e}", symmetry_dev.as_f64()))
    .with_detail("loewner_min_eig", format!("{:e}", loewner_min.as_f64()))
    .with_detail("pairs_min_eig", format!("{:e}", pairs_min.as_f64()));
    if let Some(s) = witness {
        report = report.with_detail("violating_pair_seed", s.to_string());
    }
    if normalization_dev > S::real(1e-12) || symmetry_dev > S::real(1e-10) {
        report = report.failed();
    }
    report
}

/// Adaptive central-difference derivative (Ridders' extrapolation
/// tableau): starts from a large relative step and keeps the tableau
/// entry with the smallest error estimate. Near machine precision for
/// smooth evaluators, which the Loewner diagonal needs.
pub fn numeric_derivative<S: Scalar>(f: &impl Fn(S) -> S, x: S) -> S {
    const LEVELS: usize = 8;
    let con = S::real(1.4);
    let con2 = con * con;
    let mut h = x.abs().max(S::real(1e-4)) * S::real(0.5);
    let central = |h: S| (f(x + h) - f(x - h)) / (S::real(2.0) * h);
    let mut tableau = [[S::zero(); LEVELS]; LEVELS];
    tableau[0][0] = central(h);
    let mut best = tableau[0][0];
    let mut err = S::infinity();
    for i in 1..LEVELS {
        h /= con;
        tableau[0][i] = central(h);
        let mut fac = con2;
        for j in 1..=i {
            tableau[j][i] = (tableau[j - 1][i] * fac - tableau[j - 1][i - 1]) / (fac - S::one());
            fac *= con2;
            let errt = (tableau[j][i] - tableau[j - 1][i])
                .abs()
                .max((tableau[j][i] - tableau[j - 1][i - 1]).abs());
            if errt <= err {
                err = errt;
                best = tableau[j][i];
            }
        }
        if (tableau[i][i] - tableau[i - 1][i - 1]).abs() >= S::real(2.0) * err {
            break;
        }
    }
    best
}

/// Min eigenvalue of [ (f(x_i)-f(x_j))/(x_i-x_j) ] with f' on the diagonal.
fn loewner_min_eigenvalue<S: Scalar>(f: &MonotoneFunction<S>, pts: &[S]) -> Option<S> {
    let n = pts.len();
    let m = CMatrix::from_fn(n, |i, j| {
        let v = if i == j {
            numeric_derivative(&|x| f.eval(x), pts[i])
        } else {
            (f.eval(pts[i]) - f.eval(pts[j])) / (pts[i] - pts[j])
        };
        Complex::new(v, S::zero())
    });
    let spectral = jacobi_hermitian(&m.symmetrized()).ok()?;
    Some(spectral.eigenvalues[0])
}

/// Min eigenvalue of f(B) - f(A) for PSD A <= B, via spectral calculus.
fn ordered_image_min_eig<S: Scalar>(
    f: &MonotoneFunction<S>,
    a: &CMatrix<S>,
    b: &CMatrix<S>,
) -> Option<S> {
    let fa = jacobi_hermitian(a)
        .ok()?
        .reconstruct_with(|x| f.eval(x.max(S::zero())));
    let fb = jacobi_hermitian(b)
        .ok()?
        .reconstruct_with(|x| f.eval(x.max(S::zero())));
    let diff = fb.sub(&fa).symmetrized();
    let spectral = jacobi_hermitian(&diff).ok()?;
    Some(spectral.eigenvalues[0])
}

/// Well-conditioned random PSD probe used by the membership sampler.
fn psd_probe<S: Scalar>(n: usize, seed: u64, salt: u64) -> CMatrix<S> {
    let g = random_observable::<S>(n, seed.wrapping_mul(2).wrapping_add(salt));
    let gram = g.matrix().mul(&g.matrix().adjoint());
    let scale = S::real(n as f64).recip();
    gram.scale_real(scale)
        .add(&CMatrix::identity(n).scale_real(S::real(0.05)))
}
