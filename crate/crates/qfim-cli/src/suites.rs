//! Verification campaign runners behind `qfim verify <suite>`.
//!
//! Trial i of a campaign derives everything from seed + i, so identical
//! invocations are byte-identical and campaigns can be partitioned across
//! seed ranges.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qfim::evolution::{constancy_check, unitary_covariance_check, EvolutionSpec};
use qfim::inequalities::{check_sandwich, check_var_bound};
use qfim::means::{matrix_mean, scalar_mean};
use qfim::monotone::{check_membership, log_grid, MonotoneFunction};
use qfim::qfi::{f_information, sld_residual, sld_solve, InfoPath};
use qfim::random::{
    random_commuting_pair, random_density, random_observable, random_pure, random_unitary,
};
use qfim::report::{relative_tolerance, CheckReport};
use qfim::state::{eig_hermitian, HermitianMatrix};

pub fn run_suite(
    suite: &str,
    f: &MonotoneFunction<f64>,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<Vec<CheckReport>, String> {
    let mut reports = Vec::with_capacity(trials);
    for i in 0..trials as u64 {
        let trial_seed = seed + i;
        let report = match suite {
            "sandwich" => sandwich_trial(f, n, trial_seed),
            "var-bound" => var_bound_trial(f, n, trial_seed, i),
            "means" => means_trial(f, n, trial_seed),
            "membership" => Ok(check_membership(f, &log_grid(1e-3, 1e3, 25), n, trial_seed)),
            "covariance" => covariance_trial(f, n, trial_seed),
            "constancy" => constancy_trial(f, n, trial_seed),
            "two-path" => two_path_trial(f, n, trial_seed),
            other => return Err(format!("unknown suite '{other}'")),
        }
        .map_err(|e| e.to_string())?;
        reports.push(report);
    }
    Ok(reports)
}

fn sandwich_trial(f: &MonotoneFunction<f64>, n: usize, seed: u64) -> qfim::Result<CheckReport> {
    let rho = random_density::<f64>(n, seed, false);
    let a = random_observable::<f64>(n, seed);
    Ok(check_sandwich(f, &rho, &a)?.to_check_report(n, seed))
}

fn var_bound_trial(
    f: &MonotoneFunction<f64>,
    n: usize,
    seed: u64,
    index: u64,
) -> qfim::Result<CheckReport> {
    // Every fourth trial probes the pure-state equality case.
    let rho = if index % 4 == 3 {
        random_pure::<f64>(n, seed)
    } else {
        random_density::<f64>(n, seed, false)
    };
    let a = random_observable::<f64>(n, seed);
    let mut report = check_var_bound(f, &rho, &a)?;
    report.seed = seed;
    Ok(report)
}

fn means_trial(f: &MonotoneFunction<f64>, n: usize, seed: u64) -> qfim::Result<CheckReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sample = || 10f64.powf(rng.random_range(-3.0..3.0));

    // Scalar sandwich: harmonic <= m_f <= arithmetic.
    let mut scalar_margin = f64::INFINITY;
    for _ in 0..100 {
        let (x, y) = (sample(), sample());
        let m = scalar_mean(f, x, y)?;
        let arithmetic = (x + y) / 2.0;
        let harmonic = 2.0 * x * y / (x + y);
        let scale = arithmetic.max(1.0);
        scalar_margin = scalar_margin
            .min((arithmetic - m) / scale)
            .min((m - harmonic) / scale);
    }

    // Matrix sandwich on one commuting positive-definite pair.
    let (a, b) = commuting_spd_pair(n, seed);
    let m = matrix_mean(f, &a, &b)?;
    let arithmetic = a.add(&b)?.scale(0.5);
    let harmonic = matrix_mean(&MonotoneFunction::rld(), &a, &b)?;
    let upper_gap = eig_hermitian(&arithmetic.sub(&m)?)?.eigenvalues[0];
    let lower_gap = eig_hermitian(&m.sub(&harmonic)?)?.eigenvalues[0];
    let matrix_margin = upper_gap.min(lower_gap);

    // Scalar sandwich carries the 1e-12 relative tolerance; the PSD-order
    // matrix check has its own 1e-9 eigenvalue tolerance.
    let mut report = CheckReport::new(
        "means",
        f.name(),
        n,
        seed,
        scalar_margin,
        0.0,
        scalar_margin,
        1e-12,
    )
    .with_detail("scalar_margin", format!("{scalar_margin:e}"))
    .with_detail("matrix_min_eig_margin", format!("{matrix_margin:e}"));
    if matrix_margin < -1e-9 {
        report = report.failed();
    }
    Ok(report)
}

fn covariance_trial(f: &MonotoneFunction<f64>, n: usize, seed: u64) -> qfim::Result<CheckReport> {
    let rho = random_density::<f64>(n, seed, true);
    let a = random_observable::<f64>(n, seed);
    let u = random_unitary::<f64>(n, seed);
    let mut report = unitary_covariance_check(f, &rho, &a, &u)?;
    report.seed = seed;
    Ok(report)
}

fn constancy_trial(f: &MonotoneFunction<f64>, n: usize, seed: u64) -> qfim::Result<CheckReport> {
    let (a, h) = random_commuting_pair::<f64>(n, seed);
    let rho = random_density::<f64>(n, seed, true);
    let times: Vec<f64> = (0..11)
        .map(|i| 2.0 * std::f64::consts::PI * i as f64 / 10.0)
        .collect();
    let spec = EvolutionSpec::new(rho, h, times)?;
    let mut report = constancy_check(f, &spec, &a)?;
    report.seed = seed;
    Ok(report)
}

fn two_path_trial(f: &MonotoneFunction<f64>, n: usize, seed: u64) -> qfim::Result<CheckReport> {
    let rho = random_density::<f64>(n, seed, true);
    let a = random_observable::<f64>(n, seed);
    let metric = f_information(f, &rho, &a, InfoPath::Metric)?.value;
    let varpath = f_information(f, &rho, &a, InfoPath::VarianceMinusCorrelation)?.value;
    let deviation = (metric - varpath).abs();
    let tolerance = relative_tolerance(1e-9, varpath);
    let l = sld_solve(&rho, &a)?;
    let residual = sld_residual(&rho, &a, &l)?;
    let mut report = CheckReport::new(
        "two-path",
        f.name(),
        n,
        seed,
        metric,
        varpath,
        -deviation,
        tolerance,
    )
    .with_detail("sld_residual", format!("{residual:e}"));
    if residual > 1e-9 {
        report = report.failed();
    }
    Ok(report)
}

fn commuting_spd_pair(n: usize, seed: u64) -> (HermitianMatrix<f64>, HermitianMatrix<f64>) {
    let (a, b) = random_commuting_pair::<f64>(n, seed);
    let shift = 1.0 + a.matrix().frobenius_norm().max(b.matrix().frobenius_norm());
    let id = HermitianMatrix::identity(n).scale(shift);
    (a.add(&id).expect("same dim"), b.add(&id).expect("same dim"))
}
