//! Randomized invariants across the numeric core: eigensolver residuals
//! over a seeded campaign, tangent-space identities, centering, and the
//! JSON round trips the CLI depends on.

use proptest::prelude::*;

use qfim::matrix::MatrixLiteral;
use qfim::random::{random_density, random_observable};
use qfim::report::CheckReport;
use qfim::state::{center, commutator, eig_hermitian, i_commutator};

/// The core instantiates at f32 as well; residuals scale with the wider
/// epsilon but the structure is the same. The shipped tolerances assume
/// f64, so this only exercises the generic path.
#[test]
fn single_precision_instantiation_works() {
    let rho = random_density::<f32>(3, 5, true);
    let a = random_observable::<f32>(3, 6);
    let residual = rho
        .spectral()
        .reconstruct()
        .sub(rho.matrix())
        .frobenius_norm();
    assert!(residual < 1e-5, "residual {residual:e}");

    let wy = qfim::monotone::MonotoneFunction::<f32>::wigner_yanase();
    assert!((wy.eval(4.0f32) - 2.25).abs() < 1e-6);
    let m = qfim::means::scalar_mean(&wy.tilde().unwrap(), 0.4f32, 1.6).unwrap();
    assert!((m - 0.8).abs() < 1e-6);

    let state = qfim::state::DensityMatrix::<f32>::from_probabilities(&[0.8, 0.2]).unwrap();
    let sigma1 = qfim::state::HermitianMatrix::<f32>::pauli_x();
    let info = qfim::qfi::f_information(
        &wy,
        &state,
        &sigma1,
        qfim::qfi::InfoPath::VarianceMinusCorrelation,
    )
    .unwrap()
    .value;
    assert!((info - 0.2).abs() < 1e-5, "info {info}");
}

/// Reconstruction and unitarity residuals over 100+ seeded matrices for
/// every dimension from 2 through 8.
#[test]
fn eigendecomposition_residuals_across_dimensions() {
    for n in 2..=8usize {
        for seed in 0..15u64 {
            let a = random_observable::<f64>(n, seed);
            let d = eig_hermitian(&a).unwrap();
            let scale = a.matrix().frobenius_norm().max(1.0);
            let residual = d.reconstruct().sub(a.matrix()).frobenius_norm();
            assert!(
                residual <= 1e-10 * scale,
                "n={n} seed={seed}: residual {residual:e}"
            );
            let unitarity = d.eigenvectors.unitarity_deviation();
            assert!(
                unitarity <= 1e-10,
                "n={n} seed={seed}: unitarity {unitarity:e}"
            );
            assert!(d.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        }
    }
}

#[test]
fn density_eigendecomposition_residuals() {
    for n in 2..=8usize {
        for seed in 0..10u64 {
            let rho = random_density::<f64>(n, seed, seed % 2 == 0);
            let residual = rho
                .spectral()
                .reconstruct()
                .sub(rho.matrix())
                .frobenius_norm();
            assert!(residual <= 1e-10, "n={n} seed={seed}: {residual:e}");
            assert!(rho.eigenvalues().iter().all(|&l| l >= 0.0));
        }
    }
}

proptest! {
    #[test]
    fn center_is_idempotent_and_kills_expectation(seed in 0u64..5000, n in 2usize..6) {
        let rho = random_density::<f64>(n, seed, false);
        let a = random_observable::<f64>(n, seed ^ 0xabcd);
        let once = center(&a, &rho).unwrap();
        let twice = center(&once, &rho).unwrap();
        let dev = once.matrix().sub(twice.matrix()).frobenius_norm();
        prop_assert!(dev <= 1e-12 * once.matrix().frobenius_norm().max(1.0));
        let mean = qfim::state::expectation(&rho, &once).unwrap();
        prop_assert!(mean.abs() <= 1e-12);
    }

    #[test]
    fn state_tangent_is_hermitian_traceless(seed in 0u64..5000, n in 2usize..6) {
        let rho = random_density::<f64>(n, seed, false);
        let a = random_observable::<f64>(n, seed ^ 0x1234);
        let tangent = i_commutator(rho.hermitian(), &a).unwrap();
        prop_assert_eq!(tangent.matrix().hermitian_deviation(), 0.0);
        prop_assert!(tangent.trace().abs() <= 1e-12);
        // The raw commutator is skew-Hermitian.
        let k = commutator(rho.hermitian(), &a).unwrap();
        let skew_dev = k.add(&k.adjoint()).frobenius_norm();
        prop_assert!(skew_dev <= 1e-13 * k.frobenius_norm().max(1.0));
    }

    #[test]
    fn matrix_literal_round_trips(seed in 0u64..5000, n in 2usize..5) {
        let a = random_observable::<f64>(n, seed);
        let lit = MatrixLiteral::from_matrix(a.matrix());
        let text = serde_json::to_string(&lit).unwrap();
        let back = MatrixLiteral::parse(&text).unwrap();
        let m: qfim::CMatrix64 = back.to_matrix();
        prop_assert_eq!(&m, a.matrix());
    }

    #[test]
    fn check_report_serialization_round_trips(lhs in -1e12f64..1e12, margin in -1.0f64..1.0) {
        let report = CheckReport::new("prop", "wy", 3, 99, lhs, lhs * 0.5, margin, 1e-9);
        let back: CheckReport = serde_json::from_str(&report.to_json()).unwrap();
        prop_assert_eq!(back.lhs, report.lhs);
        prop_assert_eq!(back.margin, report.margin);
        prop_assert_eq!(back.pass, report.pass);
    }
}
