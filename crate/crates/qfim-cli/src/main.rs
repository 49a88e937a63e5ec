//! `qfim` — verification campaigns and single-case evaluation for monotone
//! quantum Fisher information metrics.
//!
//! Exit codes: 0 all checks passed; 1 at least one check failed (or no
//! counterexample exists at the requested level); 2 usage or input error.

mod input;
mod suites;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qfim::bloch::{ratio_limit_one, ratio_limit_zero, sld_ratio};
use qfim::evolution::EvolutionSpec;
use qfim::inequalities::search_counterexample;
use qfim::matrix::MatrixLiteral;
use qfim::monotone::MonotoneFunction;
use qfim::qfi::{
    correlation, f_information, sld_information, variance, wy_information_direct, InfoPath,
};
use qfim::report::CheckReport;
use qfim::state::commutator;
use qfim::Error;

#[derive(Parser)]
#[command(
    name = "qfim",
    about = "Monotone quantum Fisher information metrics: campaigns, closed forms, and counterexample search",
    version
)]
struct Cli {
    /// Monotone function: wy, sld, rld, or mix:<s> with s in [0,1]
    #[arg(long = "f", global = true, default_value = "wy")]
    f_name: String,

    /// Base seed; campaign trial i uses seed + i
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Override the pass/fail tolerance of emitted reports
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Report stream format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification campaign; one report per trial on stdout
    Verify {
        /// sandwich | var-bound | means | membership | covariance | constancy | two-path
        suite: String,
        /// State/observable dimension
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Number of seeded trials
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Evaluate every information functional on one (state, observable) pair
    Info {
        /// State: JSON matrix file, mixed:<n>, or bloch:<x>,<y>,<z>
        #[arg(long)]
        rho: String,
        /// Observable: JSON matrix file, sigma1|sigma2|sigma3, identity[:n]
        #[arg(long)]
        a: String,
    },
    /// Emit the SLD/f information ratio over a radius grid as CSV
    Bloch {
        #[arg(long, default_value_t = 0.01)]
        r_min: f64,
        #[arg(long, default_value_t = 0.99)]
        r_max: f64,
        #[arg(long, default_value_t = 99)]
        steps: usize,
    },
    /// Search for a 2x2 witness violating I_SLD <= k I_f
    SearchK {
        #[arg(long)]
        k: f64,
    },
    /// Evolve a state under a Hermitian generator and trace I_f(t) as CSV
    Evolve {
        /// State: JSON matrix file, mixed:<n>, or bloch:<x>,<y>,<z>
        #[arg(long)]
        rho: String,
        /// Observable (see `info --a`)
        #[arg(long)]
        a: String,
        /// Generator H (same sources as observables)
        #[arg(long = "h", visible_alias = "generator")]
        generator: String,
        #[arg(long, default_value_t = std::f64::consts::TAU)]
        t_max: f64,
        #[arg(long, default_value_t = 11)]
        steps: usize,
    },
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();

    let f = match MonotoneFunction::<f64>::by_name(&cli.f_name) {
        Ok(f) => f,
        Err(e) => return usage_error(&e.to_string()),
    };

    let outcome = match &cli.command {
        Command::Verify { suite, n, trials } => cmd_verify(&cli, &f, suite, *n, *trials),
        Command::Info { rho, a } => cmd_info(&cli, &f, rho, a),
        Command::Bloch {
            r_min,
            r_max,
            steps,
        } => cmd_bloch(&f, *r_min, *r_max, *steps),
        Command::SearchK { k } => cmd_search_k(&f, *k),
        Command::Evolve {
            rho,
            a,
            generator,
            t_max,
            steps,
        } => cmd_evolve(&cli, &f, rho, a, generator, *t_max, *steps),
    };

    match outcome {
        Ok(code) => code,
        Err(message) => usage_error(&message),
    }
}

fn usage_error(message: &str) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

fn emit_reports(cli: &Cli, reports: &[CheckReport]) -> bool {
    let mut all_pass = true;
    if cli.format == Format::Csv {
        println!("{}", CheckReport::csv_header());
    }
    for report in reports {
        let mut report = report.clone();
        if let Some(tol) = cli.tol {
            report.tolerance = tol;
            report.pass = report.margin >= -tol;
        }
        all_pass &= report.pass;
        match cli.format {
            Format::Json => println!("{}", report.to_json()),
            Format::Csv => println!("{}", report.to_csv_row()),
        }
    }
    all_pass
}

fn cmd_verify(
    cli: &Cli,
    f: &MonotoneFunction<f64>,
    suite: &str,
    n: usize,
    trials: usize,
) -> Result<ExitCode, String> {
    if n < 2 {
        return Err("n must be at least 2".into());
    }
    let reports = suites::run_suite(suite, f, n, trials, cli.seed)?;
    if emit_reports(cli, &reports) {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

#[derive(Serialize)]
struct InfoOutput {
    f_name: String,
    dim: usize,
    rho_faithful: bool,
    variance: f64,
    correlation_tilde: f64,
    i_f_variance_path: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    i_f_metric_path: Option<f64>,
    i_sld: f64,
    i_wy: f64,
}

fn cmd_info(cli: &Cli, f: &MonotoneFunction<f64>, rho: &str, a: &str) -> Result<ExitCode, String> {
    let rho = input::load_state(rho)?;
    let a = input::load_observable(a)?;
    let err = |e: Error| e.to_string();

    let tilde = f.tilde().map_err(err)?;
    let out = InfoOutput {
        f_name: f.name().to_string(),
        dim: rho.dim(),
        rho_faithful: rho.faithful(),
        variance: variance(&rho, &a).map_err(err)?,
        correlation_tilde: correlation(&tilde, &rho, &a).map_err(err)?,
        i_f_variance_path: f_information(f, &rho, &a, InfoPath::VarianceMinusCorrelation)
            .map_err(err)?
            .value,
        i_f_metric_path: if rho.faithful() {
            Some(
                f_information(f, &rho, &a, InfoPath::Metric)
                    .map_err(err)?
                    .value,
            )
        } else {
            None
        },
        i_sld: sld_information(&rho, &a).map_err(err)?,
        i_wy: wy_information_direct(&rho, &a).map_err(err)?,
    };

    match cli.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string(&out).expect("info output serializes")
        ),
        Format::Csv => {
            println!("field,value");
            println!("f_name,{}", out.f_name);
            println!("dim,{}", out.dim);
            println!("rho_faithful,{}", out.rho_faithful);
            println!("variance,{}", out.variance);
            println!("correlation_tilde,{}", out.correlation_tilde);
            println!("i_f_variance_path,{}", out.i_f_variance_path);
            if let Some(v) = out.i_f_metric_path {
                println!("i_f_metric_path,{v}");
            }
            println!("i_sld,{}", out.i_sld);
            println!("i_wy,{}", out.i_wy);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_bloch(
    f: &MonotoneFunction<f64>,
    r_min: f64,
    r_max: f64,
    steps: usize,
) -> Result<ExitCode, String> {
    if !(0.0 < r_min && r_min < r_max && r_max < 1.0) {
        return Err(format!(
            "radius range must satisfy 0 < r_min < r_max < 1, got [{r_min}, {r_max}]"
        ));
    }
    if steps < 1 {
        return Err("steps must be at least 1".into());
    }
    let err = |e: Error| e.to_string();
    // Data rows carry the analytic asymptotes; the footer carries the
    // numerically extrapolated limits.
    let analytic_zero = 1.0 / (2.0 * f.f_zero());
    println!("r,ratio,limit_zero,limit_one");
    for i in 0..steps {
        let t = if steps == 1 {
            0.0
        } else {
            i as f64 / (steps - 1) as f64
        };
        let r = r_min + (r_max - r_min) * t;
        let ratio = sld_ratio(f, r).map_err(err)?;
        println!("{r},{ratio},{analytic_zero},1");
    }
    let numeric_zero = ratio_limit_zero(f).map_err(err)?;
    let numeric_one = ratio_limit_one(f).map_err(err)?;
    println!("limit_zero,{numeric_zero},,");
    println!("limit_one,{numeric_one},,");
    Ok(ExitCode::SUCCESS)
}

fn cmd_search_k(f: &MonotoneFunction<f64>, k: f64) -> Result<ExitCode, String> {
    if k < 1.0 {
        return Err(format!("k must be at least 1, got {k}"));
    }
    match search_counterexample(f, k) {
        Ok(record) => {
            let json = serde_json::json!({
                "f_name": f.name(),
                "k": record.k,
                "r": record.r,
                "i_sld": record.i_sld,
                "k_times_i_f": record.k_times_i_f,
                "violation": record.violation,
                "rho": MatrixLiteral::from_matrix(record.rho.matrix()),
                "observable": MatrixLiteral::from_matrix(record.observable.matrix()),
            });
            println!("{json}");
            Ok(ExitCode::SUCCESS)
        }
        Err(e @ Error::NoCounterexample { .. }) | Err(e @ Error::SearchExhausted { .. }) => {
            eprintln!("{e}");
            Ok(ExitCode::from(1))
        }
        Err(e) => Err(e.to_string()),
    }
}

fn cmd_evolve(
    cli: &Cli,
    f: &MonotoneFunction<f64>,
    rho: &str,
    a: &str,
    generator: &str,
    t_max: f64,
    steps: usize,
) -> Result<ExitCode, String> {
    if steps < 1 {
        return Err("steps must be at least 1".into());
    }
    if t_max < 0.0 {
        return Err("t_max must be nonnegative".into());
    }
    let rho = input::load_state(rho)?;
    let a = input::load_observable(a)?;
    let h = input::load_observable(generator)?;
    let err = |e: Error| e.to_string();

    let times: Vec<f64> = (0..steps)
        .map(|i| {
            if steps == 1 {
                0.0
            } else {
                t_max * i as f64 / (steps - 1) as f64
            }
        })
        .collect();
    let commuting = commutator(&a, &h).map_err(err)?.frobenius_norm() <= 1e-12;
    let spec = EvolutionSpec::new(rho, h, times).map_err(err)?;

    let i0 = f_information(
        f,
        spec.initial_state(),
        &a,
        InfoPath::VarianceMinusCorrelation,
    )
    .map_err(err)?
    .value;
    let mut max_drift = 0.0f64;
    println!("t,value,drift");
    for &t in spec.times() {
        let state = qfim::evolution::evolve(&spec, t).map_err(err)?;
        let value = f_information(f, &state, &a, InfoPath::VarianceMinusCorrelation)
            .map_err(err)?
            .value;
        let drift = (value - i0).abs();
        max_drift = max_drift.max(drift);
        println!("{t},{value},{drift}");
    }
    println!("summary,{max_drift},{commuting}");

    let tolerance = cli.tol.unwrap_or(1e-9) * i0.abs().max(1.0);
    if commuting && max_drift > tolerance {
        Ok(ExitCode::from(1))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}
