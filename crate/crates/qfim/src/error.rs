use thiserror::Error;

/// Errors raised by the numeric core.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max |m[i][j] - conj(m[j][i])| = {max_deviation:e} exceeds {tolerance:e}")]
    NotHermitian { max_deviation: f64, tolerance: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("eigenvalue iteration did not converge: off-diagonal Frobenius norm {off_diagonal:e} after {sweeps} sweeps")]
    EigenNonConvergence { off_diagonal: f64, sweeps: usize },

    #[error("trace is {trace}, expected 1 within {tolerance:e}")]
    InvalidTrace { trace: f64, tolerance: f64 },

    #[error("negative eigenvalue {value:e} below the clamp threshold")]
    NegativeEigenvalue { value: f64 },

    #[error("matrix is not positive definite: min eigenvalue {min_eigenvalue:e}")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    #[error("state is not faithful (min eigenvalue {min_eigenvalue:e}); use the variance-minus-correlation path instead")]
    NonFaithful { min_eigenvalue: f64 },

    #[error("function '{name}' is not regular (f(0) = 0); the operation requires f(0) > 0")]
    NonRegular { name: String },

    #[error("scalar function undefined at eigenvalue {at}")]
    FunctionUndefined { at: f64 },

    #[error("mean of nonpositive arguments ({x}, {y}) requested for regular function '{name}'")]
    NonPositiveMeanInput { name: String, x: f64, y: f64 },

    #[error("numeric limit did not converge: last iterates {prev} and {last}")]
    LimitNonConvergence { prev: f64, last: f64 },

    #[error("no counterexample exists at or above the optimal constant: k = {k} >= 1/(2 f(0)) = {bound}")]
    NoCounterexample { k: f64, bound: f64 },

    #[error("counterexample search exhausted without a witness for k = {k}")]
    SearchExhausted { k: f64 },

    #[error("unknown monotone function name '{name}' (expected wy, sld, rld, or mix:<s>)")]
    UnknownFunction { name: String },

    #[error("matrix is not unitary: ||U*U - I||_F = {deviation:e}")]
    NotUnitary { deviation: f64 },

    #[error("internal consistency violation: information value {value:e} below -1e-10")]
    NegativeInformation { value: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed matrix literal: {0}")]
    MalformedLiteral(String),
}

pub type Result<T> = std::result::Result<T, Error>;
