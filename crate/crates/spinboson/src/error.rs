use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A spectral-density denominator vanished (within 1e-300) at `omega`.
    #[error("spectral density singular at omega = {omega:.6e} for {what}")]
    Singularity { omega: f64, what: String },

    /// A quadrature did not reach the requested tolerance.
    #[error("quadrature failed over [{a:.6e}, {b:.6e}]: {detail}")]
    Quadrature { a: f64, b: f64, detail: String },

    /// Root bracketing for the calibration failed.
    #[error("no eta in [{lo:.1e}, {hi:.1e}] reaches the target effective coupling {target:.6e}")]
    NoRoot { lo: f64, hi: f64, target: f64 },

    /// Requested state exceeds the configured memory budget.
    #[error("memory budget exceeded: need {needed} bytes, budget {budget} bytes")]
    MemoryBudget { needed: usize, budget: usize },

    /// A structural invariant of the propagation broke.
    #[error("invariant breach at step {step}: {detail}")]
    InvariantBreach { step: usize, detail: String },

    /// Fock or thermal truncation of the exact-diagonalisation oracle is too small.
    #[error("truncation insufficient: {0}")]
    Truncation(String),

    /// Convergence sweep exceeded its threshold.
    #[error("convergence failure: {0}")]
    Convergence(String),

    /// Config file or override parsing failed.
    #[error("config error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the batch front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) => 3,
            Error::Convergence(_) => 2,
            _ => 1,
        }
    }
}
