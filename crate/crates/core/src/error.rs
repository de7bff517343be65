//! Error types shared across the crate.
//!
//! Every failure carries enough context to classify it into one of the
//! process exit codes used by the CLI: input/schema problems (2), numerical
//! failures (3), and exhausted budgets (4).

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Operands with incompatible dimensions.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A matrix with the wrong shape or structure (non-square, non-Hermitian
    /// where Hermitian is required, and so on).
    #[error("shape error: {0}")]
    Shape(String),

    #[error("length mismatch: {0}")]
    LengthMismatch(String),

    #[error("empty generator set")]
    EmptyGenerators,

    #[error("matrix is not unitary (residual {residual:.3e})")]
    NonUnitary { residual: f64 },

    #[error("arithmetic overflow: {0}")]
    Arithmetic(String),

    /// Malformed problem files; the message names the offending field.
    #[error("schema error: {0}")]
    Schema(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    /// The randomized decomposition kept disagreeing with itself.
    #[error("genericity failure after {retries} resamples: {detail}")]
    Genericity { retries: usize, detail: String },

    #[error("invariance violation: residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    InvarianceViolation { residual: f64, tol: f64 },

    #[error("subspace is not irreducible: {0}")]
    NotIrreducible(String),

    #[error("incomplete decomposition: {0}")]
    IncompleteDecomposition(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    /// Wraps a sub-error with the pipeline stage that produced it.
    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Attach a pipeline stage label.
    pub fn at_stage(self, stage: &'static str) -> Self {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }

    /// Process exit code the CLI maps this error to.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Dimension(_)
            | Error::Shape(_)
            | Error::LengthMismatch(_)
            | Error::EmptyGenerators
            | Error::NonUnitary { .. }
            | Error::Arithmetic(_)
            | Error::Schema(_) => 2,
            Error::BudgetExceeded(_) => 4,
            Error::Numerical(_)
            | Error::Genericity { .. }
            | Error::InvarianceViolation { .. }
            | Error::NotIrreducible(_)
            | Error::IncompleteDecomposition(_) => 3,
            Error::Stage { source, .. } => source.exit_code(),
        }
    }
}
