use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Operand shapes do not fit together.
    #[error("shape mismatch in {op}: {detail}")]
    Shape { op: &'static str, detail: String },

    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Exhaustive enumeration would exceed the configured budget.
    #[error(
        "enumeration needs 2^{required_log2} words but the budget is 2^{budget_log2}; \
         rerun with a budget of at least {required_log2}"
    )]
    BudgetExceeded { required_log2: u32, budget_log2: u32 },

    /// An exactness or consistency check failed (corrupted input or internal bug).
    #[error("integrity check failed: {0}")]
    Integrity(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn shape(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Shape {
            op,
            detail: detail.into(),
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BudgetExceeded { .. } => 3,
            Error::Integrity(_) => 4,
            _ => 2,
        }
    }
}
