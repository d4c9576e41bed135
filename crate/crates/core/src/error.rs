use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid context: {0}")]
    InvalidContext(String),

    #[error("invalid monomial: {0}")]
    InvalidMonomial(String),

    #[error("index {index} is outside [1, {n}]")]
    IndexOutOfRange { index: u32, n: u32 },

    #[error("{monomial} is not {t}-spread")]
    NotSpread { monomial: String, t: u32 },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("ideal is not t-spread strongly stable: {0}")]
    NotStronglyStable(String),

    #[error("construction not applicable: {0}")]
    Inapplicable(String),

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),

    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
