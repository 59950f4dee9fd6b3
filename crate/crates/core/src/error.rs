use thiserror::Error;

use crate::expr::ExprError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown series `{0}`")]
    UnknownSeries(String),

    #[error("term a_{n} = {value} is not a positive finite number")]
    NonPositiveTerm { n: u64, value: f64 },

    #[error("index {n} precedes the first index {n0} of the series")]
    IndexBeforeStart { n: u64, n0: u64 },

    #[error("summing up to index {requested} needs {terms} terms, more than the budget of {budget}")]
    IterationBudgetExceeded { requested: u64, terms: u64, budget: u64 },

    /// The summation stopped before reaching its threshold. The state that
    /// returned this error holds the progress made.
    #[error("term budget exhausted at index {reached} (S = {value}) before reaching the threshold")]
    BudgetExhausted { reached: u64, value: f64 },

    #[error("ζ became non-finite at index {n}")]
    ZetaOverflow { n: u64 },

    #[error("series `{0}` has no closed-form tail integral")]
    MissingTailIntegral(String),

    #[error("series `{0}` has no closed-form term derivative")]
    MissingDerivative(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Expr(#[from] ExprError),
}

impl Error {
    /// True for errors caused by malformed input (names, expressions,
    /// arguments) rather than by the mathematics of the series.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::UnknownSeries(_) | Error::InvalidArgument(_) | Error::Expr(_)
        )
    }
}
