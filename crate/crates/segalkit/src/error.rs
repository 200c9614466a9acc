use thiserror::Error;

/// Errors raised by the finite constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} would have {size} elements, exceeding the base bound {bound}")]
    BoundExceeded {
        what: String,
        size: usize,
        bound: usize,
    },
    #[error("limit not available in the base: {0}")]
    MissingLimit(String),
    #[error("exponential not available in the base: {0}")]
    MissingExponential(String),
    #[error("invalid subset: {0}")]
    InvalidSubset(String),
    #[error("not representable: {0}")]
    Unrepresentable(String),
    #[error("axiom violated: {0}")]
    AxiomViolation(String),
    #[error("not a functor: {0}")]
    NotAFunctor(String),
    #[error("not a simplicial map: {0}")]
    NotSimplicial(String),
    #[error("probe too small: {0}")]
    ProbeTooSmall(String),
    #[error("colimit is not a finite category within budget {budget}")]
    ColimitNotFinite { budget: usize },
    #[error("search budget {budget} exceeded while {during}")]
    SearchBudgetExceeded { budget: usize, during: String },
    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn bound(what: impl Into<String>, size: usize, bound: usize) -> Self {
        Error::BoundExceeded {
            what: what.into(),
            size,
            bound,
        }
    }

    /// True for errors caused by a configured cap rather than by the input.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::BoundExceeded { .. }
                | Error::SearchBudgetExceeded { .. }
                | Error::ColimitNotFinite { .. }
        )
    }
}
