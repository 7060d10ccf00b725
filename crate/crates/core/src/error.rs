use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// An input violated a structural precondition (shape, finiteness, range,
    /// missing mandatory points).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An iterative routine exhausted its iteration budget.
    #[error("{what} did not converge within {limit} iterations")]
    Convergence { what: &'static str, limit: usize },

    /// A requested ε lies outside the admissible window of the table entry
    /// it is paired with (the bounding denominator degenerates).
    #[error("inadmissible epsilon: {0}")]
    InadmissibleEpsilon(String),

    /// A recurrence entry was requested out of order, before its
    /// prerequisite entries exist.
    #[error("sequencing error: {0}")]
    Sequencing(String),

    /// A least-squares fit has no unique minimizer (degenerate data).
    #[error("ambiguous fit: {0}")]
    AmbiguousFit(String),

    /// Synthetic-data generation failed to reach its target window.
    #[error("generation failed: {0}")]
    Generation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
