use thiserror::Error;

/// Errors produced by the evaluators and certification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Structurally invalid argument (bad order, empty grid, bad tolerance).
    #[error("invalid argument: {0}")]
    Argument(String),

    /// A series term evaluated to NaN or infinity.
    #[error("series term {index} is not finite")]
    NonFiniteTerm { index: u32 },

    /// The summation hit `max_terms` before the tail bound fell below tolerance.
    #[error("series did not converge after {terms} terms (tail bound {tail_bound:e})")]
    NoConvergence { terms: u32, tail_bound: f64 },

    /// Operation is not defined on this side of q = 1.
    #[error("unsupported branch: {0}")]
    UnsupportedBranch(String),

    /// The witness equation has no sign change on [0, 1] beyond tolerance.
    /// This would numerically falsify the digamma representation lemma and
    /// is surfaced rather than masked.
    #[error("witness bracket failed at q={q}, x={x}: g(0)={g0:e} and g(1)={g1:e} share a sign")]
    LemmaViolation { q: f64, x: f64, g0: f64, g1: f64 },

    /// An intermediate quantity that must be positive came out non-positive.
    #[error("numeric degeneracy: {0}")]
    Degeneracy(String),

    /// A documented hypothesis of an inequality was not met.
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
