use thiserror::Error;

/// Errors surfaced by the public operations.
///
/// Misuse that cannot happen through the session layer (mixing elements of
/// different rings, out-of-range component indices) panics instead; the
/// variants here are the domain errors a well-formed session can hit.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("structural error: {0}")]
    Structural(String),

    #[error("inhomogeneous input: {0}")]
    Inhomogeneous(String),

    #[error("hypothesis violated: {hypothesis}: {detail}")]
    HypothesisViolated { hypothesis: String, detail: String },

    #[error("insufficient truncation: homological degree {needed} exceeds bound {bound}")]
    InsufficientTruncation { needed: usize, bound: usize },

    #[error("operation requires a minimal resolution")]
    NotMinimal,

    #[error("operation requires a finite (non-truncated) resolution")]
    TruncatedResolution,

    #[error("Hilbert polynomial undefined: {0}")]
    NoHilbertPolynomial(String),
}

pub type Result<T> = std::result::Result<T, Error>;
