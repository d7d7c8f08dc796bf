//! Error type shared by all modules.

/// Errors surfaced by the library.
///
/// Index and rank checks are performed at construction boundaries (parsers,
/// public constructors); internal arithmetic assumes validated inputs.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A generator index lies outside the range admitted by the ambient rank.
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    /// Two objects built over different ranks were combined.
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(u32, u32),

    /// Two group-algebra values live over different ambient groups.
    #[error("ambient mismatch: {0} vs {1}")]
    AmbientMismatch(String, String),

    /// Matrix sizes disagree.
    #[error("matrix size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),

    /// Matrix basis tags disagree.
    #[error("matrix basis mismatch: {0} vs {1}")]
    BasisMismatch(String, String),

    /// A substitution bound a parameter occurring with a negative exponent
    /// to a non-invertible polynomial.
    #[error("cannot substitute non-unit for {0}: it occurs with a negative exponent")]
    NonUnitSubstitution(String),

    /// A word contained a letter the operation does not accept.
    #[error("unsupported letter {letter} for {operation}")]
    UnsupportedLetter { letter: String, operation: String },

    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),

    /// A representation was paired with a group family it cannot verify.
    #[error("representation {rep} is not applicable to family {family}")]
    InapplicableRep { rep: String, family: String },
}
