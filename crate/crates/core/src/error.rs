use crate::select::TranslateWitness;

/// Crate-wide error type.
///
/// The variants map onto the failure classes the CLI distinguishes:
/// contract violations (caller error), invariant violations (a theorem
/// checker or a self-verified construction failed, which signals a bug in
/// this crate, never an expected outcome), enumeration guards, and cascade
/// exhaustion (the selection pipeline ran out of strategies but still
/// carries its best witness).
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("contract violation: {0}")]
    Contract(String),

    /// A statement that is a theorem failed on valid input. This is a
    /// bug-detection signal and callers should abort with a full dump.
    #[error("invariant violation (bug signal): {0}")]
    Invariant(String),

    #[error("enumeration guard exceeded: {0}")]
    EnumerationGuard(String),

    /// The selection cascade ran out of strategies. The best witness found
    /// is attached so the caller can still report it.
    #[error("selection cascade exhausted: best achieved {} < target {}", best.achieved, best.target)]
    CascadeExhausted { best: Box<TranslateWitness> },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
