use thiserror::Error;

/// Errors shared by every layer of the crate.
///
/// The CLI maps these onto process exit codes: `Parse`/`Descriptor`/`Domain`/
/// `Index`/`Precondition` are usage errors (exit 2), `Resource` is a budget
/// failure (exit 3) and `InvariantViolation` means a mathematical consistency
/// check failed at runtime (exit 4).
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or unsupported group descriptor (e.g. rank 0).
    #[error("invalid group descriptor: {0}")]
    Descriptor(String),

    /// Operands that do not live where the operation needs them
    /// (mixed groups, non-idempotent input, element outside an interval, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Generator or element index out of range.
    #[error("index error: {0}")]
    Index(String),

    /// A documented precondition of the operation does not hold.
    #[error("precondition not met: {0}")]
    Precondition(String),

    /// A configured budget was exhausted before the computation finished.
    #[error("resource budget exhausted: {context} (progress {partial}, budget {budget})")]
    Resource {
        context: String,
        partial: usize,
        budget: usize,
    },

    /// A property that must hold mathematically failed at runtime.
    /// This always signals a bug (or deliberately corrupted input), never
    /// a legitimate user error.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    /// Unparseable element, subset or format string.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
