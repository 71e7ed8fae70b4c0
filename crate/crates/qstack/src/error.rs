use thiserror::Error;

/// Errors surfaced by the public API.
///
/// Shape or datum validation failures are *not* errors: validators return
/// diagnostics so callers can inspect everything that is wrong at once.
/// `Error` covers conditions that make an operation meaningless to attempt.
#[derive(Debug, Error)]
pub enum Error {
    /// Two cells, ids, or arguments collide or refer to nothing.
    #[error("invalid shape: {0}")]
    Shape(String),

    /// Matrix dimensions do not line up for the requested operation.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// Operands live over different scalar rings.
    #[error("ring mismatch: {0}")]
    Ring(String),

    /// A modulus outside the supported prime range, or a non-prime.
    #[error("unsupported field: {0}")]
    Field(String),

    /// A matrix that must be invertible is singular.
    #[error("singular matrix: {0}")]
    Singular(String),

    /// An enumeration or census would exceed the configured work guard.
    #[error("work guard exceeded: {0}")]
    Guard(String),

    /// A representation or datum failed validation where a clean one is required.
    #[error("invalid data: {0}")]
    Invalid(String),

    /// Text input that does not conform to the quiver DSL.
    #[error("parse error at line {line}, column {col}: {message}")]
    Parse {
        line: usize,
        col: usize,
        message: String,
    },

    /// Malformed JSON input (syntax or schema).
    #[error("json error: {0}")]
    Json(String),

    /// Filesystem problems while running the CLI.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
