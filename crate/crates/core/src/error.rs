use std::path::PathBuf;

/// Errors produced anywhere in the compilation pipeline.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("qubit count mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("mode count mismatch: Hamiltonian has {hamiltonian} modes, mapping has {mapping}")]
    ModeMismatch { hamiltonian: usize, mapping: usize },

    #[error("invalid Pauli string {text:?}: {reason}")]
    PauliSyntax { text: String, reason: String },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what} exceeds the limit of {limit}")]
    TooLarge { what: &'static str, limit: usize },

    #[error("operator is not Hermitian: {0}")]
    NonHermitian(String),

    #[error("tree construction failed: {0}")]
    Construction(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
