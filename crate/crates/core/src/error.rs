use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph has {vertices} vertices, above the enumeration cap of {cap}")]
    SizeLimit { vertices: usize, cap: usize },

    #[error("decycling number exceeds the search budget of {cap}")]
    BudgetExceeded { cap: usize },

    #[error("|q| = {q_abs} exceeds 2^{k}; no graph with decycling number {k} attains it (|I(G;-1)| <= 2^phi(G))", q_abs = .q.unsigned_abs())]
    BoundViolation { k: u32, q: i64 },

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    #[error("inconsistent certificate at {path}: {message}")]
    InconsistentCertificate { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
