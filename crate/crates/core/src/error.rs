use thiserror::Error;

/// Errors produced by the solvers and parsers in this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("unsupported range: {0}")]
    UnsupportedRange(String),

    #[error("root localization failed on [{lo}, {hi}]: {context}")]
    RootLocalization { lo: f64, hi: f64, context: String },

    #[error("zigzag excluded: use zigzag_levels (theta = {0})")]
    ZigzagExcluded(f64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("transfer undefined: target {target} outside ({lo}, {hi})")]
    TransferUndefined { target: f64, lo: f64, hi: f64 },

    #[error("basis degenerate: increase interior points or reduce K")]
    BasisDegenerate,

    #[error("eigenvalue not found: enlarge K/M ({0})")]
    EigenNotFound(String),

    #[error("Gram matrix not positive definite at N = {0}: reduce N or rescale")]
    Conditioning(usize),

    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("domain spec line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
