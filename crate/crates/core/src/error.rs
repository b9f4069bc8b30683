use thiserror::Error;

/// Unified error type for the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("self-loop at line {line}: vertex {v}")]
    SelfLoop { line: usize, v: usize },

    #[error("duplicate edge at line {line}: {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },

    #[error("invalid motif: {0}")]
    InvalidMotif(String),

    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),

    #[error("invalid coloring: {0}")]
    InvalidColoring(String),

    #[error("no p-centered coloring found within {max_iterations} iterations")]
    IterationCap { max_iterations: u32 },

    #[error("no color class of size at least two to split")]
    NoSplittableClass,

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("motif order {order} outside supported range 2..=8")]
    MotifTooLarge { order: usize },

    #[error("count overflow: intermediate value exceeds u64")]
    CountOverflow,

    #[error("pattern table context mismatch: depth {left} vs {right}")]
    ContextMismatch { left: usize, right: usize },

    #[error("forget depth {got} does not match table context depth {expected}")]
    ForgetDepth { expected: usize, got: usize },

    #[error("missing per-color-set count for combination")]
    MissingSubsetCount,

    #[error("negative exact-count intermediate: inconsistent per-color-set counts")]
    NegativeExactCount,

    #[error("host graph too large for exhaustive counting: {n} vertices (limit 12)")]
    HostTooLarge { n: usize },

    #[error("unknown config key at line {line}: {key}")]
    UnknownConfigKey { line: usize, key: String },

    #[error("invalid config value at line {line}: {msg}")]
    ConfigValue { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
