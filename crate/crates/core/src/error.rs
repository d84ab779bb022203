use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid code parameters: {0}")]
    InvalidParams(String),

    #[error("{op}: shape mismatch {left:?} vs {right:?}")]
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("{what} {value} out of range (must be < {bound})")]
    OutOfRange {
        what: &'static str,
        value: usize,
        bound: usize,
    },

    #[error("linear system has no solution: target is outside the row space")]
    NoSolution,

    #[error("matrix is singular")]
    Singular,

    #[error("insufficient data: {available} shards available, {required} required")]
    InsufficientData { available: usize, required: usize },

    #[error("inconsistent shards: {0}")]
    Inconsistent(String),

    #[error("node {0} is not a parity node")]
    NotParityNode(usize),

    #[error("k = {k} is beyond the supported scale for this operation (max k = {max})")]
    UnsupportedScale { k: usize, max: usize },

    #[error("corrupt data: {0}")]
    Corruption(String),

    #[error("shard format error: {0}")]
    Format(String),

    #[error("CRC mismatch: stored {stored:#010x}, computed {computed:#010x}")]
    CrcMismatch { stored: u32, computed: u32 },

    #[error("refusing to fail node {node}: {failed} nodes already failed, data would be lost")]
    DataLoss { node: usize, failed: usize },

    #[error("node {0} is unavailable")]
    NodeUnavailable(usize),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
