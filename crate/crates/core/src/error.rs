use thiserror::Error;

/// Errors raised by group construction and the graph algorithms built on top.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("invalid group table: {0}")]
    InvalidTable(String),

    #[error("cannot parse atom `{atom}`: {reason}")]
    Parse { atom: String, reason: String },

    #[error("group order {order} exceeds the configured cap of {cap}")]
    Capacity { order: usize, cap: usize },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error(
        "hypothesis violated for m = {m}: {count} cyclic subgroups of that order (need at least 2)"
    )]
    Hypothesis { m: usize, count: usize },

    #[error("no Hamiltonian path through parts {counts:?}: {reason}")]
    Infeasible { counts: Vec<usize>, reason: String },

    #[error("stitching failed at segment {position}: {reason}")]
    Stitching { position: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
