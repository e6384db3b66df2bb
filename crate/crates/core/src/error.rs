use thiserror::Error;

pub type Result<T> = std::result::Result<T, IceError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IceError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// Boundary arrows whose flux across the boundary loop does not vanish,
    /// or a signature that cannot be realized.
    #[error("infeasible boundary: {0}")]
    Infeasible(String),

    #[error("no boundary of maximal tilt exists on the 3.4.6.4 lattice (side {side} asked for tilt {tilt})")]
    NoMaximalTilt { side: usize, tilt: i32 },

    /// Height increments around a closed dual loop do not sum to zero.
    #[error("height is inconsistent around the dual loop closed by dual edge {dual_edge} (circulation {circulation})")]
    Inconsistent { dual_edge: usize, circulation: i64 },

    #[error("face {face} is not unidirectional")]
    InvalidMove { face: usize },

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl IceError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        IceError::InvalidArgument(msg.into())
    }
}
