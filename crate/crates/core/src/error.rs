use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A tree, angle map or edge set does not have the required shape.
    #[error("structural error: {0}")]
    Structure(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// Vertex insertion order leaves a prefix disconnected or a vertex without placed neighbours.
    #[error("ordering error: {0}")]
    Ordering(String),

    /// The growth state violated a constraint beyond tolerance.
    #[error("inconsistent growth state: {0}")]
    InconsistentState(String),

    /// No cycle-break candidate gains volume.
    #[error("geometric inconsistency at cycle event: {0}")]
    Geometry(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
