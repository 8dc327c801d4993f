use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph is disconnected: vertex {vertex} is unreachable from {origin}")]
    Disconnected { origin: usize, vertex: usize },

    #[error("vertex {0} does not exist")]
    NoSuchVertex(usize),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("radius must be non-negative, got {0}")]
    NegativeRadius(String),

    #[error("invalid grid tiling instance: {0}")]
    InvalidInstance(String),

    #[error("solution shape {got:?} does not match instance side {chi}")]
    ShapeMismatch { chi: usize, got: (usize, usize) },

    #[error("cell ({i},{j}) has no pair with second component {b}")]
    MissingBCoverage { i: usize, j: usize, b: u32 },

    #[error("augmentation needs chi >= 2 (got {0}); decide chi = 1 directly (every cell nonempty)")]
    ChiTooSmall(usize),

    #[error("cycle offset collision in gadget ({i},{j}), quadrant {h}: {detail}")]
    OffsetCollision { i: usize, j: usize, h: u8, detail: String },

    #[error("center set is empty")]
    EmptyCenterSet,

    #[error("gadget ({i},{j}): {detail}")]
    CenterStructure { i: usize, j: usize, detail: String },

    #[error("{what} budget exceeded (limit {limit})")]
    BudgetExceeded { what: &'static str, limit: usize },

    #[error("{what} refuses graphs above {limit} vertices (got {vertices}); {hint}")]
    VertexBudget {
        what: &'static str,
        vertices: usize,
        limit: usize,
        hint: &'static str,
    },

    #[error("unknown vertex label {0:?}")]
    UnknownLabel(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
