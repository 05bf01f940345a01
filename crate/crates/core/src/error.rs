use thiserror::Error;

/// Errors produced while building or analysing codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    DimensionMismatch {
        op: &'static str,
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("index tuple shape mismatch: {0:?} vs {1:?}")]
    ShapeMismatch(Vec<usize>, Vec<usize>),
    #[error("index tuple {entries:?} lies outside the box {shape:?}")]
    OutOfBox { entries: Vec<usize>, shape: Vec<usize> },
    #[error("subset element {element} is outside [0, {m})")]
    SubsetOutOfRange { element: usize, m: usize },
    #[error("matrices are not orthogonal{}", component.map(|c| format!(" (component {c})")).unwrap_or_default())]
    NotOrthogonal { component: Option<usize> },
    #[error("column supports do not match: {0}")]
    SupportMismatch(String),
    #[error("X_{x} and Z_{z} do not intersect")]
    NonIntersecting { x: usize, z: usize },
    #[error("decreasing and increasing closures overlap at {0:?}")]
    ClosureOverlap(Vec<usize>),
    #[error("monotone set direction does not match the requested parametrization")]
    DirectionMismatch,
    #[error("sets are not nested")]
    NotNested,
    #[error("distance undefined: the difference set is empty")]
    EmptyDifference,
    #[error("code has no logical qubits; distances are undefined")]
    NoLogicalQubits,
    #[error("at least one coordinate is required")]
    ZeroCoordinates,
    #[error("component count {found} does not match m = {expected}")]
    ComponentCount { expected: usize, found: usize },
    #[error("invalid code specification: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
