use thiserror::Error;

/// Errors raised by the geometry kernel.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument outside the function domain: {0}")]
    Domain(String),
    #[error("C is constant for a parabolic characteristic and has no inverse")]
    NotInvertible,
    #[error("shape mismatch: expected {expected}, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
    #[error("vector has non-positive square and cannot be normalized onto the unit sphere")]
    ImproperVector,
    #[error("objects belong to different specifications")]
    SpecMismatch,
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("rotation entry is not representable: {0}")]
    DegenerateRotation(String),
    #[error("matrix is not generalized orthogonal: {0}")]
    NotOrthogonal(String),
    #[error("angle has vanishing S value")]
    DegenerateAngle,
    #[error("triangle cannot be solved: {0}")]
    Solve(String),
    #[error("vectors do not form a basis: {0}")]
    NotABasis(String),
    #[error("lineal basis is degenerate: {0}")]
    DegenerateLineal(String),
    #[error("measure between lineals is undefined: {0}")]
    MeasureUndefined(String),
    #[error("degenerate figure: {0}")]
    DegenerateFigure(String),
    #[error("unsupported quadric signature: {0}")]
    UnsupportedSignature(String),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors caused by malformed input text rather than by the geometry.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::InvalidSpec(_) | Error::Shape { .. })
    }
}
