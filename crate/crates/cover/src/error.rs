use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error(transparent)]
    Diagram(#[from] diagram::DiagramError),
    #[error(transparent)]
    Laurent(#[from] laurent::LaurentError),
    #[error("component {0} cannot be used here (axis or out of range)")]
    BadCurve(usize),
    #[error("the two curves must be distinct")]
    SameCurve,
    #[error("component {comp} winds {winding} times around the axis")]
    NonzeroWinding { comp: usize, winding: i64 },
    #[error("lifted crossing count is not even at t^{0}")]
    OddCoefficient(i64),
    #[error("lift is inconsistent: {0}")]
    Inconsistent(String),
    #[error("surgery curves: {0}")]
    BadSurgery(String),
    #[error("unknotting system has a singular determinant")]
    SingularMinor,
    #[error("surgery determinant is not a normalized Alexander polynomial: {0}")]
    NotNormalized(String),
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
}
