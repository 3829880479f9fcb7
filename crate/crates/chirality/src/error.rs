use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChiralityError {
    #[error("atom `{0}` is not declared")]
    UndeclaredAtom(String),
    #[error("inconsistent relations: {0}")]
    InconsistentRelations(String),
    #[error("cable ({p},{q}) needs p > 1 and gcd(p, q) = 1")]
    BadCable { p: i64, q: i64 },
    #[error("component {index} out of range for a {components}-component link")]
    BadComponent { index: usize, components: usize },
    #[error("unsupported expression: {0}")]
    Unsupported(String),
    #[error("epsilon entries must be +1 or -1")]
    BadEpsilon,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
