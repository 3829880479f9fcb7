use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConwayError {
    #[error("skein recursion exceeded {0} nodes")]
    Budget(usize),
    #[error(transparent)]
    Diagram(#[from] diagram::DiagramError),
    #[error(transparent)]
    Laurent(#[from] laurent::LaurentError),
    #[error("expected a knot, got {0} components")]
    NotAKnot(usize),
}
