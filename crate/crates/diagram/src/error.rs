use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("edge {label} appears {count} times (expected 2)")]
    EdgeCount { label: u64, count: usize },
    #[error("inconsistent orientation: {0}")]
    Orientation(String),
    #[error("incidence structure is not planar: {0}")]
    NonPlanar(String),
    #[error("empty diagram")]
    Empty,
    #[error("unknown crossing id {0}")]
    UnknownCrossing(usize),
    #[error("component index {0} out of range")]
    BadComponent(usize),
    #[error("linking number needs two distinct components")]
    SameComponent,
    #[error("crossing {0} joins two different components")]
    InterComponentCrossing(usize),
    #[error("crossing {id} is not a self-crossing of component {comp}")]
    NotSelfCrossingOf { id: usize, comp: usize },
    #[error("linking number between components {0} and {1} is nonzero")]
    NonzeroLinking(usize, usize),
    #[error("axis component {0} has self-crossings")]
    AxisSelfCrossing(usize),
    #[error("axis is not in encircling form: {0}")]
    NotEncircling(String),
    #[error("degenerate geometry: {0}")]
    Geometry(String),
    #[error("braid letter {letter} out of range for {strands} strands")]
    BraidLetter { letter: i64, strands: usize },
}
