//! Oriented link diagrams in planar-diagram (PD) form.
//!
//! Crossings are `X(a,b,c,d)` with slots counterclockwise from the incoming
//! under-strand. A crossing is positive when the over-strand runs `d -> b`.

mod braid;
mod diagram;
mod error;
mod moves;
mod parse;
mod splice;
mod strip;
mod uf;

pub use braid::{braid_exponent_sum, BraidWord};
pub use diagram::{Crossing, Dart, LinkDiagram};
pub use error::DiagramError;
pub use moves::{Simplified, DEFAULT_SIMPLIFY_BUDGET};
pub use parse::{parse_braid, parse_diagram};
pub use strip::AxisCrossing;
