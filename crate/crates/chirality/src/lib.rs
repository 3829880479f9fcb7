//! Chirality verdicts from link invariants, and rules deciding which
//! orientation behaviours an achiral map of a satellite link can have.

mod epsilon;
mod error;
mod expr;
mod rules;
mod verdict;

pub use epsilon::{EpsilonType, Status};
pub use error::ChiralityError;
pub use expr::{parse_declaration, AtomDecl, Declarations, Relation, SatelliteExpr};
pub use rules::{
    bing_pattern_types, braid_chirality, connected_sum_achirality, epsilon_types, solid_torus_types, BraidVerdict,
    EpsilonTable, ASSERTED_BING_DEPTH,
};
pub use verdict::{obstruction_report, ChiralityVerdict, Evidence, Obstruction, ReportOptions, TypeVerdict};
