//! Eta functions of two-component links with linking number zero, their
//! w-expansions and the crossing-change formulas relating them.

mod error;
mod pipeline;
mod result;

pub use error::EtaError;
pub use pipeline::{
    eta_general, eta_general_with, eta_pair, eta_separable, eta_with_fallback, find_unknotting_sets, unknotting_step,
    SearchOptions,
};
pub use result::{beta_delta, cochran_function, crossing_delta, EtaResult, Provenance, UnknottingStep};
