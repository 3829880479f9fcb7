//! Computations in the infinite cyclic cover of the complement of a round
//! unknotted axis: winding levels, linking polynomials, eta by direct lifting
//! and the determinant formulas of a surgery description.

mod annular;
mod error;
mod format;
mod lift;
mod surgery;

pub use annular::{compute_levels, AnnularPresentation};
pub use error::CoverError;
pub use format::{parse_annular, parse_surgery};
pub use lift::{eta_by_cover, linking_polynomial};
pub use surgery::{conway_via_surgery, d_matrix, eta_via_surgery, SurgeryCurve, SurgeryPresentation};
