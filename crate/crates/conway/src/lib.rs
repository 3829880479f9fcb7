//! Conway polynomials by skein recursion, plus a knot unknottedness check.

mod alexander;
mod error;
mod skein;
mod unknot;

pub use alexander::alexander_polynomial;
pub use error::ConwayError;
pub use laurent::alexander_from_conway;
pub use skein::{
    conway_polynomial, conway_polynomial_with, conway_traced, global_cache, SkeinCache, SkeinStrategy, SkeinTriple,
    DEFAULT_NODE_BUDGET,
};
pub use unknot::{is_unknotted, Unknottedness};
