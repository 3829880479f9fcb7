//! Exact arithmetic over `Z[t, t^-1]`: Laurent polynomials, their quotients,
//! determinants, power series in `w = 2 - t - t^-1`, and polynomials in `z`
//! with `z^2 = -w`.

mod error;
mod matrix;
mod poly;
mod rational;
mod wseries;
mod zpoly;

pub use error::LaurentError;
pub use matrix::{det_bareiss, det_cofactor, det_laurent, mat_mul, LaurentMatrix};
pub use poly::{gcd, LaurentPoly};
pub use rational::RationalLaurent;
pub use wseries::{expand_rational_w, symmetric_to_w, to_w_basis, w_poly_to_laurent, WSeries, DEFAULT_ORDER};
pub use zpoly::{alexander_from_conway, conway_normalize, ZPoly};

/// Substitute `t -> t^-1`.
pub fn involute(p: &LaurentPoly) -> LaurentPoly {
    p.involute()
}
