use std::fmt;

use laurent::{expand_rational_w, LaurentPoly, RationalLaurent, WSeries};
use num_bigint::BigInt;

use crate::error::EtaError;

/// One crossing switched on the second component. `sign` is read before the
/// switch and `n` is the linking number of either smoothing piece with the
/// first component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnknottingStep {
    pub crossing: usize,
    pub sign: i32,
    pub n: u64,
}

/// Which computation produced an eta value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Separable,
    ConwayRatio,
    Cover,
    SurgeryDeterminant,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Separable => "separable",
            Provenance::ConwayRatio => "conway-ratio",
            Provenance::Cover => "cover",
            Provenance::SurgeryDeterminant => "surgery-determinant",
        })
    }
}

#[derive(Clone, Debug)]
pub struct EtaResult {
    pub eta: RationalLaurent,
    pub w_series: WSeries,
    /// Component whose complement is lifted.
    pub k1: usize,
    /// Component whose lifts are linked.
    pub k2: usize,
    pub provenance: Provenance,
    pub steps: Vec<UnknottingStep>,
}

impl EtaResult {
    pub fn new(
        eta: RationalLaurent,
        k1: usize,
        k2: usize,
        provenance: Provenance,
        steps: Vec<UnknottingStep>,
        order: usize,
    ) -> Result<Self, EtaError> {
        let zero_at_one = eta.eval_at_one().is_some_and(|(n, _)| n == BigInt::from(0));
        if !eta.is_symmetric() || !zero_at_one {
            return Err(EtaError::Invalid(eta.to_string()));
        }
        let w_series = expand_rational_w(&eta, order)?;
        Ok(Self {
            eta,
            w_series,
            k1,
            k2,
            provenance,
            steps,
        })
    }

    /// `beta_1..beta_N`.
    pub fn betas(&self) -> &[BigInt] {
        self.w_series.betas()
    }

    /// Terms of positive degree, when eta is a polynomial.
    pub fn positive_part(&self) -> Option<LaurentPoly> {
        self.eta.as_poly().map(LaurentPoly::positive_part)
    }
}

/// `sign * (t^n + t^-n - 2)`.
pub fn crossing_delta(sign: i32, n: u64) -> LaurentPoly {
    let n = n as i64;
    LaurentPoly::from_terms([(n, 1), (-n, 1), (0, -2)]).scale(&BigInt::from(sign))
}

/// Coefficient of `w^k` in `t^n + t^-n - 2`, namely
/// `(-1)^k (n / k) binom(n + k - 1, 2k - 1)`.
pub fn beta_delta(n: u64, k: u64) -> BigInt {
    assert!(k >= 1, "w-coefficients start at k = 1");
    let top = n + k - 1;
    let bottom = 2 * k - 1;
    if bottom > top {
        return BigInt::from(0);
    }
    let mut binom = BigInt::from(1);
    for i in 0..bottom {
        binom = binom * (top - i) / (i + 1);
    }
    let v = binom * n / k;
    if k % 2 == 1 {
        -v
    } else {
        v
    }
}

/// The w-expansion of eta to the given order.
pub fn cochran_function(e: &EtaResult, order: usize) -> Result<WSeries, EtaError> {
    Ok(expand_rational_w(&e.eta, order)?)
}
