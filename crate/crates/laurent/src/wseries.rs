use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::LaurentError;
use crate::poly::LaurentPoly;
use crate::rational::RationalLaurent;

pub const DEFAULT_ORDER: usize = 8;

/// Truncated series `sum_{k=1}^{N} beta_k w^k` with `w = 2 - t - t^-1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WSeries {
    /// `coeffs[k - 1]` is `beta_k`; the length is the truncation order.
    coeffs: Vec<BigInt>,
}

impl WSeries {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `beta_k` for `k >= 1`; zero beyond the stored order.
    pub fn beta(&self, k: usize) -> BigInt {
        assert!(k >= 1, "w-series coefficients start at k = 1");
        self.coeffs.get(k - 1).cloned().unwrap_or_default()
    }

    pub fn betas(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Pad with zeros or truncate to exactly `n` coefficients.
    pub fn with_order(&self, n: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n, BigInt::zero());
        Self { coeffs }
    }

    /// Sum the stored terms back into a Laurent polynomial in `t`.
    pub fn to_laurent(&self) -> LaurentPoly {
        let mut w = Vec::with_capacity(self.coeffs.len() + 1);
        w.push(BigInt::zero());
        w.extend(self.coeffs.iter().cloned());
        w_poly_to_laurent(&w)
    }
}

impl fmt::Display for WSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Expand `sum_k c_k w^k` (index 0 is the constant) into a Laurent polynomial.
pub fn w_poly_to_laurent(w_coeffs: &[BigInt]) -> LaurentPoly {
    let w = LaurentPoly::w();
    let mut acc = LaurentPoly::zero();
    for c in w_coeffs.iter().rev() {
        acc = &acc * &w;
        acc.add_term(0, c.clone());
    }
    acc
}

/// Rewrite a symmetric Laurent polynomial as a polynomial in `w`; index 0 of
/// the result is the constant term.
pub fn symmetric_to_w(p: &LaurentPoly) -> Result<Vec<BigInt>, LaurentError> {
    if !p.is_symmetric() {
        return Err(LaurentError::NotSymmetric);
    }
    let deg = p.max_exp().unwrap_or(0).max(0) as usize;
    let mut out = vec![BigInt::zero(); deg + 1];
    let mut rem = p.clone();
    let w = LaurentPoly::w();
    for d in (0..=deg).rev() {
        let c = rem.coeff(d as i64);
        if c.is_zero() {
            continue;
        }
        // The top coefficient of w^d is (-1)^d.
        let beta = if d % 2 == 0 { c } else { -c };
        rem -= &w.pow(d as u32).scale(&beta);
        out[d] = beta;
    }
    debug_assert!(rem.is_zero());
    Ok(out)
}

/// Exact finite rewrite of `p` in powers of `w`. Requires `p` symmetric with
/// `p(1) = 0`; the order of the result is the degree of `p`.
pub fn to_w_basis(p: &LaurentPoly) -> Result<WSeries, LaurentError> {
    let w = symmetric_to_w(p)?;
    if !w[0].is_zero() {
        return Err(LaurentError::NonzeroAtOne(w[0].to_string()));
    }
    let mut coeffs = w[1..].to_vec();
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    Ok(WSeries::new(coeffs))
}

/// Power series in `w` of a symmetric rational function vanishing at `t = 1`,
/// truncated to `order` coefficients.
///
/// The quotient `a/b` is rewritten as `a(t) b(t^-1) / (b(t) b(t^-1))`, which
/// makes both parts symmetric, and the division is then done in `Z[[w]]`.
pub fn expand_rational_w(r: &RationalLaurent, order: usize) -> Result<WSeries, LaurentError> {
    if !r.is_symmetric() {
        return Err(LaurentError::NotSymmetric);
    }
    let a = r.numerator();
    let b = r.denominator();
    let bi = b.involute();
    let top = symmetric_to_w(&(a * &bi))?;
    let bottom = symmetric_to_w(&(b * &bi))?;
    let lead_zeros = |v: &[BigInt]| v.iter().take_while(|c| c.is_zero()).count();
    let vb = lead_zeros(&bottom);
    let va = if a.is_zero() { usize::MAX } else { lead_zeros(&top) };
    if vb > va {
        return Err(LaurentError::PoleAtOne);
    }
    let top: Vec<BigInt> = top.into_iter().skip(vb).collect();
    let bottom: Vec<BigInt> = bottom.into_iter().skip(vb).collect();
    let b0 = bottom[0].clone();
    let mut q: Vec<BigInt> = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut acc = top.get(k).cloned().unwrap_or_default();
        for j in 1..=k.min(bottom.len() - 1) {
            acc -= &bottom[j] * &q[k - j];
        }
        let (qk, rem) = acc.div_rem(&b0);
        if !rem.is_zero() {
            return Err(LaurentError::NonIntegerCoefficient { k });
        }
        if k == 0 && !qk.is_zero() {
            let (n, d) = r.eval_at_one().unwrap_or((qk.clone(), BigInt::from(1)));
            let val = if d == BigInt::from(1) {
                n.to_string()
            } else {
                format!("{n}/{}", d.abs())
            };
            return Err(LaurentError::NonzeroAtOne(val));
        }
        q.push(qk);
    }
    Ok(WSeries::new(q.split_off(1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn w_itself() {
        assert_eq!(to_w_basis(&p("2 - t - t^-1")).unwrap(), WSeries::from_i64(&[1]));
    }

    #[test]
    fn second_power_example() {
        // w(4 - w) = 4w - w^2 expands to -(t^2 + t^-2 - 2).
        let q = -LaurentPoly::sym_shift(2);
        assert_eq!(to_w_basis(&q).unwrap(), WSeries::from_i64(&[4, -1]));
    }

    #[test]
    fn zero_has_empty_expansion() {
        assert_eq!(to_w_basis(&LaurentPoly::zero()).unwrap().order(), 0);
    }

    #[test]
    fn domain_errors() {
        assert_eq!(to_w_basis(&p("t")), Err(LaurentError::NotSymmetric));
        assert!(matches!(
            to_w_basis(&p("3 - t - t^-1")),
            Err(LaurentError::NonzeroAtOne(_))
        ));
    }

    #[test]
    fn geometric_series() {
        let r = RationalLaurent::new(p("2 - t - t^-1"), p("t + t^-1 - 1")).unwrap();
        assert_eq!(expand_rational_w(&r, 4).unwrap(), WSeries::from_i64(&[1, 1, 1, 1]));
    }

    #[test]
    fn pole_detected() {
        let r = RationalLaurent::new(p("2 - t - t^-1"), p("4 - 2t - 2t^-1").pow(2)).unwrap();
        assert_eq!(expand_rational_w(&r, 3), Err(LaurentError::PoleAtOne));
    }

    #[test]
    fn half_integer_coefficients_rejected() {
        let r = RationalLaurent::new(p("2 - t - t^-1"), p("2")).unwrap();
        assert_eq!(
            expand_rational_w(&r, 2),
            Err(LaurentError::NonIntegerCoefficient { k: 1 })
        );
    }
}
