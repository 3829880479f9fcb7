use laurent::LaurentPoly;

use crate::error::CliError;

/// Terms of positive degree of a symmetric polynomial vanishing at `t = 1`.
/// Such a polynomial is determined by this part, see [`reconstruct`].
pub fn eta_plus(p: &LaurentPoly) -> Result<LaurentPoly, CliError> {
    if !p.is_symmetric() {
        return Err(CliError::EtaPlus(format!("{p} is not symmetric under t -> t^-1")));
    }
    if p.eval_at_one() != 0.into() {
        return Err(CliError::EtaPlus(format!("{p} does not vanish at t = 1")));
    }
    Ok(p.positive_part())
}

/// Inverse of [`eta_plus`]: `q(t) + q(t^-1) - 2 q(1)`. Fails when `q` has
/// terms of nonpositive degree.
pub fn reconstruct(plus: &LaurentPoly) -> Result<LaurentPoly, CliError> {
    if plus.min_exp().is_some_and(|e| e <= 0) {
        return Err(CliError::EtaPlus(format!("{plus} has terms of nonpositive degree")));
    }
    let constant = LaurentPoly::constant(plus.eval_at_one() * -2);
    Ok(&(plus + &plus.involute()) + &constant)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(eta_plus(&p("4 - 2t - 2t^-1")).unwrap(), p("-2t"));
        assert_eq!(eta_plus(&LaurentPoly::zero()).unwrap(), LaurentPoly::zero());
        assert_eq!(eta_plus(&p("-t - t^2 - t^-1 - t^-2 + 4")).unwrap(), p("-t - t^2"));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(eta_plus(&p("t - t^-2")).is_err());
        assert!(eta_plus(&p("t + t^-1")).is_err());
        assert!(reconstruct(&p("1 + t")).is_err());
        assert_eq!(reconstruct(&LaurentPoly::zero()).unwrap(), LaurentPoly::zero());
    }
}
