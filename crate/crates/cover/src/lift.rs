use std::collections::BTreeMap;

use diagram::AxisCrossing;
use laurent::LaurentPoly;

use crate::annular::AnnularPresentation;
use crate::error::CoverError;

/// Signed contributions `(sign, n)` of weight one half to the coefficient of
/// `t^n` in the linking polynomial of the lifts of `r` and `s`, where `n` is
/// the level of the `s` strand minus the level of the `r` strand.
///
/// Real crossings between the two curves give one term each. Unrolling the
/// cover adds crossings between a strand passing under the axis and the two
/// sides of every strand passing over the axis later along it; these come in
/// cancelling pairs that differ only in level.
fn lifted_terms(a: &AnnularPresentation, r: usize, s: usize) -> Vec<(i64, i64)> {
    let d = a.diagram();
    let lev = |e: usize| a.level(e).expect("null-winding curve");
    let mut out = Vec::new();

    for (pos, x) in d.crossings().iter().enumerate() {
        let (uc, oc) = d.strand_components(pos);
        if !(uc == r && oc == s || uc == s && oc == r) {
            continue;
        }
        let slots = x.slots();
        let (lu, lo) = (lev(slots[0]), lev(slots[1]));
        let sign = x.sign() as i64;
        if uc == r && oc == s {
            out.push((sign, lo - lu));
        }
        if uc == s && oc == r {
            out.push((sign, lu - lo));
        }
    }

    let pts = a.points();
    let ours = |p: &&AxisCrossing| p.comp == r || p.comp == s;
    for (i, u) in pts.iter().enumerate().filter(|(_, p)| !p.strand_over && ours(p)) {
        let lu = lev(u.strand_in);
        for o in pts[i + 1..].iter().filter(|p| p.strand_over && ours(p)) {
            let sl = if u.left_to_right == o.left_to_right { 1 } else { -1 };
            let (ll, lr) = if o.left_to_right {
                (lev(o.strand_in), lev(o.strand_out))
            } else {
                (lev(o.strand_out), lev(o.strand_in))
            };
            if u.comp == r && o.comp == s {
                out.push((sl, ll - lu));
                out.push((-sl, lr - lu));
            }
            if u.comp == s && o.comp == r {
                out.push((sl, lu - ll));
                out.push((-sl, lu - lr));
            }
        }
    }
    out
}

/// Halve doubled coefficients, which must all be even.
fn halve(doubled: BTreeMap<i64, i64>) -> Result<LaurentPoly, CoverError> {
    let mut terms = Vec::new();
    for (n, c) in doubled {
        if c % 2 != 0 {
            return Err(CoverError::OddCoefficient(n));
        }
        terms.push((n, c / 2));
    }
    Ok(LaurentPoly::from_terms(terms))
}

/// Linking polynomial: the coefficient of `t^n` is the linking number in the
/// cover between the lift of `r` and the `n`-th translate of the lift of `s`.
pub fn linking_polynomial(a: &AnnularPresentation, r: usize, s: usize) -> Result<LaurentPoly, CoverError> {
    if r == s {
        return Err(CoverError::SameCurve);
    }
    a.null_curve(r)?;
    a.null_curve(s)?;
    let mut doubled = BTreeMap::new();
    for (sign, n) in lifted_terms(a, r, s) {
        *doubled.entry(n).or_insert(0) += sign;
    }
    let lambda = halve(doubled)?;
    let lk = a.diagram().linking_number(r, s)?;
    if lambda.eval_at_one() != lk.into() {
        return Err(CoverError::Inconsistent(format!(
            "linking polynomial at 1 is {}, linking number is {lk}",
            lambda.eval_at_one()
        )));
    }
    Ok(lambda)
}

/// Eta function of the pair (axis, `k2`) from the lift of `k2`. The
/// coefficients away from `t^0` come from level differences at crossings of
/// `k2` with itself; the constant term is fixed by `eta(1) = 0`.
pub fn eta_by_cover(a: &AnnularPresentation, k2: usize) -> Result<LaurentPoly, CoverError> {
    a.null_curve(k2)?;
    let mut doubled = BTreeMap::new();
    let mut total = 0;
    for (sign, n) in lifted_terms(a, k2, k2) {
        if n != 0 {
            *doubled.entry(n).or_insert(0) += sign;
            total += sign;
        }
    }
    doubled.insert(0, -total);
    let eta = halve(doubled)?;
    if !eta.is_symmetric() {
        return Err(CoverError::Inconsistent(format!("eta {eta} is not symmetric")));
    }
    Ok(eta)
}
