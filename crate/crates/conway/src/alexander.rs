//! Alexander polynomial of a knot diagram from Fox derivatives of the
//! Wirtinger presentation; an independent check on the skein recursion.

use diagram::LinkDiagram;
use laurent::{conway_normalize, det_laurent, LaurentPoly, ZPoly};
use num_bigint::BigInt;

use crate::error::ConwayError;

/// Normalized Alexander polynomial (symmetric, value 1 at `t = 1`) and the
/// Conway polynomial it determines.
pub fn alexander_polynomial(d: &LinkDiagram) -> Result<(LaurentPoly, ZPoly), ConwayError> {
    if d.num_components() != 1 {
        return Err(ConwayError::NotAKnot(d.num_components()));
    }
    let n = d.num_crossings();
    if n == 0 {
        return Ok((LaurentPoly::one(), ZPoly::one()));
    }
    // Arcs: edges joined through over-passes.
    let mut arc_of_edge: Vec<usize> = (0..d.num_edges()).collect();
    let mut e = d.component_edges(0)[0];
    // Start right after an under-pass so every arc is contiguous.
    while d.tail(e).map(|(_, s)| s) != Some(2) {
        e = d.next_edge(e);
    }
    let mut arc = 0;
    for _ in 0..d.num_edges() {
        arc_of_edge[e] = arc;
        if d.head(e).map(|(_, s)| s) == Some(0) {
            arc += 1;
        }
        e = d.next_edge(e);
    }
    let arcs = arc;
    let mut rows: Vec<Vec<LaurentPoly>> = vec![vec![LaurentPoly::zero(); arcs]; n];
    let one_minus_t = LaurentPoly::from_terms([(0, 1), (1, -1)]);
    for (r, x) in d.crossings().iter().enumerate() {
        let over = arc_of_edge[x.over_in()];
        let uin = arc_of_edge[x.under_in()];
        let uout = arc_of_edge[x.under_out()];
        let (a, b) = if x.sign() > 0 {
            (LaurentPoly::t(), LaurentPoly::constant(-1))
        } else {
            (LaurentPoly::constant(-1), LaurentPoly::t())
        };
        rows[r][over] = &rows[r][over] + &one_minus_t;
        rows[r][uin] = &rows[r][uin] + &a;
        rows[r][uout] = &rows[r][uout] + &b;
    }
    let minor: Vec<Vec<LaurentPoly>> = rows[..n - 1].iter().map(|row| row[..arcs - 1].to_vec()).collect();
    let det = if minor.is_empty() {
        LaurentPoly::one()
    } else {
        det_laurent(&minor)?
    };
    let delta = normalize(&det);
    let nabla = conway_normalize(&delta)?;
    Ok((delta, nabla))
}

/// Multiply by a unit `±t^k` to make the polynomial symmetric with positive
/// value at 1.
fn normalize(p: &LaurentPoly) -> LaurentPoly {
    let (lo, hi) = match (p.min_exp(), p.max_exp()) {
        (Some(lo), Some(hi)) => (lo, hi),
        _ => return p.clone(),
    };
    let q = p.shift(-(lo + hi).div_euclid(2));
    if q.eval_at_one() < BigInt::from(0) {
        -q
    } else {
        q
    }
}
