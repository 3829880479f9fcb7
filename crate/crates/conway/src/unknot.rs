use diagram::LinkDiagram;
use laurent::ZPoly;

use crate::error::ConwayError;
use crate::skein::conway_polynomial;

/// Answer of the unknottedness semi-decision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Unknottedness {
    Yes,
    No,
    Unknown,
}

/// Whether component `i` alone is an unknot. `Yes` is certified by reaching
/// a crossingless or descending diagram, `No` by a nontrivial Conway
/// polynomial; anything else is `Unknown`.
pub fn is_unknotted(d: &LinkDiagram, i: usize) -> Result<Unknottedness, ConwayError> {
    let k = d.sublink(&[i])?;
    if k.is_descending() {
        return Ok(Unknottedness::Yes);
    }
    let s = k.simplify();
    if s.num_crossings() == 0 || s.is_descending() {
        return Ok(Unknottedness::Yes);
    }
    if conway_polynomial(&s)? != ZPoly::one() {
        return Ok(Unknottedness::No);
    }
    Ok(Unknottedness::Unknown)
}
