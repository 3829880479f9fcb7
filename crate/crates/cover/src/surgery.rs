use diagram::LinkDiagram;
use laurent::{conway_normalize, det_laurent, LaurentMatrix, LaurentPoly, RationalLaurent, ZPoly};
use num_bigint::BigInt;

use crate::annular::AnnularPresentation;
use crate::error::CoverError;
use crate::lift::{eta_by_cover, linking_polynomial};

/// A surgery curve: a component of the annular diagram and its framing sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurgeryCurve {
    pub component: usize,
    pub epsilon: i32,
}

/// Curves `T_0..T_m` in the complement of the axis. `T_0` is the second link
/// component, with sign -1; surgery on `T_1..T_m` turns the axis back into
/// the first link component.
#[derive(Clone, Debug)]
pub struct SurgeryPresentation {
    annular: AnnularPresentation,
    curves: Vec<SurgeryCurve>,
}

impl SurgeryPresentation {
    pub fn new(annular: AnnularPresentation, curves: Vec<SurgeryCurve>) -> Result<Self, CoverError> {
        let Some(first) = curves.first() else {
            return Err(CoverError::BadSurgery("no curves".into()));
        };
        if first.epsilon != -1 {
            return Err(CoverError::BadSurgery("T0 must have sign -1".into()));
        }
        for (i, c) in curves.iter().enumerate() {
            if c.epsilon.abs() != 1 {
                return Err(CoverError::BadSurgery(format!("T{i} has sign {}", c.epsilon)));
            }
            if curves[..i].iter().any(|d| d.component == c.component) {
                return Err(CoverError::BadSurgery(format!("component {} used twice", c.component)));
            }
            annular.null_curve(c.component)?;
        }
        Ok(Self { annular, curves })
    }

    pub fn annular(&self) -> &AnnularPresentation {
        &self.annular
    }

    pub fn curves(&self) -> &[SurgeryCurve] {
        &self.curves
    }

    /// Number of unknotting curves.
    pub fn m(&self) -> usize {
        self.curves.len() - 1
    }

    /// Component of the second link component.
    pub fn k2(&self) -> usize {
        self.curves[0].component
    }

    /// Perform the surgeries on `T_1..T_m`, each as a full twist by its sign
    /// (positive is right-handed), and return the link formed by the first
    /// and second components in that order.
    pub fn realize(&self) -> Result<LinkDiagram, CoverError> {
        let mut d = self.annular.diagram().clone();
        let mut ts: Vec<SurgeryCurve> = self.curves[1..].to_vec();
        ts.sort_by_key(|c| std::cmp::Reverse(c.component));
        for c in &ts {
            d = d
                .to_encircling_form(c.component)?
                .rolfsen_twist(c.component, c.epsilon as i64)?;
        }
        let shift = |k: usize| k - ts.iter().filter(|c| c.component < k).count();
        Ok(d.sublink(&[shift(self.annular.axis()), shift(self.k2())])?)
    }

    /// The same presentation with another cut position.
    pub fn recut(&self, cut: usize) -> Result<Self, CoverError> {
        Ok(Self {
            annular: self.annular.recut(cut)?,
            curves: self.curves.clone(),
        })
    }
}

/// Matrix with `d_00 = eta(axis, T_0)`, `d_rr = 1 - e_r eta(axis, T_r)` for
/// `r > 0` and `d_rs = -e_r Lambda(T_r, T_s)` off the diagonal.
pub fn d_matrix(sp: &SurgeryPresentation) -> Result<LaurentMatrix, CoverError> {
    let a = sp.annular();
    let cs = sp.curves();
    let n = cs.len();
    let mut m = vec![vec![LaurentPoly::zero(); n]; n];
    for r in 0..n {
        let er = LaurentPoly::constant(cs[r].epsilon);
        for s in 0..n {
            m[r][s] = if r != s {
                -&(&er * &linking_polynomial(a, cs[r].component, cs[s].component)?)
            } else if r == 0 {
                eta_by_cover(a, cs[0].component)?
            } else {
                &LaurentPoly::one() - &(&er * &eta_by_cover(a, cs[r].component)?)
            };
        }
    }
    for r in 0..n {
        for s in 0..r {
            let e = (cs[r].epsilon * cs[s].epsilon) as i64;
            if m[s][r] != m[r][s].involute().scale(&e.into()) {
                return Err(CoverError::Inconsistent(format!(
                    "d[{s}][{r}] and d[{r}][{s}] disagree"
                )));
            }
        }
    }
    Ok(m)
}

fn minor(m: &LaurentMatrix) -> LaurentMatrix {
    m[1..].iter().map(|row| row[1..].to_vec()).collect()
}

fn det(m: &LaurentMatrix) -> Result<LaurentPoly, CoverError> {
    if m.is_empty() {
        return Ok(LaurentPoly::one());
    }
    Ok(det_laurent(m)?)
}

/// Eta function of the first component as a quotient of the determinant of
/// the full matrix by that of the minor without `T_0`.
pub fn eta_via_surgery(sp: &SurgeryPresentation) -> Result<RationalLaurent, CoverError> {
    let m = d_matrix(sp)?;
    let den = det(&minor(&m))?;
    if den.is_zero() {
        return Err(CoverError::SingularMinor);
    }
    Ok(RationalLaurent::new(det(&m)?, den)?)
}

/// Conway polynomial of the first component: the determinant of the minor
/// without `T_0`, which must be symmetric with value 1 at `t = 1`.
pub fn conway_via_surgery(sp: &SurgeryPresentation) -> Result<ZPoly, CoverError> {
    let delta = det(&minor(&d_matrix(sp)?))?;
    if !delta.is_symmetric() || delta.eval_at_one() != BigInt::from(1) {
        return Err(CoverError::NotNormalized(delta.to_string()));
    }
    Ok(conway_normalize(&delta)?)
}
