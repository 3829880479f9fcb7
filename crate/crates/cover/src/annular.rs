use std::collections::BTreeMap;

use diagram::{AxisCrossing, LinkDiagram};

use crate::error::CoverError;

/// A link diagram together with a crossing-free axis component. The cut is
/// placed just before axis point `cut` (points listed along the axis), and a
/// strand climbs one level each time it passes over the axis from left to
/// right.
#[derive(Clone, Debug)]
pub struct AnnularPresentation {
    diagram: LinkDiagram,
    axis: usize,
    cut: usize,
    points: Vec<AxisCrossing>,
    winding: Vec<i64>,
    levels: Vec<Option<i64>>,
}

impl AnnularPresentation {
    pub fn new(diagram: LinkDiagram, axis: usize) -> Result<Self, CoverError> {
        Self::with_cut(diagram, axis, 0)
    }

    pub fn with_cut(diagram: LinkDiagram, axis: usize, cut: usize) -> Result<Self, CoverError> {
        let mut points = diagram.axis_crossings(axis)?;
        let cut = if points.is_empty() { 0 } else { cut % points.len() };
        points.rotate_left(cut);

        let mut step: BTreeMap<usize, i64> = BTreeMap::new();
        let mut winding = vec![0i64; diagram.num_components()];
        for p in points.iter().filter(|p| p.strand_over) {
            let d = if p.left_to_right { 1 } else { -1 };
            step.insert(p.strand_in, d);
            winding[p.comp] += d;
        }

        let mut levels = vec![None; diagram.num_edges()];
        for k in (0..diagram.num_components()).filter(|&k| k != axis && winding[k] == 0) {
            let mut l = 0;
            for &e in diagram.component_edges(k) {
                levels[e] = Some(l);
                l += step.get(&e).copied().unwrap_or(0);
            }
        }
        Ok(Self {
            diagram,
            axis,
            cut,
            points,
            winding,
            levels,
        })
    }

    /// Same diagram and axis with another cut position.
    pub fn recut(&self, cut: usize) -> Result<Self, CoverError> {
        Self::with_cut(self.diagram.clone(), self.axis, cut)
    }

    /// Mirror image: every crossing switched.
    pub fn mirror(&self) -> Result<Self, CoverError> {
        Self::with_cut(self.diagram.mirror(), self.axis, self.cut)
    }

    pub fn diagram(&self) -> &LinkDiagram {
        &self.diagram
    }

    pub fn axis(&self) -> usize {
        self.axis
    }

    pub fn cut(&self) -> usize {
        self.cut
    }

    /// Number of distinct cut positions.
    pub fn num_cuts(&self) -> usize {
        self.points.len().max(1)
    }

    /// Crossings on the axis in order, starting after the cut.
    pub fn points(&self) -> &[AxisCrossing] {
        &self.points
    }

    /// Signed number of times component `k` winds around the axis.
    pub fn winding(&self, k: usize) -> i64 {
        self.winding.get(k).copied().unwrap_or(0)
    }

    /// Level of a non-axis edge on a null-winding component.
    pub fn level(&self, e: usize) -> Option<i64> {
        self.levels.get(e).copied().flatten()
    }

    /// Checks that `k` is a non-axis component with zero winding.
    pub(crate) fn null_curve(&self, k: usize) -> Result<(), CoverError> {
        if k == self.axis || k >= self.diagram.num_components() {
            return Err(CoverError::BadCurve(k));
        }
        match self.winding[k] {
            0 => Ok(()),
            w => Err(CoverError::NonzeroWinding { comp: k, winding: w }),
        }
    }
}

/// Level of every non-axis edge. All non-axis components must have zero
/// winding around the axis.
pub fn compute_levels(a: &AnnularPresentation) -> Result<BTreeMap<usize, i64>, CoverError> {
    let d = a.diagram();
    let mut out = BTreeMap::new();
    for k in (0..d.num_components()).filter(|&k| k != a.axis()) {
        a.null_curve(k)?;
        for &e in d.component_edges(k) {
            out.insert(e, a.level(e).expect("null-winding component has levels"));
        }
    }
    Ok(out)
}
