//! Operations on an unknotted axis component with no self-crossings:
//! its crossing sequence, the encircling form and Rolfsen twists.
//!
//! Both constructions cut out a thin neighborhood of the axis and redraw it
//! as a horizontal strip. The axis runs along `+x`; its left side is `+y`.
//! Crossing `i` along the axis gets ports `(x_i, +H)` on the left and
//! `(x_i, -H)` on the right.

use crate::diagram::{Dart, LinkDiagram};
use crate::error::DiagramError;
use crate::splice::{Curve, Point};

/// One crossing of another strand with the axis, seen from the axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AxisCrossing {
    /// Crossing id.
    pub crossing: usize,
    /// The other strand passes over the axis.
    pub strand_over: bool,
    /// The other strand passes from the left of the axis to its right.
    pub left_to_right: bool,
    pub strand_in: usize,
    pub strand_out: usize,
    /// Component of the other strand.
    pub comp: usize,
}

const SPACING: i64 = 1_000;
const HALF_WIDTH: i64 = 1_000_000;

/// Strand slots on the (left, right) of an axis entering crossing slot `s`.
fn side_slots(s: usize, over_db: bool) -> (usize, usize) {
    match s {
        0 => (3, 1),
        _ if over_db => (2, 0),
        _ => (0, 2),
    }
}

/// Drop interior points of straight runs at a common height.
fn merge_collinear(points: Vec<Point>, heights: Vec<i64>) -> (Vec<Point>, Vec<i64>) {
    let mut pts = vec![points[0]];
    let mut hs: Vec<i64> = Vec::new();
    for i in 1..points.len() {
        let p = points[i];
        if let (Some(&h), true) = (hs.last(), pts.len() >= 2) {
            let a = pts[pts.len() - 2];
            let b = pts[pts.len() - 1];
            let c1 = (b.0 - a.0) * (p.1 - b.1) - (b.1 - a.1) * (p.0 - b.0);
            let same_dir = (b.0 - a.0) * (p.0 - b.0) + (b.1 - a.1) * (p.1 - b.1) > 0;
            if c1 == 0 && same_dir && h == heights[i - 1] {
                *pts.last_mut().expect("nonempty") = p;
                continue;
            }
        }
        pts.push(p);
        hs.push(heights[i - 1]);
    }
    (pts, hs)
}

impl LinkDiagram {
    /// Crossings along the axis in orientation order, starting at the head of
    /// its first edge.
    pub fn axis_crossings(&self, axis: usize) -> Result<Vec<AxisCrossing>, DiagramError> {
        if axis >= self.num_components() {
            return Err(DiagramError::BadComponent(axis));
        }
        if let Some(&id) = self.self_crossings(axis).first() {
            return Err(DiagramError::AxisSelfCrossing(id));
        }
        if self.is_free_loop(axis) {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for &e in self.component_edges(axis) {
            let (p, s) = self.head(e).expect("edge of a crossed component");
            let x = &self.crossings()[p];
            let (l, _) = side_slots(s, x.over_runs_d_to_b());
            let strand_over = s == 0;
            let (strand_in, strand_out) = if strand_over {
                (x.over_in(), x.over_out())
            } else {
                (x.under_in(), x.under_out())
            };
            out.push(AxisCrossing {
                crossing: x.id(),
                strand_over,
                left_to_right: x.is_incoming(l),
                strand_in,
                strand_out,
                comp: self.edge_component(strand_in),
            });
        }
        Ok(out)
    }

    /// Port darts (left, right) of an axis crossing.
    fn axis_ports(&self, axis: usize, pos: usize) -> (Dart, Dart) {
        let x = &self.crossings()[pos];
        let s = (0..4)
            .find(|&s| x.is_incoming(s) && self.edge_component(x.slots()[s]) == axis)
            .expect("axis enters the crossing");
        let (l, r) = side_slots(s, x.over_runs_d_to_b());
        ((pos, l), (pos, r))
    }

    /// Rotation of the axis sequence that puts the encircling pattern in
    /// standard order: `m` over-passes, then the matching under-passes in
    /// reverse, each pair joined by a crossing-free arc on one common side.
    fn encircling_cut(&self, axis: usize) -> Result<(Vec<AxisCrossing>, usize), DiagramError> {
        let seq = self.axis_crossings(axis)?;
        let n = seq.len();
        if n == 0 {
            return Ok((seq, 0));
        }
        if n % 2 == 1 {
            return Err(DiagramError::NotEncircling("odd number of axis crossings".into()));
        }
        let m = n / 2;
        'rot: for r in 0..n {
            let rot: Vec<AxisCrossing> = (0..n).map(|i| seq[(r + i) % n]).collect();
            if !rot[..m].iter().all(|c| c.strand_over) || rot[m..].iter().any(|c| c.strand_over) {
                continue;
            }
            // Possible chord sides per pair: bit 0 = left, bit 1 = right.
            let mut common = 0b11u8;
            for j in 0..m {
                let (a, b) = (rot[j], rot[n - 1 - j]);
                let pa = self.pos_of(a.crossing)?;
                let (l, rgt) = self.axis_ports(axis, pa);
                let pb = self.pos_of(b.crossing)?;
                let (bl, br) = self.axis_ports(axis, pb);
                let edge = |d: Dart| self.crossings()[d.0].slots()[d.1];
                let mut sides = 0u8;
                if edge(l) == edge(bl) || edge(l) == edge(br) {
                    sides |= 1;
                }
                if edge(rgt) == edge(bl) || edge(rgt) == edge(br) {
                    sides |= 2;
                }
                common &= sides;
                if common == 0 {
                    continue 'rot;
                }
            }
            return Ok((rot, m));
        }
        Err(DiagramError::NotEncircling(
            "axis crossings do not form nested clasps".into(),
        ))
    }

    /// Whether the axis encircles parallel strands in the standard clasp pattern.
    pub fn is_encircling(&self, axis: usize) -> bool {
        self.encircling_cut(axis).is_ok()
    }

    /// Number of strands encircled by an axis in encircling form.
    pub fn encircled_strands(&self, axis: usize) -> Result<usize, DiagramError> {
        self.encircling_cut(axis).map(|(_, m)| m)
    }

    /// Isotope a crossed axis into encircling form. Strands passing under the
    /// axis are pulled off its far end; strands passing over it are then
    /// clasped by a thin loop.
    pub fn to_encircling_form(&self, axis: usize) -> Result<LinkDiagram, DiagramError> {
        let seq = self.axis_crossings(axis)?;
        if seq.is_empty() || self.is_encircling(axis) {
            return Ok(self.clone());
        }
        let n = seq.len() as i64;
        let h = HALF_WIDTH;
        let delta = 10;
        let x_lo = SPACING / 2;
        let x_hi = n * SPACING + SPACING / 2;
        let mut curves = Vec::new();
        let mut remove = Vec::new();
        for (i, c) in seq.iter().enumerate() {
            let i1 = i as i64 + 1;
            let x = i1 * SPACING;
            let pos = self.pos_of(c.crossing)?;
            remove.push(pos);
            let (left, right) = self.axis_ports(axis, pos);
            let (mut pts, mut hs) = if c.strand_over {
                (vec![(x, h), (x, -h)], vec![2])
            } else {
                let hi = delta + (n + 1 - i1) * 10;
                let xi = x_hi + (n + 1 - i1) * 100;
                let ht = i1 - n - 10;
                (
                    vec![(x, h), (x, hi), (xi, hi), (xi, -hi), (x, -hi), (x, -h)],
                    vec![ht; 5],
                )
            };
            let (start, end) = if c.left_to_right {
                (left, right)
            } else {
                pts.reverse();
                hs.reverse();
                (right, left)
            };
            curves.push(Curve::open(pts, hs, start, end));
        }
        curves.push(Curve::closed(
            vec![(x_lo, -delta), (x_hi, -delta), (x_hi, delta), (x_lo, delta)],
            vec![1, 1, 1000, 1],
            axis,
        ));
        let internal = self.component_edges(axis).to_vec();
        self.splice(&remove, &internal, &[], &curves)
    }

    /// Delete an axis in encircling form and insert `k` full twists on the
    /// strands it encircles. Positive `k` twists right-handedly, which makes
    /// the new crossings between coherently oriented strands positive.
    pub fn rolfsen_twist(&self, axis: usize, k: i64) -> Result<LinkDiagram, DiagramError> {
        let (seq, m) = self.encircling_cut(axis)?;
        let mut drop = vec![false; self.num_components()];
        drop[axis] = true;
        if seq.is_empty() {
            return self.rebuild(&[], &[], &drop);
        }
        let h = HALF_WIDTH;
        let x_of = |p: usize| (p as i64 + 1) * SPACING;
        // Braid levels: each round moves the first strand to the end.
        let steps = if m >= 2 {
            m * (m - 1) * k.unsigned_abs() as usize
        } else {
            0
        };
        let level_gap = 10i64;
        let top = level_gap * steps as i64 / 2;
        let traveler_height = if k > 0 { -1 } else { 1 };
        let mut paths: Vec<(Vec<Point>, Vec<i64>)> =
            (0..m).map(|p| (vec![(x_of(p), h), (x_of(p), top)], vec![0])).collect();
        let mut at: Vec<usize> = (0..m).collect(); // at[position] = strand
        for step in 0..steps {
            let s = step % (m - 1);
            let y = top - level_gap * (step as i64 + 1);
            for (p, &strand) in at.iter().enumerate() {
                let (np, ht) = if p == s {
                    (s + 1, traveler_height)
                } else if p == s + 1 {
                    (s, 0)
                } else {
                    (p, 0)
                };
                paths[strand].0.push((x_of(np), y));
                paths[strand].1.push(ht);
            }
            at.swap(s, s + 1);
        }
        // A full twist is a pure braid.
        debug_assert!(at.iter().enumerate().all(|(p, &s)| p == s));
        for (p, &strand) in at.iter().enumerate() {
            paths[strand].0.push((x_of(p), -h));
            paths[strand].1.push(0);
        }
        let mut curves = Vec::new();
        let mut remove = Vec::new();
        for (i, c) in seq.iter().enumerate() {
            let pos = self.pos_of(c.crossing)?;
            remove.push(pos);
            let (left, right) = self.axis_ports(axis, pos);
            let (mut pts, mut hs) = if i < m {
                merge_collinear(paths[i].0.clone(), paths[i].1.clone())
            } else {
                (vec![(x_of(i), h), (x_of(i), -h)], vec![-5])
            };
            let (start, end) = if c.left_to_right {
                (left, right)
            } else {
                pts.reverse();
                hs.reverse();
                (right, left)
            };
            curves.push(Curve::open(pts, hs, start, end));
        }
        let internal = self.component_edges(axis).to_vec();
        self.splice(&remove, &internal, &drop, &curves)
    }
}

impl LinkDiagram {
    /// Replace crossing `id` by a small picture of the same two strands,
    /// optionally switched, encircled by a new unknotted component appended
    /// last. The circle bounds a disk pierced once by each strand, in
    /// opposite directions. After switching, a twist by minus the original
    /// sign about the circle restores the crossing.
    pub fn add_crossing_circle(&self, id: usize, switch: bool) -> Result<LinkDiagram, DiagramError> {
        let pos = self.pos_of(id)?;
        let x = &self.crossings()[pos];
        // Ports counterclockwise at 225, 315, 45 and 135 degrees.
        let r = 1000;
        let port_pt = [(-r, -r), (r, -r), (r, r), (-r, r)];
        let over_in = if x.over_runs_d_to_b() { 3 } else { 1 };
        let over_out = (over_in + 2) % 4;
        let (hu, ho) = if switch { (1, 0) } else { (0, 1) };
        let under = Curve::open(vec![port_pt[0], port_pt[2]], vec![hu], (pos, 0), (pos, 2));
        let over = Curve::open(
            vec![port_pt[over_in], port_pt[over_out]],
            vec![ho],
            (pos, over_in),
            (pos, over_out),
        );
        // Tilt the circle so the strands cross its disk in opposite
        // directions; the circle then has linking number zero with them.
        let heights = if over_in == 1 {
            vec![10, -10, -10, 10]
        } else {
            vec![10, 10, -10, -10]
        };
        let c = 500;
        let circle = Curve::closed(vec![(c, 0), (0, c), (-c, 0), (0, -c)], heights, self.num_components());
        self.splice(&[pos], &[], &[], &[under, over, circle])
    }
}
