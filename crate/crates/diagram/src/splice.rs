//! Replace part of a diagram by a tangle drawn with integer polylines.
//!
//! The removed crossings form a disk-like region. Every slot of a removed
//! crossing either belongs to an internal edge (deleted with the region) or is
//! a port where a new curve attaches to the outside part of that edge. New
//! crossings are found by exact segment intersection; at each one the higher
//! segment passes over.

use std::collections::{HashMap, HashSet};

use crate::diagram::{Components, Dart, LinkDiagram, RawCrossing};
use crate::error::DiagramError;
use crate::uf::UnionFind;

pub(crate) type Point = (i64, i64);

#[derive(Clone, Debug)]
pub(crate) struct Curve {
    pub points: Vec<Point>,
    /// One height per segment; a closed curve has as many segments as points.
    pub heights: Vec<i64>,
    /// Start and end ports of an open curve; `None` for a closed curve.
    pub ends: Option<(Dart, Dart)>,
    /// Component of the curve; inferred from the ports when `None`.
    pub comp: Option<usize>,
}

impl Curve {
    pub fn open(points: Vec<Point>, heights: Vec<i64>, start: Dart, end: Dart) -> Self {
        Curve {
            points,
            heights,
            ends: Some((start, end)),
            comp: None,
        }
    }

    pub fn closed(points: Vec<Point>, heights: Vec<i64>, comp: usize) -> Self {
        Curve {
            points,
            heights,
            ends: None,
            comp: Some(comp),
        }
    }

    fn segments(&self) -> usize {
        if self.ends.is_some() {
            self.points.len() - 1
        } else {
            self.points.len()
        }
    }

    fn segment(&self, i: usize) -> (Point, Point) {
        (self.points[i], self.points[(i + 1) % self.points.len()])
    }
}

fn cross(a: (i128, i128), b: (i128, i128)) -> i128 {
    a.0 * b.1 - a.1 * b.0
}

fn sub(a: Point, b: Point) -> (i128, i128) {
    ((a.0 - b.0) as i128, (a.1 - b.1) as i128)
}

/// Parameter `num / den` along a segment, `den > 0`.
#[derive(Clone, Copy, Debug)]
struct Param {
    num: i128,
    den: i128,
}

impl Param {
    fn cmp(&self, o: &Param) -> std::cmp::Ordering {
        (self.num * o.den).cmp(&(o.num * self.den))
    }
}

/// Proper intersection of two segments, as parameters along each.
fn intersect(p: (Point, Point), q: (Point, Point)) -> Result<Option<(Param, Param)>, DiagramError> {
    let d1 = sub(p.1, p.0);
    let d2 = sub(q.1, q.0);
    let w = sub(q.0, p.0);
    let mut den = cross(d1, d2);
    let mut tn = cross(w, d2);
    let mut sn = cross(w, d1);
    if den == 0 {
        if cross(w, d1) == 0 {
            // Collinear: overlapping is degenerate, disjoint is fine.
            let dot = |a: (i128, i128), b: (i128, i128)| a.0 * b.0 + a.1 * b.1;
            let len = dot(d1, d1);
            let a = dot(w, d1);
            let b = dot(sub(q.1, p.0), d1);
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            if hi >= 0 && lo <= len {
                return Err(DiagramError::Geometry("collinear overlapping segments".into()));
            }
        }
        return Ok(None);
    }
    if den < 0 {
        den = -den;
        tn = -tn;
        sn = -sn;
    }
    let inside = |x: i128| 0 <= x && x <= den;
    if !(inside(tn) && inside(sn)) {
        return Ok(None);
    }
    if tn == 0 || tn == den || sn == 0 || sn == den {
        return Err(DiagramError::Geometry(format!(
            "segments {p:?} and {q:?} touch at an endpoint"
        )));
    }
    Ok(Some((Param { num: tn, den }, Param { num: sn, den })))
}

struct Event {
    crossing: usize,
    seg: usize,
    t: Param,
}

struct NewCrossing {
    under: (usize, usize), // (curve, segment)
    over: (usize, usize),
}

impl LinkDiagram {
    /// Replace the crossings at positions `remove` by the given curves.
    /// `internal` edges disappear; components flagged in `drop` are deleted
    /// (their edges must all be internal).
    pub(crate) fn splice(
        &self,
        remove: &[usize],
        internal: &[usize],
        drop: &[bool],
        curves: &[Curve],
    ) -> Result<LinkDiagram, DiagramError> {
        let removed: HashSet<usize> = remove.iter().copied().collect();
        let internal_set: HashSet<usize> = internal.iter().copied().collect();
        for &e in internal {
            for d in [self.head(e), self.tail(e)].into_iter().flatten() {
                if !removed.contains(&d.0) {
                    return Err(DiagramError::Geometry(format!(
                        "internal edge {e} reaches a kept crossing"
                    )));
                }
            }
        }
        // Ports: every non-internal slot of a removed crossing, used once.
        let mut ports: HashSet<Dart> = HashSet::new();
        for &p in remove {
            for s in 0..4 {
                if !internal_set.contains(&self.crossings()[p].slots()[s]) {
                    ports.insert((p, s));
                }
            }
        }
        for c in curves {
            if let Some((a, b)) = c.ends {
                if !ports.remove(&a) || !ports.remove(&b) {
                    return Err(DiagramError::Geometry(format!(
                        "curve ends {a:?}/{b:?} are not unused ports"
                    )));
                }
                if !self.crossings()[a.0].is_incoming(a.1) || self.crossings()[b.0].is_incoming(b.1) {
                    return Err(DiagramError::Geometry(format!(
                        "curve from {a:?} to {b:?} runs against the port edges"
                    )));
                }
            }
            let want = c.segments();
            if c.heights.len() != want || c.points.len() < 2 {
                return Err(DiagramError::Geometry("curve heights do not match segments".into()));
            }
        }
        if !ports.is_empty() {
            return Err(DiagramError::Geometry(format!("ports left unattached: {ports:?}")));
        }

        // Intersections.
        let segs: Vec<(usize, usize)> = curves
            .iter()
            .enumerate()
            .flat_map(|(ci, c)| (0..c.segments()).map(move |si| (ci, si)))
            .collect();
        let mut events: Vec<Vec<Event>> = curves.iter().map(|_| Vec::new()).collect();
        let mut new_x: Vec<NewCrossing> = Vec::new();
        for i in 0..segs.len() {
            for j in i + 1..segs.len() {
                let (ci, si) = segs[i];
                let (cj, sj) = segs[j];
                if ci == cj {
                    let n = curves[ci].segments();
                    let closed = curves[ci].ends.is_none();
                    if sj == si + 1 || (closed && si == 0 && sj == n - 1) {
                        continue;
                    }
                }
                let Some((t, s)) = intersect(curves[ci].segment(si), curves[cj].segment(sj))? else {
                    continue;
                };
                let (hi, hj) = (curves[ci].heights[si], curves[cj].heights[sj]);
                if hi == hj {
                    return Err(DiagramError::Geometry(format!(
                        "crossing segments at equal height {hi}"
                    )));
                }
                let k = new_x.len();
                let (under, over) = if hi < hj {
                    ((ci, si), (cj, sj))
                } else {
                    ((cj, sj), (ci, si))
                };
                new_x.push(NewCrossing { under, over });
                events[ci].push(Event {
                    crossing: k,
                    seg: si,
                    t,
                });
                events[cj].push(Event {
                    crossing: k,
                    seg: sj,
                    t: s,
                });
            }
        }
        for ev in &mut events {
            ev.sort_by(|a, b| a.seg.cmp(&b.seg).then(a.t.cmp(&b.t)));
            for w in ev.windows(2) {
                if w[0].seg == w[1].seg && w[0].t.cmp(&w[1].t).is_eq() {
                    return Err(DiagramError::Geometry("three strands meet at a point".into()));
                }
            }
        }

        // Edge pieces. in_out[k] = (under_in, under_out, over_in, over_out).
        let base = self.num_edges();
        let mut next_label = base;
        let mut fresh = || {
            next_label += 1;
            next_label - 1
        };
        let mut in_out: Vec<[usize; 4]> = vec![[usize::MAX; 4]; new_x.len()];
        let mut piece_comp: Vec<(usize, usize)> = Vec::new(); // (label, curve)
        let mut port_unions: Vec<(usize, usize)> = Vec::new();
        for (ci, c) in curves.iter().enumerate() {
            let ev = &events[ci];
            let k = ev.len();
            let set = |in_out: &mut Vec<[usize; 4]>, e: &Event, incoming: bool, label: usize| {
                let x = &new_x[e.crossing];
                let is_under = x.under == (ci, e.seg);
                let slot = match (is_under, incoming) {
                    (true, true) => 0,
                    (true, false) => 1,
                    (false, true) => 2,
                    (false, false) => 3,
                };
                in_out[e.crossing][slot] = label;
            };
            match c.ends {
                Some((start, end)) => {
                    let labels: Vec<usize> = (0..=k).map(|_| fresh()).collect();
                    for &l in &labels {
                        piece_comp.push((l, ci));
                    }
                    for (j, e) in ev.iter().enumerate() {
                        set(&mut in_out, e, true, labels[j]);
                        set(&mut in_out, e, false, labels[j + 1]);
                    }
                    let start_edge = self.crossings()[start.0].slots()[start.1];
                    let end_edge = self.crossings()[end.0].slots()[end.1];
                    port_unions.push((labels[0], start_edge));
                    port_unions.push((labels[k], end_edge));
                }
                None => {
                    if k == 0 {
                        let l = fresh();
                        piece_comp.push((l, ci));
                        continue;
                    }
                    let labels: Vec<usize> = (0..k).map(|_| fresh()).collect();
                    for &l in &labels {
                        piece_comp.push((l, ci));
                    }
                    for (j, e) in ev.iter().enumerate() {
                        set(&mut in_out, e, true, labels[(j + k - 1) % k]);
                        set(&mut in_out, e, false, labels[j]);
                    }
                }
            }
        }

        let mut uf = UnionFind::new(next_label);
        for &(a, b) in &port_unions {
            uf.union(a, b);
        }

        let mut remap = vec![usize::MAX; self.num_components()];
        let mut ncomp = 0;
        for (k, slot) in remap.iter_mut().enumerate() {
            if !drop.get(k).copied().unwrap_or(false) {
                *slot = ncomp;
                ncomp += 1;
            }
        }
        // Closed curves may start new components after the kept ones.
        let ncomp = curves
            .iter()
            .filter_map(|c| c.comp.map(|k| k + 1))
            .fold(ncomp, usize::max);
        let mut label_comp: HashMap<usize, usize> = HashMap::new();
        let mut assign = |uf: &mut UnionFind, l: usize, k: usize| -> Result<(), DiagramError> {
            let r = uf.find(l);
            match label_comp.insert(r, k) {
                Some(old) if old != k => Err(DiagramError::Geometry(format!("curve joins components {old} and {k}"))),
                _ => Ok(()),
            }
        };
        for e in 0..base {
            if internal_set.contains(&e) {
                continue;
            }
            let k = remap[self.edge_component(e)];
            if k == usize::MAX {
                return Err(DiagramError::Geometry(format!(
                    "edge {e} of a dropped component survives"
                )));
            }
            assign(&mut uf, e, k)?;
        }
        for &(l, ci) in &piece_comp {
            let k = match curves[ci].comp {
                Some(k) => k,
                None => {
                    let (start, _) = curves[ci].ends.expect("open curve");
                    let e = self.crossings()[start.0].slots()[start.1];
                    remap[self.edge_component(e)]
                }
            };
            assign(&mut uf, l, k)?;
        }

        let mut starts = vec![None; ncomp];
        for k in 0..self.num_components() {
            if remap[k] == usize::MAX {
                continue;
            }
            let first = self.component_edges(k)[0];
            if !internal_set.contains(&first) {
                starts[remap[k]] = Some(uf.find(first));
            }
        }
        let max_id = self.crossings().iter().map(|c| c.id()).max().map_or(0, |m| m + 1);
        let mut raw: Vec<RawCrossing> = self
            .crossings()
            .iter()
            .enumerate()
            .filter(|(p, _)| !removed.contains(p))
            .map(|(_, x)| RawCrossing {
                id: x.id(),
                slots: x.slots().map(|l| uf.find(l)),
                over_db: x.over_runs_d_to_b(),
            })
            .collect();
        for (k, x) in new_x.iter().enumerate() {
            let [ui, uo, oi, oo] = in_out[k].map(|l| uf.find(l));
            let seg_dir = |(ci, si): (usize, usize)| {
                let (a, b) = curves[ci].segment(si);
                sub(b, a)
            };
            let u = seg_dir(x.under);
            let o = seg_dir(x.over);
            // Slot b lies to the right of the under-strand.
            let (slots, over_db) = if cross(u, o) < 0 {
                ([ui, oo, uo, oi], true)
            } else {
                ([ui, oi, uo, oo], false)
            };
            raw.push(RawCrossing {
                id: max_id + k,
                slots,
                over_db,
            });
        }
        let d = LinkDiagram::assemble(
            raw,
            Components::Labeled {
                label_comp,
                ncomp,
                starts,
            },
        )?;
        d.check_planar()?;
        Ok(d)
    }
}
