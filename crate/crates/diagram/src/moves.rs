//! Reidemeister moves and diagram simplification.

use std::collections::{HashSet, VecDeque};

use crate::diagram::{Dart, LinkDiagram};
use crate::splice::{Curve, Point};

/// Default number of diagrams the R3 search may visit.
pub const DEFAULT_SIMPLIFY_BUDGET: usize = 100_000;

/// Result of a simplification run.
#[derive(Clone, Debug)]
pub struct Simplified {
    pub diagram: LinkDiagram,
    /// True when the R3 search stopped because the budget ran out.
    pub budget_exhausted: bool,
    pub states_visited: usize,
}

impl LinkDiagram {
    /// Position of a crossing removable by a Reidemeister I move.
    fn find_r1(&self) -> Option<usize> {
        for e in 0..self.num_edges() {
            if let (Some((p, s)), Some((q, t))) = (self.head(e), self.tail(e)) {
                if p == q && (s + 4 - t) % 2 == 1 {
                    return Some(p);
                }
            }
        }
        None
    }

    /// Two crossings bounding a bigon where one edge is over at both ends.
    fn find_r2(&self) -> Option<(usize, usize)> {
        for f in self.faces() {
            if let [(p, s), (q, t)] = f[..] {
                if p != q && s % 2 != t % 2 {
                    return Some((p, q));
                }
            }
        }
        None
    }

    /// Apply Reidemeister I and II reductions until none applies.
    pub fn reduce_r12(&self) -> LinkDiagram {
        let mut cur = self.clone();
        loop {
            let remove: Vec<usize> = if let Some(p) = cur.find_r1() {
                vec![p]
            } else if let Some((p, q)) = cur.find_r2() {
                vec![p, q]
            } else {
                return cur;
            };
            let unions: Vec<(usize, usize)> = remove.iter().flat_map(|&p| cur.pass_through(p)).collect();
            cur = cur
                .rebuild(&remove, &unions, &[])
                .expect("Reidemeister reduction keeps a valid diagram");
        }
    }

    /// Every diagram reachable by one Reidemeister III move.
    pub fn r3_neighbors(&self) -> Vec<LinkDiagram> {
        let mut out = Vec::new();
        for f in self.faces() {
            let [d0, d1, d2] = f[..] else { continue };
            if d0.0 == d1.0 || d1.0 == d2.0 || d0.0 == d2.0 {
                continue;
            }
            if let Some(d) = self.r3_at([d0, d1, d2]) {
                out.push(d);
            }
        }
        out
    }

    /// Slide a strand across the crossing opposite it in a triangular face.
    fn r3_at(&self, f: [Dart; 3]) -> Option<LinkDiagram> {
        let [(p0, s0), (p1, s1), (p2, s2)] = f;
        let ps = [p0, p1, p2];
        let ss = [s0, s1, s2];
        // Strand i contains the face edge from p_i to p_{i+1}. It is over at
        // p_i when s_i is odd and over at p_{i+1} when s_{i+1} is even.
        let over_at = |i: usize, j: usize| -> bool {
            if j == i {
                ss[i] % 2 == 1
            } else {
                ss[j] % 2 == 0
            }
        };
        let ti = (0..3).find(|&i| over_at(i, i) == over_at(i, (i + 1) % 3))?;
        // Ports in counterclockwise order around the region.
        let port = |i: usize, k: usize| (ps[i], (ss[i] + k) % 4);
        let ports = [port(0, 1), port(0, 2), port(2, 1), port(2, 2), port(1, 1), port(1, 2)];
        // Strand i runs between port (p_i, s_i + 2) and port (p_{i+1}, s_{i+1} + 1).
        let strand_ports = |i: usize| -> (usize, usize) {
            let a = ports.iter().position(|&d| d == port(i, 2)).expect("port");
            let b = ports.iter().position(|&d| d == port((i + 1) % 3, 1)).expect("port");
            (a, b)
        };
        let angles = [0.0f64, 40.0, 150.0, 180.0, 200.0, 320.0];
        let radius = 10_000.0;
        let pts: Vec<Point> = angles
            .iter()
            .map(|a: &f64| {
                let r = a.to_radians();
                ((radius * r.cos()).round() as i64, (radius * r.sin()).round() as i64)
            })
            .collect();
        let oriented = |(a, b): (usize, usize)| -> (usize, usize) {
            let (q, s) = ports[a];
            if self.crossings()[q].is_incoming(s) {
                (a, b)
            } else {
                (b, a)
            }
        };
        let t = oriented(strand_ports(ti));
        let ai = (ti + 1) % 3;
        let bi = (ti + 2) % 3;
        let a = oriented(strand_ports(ai));
        let b = oriented(strand_ports(bi));
        let t_height = if over_at(ti, ti) { 10 } else { -10 };
        // A and B meet at p_{ti+2}; strand ai is over there iff s is even.
        let meet = (ti + 2) % 3;
        let a_over = over_at(ai, meet);
        let (ah, bh) = if a_over { (1, 0) } else { (0, 1) };

        // Original order along A: does A meet T before B?
        // A passes p_ai (shared with T) and p_meet (shared with B).
        let orig_t_first = ports[a.0].0 == ps[ai];

        let line = |(i, j): (usize, usize), h: i64| Curve::open(vec![pts[i], pts[j]], vec![h], ports[i], ports[j]);
        let pa = pts[a.0];
        let pa2 = pts[a.1];
        let pb = pts[b.0];
        let pb2 = pts[b.1];
        let meet_pt = segment_meet(pa, pa2, pb, pb2)?;
        let t_candidates = {
            let (t1, t2) = (pts[t.0], pts[t.1]);
            let dx = (t2.0 - t1.0) as f64;
            let dy = (t2.1 - t1.1) as f64;
            let len = (dx * dx + dy * dy).sqrt();
            let side =
                ((t2.0 - t1.0) as f64) * (meet_pt.1 - t1.1 as f64) - ((t2.1 - t1.1) as f64) * (meet_pt.0 - t1.0 as f64);
            let sg = if side >= 0.0 { 1.0 } else { -1.0 };
            let off = 1500.0;
            let q = (
                (meet_pt.0 - sg * dy / len * off).round() as i64,
                (meet_pt.1 + sg * dx / len * off).round() as i64,
            );
            vec![vec![t1, t2], vec![t1, q, t2]]
        };
        for pts_t in t_candidates {
            let segs = pts_t.len() - 1;
            let tc = Curve::open(pts_t.clone(), vec![t_height; segs], ports[t.0], ports[t.1]);
            let Some(t_first) = t_before_b(pa, pa2, &pts_t, pb, pb2) else {
                continue;
            };
            if t_first == orig_t_first {
                continue;
            }
            let internal: Vec<usize> = (0..3).map(|i| self.crossings()[ps[i]].slots()[ss[i]]).collect();
            let curves = vec![tc, line(a, ah), line(b, bh)];
            let d = self.splice(&ps, &internal, &[], &curves).ok()?;
            if d.num_crossings() == self.num_crossings() {
                return Some(d);
            }
        }
        None
    }

    /// Reduce by Reidemeister I and II, then search Reidemeister III moves
    /// for further reductions within `budget` visited diagrams.
    pub fn simplify_with_budget(&self, budget: usize) -> Simplified {
        let mut best = self.reduce_r12();
        let mut visited_total = 0usize;
        'outer: loop {
            if best.num_crossings() < 3 {
                break;
            }
            let mut seen: HashSet<Vec<u32>> = HashSet::new();
            let mut queue: VecDeque<LinkDiagram> = VecDeque::new();
            seen.insert(best.canonical_key());
            queue.push_back(best.clone());
            while let Some(d) = queue.pop_front() {
                for nb in d.r3_neighbors() {
                    let r = nb.reduce_r12();
                    if r.num_crossings() < best.num_crossings() {
                        best = r;
                        continue 'outer;
                    }
                    if seen.insert(r.canonical_key()) {
                        visited_total += 1;
                        if visited_total >= budget {
                            return Simplified {
                                diagram: best.renumbered(),
                                budget_exhausted: true,
                                states_visited: visited_total,
                            };
                        }
                        queue.push_back(r);
                    }
                }
            }
            break;
        }
        Simplified {
            diagram: best.renumbered(),
            budget_exhausted: false,
            states_visited: visited_total,
        }
    }

    /// Simplify with the default search budget.
    pub fn simplify(&self) -> LinkDiagram {
        self.simplify_with_budget(DEFAULT_SIMPLIFY_BUDGET).diagram
    }

    /// True when, starting at some edge, a one-component diagram meets every
    /// crossing first as an over-crossing. Such a diagram is an unknot.
    pub fn is_descending(&self) -> bool {
        if self.num_components() != 1 {
            return false;
        }
        if self.num_crossings() == 0 {
            return true;
        }
        let n = self.num_edges();
        (0..n).any(|start| {
            let mut seen = vec![false; self.num_crossings()];
            let mut e = start;
            for _ in 0..n {
                let (p, s) = self.head(e).expect("edge ends at a crossing");
                if !seen[p] {
                    seen[p] = true;
                    if s == 0 {
                        return false;
                    }
                }
                e = self.next_edge(e);
            }
            true
        })
    }
}

fn segment_meet(a: Point, a2: Point, b: Point, b2: Point) -> Option<(f64, f64)> {
    let d1 = ((a2.0 - a.0) as f64, (a2.1 - a.1) as f64);
    let d2 = ((b2.0 - b.0) as f64, (b2.1 - b.1) as f64);
    let den = d1.0 * d2.1 - d1.1 * d2.0;
    if den == 0.0 {
        return None;
    }
    let w = ((b.0 - a.0) as f64, (b.1 - a.1) as f64);
    let t = (w.0 * d2.1 - w.1 * d2.0) / den;
    Some((a.0 as f64 + t * d1.0, a.1 as f64 + t * d1.1))
}

/// Exact parameter along segment `a -> a2` where it meets segment `q -> q2`.
fn param_on(a: Point, a2: Point, q: Point, q2: Point) -> Option<(i128, i128)> {
    let c = |x: (i128, i128), y: (i128, i128)| x.0 * y.1 - x.1 * y.0;
    let d1 = ((a2.0 - a.0) as i128, (a2.1 - a.1) as i128);
    let d2 = ((q2.0 - q.0) as i128, (q2.1 - q.1) as i128);
    let w = ((q.0 - a.0) as i128, (q.1 - a.1) as i128);
    let mut den = c(d1, d2);
    if den == 0 {
        return None;
    }
    let mut tn = c(w, d2);
    let mut sn = c(w, d1);
    if den < 0 {
        den = -den;
        tn = -tn;
        sn = -sn;
    }
    (0 < tn && tn < den && 0 < sn && sn < den).then_some((tn, den))
}

/// Whether, along `a -> a2`, the polyline `t` is met before segment `b`.
/// `None` unless each is met exactly once.
fn t_before_b(a: Point, a2: Point, t: &[Point], b: Point, b2: Point) -> Option<bool> {
    let hits: Vec<(i128, i128)> = t.windows(2).filter_map(|w| param_on(a, a2, w[0], w[1])).collect();
    if hits.len() != 1 {
        return None;
    }
    let (tn, td) = hits[0];
    let (bn, bd) = param_on(a, a2, b, b2)?;
    Some(tn * bd < bn * td)
}

#[cfg(test)]
mod tests {
    use crate::parse::parse_diagram;

    #[test]
    fn r1_and_r2_reduce_trivial_diagrams() {
        let kink = parse_diagram("X(0,0,1,1)").unwrap();
        let r = kink.reduce_r12();
        assert_eq!((r.num_crossings(), r.num_components()), (0, 1));
        let unlink = parse_diagram("braid 2: 1 -1").unwrap();
        let r = unlink.reduce_r12();
        assert_eq!((r.num_crossings(), r.num_components()), (0, 2));
    }

    #[test]
    fn hopf_link_is_reduced() {
        let d = parse_diagram("X(2,1,3,0) X(0,3,1,2)").unwrap();
        assert_eq!(d.reduce_r12().num_crossings(), 2);
        assert_eq!(d.simplify().num_crossings(), 2);
    }

    #[test]
    fn braid_relation_is_an_r3_move() {
        let lhs = parse_diagram("braid 3: 1 2 1").unwrap();
        let rhs = parse_diagram("braid 3: 2 1 2").unwrap();
        let nbs = lhs.r3_neighbors();
        assert!(!nbs.is_empty());
        for nb in &nbs {
            nb.check_planar().unwrap();
            assert_eq!(nb.num_crossings(), 3);
            assert_eq!(nb.writhe(), 3);
        }
        assert!(nbs.iter().any(|nb| nb.canonical_key() == rhs.canonical_key()));
    }

    #[test]
    fn r3_enables_reduction() {
        // The word is the identity braid, but no bigon or kink is visible.
        let d = parse_diagram("braid 3: 1 2 1 -2 -1 -2").unwrap();
        assert_eq!(d.reduce_r12().num_crossings(), 6);
        let s = d.simplify_with_budget(10_000);
        assert!(!s.budget_exhausted);
        assert_eq!(s.diagram.num_crossings(), 0);
        assert_eq!(s.diagram.num_components(), 3);
    }

    #[test]
    fn descending_diagrams() {
        let trefoil = parse_diagram("braid 2: 1 1 1").unwrap();
        assert!(!trefoil.is_descending());
        assert!(parse_diagram("braid 2: 1").unwrap().is_descending());
    }
}
