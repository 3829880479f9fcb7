use std::collections::{HashMap, HashSet};

use crate::error::DiagramError;
use crate::uf::UnionFind;

/// A crossing slot: (position in the crossing list, slot index 0..4).
pub type Dart = (usize, usize);

/// One crossing in PD form.
///
/// Slots are listed counterclockwise starting at the incoming under-strand, so
/// the under-strand always runs from slot 0 to slot 2. The over-strand runs
/// either d -> b (a positive crossing) or b -> d (negative).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub(crate) id: usize,
    pub(crate) slots: [usize; 4],
    pub(crate) over_db: bool,
}

impl Crossing {
    pub fn id(&self) -> usize {
        self.id
    }

    pub fn slots(&self) -> [usize; 4] {
        self.slots
    }

    /// Right-handed crossings are +1.
    pub fn sign(&self) -> i32 {
        if self.over_db {
            1
        } else {
            -1
        }
    }

    pub fn over_runs_d_to_b(&self) -> bool {
        self.over_db
    }

    pub fn is_incoming(&self, slot: usize) -> bool {
        match slot {
            0 => true,
            1 => !self.over_db,
            2 => false,
            3 => self.over_db,
            _ => panic!("slot index {slot} out of range"),
        }
    }

    pub fn under_in(&self) -> usize {
        self.slots[0]
    }

    pub fn under_out(&self) -> usize {
        self.slots[2]
    }

    pub fn over_in(&self) -> usize {
        if self.over_db {
            self.slots[3]
        } else {
            self.slots[1]
        }
    }

    pub fn over_out(&self) -> usize {
        if self.over_db {
            self.slots[1]
        } else {
            self.slots[3]
        }
    }

    /// Exchange over and under; the sign flips.
    pub(crate) fn switched(&self) -> Crossing {
        let [a, b, c, d] = self.slots;
        if self.over_db {
            Crossing {
                id: self.id,
                slots: [d, a, b, c],
                over_db: false,
            }
        } else {
            Crossing {
                id: self.id,
                slots: [b, c, d, a],
                over_db: true,
            }
        }
    }
}

/// Crossing with arbitrary edge labels, before normalization.
#[derive(Clone, Debug)]
pub(crate) struct RawCrossing {
    pub id: usize,
    pub slots: [usize; 4],
    pub over_db: bool,
}

impl From<&Crossing> for RawCrossing {
    fn from(c: &Crossing) -> Self {
        RawCrossing {
            id: c.id,
            slots: c.slots,
            over_db: c.over_db,
        }
    }
}

fn slot_incoming(over_db: bool, slot: usize) -> bool {
    slot == 0 || (slot == 1 && !over_db) || (slot == 3 && over_db)
}

/// How components are determined when assembling a diagram from raw crossings.
pub(crate) enum Components {
    /// Every surviving label carries a component index. Labels absent from all
    /// crossings mark crossingless components. A component whose labels form
    /// several cycles keeps the cycle through `starts[c]` and the others are
    /// appended; a component with no labels at all disappears.
    Labeled {
        label_comp: HashMap<usize, usize>,
        ncomp: usize,
        starts: Vec<Option<usize>>,
    },
    /// Each cycle is a component, ordered by smallest label; `free` labels are
    /// extra crossingless components.
    Inferred { free: Vec<usize> },
}

/// An oriented link diagram with an ordered list of components.
///
/// Edges are numbered consecutively along each component in orientation order,
/// component 0 first. A component without crossings owns a single edge that
/// appears in no crossing.
#[derive(Clone, Debug)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    comps: Vec<Vec<usize>>,
    edge_comp: Vec<usize>,
    head: Vec<Option<Dart>>,
    tail: Vec<Option<Dart>>,
}

impl PartialEq for LinkDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.crossings == other.crossings && self.comps == other.comps
    }
}

impl Eq for LinkDiagram {}

impl LinkDiagram {
    /// Build from normalized parts and fill the incidence caches.
    pub(crate) fn from_parts(mut crossings: Vec<Crossing>, comps: Vec<Vec<usize>>) -> Result<Self, DiagramError> {
        if comps.is_empty() {
            return Err(DiagramError::Empty);
        }
        crossings.sort_by_key(|c| c.id);
        if crossings.windows(2).any(|w| w[0].id == w[1].id) {
            return Err(DiagramError::Orientation("duplicate crossing id".into()));
        }
        let n_edges: usize = comps.iter().map(Vec::len).sum();
        let mut edge_comp = vec![usize::MAX; n_edges];
        for (k, c) in comps.iter().enumerate() {
            for &e in c {
                if e >= n_edges || edge_comp[e] != usize::MAX {
                    return Err(DiagramError::Orientation(format!("edge {e} misplaced")));
                }
                edge_comp[e] = k;
            }
        }
        let mut head = vec![None; n_edges];
        let mut tail = vec![None; n_edges];
        for (pos, x) in crossings.iter().enumerate() {
            for s in 0..4 {
                let e = x.slots[s];
                if e >= n_edges {
                    return Err(DiagramError::Orientation(format!("edge {e} unknown")));
                }
                let slot = if x.is_incoming(s) { &mut head[e] } else { &mut tail[e] };
                if slot.replace((pos, s)).is_some() {
                    return Err(DiagramError::EdgeCount {
                        label: e as u64,
                        count: 3,
                    });
                }
            }
        }
        let d = LinkDiagram {
            crossings,
            comps,
            edge_comp,
            head,
            tail,
        };
        for (k, c) in d.comps.iter().enumerate() {
            if c.len() == 1 && d.head[c[0]].is_none() && d.tail[c[0]].is_none() {
                continue;
            }
            for (i, &e) in c.iter().enumerate() {
                let nxt = c[(i + 1) % c.len()];
                if d.head[e].is_none() || d.tail[e].is_none() || d.next_edge(e) != nxt {
                    return Err(DiagramError::Orientation(format!(
                        "component {k} is not a single oriented cycle at edge {e}"
                    )));
                }
            }
        }
        Ok(d)
    }

    /// Normalize raw crossings: relabel edges consecutively along components.
    pub(crate) fn assemble(raw: Vec<RawCrossing>, spec: Components) -> Result<Self, DiagramError> {
        let mut head: HashMap<usize, Dart> = HashMap::new();
        let mut tail: HashMap<usize, Dart> = HashMap::new();
        for (i, x) in raw.iter().enumerate() {
            for s in 0..4 {
                let l = x.slots[s];
                let map = if slot_incoming(x.over_db, s) {
                    &mut head
                } else {
                    &mut tail
                };
                if map.insert(l, (i, s)).is_some() {
                    let count = raw.iter().map(|y| y.slots.iter().filter(|&&m| m == l).count()).sum();
                    return Err(if count == 2 {
                        DiagramError::Orientation(format!("edge {l} enters (or leaves) two crossings"))
                    } else {
                        DiagramError::EdgeCount { label: l as u64, count }
                    });
                }
            }
        }
        for l in head.keys().chain(tail.keys()) {
            if !head.contains_key(l) || !tail.contains_key(l) {
                return Err(DiagramError::EdgeCount {
                    label: *l as u64,
                    count: 1,
                });
            }
        }
        let next = |l: usize| -> usize {
            let (i, s) = head[&l];
            raw[i].slots[(s + 2) % 4]
        };
        let walk = |start: usize| -> Vec<usize> {
            let mut cyc = vec![start];
            let mut e = next(start);
            while e != start {
                cyc.push(e);
                e = next(e);
            }
            cyc
        };
        let mut labels: Vec<usize> = head.keys().copied().collect();
        labels.sort_unstable();

        let mut seen: HashSet<usize> = HashSet::new();
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        for &l in &labels {
            if seen.insert(l) {
                let cyc = walk(l);
                seen.extend(cyc.iter().copied());
                cycles.push(cyc);
            }
        }

        // Each entry is either a cycle or a crossingless single label.
        let ordered: Vec<Vec<usize>> = match spec {
            Components::Inferred { free } => {
                let mut all: Vec<Vec<usize>> = cycles;
                all.extend(free.into_iter().map(|l| vec![l]));
                all.sort_by_key(|c| c.iter().copied().min());
                all
            }
            Components::Labeled {
                label_comp,
                ncomp,
                starts,
            } => {
                let mut per_comp: Vec<Vec<Vec<usize>>> = vec![Vec::new(); ncomp];
                for cyc in cycles {
                    let c = cyc
                        .iter()
                        .map(|l| {
                            label_comp
                                .get(l)
                                .copied()
                                .ok_or_else(|| DiagramError::Orientation(format!("edge {l} has no component")))
                        })
                        .collect::<Result<Vec<_>, _>>()?
                        .into_iter()
                        .min()
                        .expect("cycle is nonempty");
                    per_comp[c].push(cyc);
                }
                // Labels in no crossing are crossingless loops.
                let mut loose: Vec<(usize, usize)> = label_comp
                    .iter()
                    .filter(|(l, _)| !head.contains_key(l))
                    .map(|(&l, &c)| (c, l))
                    .collect();
                loose.sort_unstable();
                for (c, l) in loose {
                    per_comp[c].push(vec![l]);
                }
                let mut main = Vec::new();
                let mut extra = Vec::new();
                for (c, mut cycs) in per_comp.into_iter().enumerate() {
                    if cycs.is_empty() {
                        continue;
                    }
                    let pref = starts.get(c).copied().flatten();
                    let idx = pref
                        .and_then(|p| cycs.iter().position(|cy| cy.contains(&p)))
                        .unwrap_or(0);
                    let mut first = cycs.remove(idx);
                    let rot = pref
                        .and_then(|p| first.iter().position(|&l| l == p))
                        .unwrap_or_else(|| min_position(&first));
                    first.rotate_left(rot);
                    main.push(first);
                    for mut cy in cycs {
                        let r = min_position(&cy);
                        cy.rotate_left(r);
                        extra.push(cy);
                    }
                }
                main.extend(extra);
                main
            }
        };
        if ordered.is_empty() {
            return Err(DiagramError::Empty);
        }

        let mut relabel: HashMap<usize, usize> = HashMap::new();
        let mut comps = Vec::with_capacity(ordered.len());
        let mut next_label = 0usize;
        for cyc in &ordered {
            let mut edges = Vec::with_capacity(cyc.len());
            for &l in cyc {
                relabel.insert(l, next_label);
                edges.push(next_label);
                next_label += 1;
            }
            comps.push(edges);
        }
        let crossings = raw
            .iter()
            .map(|x| Crossing {
                id: x.id,
                slots: x.slots.map(|l| relabel[&l]),
                over_db: x.over_db,
            })
            .collect();
        LinkDiagram::from_parts(crossings, comps)
    }

    // ---- accessors -------------------------------------------------------

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn num_components(&self) -> usize {
        self.comps.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edge_comp.len()
    }

    pub fn component_edges(&self, k: usize) -> &[usize] {
        &self.comps[k]
    }

    pub fn edge_component(&self, e: usize) -> usize {
        self.edge_comp[e]
    }

    pub fn is_free_loop(&self, k: usize) -> bool {
        let c = &self.comps[k];
        c.len() == 1 && self.head[c[0]].is_none()
    }

    /// Position of the crossing with the given id.
    pub fn position(&self, id: usize) -> Option<usize> {
        self.crossings.binary_search_by_key(&id, |c| c.id).ok()
    }

    pub fn crossing(&self, id: usize) -> Option<&Crossing> {
        self.position(id).map(|p| &self.crossings[p])
    }

    pub fn crossing_ids(&self) -> Vec<usize> {
        self.crossings.iter().map(|c| c.id).collect()
    }

    pub(crate) fn pos_of(&self, id: usize) -> Result<usize, DiagramError> {
        self.position(id).ok_or(DiagramError::UnknownCrossing(id))
    }

    /// The crossing slot where edge `e` ends.
    pub fn head(&self, e: usize) -> Option<Dart> {
        self.head[e]
    }

    /// The crossing slot where edge `e` starts.
    pub fn tail(&self, e: usize) -> Option<Dart> {
        self.tail[e]
    }

    pub fn next_edge(&self, e: usize) -> usize {
        match self.head[e] {
            Some((p, s)) => self.crossings[p].slots[(s + 2) % 4],
            None => e,
        }
    }

    pub fn prev_edge(&self, e: usize) -> usize {
        match self.tail[e] {
            Some((p, s)) => self.crossings[p].slots[(s + 2) % 4],
            None => e,
        }
    }

    /// The other end of the edge at a dart.
    pub fn opposite_dart(&self, (p, s): Dart) -> Dart {
        let e = self.crossings[p].slots[s];
        if self.head[e] == Some((p, s)) {
            self.tail[e].expect("edge in a crossing has both ends")
        } else {
            self.head[e].expect("edge in a crossing has both ends")
        }
    }

    /// Components of the under and over strands at a crossing position.
    pub fn strand_components(&self, pos: usize) -> (usize, usize) {
        let x = &self.crossings[pos];
        (self.edge_comp[x.slots[0]], self.edge_comp[x.slots[1]])
    }

    pub fn is_self_crossing(&self, id: usize) -> Result<bool, DiagramError> {
        let (u, o) = self.strand_components(self.pos_of(id)?);
        Ok(u == o)
    }

    /// Ids of self-crossings of component `k`.
    pub fn self_crossings(&self, k: usize) -> Vec<usize> {
        (0..self.crossings.len())
            .filter(|&p| self.strand_components(p) == (k, k))
            .map(|p| self.crossings[p].id)
            .collect()
    }

    /// Ids of crossings between components `i` and `j`.
    pub fn mixed_crossings(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.crossings.len())
            .filter(|&p| {
                let (u, o) = self.strand_components(p);
                (u == i && o == j) || (u == j && o == i)
            })
            .map(|p| self.crossings[p].id)
            .collect()
    }

    pub fn writhe(&self) -> i32 {
        self.crossings.iter().map(Crossing::sign).sum()
    }

    fn check_comp(&self, k: usize) -> Result<(), DiagramError> {
        if k >= self.comps.len() {
            Err(DiagramError::BadComponent(k))
        } else {
            Ok(())
        }
    }

    // ---- faces and planarity ---------------------------------------------

    /// Face boundaries as dart cycles. A dart `(p, s)` leaves crossing `p`
    /// along slot `s`; the next dart turns counterclockwise at the far end.
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        let mut seen = vec![[false; 4]; self.crossings.len()];
        let mut faces = Vec::new();
        for p in 0..self.crossings.len() {
            for s in 0..4 {
                if seen[p][s] {
                    continue;
                }
                let mut face = Vec::new();
                let mut d = (p, s);
                while !seen[d.0][d.1] {
                    seen[d.0][d.1] = true;
                    face.push(d);
                    let (q, t) = self.opposite_dart(d);
                    d = (q, (t + 1) % 4);
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Euler check `V - E + F = 2` on every connected piece.
    pub fn check_planar(&self) -> Result<(), DiagramError> {
        let n = self.crossings.len();
        let mut uf = UnionFind::new(n);
        for e in 0..self.num_edges() {
            if let (Some(h), Some(t)) = (self.head[e], self.tail[e]) {
                uf.union(h.0, t.0);
            }
        }
        let mut verts: HashMap<usize, usize> = HashMap::new();
        for p in 0..n {
            *verts.entry(uf.find(p)).or_default() += 1;
        }
        let mut face_count: HashMap<usize, usize> = HashMap::new();
        for f in self.faces() {
            *face_count.entry(uf.find(f[0].0)).or_default() += 1;
        }
        for (root, v) in verts {
            let f = face_count.get(&root).copied().unwrap_or(0);
            if f != v + 2 {
                return Err(DiagramError::NonPlanar(format!(
                    "piece with {v} crossings has {f} faces, expected {}",
                    v + 2
                )));
            }
        }
        Ok(())
    }

    // ---- rebuilding -------------------------------------------------------

    /// Remove crossings (by position), identify edge labels in pairs and drop
    /// whole components, then renormalize. Components keep their relative
    /// order; a component split into several cycles appends the extra cycles.
    pub(crate) fn rebuild(
        &self,
        remove: &[usize],
        unions: &[(usize, usize)],
        drop: &[bool],
    ) -> Result<LinkDiagram, DiagramError> {
        let removed: HashSet<usize> = remove.iter().copied().collect();
        let mut uf = UnionFind::new(self.num_edges());
        for &(a, b) in unions {
            uf.union(a, b);
        }
        let mut remap = vec![usize::MAX; self.comps.len()];
        let mut ncomp = 0;
        for (k, slot) in remap.iter_mut().enumerate() {
            if !drop.get(k).copied().unwrap_or(false) {
                *slot = ncomp;
                ncomp += 1;
            }
        }
        if ncomp == 0 {
            return Err(DiagramError::Empty);
        }
        let mut label_comp: HashMap<usize, usize> = HashMap::new();
        for e in 0..self.num_edges() {
            let k = remap[self.edge_comp[e]];
            if k == usize::MAX {
                continue;
            }
            let r = uf.find(e);
            let slot = label_comp.entry(r).or_insert(k);
            *slot = (*slot).min(k);
        }
        let mut starts = vec![None; ncomp];
        for (k, c) in self.comps.iter().enumerate() {
            if remap[k] != usize::MAX {
                starts[remap[k]] = Some(uf.find(c[0]));
            }
        }
        let raw: Vec<RawCrossing> = self
            .crossings
            .iter()
            .enumerate()
            .filter(|(p, _)| !removed.contains(p))
            .map(|(_, x)| RawCrossing {
                id: x.id,
                slots: x.slots.map(|l| uf.find(l)),
                over_db: x.over_db,
            })
            .collect();
        LinkDiagram::assemble(
            raw,
            Components::Labeled {
                label_comp,
                ncomp,
                starts,
            },
        )
    }

    /// The edge identifications that delete a crossing while keeping both
    /// strands (used by Reidemeister reductions and component deletion).
    pub(crate) fn pass_through(&self, pos: usize) -> [(usize, usize); 2] {
        let x = &self.crossings[pos];
        [(x.under_in(), x.under_out()), (x.over_in(), x.over_out())]
    }

    // ---- basic operations -------------------------------------------------

    /// Exchange over and under at crossing `id`.
    pub fn switch_crossing(&self, id: usize) -> Result<LinkDiagram, DiagramError> {
        let p = self.pos_of(id)?;
        let mut crossings = self.crossings.clone();
        crossings[p] = crossings[p].switched();
        LinkDiagram::from_parts(crossings, self.comps.clone())
    }

    /// Switch every crossing: the mirror image.
    pub fn mirror(&self) -> LinkDiagram {
        let crossings = self.crossings.iter().map(Crossing::switched).collect();
        LinkDiagram::from_parts(crossings, self.comps.clone()).expect("mirror keeps structure")
    }

    /// Orientation-respecting smoothing of a self-crossing. The component splits
    /// in two: the piece containing its first edge keeps the index, the other is
    /// appended as a new last component.
    pub fn smooth_crossing(&self, id: usize) -> Result<LinkDiagram, DiagramError> {
        if !self.is_self_crossing(id)? {
            return Err(DiagramError::InterComponentCrossing(id));
        }
        self.smooth_crossing_any(id)
    }

    /// Orientation-respecting smoothing of any crossing. Smoothing a crossing
    /// between two components merges them into the lower-indexed one.
    pub fn smooth_crossing_any(&self, id: usize) -> Result<LinkDiagram, DiagramError> {
        let p = self.pos_of(id)?;
        let [a, b, c, d] = self.crossings[p].slots;
        let unions = if self.crossings[p].over_db {
            [(a, b), (d, c)]
        } else {
            [(a, d), (b, c)]
        };
        self.rebuild(&[p], &unions, &[])
    }

    /// Half the signed count of crossings between components `i` and `j`.
    pub fn linking_number(&self, i: usize, j: usize) -> Result<i64, DiagramError> {
        self.check_comp(i)?;
        self.check_comp(j)?;
        if i == j {
            return Err(DiagramError::SameComponent);
        }
        let total: i64 = self
            .mixed_crossings(i, j)
            .iter()
            .map(|&id| self.crossing(id).expect("listed id").sign() as i64)
            .sum();
        debug_assert!(total % 2 == 0, "odd crossing count between components");
        Ok(total / 2)
    }

    /// Sign of self-crossing `id` of a non-axis component, and the absolute
    /// linking number between the axis and either piece of its smoothing.
    pub fn crossing_params(&self, id: usize, axis: usize) -> Result<(i32, u64), DiagramError> {
        self.check_comp(axis)?;
        let p = self.pos_of(id)?;
        let (u, o) = self.strand_components(p);
        if u != o || u == axis {
            return Err(DiagramError::NotSelfCrossingOf { id, comp: u });
        }
        if self.linking_number(axis, u)? != 0 {
            return Err(DiagramError::NonzeroLinking(axis, u));
        }
        let sign = self.crossings[p].sign();
        let smoothed = self.smooth_crossing(id)?;
        let last = smoothed.num_components() - 1;
        let n1 = smoothed.linking_number(axis, u)?;
        let n2 = smoothed.linking_number(axis, last)?;
        assert_eq!(n1, -n2, "smoothing pieces must have opposite linking");
        Ok((sign, n1.unsigned_abs()))
    }

    /// Keep only the listed components, in the listed order.
    pub fn sublink(&self, keep: &[usize]) -> Result<LinkDiagram, DiagramError> {
        for &k in keep {
            self.check_comp(k)?;
        }
        let mut drop = vec![true; self.comps.len()];
        for &k in keep {
            drop[k] = false;
        }
        let mut remove = Vec::new();
        let mut unions = Vec::new();
        for p in 0..self.crossings.len() {
            let (u, o) = self.strand_components(p);
            if drop[u] || drop[o] {
                remove.push(p);
                for (a, b) in self.pass_through(p) {
                    if !drop[self.edge_comp[a]] {
                        unions.push((a, b));
                    }
                }
            }
        }
        let reduced = self.rebuild(&remove, &unions, &drop)?;
        let mut sorted: Vec<usize> = keep.to_vec();
        sorted.sort_unstable();
        let order: Vec<usize> = keep
            .iter()
            .map(|k| sorted.iter().position(|s| s == k).expect("kept"))
            .collect();
        reduced.permute_components(&order)
    }

    /// Reorder components: the new component `i` is old component `order[i]`.
    pub fn permute_components(&self, order: &[usize]) -> Result<LinkDiagram, DiagramError> {
        let n = self.comps.len();
        let mut seen = vec![false; n];
        if order.len() != n {
            return Err(DiagramError::BadComponent(order.len()));
        }
        for &k in order {
            if k >= n || std::mem::replace(&mut seen[k], true) {
                return Err(DiagramError::BadComponent(k));
            }
        }
        let mut inverse = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            inverse[old] = new;
        }
        let label_comp = (0..self.num_edges()).map(|e| (e, inverse[self.edge_comp[e]])).collect();
        let starts = order.iter().map(|&old| Some(self.comps[old][0])).collect();
        LinkDiagram::assemble(
            self.crossings.iter().map(RawCrossing::from).collect(),
            Components::Labeled {
                label_comp,
                ncomp: n,
                starts,
            },
        )
    }

    /// Reverse the orientation of component `k`.
    pub fn reverse_component(&self, k: usize) -> Result<LinkDiagram, DiagramError> {
        self.check_comp(k)?;
        let raw = self
            .crossings
            .iter()
            .enumerate()
            .map(|(p, x)| {
                let (u, o) = self.strand_components(p);
                let (ru, ro) = (u == k, o == k);
                let [a, b, c, d] = x.slots;
                let slots = if ru { [c, d, a, b] } else { x.slots };
                RawCrossing {
                    id: x.id,
                    slots,
                    over_db: x.over_db ^ ru ^ ro,
                }
            })
            .collect();
        let label_comp = (0..self.num_edges()).map(|e| (e, self.edge_comp[e])).collect();
        let starts = self.comps.iter().map(|c| Some(c[0])).collect();
        LinkDiagram::assemble(
            raw,
            Components::Labeled {
                label_comp,
                ncomp: self.comps.len(),
                starts,
            },
        )
    }

    /// Same diagram with crossing ids renumbered 0.. in current order.
    pub fn renumbered(&self) -> LinkDiagram {
        let crossings = self
            .crossings
            .iter()
            .enumerate()
            .map(|(i, x)| Crossing { id: i, ..x.clone() })
            .collect();
        LinkDiagram::from_parts(crossings, self.comps.clone()).expect("renumbering keeps structure")
    }

    /// Key invariant under edge relabeling and crossing renumbering (component
    /// order is kept). Minimizes over the starting edge of each component when
    /// the number of combinations is at most `ROTATION_LIMIT`.
    pub fn canonical_key(&self) -> Vec<u32> {
        const ROTATION_LIMIT: usize = 4096;
        let lens: Vec<usize> = self.comps.iter().map(Vec::len).collect();
        let combos = lens
            .iter()
            .try_fold(1usize, |acc, &l| acc.checked_mul(l))
            .unwrap_or(usize::MAX);
        let offsets: Vec<usize> = self.comps.iter().map(|c| c[0]).collect();
        let key_for = |rot: &[usize]| -> Vec<u32> {
            let label = |e: usize| -> u32 {
                let k = self.edge_comp[e];
                let len = lens[k];
                (offsets[k] + (e - offsets[k] + len - rot[k]) % len) as u32
            };
            let mut xs: Vec<[u32; 5]> = self
                .crossings
                .iter()
                .map(|x| {
                    let s = x.slots.map(label);
                    [s[0], s[1], s[2], s[3], x.over_db as u32]
                })
                .collect();
            xs.sort_unstable();
            let mut key: Vec<u32> = Vec::with_capacity(1 + lens.len() + xs.len() * 5);
            key.push(lens.len() as u32);
            key.extend(lens.iter().map(|&l| l as u32));
            key.extend(xs.into_iter().flatten());
            key
        };
        if combos > ROTATION_LIMIT {
            return key_for(&vec![0; lens.len()]);
        }
        let mut rot = vec![0usize; lens.len()];
        let mut best = key_for(&rot);
        loop {
            let mut i = 0;
            while i < rot.len() {
                rot[i] += 1;
                if rot[i] < lens[i] {
                    break;
                }
                rot[i] = 0;
                i += 1;
            }
            if i == rot.len() {
                break;
            }
            let k = key_for(&rot);
            if k < best {
                best = k;
            }
        }
        best
    }
}

fn min_position(v: &[usize]) -> usize {
    v.iter()
        .enumerate()
        .min_by_key(|(_, &l)| l)
        .map(|(i, _)| i)
        .unwrap_or(0)
}
