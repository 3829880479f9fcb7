use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use crate::braid::BraidWord;
use crate::diagram::{Components, LinkDiagram, RawCrossing};
use crate::error::DiagramError;

/// Character cursor that tracks line and column for error messages.
struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Self {
            chars: s.chars().peekable(),
            line: 1,
            col: 1,
        }
    }

    fn err(&self, msg: impl Into<String>) -> DiagramError {
        DiagramError::Syntax {
            line: self.line,
            col: self.col,
            msg: msg.into(),
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    /// Skip whitespace, commas and `#` comments.
    fn skip_blank(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c == '#' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else if c.is_whitespace() || c == ',' {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_blank();
        self.chars.peek().copied()
    }

    fn expect(&mut self, want: &[char]) -> Result<char, DiagramError> {
        match self.peek() {
            Some(c) if want.contains(&c) => {
                self.bump();
                Ok(c)
            }
            Some(c) => Err(self.err(format!("expected one of {want:?}, found '{c}'"))),
            None => Err(self.err(format!("expected one of {want:?}, found end of input"))),
        }
    }

    fn word(&mut self) -> String {
        self.skip_blank();
        let mut w = String::new();
        while let Some(&c) = self.chars.peek() {
            if c.is_ascii_alphabetic() || c == '_' {
                w.push(c);
                self.bump();
            } else {
                break;
            }
        }
        w
    }

    fn int(&mut self) -> Result<i64, DiagramError> {
        self.skip_blank();
        let mut txt = String::new();
        if let Some(&c) = self.chars.peek() {
            if c == '-' || c == '+' {
                txt.push(c);
                self.bump();
            }
        }
        while let Some(&c) = self.chars.peek() {
            if c.is_ascii_digit() {
                txt.push(c);
                self.bump();
            } else {
                break;
            }
        }
        txt.parse().map_err(|_| self.err("expected an integer"))
    }

    fn label(&mut self) -> Result<usize, DiagramError> {
        let v = self.int()?;
        usize::try_from(v).map_err(|_| self.err("edge labels must be nonnegative"))
    }

    fn at_int(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == '-' || c == '+')
    }
}

/// Parse a diagram in PD form or as a braid closure.
///
/// PD form: optional `comp k: e1 e2 ... ;` declarations (edges in orientation
/// order) followed by crossings `X(a,b,c,d)`. Without declarations the
/// orientation is inferred from the under-strands and consecutive edge labels.
/// Braid form: `braid n: w1 w2 ...` or `strands=n; word=w1 w2 ...; closure`.
pub fn parse_diagram(text: &str) -> Result<LinkDiagram, DiagramError> {
    let trimmed = strip_comments(text);
    let t = trimmed.trim_start();
    if t.starts_with("braid") || t.starts_with("strands") {
        return parse_braid(text)?.closure();
    }
    parse_pd(text)
}

fn strip_comments(text: &str) -> String {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Parse `braid n: w...` or `strands=n; word=w...; closure`.
pub fn parse_braid(text: &str) -> Result<BraidWord, DiagramError> {
    let mut cur = Cursor::new(text);
    let head = cur.word();
    let (strands, letters) = match head.as_str() {
        "braid" => {
            let n = cur.int()?;
            cur.expect(&[':'])?;
            let mut letters = Vec::new();
            while cur.at_int() {
                letters.push(cur.int()?);
            }
            (n, letters)
        }
        "strands" => {
            cur.expect(&['='])?;
            let n = cur.int()?;
            cur.expect(&[';'])?;
            let w = cur.word();
            if w != "word" {
                return Err(cur.err("expected 'word='"));
            }
            cur.expect(&['='])?;
            let mut letters = Vec::new();
            while cur.at_int() {
                letters.push(cur.int()?);
            }
            if cur.peek() == Some(';') {
                cur.bump();
                let w = cur.word();
                if !w.is_empty() && w != "closure" {
                    return Err(cur.err(format!("unexpected '{w}'")));
                }
            }
            (n, letters)
        }
        _ => return Err(cur.err("expected 'braid' or 'strands='")),
    };
    if let Some(c) = cur.peek() {
        return Err(cur.err(format!("unexpected '{c}' after braid word")));
    }
    if strands < 1 {
        return Err(DiagramError::BraidLetter { letter: 0, strands: 0 });
    }
    BraidWord::new(strands as usize, letters)
}

fn parse_pd(text: &str) -> Result<LinkDiagram, DiagramError> {
    let mut cur = Cursor::new(text);
    let mut decls: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    let mut crossings: Vec<[usize; 4]> = Vec::new();
    while let Some(c) = cur.peek() {
        if c == '[' || c == ']' {
            cur.bump();
            continue;
        }
        let (line, col) = (cur.line, cur.col);
        let w = cur.word();
        match w.as_str() {
            "comp" => {
                let k = cur.int()?;
                cur.expect(&[':'])?;
                let mut edges = Vec::new();
                while cur.at_int() {
                    edges.push(cur.label()?);
                }
                cur.expect(&[';'])?;
                if edges.is_empty() {
                    return Err(cur.err(format!("component {k} has no edges")));
                }
                if decls.insert(k, edges).is_some() {
                    return Err(DiagramError::Syntax {
                        line,
                        col,
                        msg: format!("component {k} declared twice"),
                    });
                }
            }
            "X" => {
                let close = match cur.expect(&['(', '['])? {
                    '(' => ')',
                    _ => ']',
                };
                let mut slots = [0usize; 4];
                for s in &mut slots {
                    *s = cur.label()?;
                }
                cur.expect(&[close])?;
                crossings.push(slots);
            }
            "PD" => {}
            "" => {
                let c = cur.peek().unwrap_or(' ');
                return Err(cur.err(format!("unexpected '{c}'")));
            }
            other => {
                return Err(DiagramError::Syntax {
                    line,
                    col,
                    msg: format!("unexpected word '{other}'"),
                })
            }
        }
    }
    if crossings.is_empty() && decls.is_empty() {
        return Err(DiagramError::Empty);
    }
    let decls: Vec<Vec<usize>> = decls.into_values().collect();
    let d = build_from_pd(&crossings, if decls.is_empty() { None } else { Some(&decls) })?;
    d.check_planar()?;
    Ok(d)
}

/// Resolve over-strand directions and assemble. With declarations each
/// component's cyclic edge order is given; otherwise it is inferred.
fn build_from_pd(crossings: &[[usize; 4]], decls: Option<&[Vec<usize>]>) -> Result<LinkDiagram, DiagramError> {
    let mut count: HashMap<usize, usize> = HashMap::new();
    for x in crossings {
        for &l in x {
            *count.entry(l).or_default() += 1;
        }
    }
    let mut bad: Vec<(usize, usize)> = count.iter().filter(|(_, &c)| c != 2).map(|(&l, &c)| (l, c)).collect();
    bad.sort_unstable();
    if let Some(&(l, c)) = bad.first() {
        return Err(DiagramError::EdgeCount {
            label: l as u64,
            count: c,
        });
    }

    // Declared successor map, if any.
    let mut succ: HashMap<usize, usize> = HashMap::new();
    let mut label_comp: HashMap<usize, usize> = HashMap::new();
    if let Some(decls) = decls {
        for (k, edges) in decls.iter().enumerate() {
            for (i, &e) in edges.iter().enumerate() {
                if label_comp.insert(e, k).is_some() {
                    return Err(DiagramError::Orientation(format!("edge {e} declared twice")));
                }
                succ.insert(e, edges[(i + 1) % edges.len()]);
            }
            if edges.len() == 1 && count.contains_key(&edges[0]) {
                return Err(DiagramError::Orientation(format!(
                    "component {k} has one edge but crosses something"
                )));
            }
        }
        for l in count.keys() {
            if !label_comp.contains_key(l) {
                return Err(DiagramError::Orientation(format!("edge {l} not declared")));
            }
        }
    }

    // over_db per crossing: Some(known) or None.
    let n = crossings.len();
    let mut over: Vec<Option<bool>> = vec![None; n];
    let mut allowed: Vec<[bool; 2]> = vec![[true, true]; n]; // [d->b, b->d]
    if decls.is_some() {
        for (i, x) in crossings.iter().enumerate() {
            let [a, b, c, d] = *x;
            if succ.get(&a) != Some(&c) {
                return Err(DiagramError::Orientation(format!(
                    "crossing {i}: under-strand {a} -> {c} disagrees with the declared order"
                )));
            }
            allowed[i] = [succ.get(&d) == Some(&b), succ.get(&b) == Some(&d)];
            match allowed[i] {
                [false, false] => {
                    return Err(DiagramError::Orientation(format!(
                        "crossing {i}: over-strand {b}/{d} is not consecutive in any component"
                    )))
                }
                [true, false] => over[i] = Some(true),
                [false, true] => over[i] = Some(false),
                _ => {}
            }
        }
    }

    // Occurrences of each label: (crossing, slot).
    let mut occ: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
    for (i, x) in crossings.iter().enumerate() {
        for (s, &l) in x.iter().enumerate() {
            occ.entry(l).or_default().push((i, s));
        }
    }
    // Is slot s of crossing i incoming, if known?
    let incoming = |over: &[Option<bool>], i: usize, s: usize| -> Option<bool> {
        match s {
            0 => Some(true),
            2 => Some(false),
            1 => over[i].map(|o| !o),
            _ => over[i],
        }
    };
    let propagate = |over: &mut Vec<Option<bool>>| -> Result<(), DiagramError> {
        let mut queue: VecDeque<usize> = (0..n).collect();
        let mut queued = vec![true; n];
        while let Some(i) = queue.pop_front() {
            queued[i] = false;
            for (s, &l) in crossings[i].iter().enumerate() {
                let Some(dir) = incoming(over, i, s) else { continue };
                for &(j, t) in &occ[&l] {
                    if (j, t) == (i, s) {
                        continue;
                    }
                    // The other occurrence must have the opposite direction.
                    match incoming(over, j, t) {
                        Some(other) if other == dir => {
                            return Err(DiagramError::Orientation(format!(
                                "edge {l} is {} at both ends",
                                if dir { "incoming" } else { "outgoing" }
                            )))
                        }
                        Some(_) => {}
                        None => {
                            // Slot t is 1 or 3 and must be !dir.
                            let want_in = !dir;
                            let v = if t == 3 { want_in } else { !want_in };
                            if !allowed[j][if v { 0 } else { 1 }] {
                                return Err(DiagramError::Orientation(format!(
                                    "edge {l} cannot be oriented consistently"
                                )));
                            }
                            over[j] = Some(v);
                            if !queued[j] {
                                queued[j] = true;
                                queue.push_back(j);
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    };
    propagate(&mut over)?;

    // Remaining over-strands lie on components that are never under anything
    // already decided. Use the labeling: the over-strand runs towards the next
    // consecutive label; at the first undecided crossing of a two-edge loop the
    // lower label comes first.
    let strand_sets = if decls.is_none() {
        Some(label_cycles(crossings))
    } else {
        None
    };
    for i in 0..n {
        if over[i].is_some() {
            continue;
        }
        let [_, b, _, d] = crossings[i];
        let v = if let Some(decls) = decls {
            // Both directions consistent with the declaration: a two-edge
            // component. The first-declared edge enters the lower crossing.
            let k = label_comp[&b];
            let first = decls[k][0];
            d == first
        } else {
            let sets = strand_sets.as_ref().expect("inferred");
            let (lo, hi) = sets[&b];
            if b == d + 1 {
                true
            } else if d == b + 1 {
                false
            } else if d == hi && b == lo {
                true
            } else if b == hi && d == lo {
                false
            } else {
                return Err(DiagramError::Orientation(format!(
                    "cannot infer the direction of over-strand {b}/{d}; declare components"
                )));
            }
        };
        over[i] = Some(v);
        propagate(&mut over)?;
    }

    let raw: Vec<RawCrossing> = crossings
        .iter()
        .enumerate()
        .map(|(i, x)| RawCrossing {
            id: i,
            slots: *x,
            over_db: over[i].expect("resolved"),
        })
        .collect();
    match decls {
        Some(decls) => {
            let starts = decls.iter().map(|e| e.iter().copied().min()).collect();
            let d = LinkDiagram::assemble(
                raw,
                Components::Labeled {
                    label_comp,
                    ncomp: decls.len(),
                    starts,
                },
            )?;
            if d.num_components() != decls.len() {
                return Err(DiagramError::Orientation(
                    "declared components do not match the strand cycles".into(),
                ));
            }
            // Successor order must match the declaration exactly.
            for (k, edges) in decls.iter().enumerate() {
                if d.component_edges(k).len() != edges.len() {
                    return Err(DiagramError::Orientation(format!(
                        "component {k} does not close up as declared"
                    )));
                }
            }
            Ok(d)
        }
        None => LinkDiagram::assemble(raw, Components::Inferred { free: Vec::new() }),
    }
}

/// For inferred components: each label's strand cycle as (min, max) label.
fn label_cycles(crossings: &[[usize; 4]]) -> HashMap<usize, (usize, usize)> {
    let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
    for x in crossings {
        for (p, q) in [(x[0], x[2]), (x[1], x[3])] {
            adj.entry(p).or_default().push(q);
            adj.entry(q).or_default().push(p);
        }
    }
    let mut out = HashMap::new();
    let mut labels: Vec<usize> = adj.keys().copied().collect();
    labels.sort_unstable();
    for l in labels {
        if out.contains_key(&l) {
            continue;
        }
        let mut stack = vec![l];
        let mut members = vec![];
        let mut seen = std::collections::HashSet::new();
        seen.insert(l);
        while let Some(u) = stack.pop() {
            members.push(u);
            for &v in &adj[&u] {
                if seen.insert(v) {
                    stack.push(v);
                }
            }
        }
        let lo = *members.iter().min().expect("nonempty");
        let hi = *members.iter().max().expect("nonempty");
        for m in members {
            out.insert(m, (lo, hi));
        }
    }
    out
}

impl fmt::Display for LinkDiagram {
    /// Canonical PD text: components in order, then crossings sorted by id.
    /// A two-edge component lists first the edge entering its lower crossing,
    /// which is how the parser resolves that ambiguity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..self.num_components() {
            let edges = self.component_edges(k);
            let mut order: Vec<usize> = edges.to_vec();
            if edges.len() == 2 {
                let h0 = self.head(edges[0]).map(|d| d.0);
                let h1 = self.head(edges[1]).map(|d| d.0);
                if let (Some(h0), Some(h1)) = (h0, h1) {
                    if h1 < h0 {
                        order.reverse();
                    }
                }
            }
            write!(f, "comp {k}:")?;
            for e in order {
                write!(f, " {e}")?;
            }
            writeln!(f, " ;")?;
        }
        let xs: Vec<String> = self
            .crossings()
            .iter()
            .map(|x| {
                let [a, b, c, d] = x.slots();
                format!("X({a},{b},{c},{d})")
            })
            .collect();
        write!(f, "{}", xs.join(" "))
    }
}
