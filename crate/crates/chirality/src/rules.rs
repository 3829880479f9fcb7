use std::collections::BTreeMap;

use diagram::BraidWord;

use crate::epsilon::{EpsilonType, Status};
use crate::error::ChiralityError;
use crate::expr::{AtomDecl, Declarations, Relation, SatelliteExpr};

/// Number of Bing doublings from which a result is marked as asserted
/// rather than derived.
pub const ASSERTED_BING_DEPTH: usize = 3;

const TWIST_ADVISORY: &str =
    "twisting an essential atoroidal pattern gives an absolutely chiral satellite for all but at most one twist";

/// Status of every epsilon type of a link described by an expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonTable {
    pub components: usize,
    /// One entry per type, in mask order.
    pub entries: Vec<(EpsilonType, Status)>,
    /// The result rests on the iterated Bing doubling law beyond the depth
    /// where it was derived.
    pub asserted: bool,
    pub advisories: Vec<String>,
}

impl EpsilonTable {
    pub fn status(&self, eps: &EpsilonType) -> Option<Status> {
        (eps.len() == self.components).then(|| self.entries[eps.mask()].1)
    }

    /// Types not ruled out.
    pub fn achiral_types(&self) -> Vec<EpsilonType> {
        self.entries
            .iter()
            .filter(|(_, s)| !s.is_chiral())
            .map(|(e, _)| e.clone())
            .collect()
    }

    pub fn absolutely_chiral(&self) -> bool {
        self.entries.iter().all(|(_, s)| s.is_chiral())
    }
}

/// Intermediate result: statuses indexed by mask, plus per component
/// whether it is nontrivial in the link (bounds no disk missing the rest).
struct Node {
    statuses: Vec<Status>,
    nontrivial: Vec<bool>,
}

impl Node {
    fn components(&self) -> usize {
        self.nontrivial.len()
    }

    fn uniform(n: usize, s: Status, nontrivial: bool) -> Self {
        Node {
            statuses: vec![s; 1 << n],
            nontrivial: vec![nontrivial; n],
        }
    }

    fn unknot() -> Self {
        Self::uniform(1, Status::AchiralProven, false)
    }

    fn hopf() -> Self {
        let statuses = EpsilonType::all(2).map(|e| Status::from_bool(e.pi() == -1)).collect();
        Node {
            statuses,
            nontrivial: vec![true, true],
        }
    }

    fn knot(plus: Status, minus: Status) -> Self {
        Node {
            statuses: vec![plus, minus],
            nontrivial: vec![true],
        }
    }

    fn is_unknot(&self) -> bool {
        self.components() == 1 && !self.nontrivial[0]
    }
}

fn resolve<'a>(
    name: &str,
    decl: &'a Option<AtomDecl>,
    decls: &'a Declarations,
) -> Result<&'a AtomDecl, ChiralityError> {
    decl.as_ref()
        .or_else(|| decls.get(name))
        .ok_or_else(|| ChiralityError::UndeclaredAtom(name.to_string()))
}

fn atom_status(d: &AtomDecl, eps: i32) -> Status {
    match &d.achiral {
        None => Status::AchiralPossible,
        Some(v) => Status::from_bool(v.contains(&eps)),
    }
}

fn check_on(on: usize, node: &Node) -> Result<(), ChiralityError> {
    if on >= node.components() {
        return Err(ChiralityError::BadComponent {
            index: on,
            components: node.components(),
        });
    }
    Ok(())
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

struct Eval<'a> {
    decls: &'a Declarations,
    advisories: Vec<String>,
}

impl Eval<'_> {
    fn advise(&mut self) {
        if !self.advisories.iter().any(|a| a == TWIST_ADVISORY) {
            self.advisories.push(TWIST_ADVISORY.to_string());
        }
    }

    fn eval(&mut self, e: &SatelliteExpr) -> Result<Node, ChiralityError> {
        match e {
            SatelliteExpr::Unknot => Ok(Node::unknot()),
            SatelliteExpr::Hopf => Ok(Node::hopf()),
            SatelliteExpr::Borromean => self.eval(&SatelliteExpr::bing(0, 0, SatelliteExpr::Hopf)),
            SatelliteExpr::Atom { name, decl } => {
                let d = resolve(name, decl, self.decls)?;
                Ok(if d.trivial {
                    Node::unknot()
                } else {
                    Node::knot(atom_status(d, 1), atom_status(d, -1))
                })
            }
            SatelliteExpr::BingDouble { r, on, inner } => {
                self.advise();
                let j = self.eval(inner)?;
                bing(&j, *r, *on)
            }
            SatelliteExpr::WheadDouble { r, on, inner } => {
                self.advise();
                let j = self.eval(inner)?;
                check_on(*on, &j)?;
                if j.nontrivial[*on] {
                    return Ok(Node::uniform(j.components(), Status::ChiralProven, true).with_flags(&j));
                }
                if !j.is_unknot() {
                    return Err(trivial_component(*on));
                }
                // Twisted doubles of the unknot: 0 twists give the unknot and
                // one right-handed twist gives the figure-eight knot.
                Ok(match r {
                    0 => Node::unknot(),
                    1 => Node::knot(Status::AchiralProven, Status::AchiralProven),
                    _ => Node::knot(Status::ChiralProven, Status::ChiralProven),
                })
            }
            SatelliteExpr::Cable { p, q, on, inner } => {
                if *p <= 1 || gcd(*p, *q) != 1 {
                    return Err(ChiralityError::BadCable { p: *p, q: *q });
                }
                self.advise();
                let j = self.eval(inner)?;
                check_on(*on, &j)?;
                if j.nontrivial[*on] {
                    return Ok(Node::uniform(j.components(), Status::ChiralProven, true).with_flags(&j));
                }
                if !j.is_unknot() {
                    return Err(trivial_component(*on));
                }
                // A cable of the unknot is a torus knot, trivial iff |q| = 1.
                Ok(if q.abs() == 1 {
                    Node::unknot()
                } else {
                    Node::knot(Status::ChiralProven, Status::ChiralProven)
                })
            }
            SatelliteExpr::ConnectedSum { factors, relations } => {
                let mut counts: BTreeMap<String, (AtomDecl, usize)> = BTreeMap::new();
                for f in factors {
                    let (name, d) = match f {
                        SatelliteExpr::Unknot => continue,
                        SatelliteExpr::Atom { name, decl } => (name, resolve(name, decl, self.decls)?),
                        other => {
                            return Err(ChiralityError::Unsupported(format!(
                                "sum factor `{other}` is not an atom"
                            )))
                        }
                    };
                    counts.entry(name.clone()).or_insert_with(|| (d.clone(), 0)).1 += 1;
                }
                let factors: Vec<(String, AtomDecl, usize)> = counts.into_iter().map(|(n, (d, m))| (n, d, m)).collect();
                let plus = sum_status(&factors, 1, relations)?;
                let minus = sum_status(&factors, -1, relations)?;
                let nontrivial = factors.iter().any(|(_, d, _)| !d.trivial);
                Ok(if nontrivial {
                    Node::knot(plus, minus)
                } else {
                    Node::unknot()
                })
            }
        }
    }
}

impl Node {
    fn with_flags(mut self, like: &Node) -> Self {
        self.nontrivial = like.nontrivial.clone();
        self
    }
}

fn trivial_component(on: usize) -> ChiralityError {
    ChiralityError::Unsupported(format!("satellite of trivial component {on} inside a larger link"))
}

/// Bing double of component `on`: the two new components take its place.
/// Type `(.., e1, e2, ..)` is achiral iff there are no twists and the
/// companion is achiral of type `(.., -e1*e2, ..)`.
fn bing(j: &Node, r: i64, on: usize) -> Result<Node, ChiralityError> {
    check_on(on, j)?;
    if !j.nontrivial[on] {
        if !j.is_unknot() {
            return Err(trivial_component(on));
        }
        // The untwisted double of the unknot is the two-component unlink.
        let s = if r == 0 {
            Status::AchiralProven
        } else {
            Status::ChiralProven
        };
        return Ok(Node::uniform(2, s, false));
    }
    let n = j.components() + 1;
    let statuses = EpsilonType::all(n)
        .map(|e| {
            if r != 0 {
                return Status::ChiralProven;
            }
            let mut inner: Vec<i32> = e.signs();
            let merged = -inner[on] * inner[on + 1];
            inner.splice(on..on + 2, [merged]);
            j.statuses[EpsilonType::new(&inner).expect("signs").mask()]
        })
        .collect();
    let mut nontrivial = j.nontrivial.clone();
    nontrivial.splice(on..on + 1, [true, true]);
    Ok(Node { statuses, nontrivial })
}

/// Partner of each atom under `mirror(a) = eps * b`, for one sign.
fn partners(relations: &[Relation], eps: i32) -> Result<BTreeMap<&str, &str>, ChiralityError> {
    let mut out: BTreeMap<&str, &str> = BTreeMap::new();
    for r in relations {
        if r.sign != 1 && r.sign != -1 {
            return Err(ChiralityError::InconsistentRelations(format!(
                "sign {} in relation",
                r.sign
            )));
        }
        if r.sign != eps {
            continue;
        }
        for (a, b) in [(r.left.as_str(), r.right.as_str()), (r.right.as_str(), r.left.as_str())] {
            if let Some(old) = out.insert(a, b) {
                if old != b {
                    return Err(ChiralityError::InconsistentRelations(format!(
                        "mirror of `{a}` related to both `{old}` and `{b}`"
                    )));
                }
            }
        }
    }
    Ok(out)
}

fn sum_status(
    factors: &[(String, AtomDecl, usize)],
    eps: i32,
    relations: &[Relation],
) -> Result<Status, ChiralityError> {
    let partner = partners(relations, eps)?;
    let mult: BTreeMap<&str, usize> = factors
        .iter()
        .filter(|f| !f.1.trivial)
        .map(|f| (f.0.as_str(), f.2))
        .collect();
    let mut result = Status::AchiralProven;
    for (name, d, m) in factors {
        if d.trivial {
            continue;
        }
        if !d.prime {
            return Err(ChiralityError::Unsupported(format!(
                "factor `{name}` is not declared prime"
            )));
        }
        let declared = atom_status(d, eps);
        let status = match partner.get(name.as_str()) {
            Some(&p) if p == name => {
                if declared.is_chiral() {
                    return Err(ChiralityError::InconsistentRelations(format!(
                        "`{name}` related to itself but declared chiral"
                    )));
                }
                Status::AchiralProven
            }
            Some(&p) => {
                if declared == Status::AchiralProven {
                    return Err(ChiralityError::InconsistentRelations(format!(
                        "`{name}` is achiral yet its mirror is `{p}`"
                    )));
                }
                Status::from_bool(mult.get(p) == Some(m))
            }
            None => declared,
        };
        result = result.min(status);
    }
    Ok(result)
}

/// Epsilon types of the link described by `e`. Atoms without an inline
/// declaration are looked up in `decls`; declared achirality sets and
/// relations are taken as complete.
pub fn epsilon_types(e: &SatelliteExpr, decls: &Declarations) -> Result<EpsilonTable, ChiralityError> {
    let mut ev = Eval {
        decls,
        advisories: Vec::new(),
    };
    let node = ev.eval(e)?;
    let n = node.components();
    Ok(EpsilonTable {
        components: n,
        entries: EpsilonType::all(n).zip(node.statuses).collect(),
        asserted: e.bing_count() >= ASSERTED_BING_DEPTH,
        advisories: ev.advisories,
    })
}

/// Whether the connected sum of prime knots with the given multiplicities
/// is `eps`-achiral: every factor must be `eps`-achiral or pair up with a
/// factor of equal multiplicity whose mirror it is, up to `eps`.
pub fn connected_sum_achirality(
    factors: &[(&str, usize)],
    eps: i32,
    decls: &Declarations,
    relations: &[Relation],
) -> Result<bool, ChiralityError> {
    let mut merged: BTreeMap<&str, usize> = BTreeMap::new();
    for &(name, m) in factors {
        *merged.entry(name).or_default() += m;
    }
    let list = merged
        .into_iter()
        .filter(|&(_, m)| m > 0)
        .map(|(name, m)| Ok((name.to_string(), resolve(name, &None, decls)?.clone(), m)))
        .collect::<Result<Vec<_>, ChiralityError>>()?;
    Ok(sum_status(&list, eps, relations)? == Status::AchiralProven)
}

/// Verdict for a closed braid in the solid torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BraidVerdict {
    pub exponent_sum: i64,
    pub absolutely_chiral: bool,
}

/// A closed braid with nonzero exponent sum is absolutely chiral in the
/// solid torus; zero exponent sum decides nothing.
pub fn braid_chirality(b: &BraidWord) -> BraidVerdict {
    let e = b.exponent_sum();
    BraidVerdict {
        exponent_sum: e,
        absolutely_chiral: e != 0,
    }
}

/// Types `(e0, e1, ..)` of a link in the solid torus left open by winding
/// numbers: `e0 * ei = -1` forces component `i` to have winding zero.
pub fn solid_torus_types(windings: &[i64]) -> Vec<(EpsilonType, Status)> {
    EpsilonType::all(windings.len() + 1)
        .map(|e| {
            let blocked = windings
                .iter()
                .enumerate()
                .any(|(i, &w)| w != 0 && e.get(0) * e.get(i + 1) == -1);
            let s = if blocked {
                Status::ChiralProven
            } else {
                Status::AchiralPossible
            };
            (e, s)
        })
        .collect()
}

/// Types `(e0, e1, e2)` of the Bing pattern in the solid torus: achiral iff
/// the product is `-1`.
pub fn bing_pattern_types() -> Vec<(EpsilonType, Status)> {
    EpsilonType::all(3)
        .map(|e| {
            let s = Status::from_bool(e.pi() == -1);
            (e, s)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(s: &str) -> EpsilonTable {
        epsilon_types(&s.parse().unwrap(), &Declarations::new()).unwrap()
    }

    #[test]
    fn hopf_and_borromean() {
        let h = table("Hopf");
        assert_eq!(
            h.achiral_types(),
            vec!["(-1,1)".parse().unwrap(), "(1,-1)".parse().unwrap()]
        );
        let b = table("Borromean");
        assert_eq!(b.components, 3);
        for (e, s) in &b.entries {
            assert_eq!(*s, Status::from_bool(e.pi() == 1), "{e}");
        }
        assert_eq!(table("Bing(r=0, Hopf)"), b);
    }

    #[test]
    fn twisted_bing_is_chiral() {
        assert!(table("Bing(r=1, Hopf)").absolutely_chiral());
        assert!(table("Bing(r=2, atom(O, trivial))").absolutely_chiral());
        let unlink = table("Bing(r=0, Unknot)");
        assert!(unlink.entries.iter().all(|(_, s)| *s == Status::AchiralProven));
    }

    #[test]
    fn doubles_of_the_unknot() {
        assert!(table("WDouble(r=-1, Unknot)").absolutely_chiral());
        assert_eq!(table("WDouble(r=1, Unknot)").achiral_types().len(), 2);
        assert_eq!(table("WDouble(r=0, Unknot)").achiral_types().len(), 2);
        assert!(table("Cable(p=2, q=3, Unknot)").absolutely_chiral());
        assert!(!table("Cable(p=2, q=1, Unknot)").absolutely_chiral());
    }

    #[test]
    fn whitehead_link_from_hopf() {
        let w = table("WDouble(r=0, Hopf)");
        assert_eq!(w.components, 2);
        assert!(w.absolutely_chiral());
        assert_eq!(w.advisories.len(), 1);
    }

    #[test]
    fn rejects_malformed() {
        let d = Declarations::new();
        let e = |s: &str| epsilon_types(&s.parse().unwrap(), &d).unwrap_err();
        assert_eq!(
            e("Bing(on=2, Hopf)"),
            ChiralityError::BadComponent {
                index: 2,
                components: 2
            }
        );
        assert_eq!(e("Cable(p=2, q=4, Hopf)"), ChiralityError::BadCable { p: 2, q: 4 });
        assert_eq!(e("Cable(p=1, q=1, Hopf)"), ChiralityError::BadCable { p: 1, q: 1 });
        assert_eq!(e("atom(K)"), ChiralityError::UndeclaredAtom("K".into()));
        assert!(matches!(e("Sum(Hopf)"), ChiralityError::Unsupported(_)));
        assert!(matches!(
            e("Sum(atom(A, composite, achiral=none))"),
            ChiralityError::Unsupported(_)
        ));
    }

    #[test]
    fn solid_torus_rules() {
        let t = solid_torus_types(&[0, 2]);
        let s = |e: &str| t.iter().find(|(x, _)| x == &e.parse().unwrap()).unwrap().1;
        assert_eq!(s("(1,-1,1)"), Status::AchiralPossible);
        assert_eq!(s("(1,1,-1)"), Status::ChiralProven);
        assert_eq!(s("(-1,-1,-1)"), Status::AchiralPossible);
        assert_eq!(bing_pattern_types().iter().filter(|(_, s)| !s.is_chiral()).count(), 4);
    }
}
