use std::fmt;

use diagram::LinkDiagram;
use eta::{eta_with_fallback, SearchOptions};

use crate::epsilon::{EpsilonType, Status};

/// Invariant behind a piece of evidence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// Nonzero linking number of components `(i, j)`.
    Linking(usize, usize),
    /// Nonzero eta with roles `(k1, k2)`.
    Eta(usize, usize),
    /// Unequal etas of the two role orders of the pair `(i, j)`.
    EtaAsymmetry(usize, usize),
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::Linking(i, j) => write!(f, "linking number ({i},{j})"),
            Obstruction::Eta(a, b) => write!(f, "eta ({a},{b})"),
            Obstruction::EtaAsymmetry(i, j) => write!(f, "eta asymmetry ({i},{j})"),
        }
    }
}

/// One obstruction that fired.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evidence {
    pub obstruction: Obstruction,
    pub value: String,
}

/// Status of one epsilon type and the evidence ruling it out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeVerdict {
    pub eps: EpsilonType,
    pub status: Status,
    /// Indices into [`ChiralityVerdict::evidence`].
    pub reasons: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiralityVerdict {
    pub types: Vec<TypeVerdict>,
    pub absolutely_chiral: bool,
    /// No orientation-reversing map preserves the link even when allowed to
    /// permute components.
    pub setwise_chiral: bool,
    pub evidence: Vec<Evidence>,
    /// Invariants that could not be computed.
    pub notes: Vec<String>,
}

impl ChiralityVerdict {
    fn new(components: usize) -> Self {
        Self {
            types: EpsilonType::all(components)
                .map(|eps| TypeVerdict {
                    eps,
                    status: Status::AchiralPossible,
                    reasons: Vec::new(),
                })
                .collect(),
            absolutely_chiral: false,
            setwise_chiral: false,
            evidence: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn rule_out(&mut self, obstruction: Obstruction, value: String, applies: impl Fn(&EpsilonType) -> bool) {
        let idx = self.evidence.len();
        self.evidence.push(Evidence { obstruction, value });
        for t in &mut self.types {
            if applies(&t.eps) {
                t.status = Status::ChiralProven;
                t.reasons.push(idx);
            }
        }
        self.absolutely_chiral = self.types.iter().all(|t| t.status.is_chiral());
    }

    pub fn status(&self, eps: &EpsilonType) -> Option<Status> {
        self.types.iter().find(|t| &t.eps == eps).map(|t| t.status)
    }

    /// Neither all-positive nor all-negative types survive.
    pub fn positive_chiral(&self) -> bool {
        self.types.first().is_some_and(|t| t.status.is_chiral())
    }

    pub fn negative_chiral(&self) -> bool {
        self.types.last().is_some_and(|t| t.status.is_chiral())
    }
}

/// Which invariants [`obstruction_report`] uses.
#[derive(Clone, Debug)]
pub struct ReportOptions {
    pub linking: bool,
    pub eta: bool,
    /// Restrict eta to one ordered pair `(k1, k2)`; both orders of every
    /// pair when `None`.
    pub roles: Option<(usize, usize)>,
    pub search: SearchOptions,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self {
            linking: true,
            eta: true,
            roles: None,
            search: SearchOptions::default(),
        }
    }
}

/// Chirality obstructions of a diagram. Never claims achirality: types not
/// ruled out stay `AchiralPossible`.
///
/// An achiral map of type `e` negates linking numbers while multiplying
/// them by `e_i * e_j`, so `lk != 0` forces `e_i * e_j = -1`. For a pair
/// with linking number zero, a nonzero eta rules out every type, and
/// unequal etas of a two-component link rule out maps swapping components.
pub fn obstruction_report(l: &LinkDiagram, opts: &ReportOptions) -> ChiralityVerdict {
    let n = l.num_components();
    let mut v = ChiralityVerdict::new(n);
    let mut zero_pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let lk = match l.linking_number(i, j) {
                Ok(lk) => lk,
                Err(e) => {
                    v.notes.push(format!("linking number of ({i},{j}): {e}"));
                    continue;
                }
            };
            if lk == 0 {
                zero_pairs.push((i, j));
            } else if opts.linking {
                v.rule_out(Obstruction::Linking(i, j), lk.to_string(), |e| e.get(i) * e.get(j) == 1);
            }
        }
    }
    if opts.eta {
        for (i, j) in zero_pairs {
            let orders = match opts.roles {
                None => vec![(i, j), (j, i)],
                Some(r) if r == (i, j) || r == (j, i) => vec![r],
                Some(_) => continue,
            };
            let mut etas = Vec::new();
            for (a, b) in orders {
                let eta = match eta_with_fallback(l, a, b, &opts.search) {
                    Ok(r) => r.eta,
                    Err(e) => {
                        v.notes.push(format!("eta ({a},{b}) unavailable: {e}"));
                        continue;
                    }
                };
                if eta.is_zero() {
                    v.notes.push(format!("eta ({a},{b}) = 0: undetermined by eta"));
                } else {
                    v.rule_out(Obstruction::Eta(a, b), eta.to_compact_string(), |_| true);
                }
                etas.push(eta);
            }
            if n == 2 && etas.len() == 2 && etas[0] != etas[1] {
                v.evidence.push(Evidence {
                    obstruction: Obstruction::EtaAsymmetry(0, 1),
                    value: format!("{} != {}", etas[0].to_compact_string(), etas[1].to_compact_string()),
                });
                v.setwise_chiral = true;
            }
        }
    }
    v
}
