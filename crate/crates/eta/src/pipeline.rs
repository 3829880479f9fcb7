use conway::{alexander_from_conway, conway_polynomial, is_unknotted, Unknottedness};
use cover::{eta_by_cover, AnnularPresentation};
use diagram::{LinkDiagram, DEFAULT_SIMPLIFY_BUDGET};
use itertools::Itertools;
use laurent::{LaurentPoly, RationalLaurent, DEFAULT_ORDER};

use crate::error::EtaError;
use crate::result::{crossing_delta, EtaResult, Provenance, UnknottingStep};

/// Limits for the unknotting search and the w-expansion order.
#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Largest number of crossings switched at once.
    pub max_switches: usize,
    /// Largest number of crossing sets examined.
    pub max_candidates: usize,
    pub simplify_budget: usize,
    pub order: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            max_switches: 4,
            max_candidates: 10_000,
            simplify_budget: DEFAULT_SIMPLIFY_BUDGET,
            order: DEFAULT_ORDER,
        }
    }
}

/// The sublink `(k1, k2)` renumbered as components 0 and 1.
fn pair(l: &LinkDiagram, k1: usize, k2: usize) -> Result<LinkDiagram, EtaError> {
    if k1 == k2 || k1.max(k2) >= l.num_components() {
        return Err(EtaError::BadRoles(k1, k2));
    }
    let d = l.sublink(&[k1, k2])?;
    match d.linking_number(0, 1)? {
        0 => Ok(d),
        lk => Err(EtaError::NonzeroLinking(k1, k2, lk)),
    }
}

/// Sign and `n` of self-crossing `id` of the component other than `k1`.
pub fn unknotting_step(d: &LinkDiagram, id: usize, k1: usize) -> Result<UnknottingStep, EtaError> {
    let (sign, n) = d.crossing_params(id, k1)?;
    Ok(UnknottingStep { crossing: id, sign, n })
}

/// Switch the crossings in order, reading each step just before its switch.
fn switch_all(d: &LinkDiagram, ids: &[usize]) -> Result<(LinkDiagram, Vec<UnknottingStep>), EtaError> {
    let mut cur = d.clone();
    let mut steps = Vec::with_capacity(ids.len());
    for &id in ids {
        steps.push(unknotting_step(&cur, id, 0)?);
        cur = cur.switch_crossing(id)?;
    }
    Ok((cur, steps))
}

fn delta_sum(steps: &[UnknottingStep]) -> LaurentPoly {
    steps.iter().map(|s| crossing_delta(s.sign, s.n)).sum()
}

/// Sets of self-crossings of component 1 whose switching leaves it
/// certifiably unknotted, smallest sets first. Yields at most
/// `max_candidates` examined sets.
fn unknotting_sets<'a>(
    d: &'a LinkDiagram,
    opts: &'a SearchOptions,
) -> impl Iterator<Item = Result<Vec<usize>, EtaError>> + 'a {
    let ids = d.self_crossings(1);
    (0..=opts.max_switches.min(ids.len()))
        .flat_map(move |size| ids.clone().into_iter().combinations(size))
        .take(opts.max_candidates)
        .filter_map(move |set| {
            let check = || -> Result<bool, EtaError> {
                let mut cur = d.clone();
                for &id in &set {
                    cur = cur.switch_crossing(id)?;
                }
                Ok(is_unknotted(&cur, 1)? == Unknottedness::Yes)
            };
            match check() {
                Ok(true) => Some(Ok(set)),
                Ok(false) => None,
                Err(e) => Some(Err(e)),
            }
        })
}

/// Unknotting sets for the second component of the pair `(k1, k2)`, as
/// crossing ids of `l`.
pub fn find_unknotting_sets(
    l: &LinkDiagram,
    k1: usize,
    k2: usize,
    opts: &SearchOptions,
) -> Result<Vec<Vec<usize>>, EtaError> {
    let d = pair(l, k1, k2)?;
    unknotting_sets(&d, opts).collect()
}

fn is_split(d: &LinkDiagram, budget: usize) -> (bool, LinkDiagram) {
    let s = d.simplify_with_budget(budget).diagram;
    (s.mixed_crossings(0, 1).is_empty(), s)
}

/// Eta of `(k1, k2)` when switching the listed crossings of `k2` splits the
/// link: the sum of the crossing-change terms.
pub fn eta_separable(
    l: &LinkDiagram,
    k1: usize,
    k2: usize,
    steps: &[UnknottingStep],
    opts: &SearchOptions,
) -> Result<EtaResult, EtaError> {
    let d = pair(l, k1, k2)?;
    let ids: Vec<usize> = steps.iter().map(|s| s.crossing).collect();
    let (after, found) = switch_all(&d, &ids)?;
    for (want, got) in steps.iter().zip(&found) {
        if want != got {
            return Err(EtaError::StepMismatch {
                crossing: want.crossing,
                expected_sign: want.sign,
                expected_n: want.n,
                sign: got.sign,
                n: got.n,
            });
        }
    }
    if !is_split(&after, opts.simplify_budget).0 {
        return Err(EtaError::NotSeparated);
    }
    let eta = RationalLaurent::from_poly(delta_sum(&found));
    EtaResult::new(eta, k1, k2, Provenance::Separable, found, opts.order)
}

pub fn eta_general(l: &LinkDiagram, k1: usize, k2: usize) -> Result<EtaResult, EtaError> {
    eta_general_with(l, k1, k2, &SearchOptions::default())
}

/// Eta of `(k1, k2)`: switch crossings of `k2` until it is unknotted. If the
/// link is then split the crossing-change terms give the answer; otherwise
/// `k2` is redrawn without self-crossings, a left-handed full twist about
/// it turns `k1` into `k1+`, and eta is `nabla(k1+) / nabla(k1) - 1` plus
/// the crossing-change terms.
pub fn eta_general_with(l: &LinkDiagram, k1: usize, k2: usize, opts: &SearchOptions) -> Result<EtaResult, EtaError> {
    let d = pair(l, k1, k2)?;
    let base = alexander_from_conway(&conway_polynomial(&d.sublink(&[0])?)?)?;
    let mut tried = 0;
    for set in unknotting_sets(&d, opts) {
        let set = set?;
        tried += 1;
        let (after, steps) = switch_all(&d, &set)?;
        let deltas = RationalLaurent::from_poly(delta_sum(&steps));
        let (split, s) = is_split(&after, opts.simplify_budget);
        if split {
            return EtaResult::new(deltas, k1, k2, Provenance::Separable, steps, opts.order);
        }
        if !s.self_crossings(1).is_empty() {
            continue;
        }
        let plus = s.to_encircling_form(1)?.rolfsen_twist(1, -1)?;
        let plus = plus.simplify_with_budget(opts.simplify_budget).diagram;
        let plus = alexander_from_conway(&conway_polynomial(&plus)?)?;
        let ratio = RationalLaurent::new(plus, base.clone())?;
        let eta = &(&ratio - &RationalLaurent::one()) + &deltas;
        return EtaResult::new(eta, k1, k2, Provenance::ConwayRatio, steps, opts.order);
    }
    if tried == 0 {
        Err(EtaError::SearchExhausted {
            max_switches: opts.max_switches,
            candidates: opts.max_candidates,
        })
    } else {
        Err(EtaError::EncirclingUnreachable(tried))
    }
}

/// [`eta_general_with`], falling back to lifting `k2` directly when `k1` is
/// drawn without self-crossings.
pub fn eta_with_fallback(l: &LinkDiagram, k1: usize, k2: usize, opts: &SearchOptions) -> Result<EtaResult, EtaError> {
    match eta_general_with(l, k1, k2, opts) {
        Err(e @ (EtaError::EncirclingUnreachable(_) | EtaError::SearchExhausted { .. })) => {
            let d = pair(l, k1, k2)?;
            let candidates = [d.clone(), d.simplify_with_budget(opts.simplify_budget).diagram];
            let Some(d) = candidates.into_iter().find(|c| c.self_crossings(0).is_empty()) else {
                return Err(e);
            };
            let eta = eta_by_cover(&AnnularPresentation::new(d, 0)?, 1)?;
            EtaResult::new(eta.into(), k1, k2, Provenance::Cover, Vec::new(), opts.order)
        }
        other => other,
    }
}

/// `(eta_1, eta_2)` of a two-component link.
pub fn eta_pair(l: &LinkDiagram, opts: &SearchOptions) -> Result<(EtaResult, EtaResult), EtaError> {
    if l.num_components() != 2 {
        return Err(EtaError::BadRoles(0, l.num_components()));
    }
    Ok((eta_with_fallback(l, 0, 1, opts)?, eta_with_fallback(l, 1, 0, opts)?))
}
