use dashmap::DashMap;
use diagram::LinkDiagram;
use laurent::ZPoly;
use once_cell::sync::Lazy;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::ConwayError;

/// Maximum number of recursion nodes per computation.
pub const DEFAULT_NODE_BUDGET: usize = 2_000_000;

/// Memo table from canonical diagram keys to Conway polynomials.
#[derive(Default)]
pub struct SkeinCache {
    map: DashMap<Vec<u32>, ZPoly>,
}

impl SkeinCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn get(&self, d: &LinkDiagram) -> Option<ZPoly> {
        self.map.get(&d.canonical_key()).map(|v| v.clone())
    }

    /// Insert unless present; returns the stored value.
    fn insert(&self, key: Vec<u32>, value: ZPoly) -> ZPoly {
        self.map.entry(key).or_insert(value).clone()
    }
}

static GLOBAL: Lazy<SkeinCache> = Lazy::new(SkeinCache::new);

/// Process-wide cache used by [`conway_polynomial`].
pub fn global_cache() -> &'static SkeinCache {
    &GLOBAL
}

/// How base points and the stacking order of components are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SkeinStrategy {
    /// Base point at each component's first edge; components stacked in order.
    Descending,
    /// Random base points and stacking order from a seeded generator.
    Randomized(u64),
}

/// One recursion step: `plus` and `minus` differ at a single crossing and
/// `zero` is its smoothing.
#[derive(Clone, Debug)]
pub struct SkeinTriple {
    pub plus: LinkDiagram,
    pub minus: LinkDiagram,
    pub zero: LinkDiagram,
}

/// Base edge per component and stacking rank (lower rank lies above).
#[derive(Clone, Debug)]
struct Order {
    start: Vec<usize>,
    rank: Vec<usize>,
}

struct Ctx<'a> {
    cache: &'a SkeinCache,
    rng: Option<ChaCha8Rng>,
    nodes: usize,
    budget: usize,
    trace: Option<Vec<SkeinTriple>>,
}

impl Ctx<'_> {
    fn choose_order(&mut self, d: &LinkDiagram) -> Order {
        let n = d.num_components();
        match &mut self.rng {
            None => Order {
                start: (0..n).map(|k| d.component_edges(k)[0]).collect(),
                rank: (0..n).collect(),
            },
            Some(rng) => {
                let start = (0..n)
                    .map(|k| {
                        let es = d.component_edges(k);
                        es[rng.gen_range(0..es.len())]
                    })
                    .collect();
                let mut rank: Vec<usize> = (0..n).collect();
                rank.shuffle(rng);
                Order { start, rank }
            }
        }
    }

    fn eval(&mut self, d: LinkDiagram, order: Option<Order>) -> Result<ZPoly, ConwayError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(ConwayError::Budget(self.budget));
        }
        let before = d.num_crossings();
        let d = d.reduce_r12();
        let order = if d.num_crossings() == before { order } else { None };
        if d.num_crossings() == 0 {
            return Ok(unlink_value(d.num_components()));
        }
        let key = d.canonical_key();
        if let Some(v) = self.cache.map.get(&key) {
            return Ok(v.clone());
        }
        let order = order.unwrap_or_else(|| self.choose_order(&d));
        let value = match first_bad_crossing(&d, &order) {
            None => unlink_value(d.num_components()),
            Some(id) => {
                let sign = d.crossing(id).expect("crossing exists").sign();
                let switched = d.switch_crossing(id)?;
                let smoothed = d.smooth_crossing_any(id)?;
                if let Some(trace) = &mut self.trace {
                    let (plus, minus) = if sign > 0 {
                        (d.clone(), switched.clone())
                    } else {
                        (switched.clone(), d.clone())
                    };
                    trace.push(SkeinTriple {
                        plus,
                        minus,
                        zero: smoothed.clone(),
                    });
                }
                let vs = self.eval(switched, Some(order))?;
                let v0 = self.eval(smoothed, None)?.mul_z();
                if sign > 0 {
                    &vs + &v0
                } else {
                    &vs - &v0
                }
            }
        };
        Ok(self.cache.insert(key, value))
    }
}

fn unlink_value(components: usize) -> ZPoly {
    if components == 1 {
        ZPoly::one()
    } else {
        ZPoly::zero()
    }
}

/// First crossing, walking components in stacking order from their base
/// points, that violates the stacked descending pattern: between components
/// the higher-ranked one must pass under, and each self-crossing must be met
/// first as an over-crossing.
fn first_bad_crossing(d: &LinkDiagram, order: &Order) -> Option<usize> {
    let mut comps: Vec<usize> = (0..d.num_components()).collect();
    comps.sort_by_key(|&k| order.rank[k]);
    let mut seen = vec![false; d.num_crossings()];
    for k in comps {
        if d.is_free_loop(k) {
            continue;
        }
        let start = order.start[k];
        let mut e = start;
        loop {
            let (p, s) = d.head(e).expect("edge ends at a crossing");
            let (u, o) = d.strand_components(p);
            let bad = if u != o {
                order.rank[u] < order.rank[o]
            } else {
                let first = !seen[p];
                seen[p] = true;
                first && s == 0
            };
            if bad {
                return Some(d.crossings()[p].id());
            }
            e = d.next_edge(e);
            if e == start {
                break;
            }
        }
    }
    None
}

/// Conway polynomial with the process-wide cache.
pub fn conway_polynomial(d: &LinkDiagram) -> Result<ZPoly, ConwayError> {
    conway_polynomial_with(d, SkeinStrategy::Descending, global_cache())
}

/// Conway polynomial with an explicit strategy and cache.
pub fn conway_polynomial_with(
    d: &LinkDiagram,
    strategy: SkeinStrategy,
    cache: &SkeinCache,
) -> Result<ZPoly, ConwayError> {
    let mut ctx = Ctx {
        cache,
        rng: match strategy {
            SkeinStrategy::Descending => None,
            SkeinStrategy::Randomized(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        },
        nodes: 0,
        budget: DEFAULT_NODE_BUDGET,
        trace: None,
    };
    ctx.eval(d.clone(), None)
}

/// Conway polynomial together with every skein triple used, computed with a
/// fresh cache so that the trace is complete.
pub fn conway_traced(d: &LinkDiagram) -> Result<(ZPoly, Vec<SkeinTriple>), ConwayError> {
    let cache = SkeinCache::new();
    let mut ctx = Ctx {
        cache: &cache,
        rng: None,
        nodes: 0,
        budget: DEFAULT_NODE_BUDGET,
        trace: Some(Vec::new()),
    };
    let v = ctx.eval(d.clone(), None)?;
    Ok((v, ctx.trace.take().unwrap_or_default()))
}
