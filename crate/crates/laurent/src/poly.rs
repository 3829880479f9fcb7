use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::LaurentError;

/// Integer Laurent polynomial in one variable `t`.
///
/// Only nonzero coefficients are stored, so the zero polynomial is the empty map
/// and structural equality is mathematical equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    pub fn monomial(c: impl Into<BigInt>, exp: i64) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    pub fn from_terms<I, C>(it: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c.into());
        }
        p
    }

    /// `t^n + t^-n - 2`, the basic symmetric building block.
    pub fn sym_shift(n: i64) -> Self {
        let mut p = Self::monomial(1, n);
        p.add_term(-n, BigInt::one());
        p.add_term(0, BigInt::from(-2));
        p
    }

    /// `w = 2 - t - t^-1`.
    pub fn w() -> Self {
        -Self::sym_shift(1)
    }

    pub fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn lowest_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next_back()
    }

    /// Value at `t = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Substitute `t -> t^-1`.
    pub fn involute(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|(e, c)| self.terms.get(&-e) == Some(c))
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    /// Gcd of the coefficients (nonnegative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divide every coefficient by `k`; `None` unless all divide exactly.
    pub fn div_scalar(&self, k: &BigInt) -> Option<Self> {
        if k.is_zero() {
            return None;
        }
        let mut out = BTreeMap::new();
        for (e, c) in &self.terms {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return None;
            }
            out.insert(*e, q);
        }
        Some(Self { terms: out })
    }

    /// Positive-exponent part (terms with `t^k`, `k > 0`).
    pub fn positive_part(&self) -> Self {
        Self {
            terms: self.terms.range(1..).map(|(e, c)| (*e, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division in `Z[t, t^-1]`; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dmin = d.min_exp()?;
        let dmax = d.max_exp()?;
        let dlead = d.leading_coeff()?.clone();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(rmax) = rem.max_exp() {
            let rmin = rem.min_exp()?;
            if rmax - rmin < dmax - dmin {
                return None;
            }
            let (q, r) = rem.leading_coeff()?.div_rem(&dlead);
            if !r.is_zero() {
                return None;
            }
            let e = rmax - dmax;
            let term = Self::monomial(q, e);
            rem -= &(&term * d);
            quot += &term;
        }
        Some(quot)
    }

    /// Drop the monomial unit and the content sign: lowest exponent 0, positive
    /// lowest coefficient.
    pub(crate) fn unit_normalized(&self) -> (Self, i64, bool) {
        let Some(m) = self.min_exp() else {
            return (Self::zero(), 0, false);
        };
        let neg = self.lowest_coeff().is_some_and(|c| c.is_negative());
        let mut p = self.shift(-m);
        if neg {
            p = -p;
        }
        (p, m, neg)
    }

    /// Render without `*` between coefficient and variable, e.g. `4 - 2t - 2t^-1`.
    pub fn to_compact_string(&self) -> String {
        self.render(false)
    }

    fn render(&self, star: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.display_order().into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let var = match e {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{e}"),
            };
            if var.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&var);
            } else if star {
                out.push_str(&format!("{mag}*{var}"));
            } else {
                out.push_str(&format!("{mag}{var}"));
            }
        }
        out
    }

    /// Constant first, then `t^k` before `t^-k` for k = 1, 2, ...
    fn display_order(&self) -> Vec<(i64, &BigInt)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by_key(|(e, _)| (e.abs(), *e < 0));
        v
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(true))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = LaurentError;

    /// Accepts the canonical rendering and looser variants: optional `*`,
    /// arbitrary whitespace, any term order, repeated exponents.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let chars: Vec<(usize, char)> = s.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        let err = |pos: usize, msg: &str| LaurentError::Parse {
            pos,
            msg: msg.to_string(),
        };
        if chars.is_empty() {
            return Err(err(0, "empty polynomial"));
        }
        for w in chars.windows(2) {
            let gap = w[1].0 > w[0].0 + w[0].1.len_utf8();
            if gap && w[0].1.is_ascii_alphanumeric() && w[1].1.is_ascii_alphanumeric() {
                return Err(err(w[1].0, "missing operator between terms"));
            }
        }
        let mut p = LaurentPoly::zero();
        let mut i = 0;
        let mut first = true;
        while i < chars.len() {
            let pos = chars[i].0;
            let mut negative = false;
            match chars[i].1 {
                '+' => i += 1,
                '-' => {
                    negative = true;
                    i += 1
                }
                _ if first => {}
                _ => return Err(err(pos, "expected '+' or '-'")),
            }
            first = false;
            let digits_start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let coeff: Option<BigInt> = if i > digits_start {
                let txt: String = chars[digits_start..i].iter().map(|(_, c)| c).collect();
                Some(txt.parse().map_err(|_| err(pos, "bad coefficient"))?)
            } else {
                None
            };
            if i < chars.len() && chars[i].1 == '*' {
                if coeff.is_none() {
                    return Err(err(chars[i].0, "'*' needs a coefficient"));
                }
                i += 1;
                if i >= chars.len() || chars[i].1 != 't' {
                    let at = chars.get(i).map_or(s.len(), |c| c.0);
                    return Err(err(at, "expected 't' after '*'"));
                }
            }
            let mut exp = 0i64;
            if i < chars.len() && chars[i].1 == 't' {
                i += 1;
                exp = 1;
                if i < chars.len() && chars[i].1 == '^' {
                    i += 1;
                    let estart = i;
                    if i < chars.len() && (chars[i].1 == '-' || chars[i].1 == '+') {
                        i += 1;
                    }
                    while i < chars.len() && chars[i].1.is_ascii_digit() {
                        i += 1;
                    }
                    let txt: String = chars[estart..i].iter().map(|(_, c)| c).collect();
                    let at = chars.get(estart).map_or(s.len(), |c| c.0);
                    exp = txt.parse().map_err(|_| err(at, "bad exponent"))?;
                }
            } else if coeff.is_none() {
                return Err(err(pos, "expected a coefficient or 't'"));
            }
            let mut c = coeff.unwrap_or_else(BigInt::one);
            if negative {
                c = -c;
            }
            p.add_term(exp, c);
        }
        Ok(p)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $assign:ident) => {
        impl $tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                let mut out = self.clone();
                out.$assign(rhs);
                out
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(mut self, rhs: LaurentPoly) -> LaurentPoly {
                self.$assign(&rhs);
                self
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(mut self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$assign(rhs);
                self
            }
        }
    };
}

forward_binop!(Add, add, add_assign);
forward_binop!(Sub, sub, sub_assign);

impl Mul<LaurentPoly> for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Mul<&LaurentPoly> for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        &self * rhs
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |a, b| a + b)
    }
}

/// Greatest common divisor in `Z[t, t^-1]`, normalized with lowest exponent 0
/// and positive lowest coefficient.
pub fn gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() {
        return b.unit_normalized().0;
    }
    if b.is_zero() {
        return a.unit_normalized().0;
    }
    let pa = to_dense(&a.unit_normalized().0);
    let pb = to_dense(&b.unit_normalized().0);
    let ca = content_dense(&pa);
    let cb = content_dense(&pb);
    let c = ca.gcd(&cb);
    let mut u = primitive(pa);
    let mut v = primitive(pb);
    if u.len() < v.len() {
        std::mem::swap(&mut u, &mut v);
    }
    while !(v.len() == 1 && v[0].is_zero()) && !v.is_empty() {
        let r = pseudo_rem(&u, &v);
        u = v;
        v = if r.iter().all(|x| x.is_zero()) {
            Vec::new()
        } else {
            primitive(r)
        };
    }
    let g = from_dense(&u).scale(&c);
    g.unit_normalized().0
}

fn to_dense(p: &LaurentPoly) -> Vec<BigInt> {
    let max = p.max_exp().unwrap_or(0);
    let mut v = vec![BigInt::zero(); (max + 1) as usize];
    for (e, c) in p.terms() {
        v[e as usize] = c.clone();
    }
    v
}

fn from_dense(v: &[BigInt]) -> LaurentPoly {
    LaurentPoly::from_terms(v.iter().enumerate().map(|(i, c)| (i as i64, c.clone())))
}

fn content_dense(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let v = trim(v);
    let c = content_dense(&v);
    if c.is_zero() || c.is_one() {
        return v;
    }
    v.into_iter().map(|x| x / &c).collect()
}

fn pseudo_rem(u: &[BigInt], v: &[BigInt]) -> Vec<BigInt> {
    let mut r = u.to_vec();
    let dv = v.len() - 1;
    let lv = v[dv].clone();
    while r.len() > dv && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for x in r.iter_mut() {
            *x *= &lv;
        }
        let off = dr - dv;
        for (i, c) in v.iter().enumerate() {
            r[i + off] -= &lr * c;
        }
        r = trim(r);
        if r.len() - 1 < dv || (r.len() == 1 && r[0].is_zero()) {
            break;
        }
    }
    r
}
