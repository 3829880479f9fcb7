use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::LaurentError;
use crate::poly::LaurentPoly;
use crate::wseries::symmetric_to_w;

/// Integer polynomial in `z`, used for Conway polynomials.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct ZPoly {
    terms: BTreeMap<u32, BigInt>,
}

impl ZPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn z() -> Self {
        Self::monomial(1, 1)
    }

    pub fn monomial(c: impl Into<BigInt>, deg: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(deg, c.into());
        p
    }

    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        let mut p = Self::zero();
        for (i, &c) in coeffs.iter().enumerate() {
            p.add_term(i as u32, BigInt::from(c));
        }
        p
    }

    pub fn add_term(&mut self, deg: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(deg).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&deg);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, deg: u32) -> BigInt {
        self.terms.get(&deg).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> + '_ {
        self.terms.iter().map(|(d, c)| (*d, c))
    }

    /// Multiply by `z`.
    pub fn mul_z(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(d, c)| (d + 1, c.clone())).collect(),
        }
    }

    /// Substitute `z -> -z`; this is the Conway polynomial of the mirror image.
    pub fn negate_z(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(d, c)| (*d, if d % 2 == 1 { -c } else { c.clone() }))
                .collect(),
        }
    }

    /// Express as a Laurent polynomial in `t` times `z^parity`: the even part
    /// is substituted via `z^2 = -w`. Returns `None` if both parities occur.
    pub fn to_laurent_even_part(&self) -> Option<(u32, LaurentPoly)> {
        let parity = self.terms.keys().next().map_or(0, |d| d % 2);
        if self.terms.keys().any(|d| d % 2 != parity) {
            return None;
        }
        let neg_w = -LaurentPoly::w();
        let mut acc = LaurentPoly::zero();
        for (d, c) in &self.terms {
            let k = (d - parity) / 2;
            acc += &neg_w.pow(k).scale(c);
        }
        Some((parity, acc))
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (d, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let var = match d {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{d}"),
            };
            if var.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&var)?;
            } else {
                write!(f, "{mag}*{var}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZPoly({self})")
    }
}

impl FromStr for ZPoly {
    type Err = LaurentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(pos) = s.find('t') {
            return Err(LaurentError::Parse {
                pos,
                msg: "unexpected 't' in a z-polynomial".into(),
            });
        }
        let as_t: LaurentPoly = s.replace('z', "t").parse()?;
        let mut out = ZPoly::zero();
        for (e, c) in as_t.terms() {
            if e < 0 {
                return Err(LaurentError::Parse {
                    pos: 0,
                    msg: "negative power of z".into(),
                });
            }
            out.add_term(e as u32, c.clone());
        }
        Ok(out)
    }
}

impl Add<&ZPoly> for &ZPoly {
    type Output = ZPoly;
    fn add(self, rhs: &ZPoly) -> ZPoly {
        let mut out = self.clone();
        for (d, c) in &rhs.terms {
            out.add_term(*d, c.clone());
        }
        out
    }
}

impl Sub<&ZPoly> for &ZPoly {
    type Output = ZPoly;
    fn sub(self, rhs: &ZPoly) -> ZPoly {
        self + &(-rhs)
    }
}

impl Neg for &ZPoly {
    type Output = ZPoly;
    fn neg(self) -> ZPoly {
        ZPoly {
            terms: self.terms.iter().map(|(d, c)| (*d, -c)).collect(),
        }
    }
}

impl Mul<&ZPoly> for &ZPoly {
    type Output = ZPoly;
    fn mul(self, rhs: &ZPoly) -> ZPoly {
        let mut out = ZPoly::zero();
        for (d1, c1) in &self.terms {
            for (d2, c2) in &rhs.terms {
                out.add_term(d1 + d2, c1 * c2);
            }
        }
        out
    }
}

/// Conway polynomial from a symmetric Alexander polynomial with `delta(1) = +-1`,
/// using `z^2 = t - 2 + t^-1 = -w`. The sign is fixed so that `nabla(0) = 1`.
pub fn conway_normalize(delta: &LaurentPoly) -> Result<ZPoly, LaurentError> {
    let at_one = delta.eval_at_one();
    if at_one.is_zero() || at_one.abs() != BigInt::one() {
        return Err(LaurentError::NotNormalizable(at_one.to_string()));
    }
    let mut w = symmetric_to_w(delta)?;
    if at_one.is_negative() {
        for c in &mut w {
            *c = -std::mem::take(c);
        }
    }
    let mut out = ZPoly::zero();
    for (k, c) in w.into_iter().enumerate() {
        let c = if k % 2 == 0 { c } else { -c };
        out.add_term(2 * k as u32, c);
    }
    Ok(out)
}

/// Substitute `z^2 = t - 2 + t^-1`. Only even powers of `z` have a Laurent
/// counterpart; an odd power is reported as an error.
pub fn alexander_from_conway(nabla: &ZPoly) -> Result<LaurentPoly, LaurentError> {
    if let Some(d) = nabla.terms.keys().find(|d| *d % 2 == 1) {
        return Err(LaurentError::OddPower(*d));
    }
    Ok(nabla.to_laurent_even_part().map(|(_, p)| p).unwrap_or_default())
}
