use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::LaurentError;
use crate::poly::{gcd, LaurentPoly};

/// Quotient of Laurent polynomials kept in lowest terms.
///
/// The denominator always has lowest exponent 0 and a positive lowest
/// coefficient, so equal functions have identical representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalLaurent {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalLaurent {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, LaurentError> {
        if den.is_zero() {
            return Err(LaurentError::ZeroDenominator);
        }
        Ok(Self::reduce(num, den))
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    fn reduce(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = gcd(&num, &den);
        let mut num = num.div_exact(&g).expect("gcd divides numerator");
        let den = den.div_exact(&g).expect("gcd divides denominator");
        let (den_n, shift, neg) = den.unit_normalized();
        num = num.shift(-shift);
        if neg {
            num = -num;
        }
        Self { num, den: den_n }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial this function equals, if the denominator is trivial.
    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn involute(&self) -> Self {
        Self::reduce(self.num.involute(), self.den.involute())
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.involute()
    }

    /// Value at `t = 1` as a reduced fraction `(p, q)` with `q > 0`, or `None`
    /// when the denominator vanishes there.
    pub fn eval_at_one(&self) -> Option<(BigInt, BigInt)> {
        let d = self.den.eval_at_one();
        if d.is_zero() {
            return None;
        }
        let n = self.num.eval_at_one();
        let g = num_integer::Integer::gcd(&n, &d);
        let (mut n, mut d) = (n / &g, d / &g);
        if d < BigInt::zero() {
            n = -n;
            d = -d;
        }
        Some((n, d))
    }

    pub fn recip(&self) -> Result<Self, LaurentError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, LaurentError> {
        Ok(self * &rhs.recip()?)
    }

    /// Rendering with `*`-free terms, e.g. `(t)/(1 - t + t^2)`.
    pub fn to_compact_string(&self) -> String {
        self.render(LaurentPoly::to_compact_string)
    }

    fn render(&self, f: impl Fn(&LaurentPoly) -> String) -> String {
        if self.den.is_one() {
            f(&self.num)
        } else {
            format!("({})/({})", f(&self.num), f(&self.den))
        }
    }
}

impl From<LaurentPoly> for RationalLaurent {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Display for RationalLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(|p| p.to_string()))
    }
}

impl fmt::Debug for RationalLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalLaurent({self})")
    }
}

impl FromStr for RationalLaurent {
    type Err = LaurentError;

    /// Accepts `p` or `(p)/(q)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        if let Some(rest) = trimmed.strip_prefix('(') {
            if let Some(close) = rest.find(')') {
                let num_txt = &rest[..close];
                let after = rest[close + 1..].trim_start();
                if let Some(den_part) = after.strip_prefix('/') {
                    let den_txt = den_part.trim();
                    let den_txt = den_txt
                        .strip_prefix('(')
                        .and_then(|d| d.strip_suffix(')'))
                        .unwrap_or(den_txt);
                    return Self::new(num_txt.parse()?, den_txt.parse()?);
                }
                if after.is_empty() {
                    return Ok(Self::from_poly(num_txt.parse()?));
                }
            }
        }
        Ok(Self::from_poly(trimmed.parse()?))
    }
}

impl Add<&RationalLaurent> for &RationalLaurent {
    type Output = RationalLaurent;
    fn add(self, rhs: &RationalLaurent) -> RationalLaurent {
        if self.den == rhs.den {
            return RationalLaurent::reduce(&self.num + &rhs.num, self.den.clone());
        }
        RationalLaurent::reduce(&self.num * &rhs.den + &rhs.num * &self.den, &self.den * &rhs.den)
    }
}

impl Sub<&RationalLaurent> for &RationalLaurent {
    type Output = RationalLaurent;
    fn sub(self, rhs: &RationalLaurent) -> RationalLaurent {
        self + &(-rhs)
    }
}

impl Mul<&RationalLaurent> for &RationalLaurent {
    type Output = RationalLaurent;
    fn mul(self, rhs: &RationalLaurent) -> RationalLaurent {
        RationalLaurent::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalLaurent {
    type Output = RationalLaurent;
    fn neg(self) -> RationalLaurent {
        RationalLaurent {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Add for RationalLaurent {
    type Output = RationalLaurent;
    fn add(self, rhs: RationalLaurent) -> RationalLaurent {
        &self + &rhs
    }
}

impl Sub for RationalLaurent {
    type Output = RationalLaurent;
    fn sub(self, rhs: RationalLaurent) -> RationalLaurent {
        &self - &rhs
    }
}

impl Mul for RationalLaurent {
    type Output = RationalLaurent;
    fn mul(self, rhs: RationalLaurent) -> RationalLaurent {
        &self * &rhs
    }
}

impl Neg for RationalLaurent {
    type Output = RationalLaurent;
    fn neg(self) -> RationalLaurent {
        -&self
    }
}

impl One for RationalLaurent {
    fn one() -> Self {
        RationalLaurent::one()
    }
}
