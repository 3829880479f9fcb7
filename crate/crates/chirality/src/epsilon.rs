use std::fmt;
use std::str::FromStr;

use crate::error::ChiralityError;

/// A choice of sign per component: an achiral map of this type sends
/// component `i` to itself with orientation multiplied by `eps[i]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EpsilonType(Vec<i8>);

impl EpsilonType {
    pub fn new(signs: &[i32]) -> Result<Self, ChiralityError> {
        signs
            .iter()
            .map(|&s| match s {
                1 => Ok(1),
                -1 => Ok(-1),
                _ => Err(ChiralityError::BadEpsilon),
            })
            .collect::<Result<_, _>>()
            .map(EpsilonType)
    }

    /// Type whose entry `i` is `-1` exactly when bit `i` of `mask` is set.
    pub fn from_mask(len: usize, mask: usize) -> Self {
        EpsilonType((0..len).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect())
    }

    pub fn mask(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &s)| s < 0)
            .map(|(i, _)| 1 << i)
            .sum()
    }

    /// All `2^len` types, in mask order.
    pub fn all(len: usize) -> impl Iterator<Item = EpsilonType> {
        (0..1usize << len).map(move |m| Self::from_mask(len, m))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> i32 {
        self.0[i] as i32
    }

    pub fn signs(&self) -> Vec<i32> {
        self.0.iter().map(|&s| s as i32).collect()
    }

    /// Product of the entries.
    pub fn pi(&self) -> i32 {
        self.0.iter().map(|&s| s as i32).product()
    }
}

impl fmt::Display for EpsilonType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for EpsilonType {
    type Err = ChiralityError;

    /// Accepts `(1,-1)`, `1,-1` or `+-`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let signs: Vec<i32> = if !s.chars().all(|c| c == '+' || c == '-') {
            s.split(',')
                .map(|x| match x.trim() {
                    "1" | "+1" | "+" => Ok(1),
                    "-1" | "-" => Ok(-1),
                    _ => Err(ChiralityError::BadEpsilon),
                })
                .collect::<Result<_, _>>()?
        } else {
            s.chars()
                .map(|c| match c {
                    '+' => Ok(1),
                    '-' => Ok(-1),
                    _ => Err(ChiralityError::BadEpsilon),
                })
                .collect::<Result<_, _>>()?
        };
        if signs.is_empty() {
            return Err(ChiralityError::BadEpsilon);
        }
        EpsilonType::new(&signs)
    }
}

/// What is known about achirality of one type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    /// An obstruction rules this type out.
    ChiralProven,
    /// No obstruction found.
    AchiralPossible,
    /// Follows from an if-and-only-if rule applied to declared facts.
    AchiralProven,
}

impl Status {
    pub fn is_chiral(self) -> bool {
        self == Status::ChiralProven
    }

    pub fn from_bool(achiral: bool) -> Self {
        if achiral {
            Status::AchiralProven
        } else {
            Status::ChiralProven
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::ChiralProven => "chiral-proven",
            Status::AchiralPossible => "achiral-possible",
            Status::AchiralProven => "achiral-proven",
        })
    }
}
