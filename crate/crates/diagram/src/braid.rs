use std::fmt;

use crate::diagram::{Components, LinkDiagram, RawCrossing};
use crate::error::DiagramError;

/// A braid word on `strands` strands; letter `i` is the generator crossing
/// strands `i` and `i + 1`, negative letters are inverses.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i64>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i64>) -> Result<Self, DiagramError> {
        if strands == 0 {
            return Err(DiagramError::BraidLetter { letter: 0, strands });
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(DiagramError::BraidLetter { letter: l, strands });
            }
        }
        Ok(Self { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i64] {
        &self.letters
    }

    /// Sum of the exponents of all letters.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.signum()).sum()
    }

    /// PD diagram of the closure. Strands run upward; generator `i` sends the
    /// strand at position `i` over to position `i + 1`, which makes positive
    /// letters positive crossings.
    pub fn closure(&self) -> Result<LinkDiagram, DiagramError> {
        let n = self.strands;
        let mut cur: Vec<usize> = (0..n).collect();
        let mut fresh = n;
        let mut raw = Vec::with_capacity(self.letters.len());
        for (id, &letter) in self.letters.iter().enumerate() {
            let left = letter.unsigned_abs() as usize - 1;
            let right = left + 1;
            let (el, er) = (cur[left], cur[right]);
            let (fl, fr) = (fresh, fresh + 1);
            fresh += 2;
            let (slots, over_db) = if letter > 0 {
                ([er, fr, fl, el], true)
            } else {
                ([el, er, fr, fl], false)
            };
            raw.push(RawCrossing { id, slots, over_db });
            cur[left] = fl;
            cur[right] = fr;
        }
        // Close up: the top edge at each position is the bottom edge there.
        let close: std::collections::HashMap<usize, usize> = cur
            .iter()
            .enumerate()
            .filter(|(i, &l)| *i != l)
            .map(|(i, &l)| (l, i))
            .collect();
        for x in &mut raw {
            for s in &mut x.slots {
                if let Some(&b) = close.get(s) {
                    *s = b;
                }
            }
        }
        let free = cur
            .iter()
            .enumerate()
            .filter(|(i, &l)| *i == l)
            .map(|(i, _)| i)
            .collect();
        LinkDiagram::assemble(raw, Components::Inferred { free })
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "braid {}:", self.strands)?;
        for l in &self.letters {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

/// Sum of exponents of a braid word.
pub fn braid_exponent_sum(b: &BraidWord) -> i64 {
    b.exponent_sum()
}
