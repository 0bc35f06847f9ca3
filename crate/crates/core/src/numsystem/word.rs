use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{RingContext, RingElement};

use super::NumerationSystem;

/// Finite-support digit string: exponent to alphabet index. Absent exponents
/// hold the zero digit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PositionedWord {
    digits: BTreeMap<i64, usize>,
}

impl PositionedWord {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, usize)>) -> Self {
        PositionedWord {
            digits: pairs.into_iter().collect(),
        }
    }

    /// Digits `x_n ... x_0` most significant first, ending at exponent `low`.
    pub fn from_msd(digits: &[usize], low: i64) -> Self {
        let n = digits.len() as i64;
        Self::from_pairs(
            digits
                .iter()
                .enumerate()
                .map(|(i, &a)| (low + n - 1 - i as i64, a)),
        )
    }

    pub fn set(&mut self, exp: i64, digit: usize) {
        self.digits.insert(exp, digit);
    }

    pub fn get(&self, exp: i64) -> Option<usize> {
        self.digits.get(&exp).copied()
    }

    pub fn digit_or(&self, exp: i64, zero: usize) -> usize {
        self.get(exp).unwrap_or(zero)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (i64, usize)> + '_ {
        self.digits.iter().map(|(&e, &d)| (e, d))
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn lowest(&self) -> Option<i64> {
        self.digits.keys().next().copied()
    }

    pub fn highest(&self) -> Option<i64> {
        self.digits.keys().next_back().copied()
    }

    /// Drops entries holding the zero digit.
    pub fn trimmed(&self, zero: usize) -> Self {
        PositionedWord {
            digits: self
                .digits
                .iter()
                .filter(|(_, &d)| d != zero)
                .map(|(&e, &d)| (e, d))
                .collect(),
        }
    }

    /// Indices from the highest to the lowest stored exponent, gaps filled with `zero`.
    pub fn to_msd(&self, zero: usize) -> Vec<usize> {
        match (self.lowest(), self.highest()) {
            (Some(lo), Some(hi)) => (lo..=hi).rev().map(|e| self.digit_or(e, zero)).collect(),
            _ => Vec::new(),
        }
    }
}

impl fmt::Display for PositionedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (e, d)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}: {d}")?;
        }
        write!(f, "}}")
    }
}

/// `(Σ x_j β^(j+m), m)` with `m = max(0, -lowest exponent)`.
pub fn word_value(
    ctx: &RingContext,
    base: &RingElement,
    alphabet: &[RingElement],
    w: &PositionedWord,
) -> Result<(RingElement, u32)> {
    let (Some(lo), Some(hi)) = (w.lowest(), w.highest()) else {
        return Ok((ctx.zero(), 0));
    };
    let shift = (-lo).max(0);
    let mut acc = ctx.zero();
    for e in (lo.min(0)..=hi).rev() {
        acc = ctx.product(&acc, base);
        if let Some(d) = w.get(e) {
            let a = alphabet.get(d).ok_or(Error::DigitIndexOutOfRange {
                index: d,
                size: alphabet.len(),
            })?;
            acc = &acc + a;
        }
    }
    Ok((acc, shift as u32))
}

pub fn value_of_word(w: &PositionedWord, sys: &NumerationSystem) -> Result<(RingElement, u32)> {
    word_value(sys.context(), sys.base(), sys.alphabet(), w)
}

/// `v1 / β^m1 = v2 / β^m2`, decided as `v1 β^m2 = v2 β^m1`.
pub fn aligned_equal(
    ctx: &RingContext,
    base: &RingElement,
    (v1, m1): &(RingElement, u32),
    (v2, m2): &(RingElement, u32),
) -> bool {
    let m = (*m1).min(*m2);
    let l = ctx.product(v1, &ctx.pow(base, m2 - m));
    let r = ctx.product(v2, &ctx.pow(base, m1 - m));
    l == r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numsystem::integer_system;

    #[test]
    fn values() {
        let s = integer_system(2, 0..=2).unwrap();
        let one = s.index_of(&RingElement::from_i64(&[1])).unwrap();
        assert_eq!(
            value_of_word(&PositionedWord::new(), &s).unwrap(),
            (RingElement::from_i64(&[0]), 0)
        );
        let w = PositionedWord::from_pairs([(1, one), (0, one)]);
        assert_eq!(value_of_word(&w, &s).unwrap(), (RingElement::from_i64(&[3]), 0));
        let w = PositionedWord::from_pairs([(-1, one)]);
        assert_eq!(value_of_word(&w, &s).unwrap(), (RingElement::from_i64(&[1]), 1));
        // 1 at exponent 2 with a gap down to exponent 0 stays 4
        let w = PositionedWord::from_pairs([(2, one)]);
        assert_eq!(value_of_word(&w, &s).unwrap().0, RingElement::from_i64(&[4]));
    }

    #[test]
    fn alignment() {
        let s = integer_system(2, 0..=2).unwrap();
        let (ctx, b) = (s.context(), s.base());
        let half = (RingElement::from_i64(&[1]), 1);
        let two_quarters = (RingElement::from_i64(&[2]), 2);
        assert!(aligned_equal(ctx, b, &half, &two_quarters));
        assert!(!aligned_equal(ctx, b, &half, &(RingElement::from_i64(&[1]), 0)));
    }

    #[test]
    fn msd_roundtrip() {
        let w = PositionedWord::from_msd(&[1, 0, 2], -1);
        assert_eq!(w.get(1), Some(1));
        assert_eq!(w.get(-1), Some(2));
        assert_eq!(w.to_msd(0), vec![1, 0, 2]);
    }
}
