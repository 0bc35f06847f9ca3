//! `p`-local digit set conversion rules and their carry certificates.
//!
//! A window is `(w_(j+t), ..., w_j, ..., w_(j-r))`, most anticipatory digit
//! first, and is indexed in mixed radix `|B|` with the first digit most
//! significant. Carry windows drop the last digit.

mod lint;
mod search;
mod verify;

pub use lint::{lint_rule, LintFinding, LintReport};
pub use search::{search_rule, sum_alphabet, SearchLimits};
pub use verify::{preserves_value, test_rule, verify_certificate, Refutation, Verdict};

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::numsystem::{NumerationSystem, PositionedWord};
use crate::ring::{RingContext, RingElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalRule {
    input_alphabet: Vec<RingElement>,
    output_alphabet: Vec<RingElement>,
    r: usize,
    t: usize,
    table: Vec<usize>,
}

/// Carry table `ψ` over windows of length `p - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CarryCertificate {
    psi: Vec<RingElement>,
}

impl CarryCertificate {
    pub fn new(psi: Vec<RingElement>) -> Self {
        CarryCertificate { psi }
    }

    pub fn psi(&self) -> &[RingElement] {
        &self.psi
    }

    pub fn carry(&self, window: usize) -> &RingElement {
        &self.psi[window]
    }
}

fn zero_position(alphabet: &[RingElement]) -> Option<usize> {
    alphabet.iter().position(RingElement::is_zero)
}

impl LocalRule {
    /// Validates shape, totality and the zero window.
    pub fn new(
        input_alphabet: Vec<RingElement>,
        output_alphabet: Vec<RingElement>,
        r: usize,
        t: usize,
        table: Vec<usize>,
    ) -> Result<Self> {
        let nb = input_alphabet.len();
        let p = r + t + 1;
        let expected = window_count(nb, p)
            .ok_or_else(|| Error::ShapeMismatch(format!("{nb}^{p} windows do not fit in memory")))?;
        if table.len() != expected {
            return Err(Error::ShapeMismatch(format!(
                "table has {} entries, expected {expected}",
                table.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&o| o >= output_alphabet.len()) {
            return Err(Error::DigitIndexOutOfRange {
                index: bad,
                size: output_alphabet.len(),
            });
        }
        let zb = zero_position(&input_alphabet).ok_or(Error::ZeroMissing)?;
        let za = zero_position(&output_alphabet).ok_or(Error::ZeroMissing)?;
        let rule = LocalRule {
            input_alphabet,
            output_alphabet,
            r,
            t,
            table,
        };
        if rule.table[rule.constant_window(zb)] != za {
            return Err(Error::ZeroWindowNonZero);
        }
        Ok(rule)
    }

    /// The rule `u ↦ u_0 - β ψ(u[..p-1]) + ψ(u[1..])`; every value must lie in `A`.
    pub fn from_certificate(
        ctx: &RingContext,
        base: &RingElement,
        input_alphabet: Vec<RingElement>,
        output_alphabet: Vec<RingElement>,
        r: usize,
        t: usize,
        cert: &CarryCertificate,
    ) -> Result<Self> {
        let nb = input_alphabet.len();
        let p = r + t + 1;
        let n = window_count(nb, p).ok_or_else(|| Error::ShapeMismatch("too many windows".into()))?;
        if cert.psi.len() != n / nb.max(1) {
            return Err(Error::ShapeMismatch(format!(
                "certificate has {} carries, expected {}",
                cert.psi.len(),
                n / nb.max(1)
            )));
        }
        let index: HashMap<&RingElement, usize> =
            output_alphabet.iter().enumerate().map(|(i, a)| (a, i)).collect();
        let mut table = Vec::with_capacity(n);
        for w in 0..n {
            let v = certified_output(ctx, base, &input_alphabet, cert, p, t, w);
            match index.get(&v) {
                Some(&i) => table.push(i),
                None => {
                    return Err(Error::Invalid(format!(
                        "carry table sends window {:?} to {v}, outside the output alphabet",
                        digits_of(w, nb, p)
                    )))
                }
            }
        }
        Self::new(input_alphabet, output_alphabet, r, t, table)
    }

    /// `p = 1` rule over `B ⊆ A` mapping each digit to itself.
    pub fn identity(input_alphabet: Vec<RingElement>, output_alphabet: Vec<RingElement>) -> Result<Self> {
        let table = input_alphabet
            .iter()
            .map(|b| {
                output_alphabet
                    .iter()
                    .position(|a| a == b)
                    .ok_or_else(|| Error::Invalid(format!("digit {b} is not an output digit")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(input_alphabet, output_alphabet, 0, 0, table)
    }

    pub fn input_alphabet(&self) -> &[RingElement] {
        &self.input_alphabet
    }

    pub fn output_alphabet(&self) -> &[RingElement] {
        &self.output_alphabet
    }

    pub fn memory(&self) -> usize {
        self.r
    }

    pub fn anticipation(&self) -> usize {
        self.t
    }

    pub fn window_len(&self) -> usize {
        self.r + self.t + 1
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn input_zero(&self) -> usize {
        zero_position(&self.input_alphabet).expect("validated")
    }

    pub fn output_zero(&self) -> usize {
        zero_position(&self.output_alphabet).expect("validated")
    }

    pub fn window_index(&self, digits: &[usize]) -> usize {
        let nb = self.input_alphabet.len();
        digits.iter().fold(0, |acc, &d| acc * nb + d)
    }

    pub fn window_digits(&self, index: usize) -> Vec<usize> {
        digits_of(index, self.input_alphabet.len(), self.window_len())
    }

    /// Index of `(b, ..., b)`.
    pub fn constant_window(&self, b: usize) -> usize {
        self.window_index(&vec![b; self.window_len()])
    }

    pub fn output(&self, window: &[usize]) -> usize {
        self.table[self.window_index(window)]
    }

    /// Copy with one table entry replaced.
    pub fn with_entry(&self, window: usize, out: usize) -> Result<Self> {
        let mut table = self.table.clone();
        table[window] = out;
        Self::new(
            self.input_alphabet.clone(),
            self.output_alphabet.clone(),
            self.r,
            self.t,
            table,
        )
    }
}

pub(crate) fn window_count(nb: usize, p: usize) -> Option<usize> {
    let mut n: usize = 1;
    for _ in 0..p {
        n = n.checked_mul(nb)?;
    }
    Some(n)
}

pub(crate) fn digits_of(mut index: usize, nb: usize, p: usize) -> Vec<usize> {
    let mut out = vec![0; p];
    for slot in out.iter_mut().rev() {
        *slot = index % nb;
        index /= nb;
    }
    out
}

/// `u_t - β ψ(u[..p-1]) + ψ(u[1..])` for the window with index `w`.
pub(crate) fn certified_output(
    ctx: &RingContext,
    base: &RingElement,
    input_alphabet: &[RingElement],
    cert: &CarryCertificate,
    p: usize,
    t: usize,
    w: usize,
) -> RingElement {
    let nb = input_alphabet.len();
    let tail = nb.pow((p - 1) as u32);
    let digit = (w / nb.pow((p - 1 - t) as u32)) % nb;
    let prefix = w / nb;
    let suffix = w % tail;
    let lhs = &input_alphabet[digit] - &ctx.product(base, &cert.psi[prefix]);
    &lhs + &cert.psi[suffix]
}

/// Sliding-window image; output support lies in `[low - t, high + r]`.
pub fn apply_rule(rule: &LocalRule, w: &PositionedWord) -> Result<PositionedWord> {
    let nb = rule.input_alphabet.len();
    for (_, d) in w.iter() {
        if d >= nb {
            return Err(Error::DigitNotInInputAlphabet {
                digit: format!("index {d}"),
            });
        }
    }
    let zb = rule.input_zero();
    let za = rule.output_zero();
    let (Some(lo), Some(hi)) = (w.lowest(), w.highest()) else {
        return Ok(PositionedWord::new());
    };
    let (r, t, p) = (rule.r as i64, rule.t as i64, rule.window_len());
    let mut out = PositionedWord::new();
    let mut window = vec![zb; p];
    for j in lo - t..=hi + r {
        for (i, slot) in window.iter_mut().enumerate() {
            *slot = w.digit_or(j + t - i as i64, zb);
        }
        let z = rule.output(&window);
        if z != za {
            out.set(j, z);
        }
    }
    Ok(out)
}

/// Digitwise sum of two words over the system alphabet, as a word over the
/// rule's input alphabet.
pub fn digitwise_sum(
    rule: &LocalRule,
    sys: &NumerationSystem,
    x: &PositionedWord,
    y: &PositionedWord,
) -> Result<PositionedWord> {
    let index: HashMap<&RingElement, usize> = rule
        .input_alphabet
        .iter()
        .enumerate()
        .map(|(i, b)| (b, i))
        .collect();
    for a in sys.alphabet() {
        for b in sys.alphabet() {
            let s = a + b;
            if !index.contains_key(&s) {
                return Err(Error::InputAlphabetTooSmall { digit: s.to_string() });
            }
        }
    }
    let zero = sys.zero_index();
    let digit = |d: usize| {
        sys.alphabet().get(d).ok_or(Error::DigitIndexOutOfRange {
            index: d,
            size: sys.alphabet().len(),
        })
    };
    let exps: std::collections::BTreeSet<i64> = x.iter().chain(y.iter()).map(|(e, _)| e).collect();
    let mut out = PositionedWord::new();
    for e in exps {
        let s = digit(x.digit_or(e, zero))? + digit(y.digit_or(e, zero))?;
        out.set(e, index[&s]);
    }
    Ok(out)
}

/// Parallel addition: digitwise sum followed by the rule.
pub fn parallel_add(
    rule: &LocalRule,
    sys: &NumerationSystem,
    x: &PositionedWord,
    y: &PositionedWord,
) -> Result<PositionedWord> {
    apply_rule(rule, &digitwise_sum(rule, sys, x, y)?)
}

/// Rebinds a rule to another embedding; coordinates, and so tables, are unchanged.
pub fn conjugate_transfer(
    rule: &LocalRule,
    sys: &NumerationSystem,
    new_embedding_index: usize,
) -> Result<(LocalRule, NumerationSystem)> {
    let moved = sys.with_embedding(new_embedding_index).map_err(|e| match e {
        Error::BaseNotGreaterThanOne => Error::TargetEmbeddingNotGreaterThanOne,
        other => other,
    })?;
    Ok((rule.clone(), moved))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numsystem::{integer_system, value_of_word, word_value};

    fn ints(r: std::ops::RangeInclusive<i64>) -> Vec<RingElement> {
        r.map(|a| RingElement::from_i64(&[a])).collect()
    }

    pub(crate) fn avizienis() -> (NumerationSystem, LocalRule, CarryCertificate) {
        let sys = integer_system(10, -6..=6).unwrap();
        let b = ints(-12..=12);
        let psi = b
            .iter()
            .map(|w| {
                let v = &w.coords()[0];
                let c = if *v >= 6.into() { 1 } else if *v <= (-6).into() { -1 } else { 0 };
                RingElement::from_i64(&[c])
            })
            .collect();
        let cert = CarryCertificate::new(psi);
        let rule = LocalRule::from_certificate(
            sys.context(),
            sys.base(),
            b,
            sys.alphabet().to_vec(),
            1,
            0,
            &cert,
        )
        .unwrap();
        (sys, rule, cert)
    }

    #[test]
    fn avizienis_twelve() {
        let (sys, rule, _) = avizienis();
        let twelve = rule.input_alphabet().iter().position(|b| b == &RingElement::from_i64(&[12])).unwrap();
        let out = apply_rule(&rule, &PositionedWord::from_pairs([(0, twelve)])).unwrap();
        let a = |i: usize| rule.output_alphabet()[i].coords()[0].clone();
        assert_eq!(out.len(), 2);
        assert_eq!(a(out.get(0).unwrap()), 2.into());
        assert_eq!(a(out.get(1).unwrap()), 1.into());
        let six = sys.index_of(&RingElement::from_i64(&[6])).unwrap();
        let x = PositionedWord::from_pairs([(0, six)]);
        let sum = parallel_add(&rule, &sys, &x, &x).unwrap();
        let (v, m) = word_value(sys.context(), sys.base(), rule.output_alphabet(), &sum).unwrap();
        assert_eq!((v, m), (RingElement::from_i64(&[12]), 0));
        assert_eq!(value_of_word(&x, &sys).unwrap().0, RingElement::from_i64(&[6]));
    }

    #[test]
    fn identity_rule() {
        let digits = ints(-1..=1);
        let rule = LocalRule::identity(digits.clone(), digits).unwrap();
        let w = PositionedWord::from_pairs([(-2, 0), (3, 2)]);
        assert_eq!(apply_rule(&rule, &w).unwrap(), w);
        assert_eq!(apply_rule(&rule, &PositionedWord::new()).unwrap(), PositionedWord::new());
    }

    #[test]
    fn shape_errors() {
        let digits = ints(0..=1);
        assert!(matches!(
            LocalRule::new(digits.clone(), digits.clone(), 1, 0, vec![0; 3]),
            Err(Error::ShapeMismatch(_))
        ));
        assert_eq!(
            LocalRule::new(digits.clone(), digits.clone(), 0, 0, vec![1, 1]),
            Err(Error::ZeroWindowNonZero)
        );
        let rule = LocalRule::identity(digits.clone(), digits).unwrap();
        assert!(matches!(
            apply_rule(&rule, &PositionedWord::from_pairs([(0, 5)])),
            Err(Error::DigitNotInInputAlphabet { .. })
        ));
    }

    #[test]
    fn input_alphabet_must_hold_sums() {
        let sys = integer_system(2, 0..=1).unwrap();
        let rule = LocalRule::identity(ints(0..=1), ints(0..=1)).unwrap();
        let one = PositionedWord::from_pairs([(0, 1)]);
        assert!(matches!(
            parallel_add(&rule, &sys, &one, &one),
            Err(Error::InputAlphabetTooSmall { .. })
        ));
    }
}
