use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::numsystem::{aligned_equal, word_value, PositionedWord};
use crate::ring::{RingContext, RingElement};

use super::{apply_rule, certified_output, CarryCertificate, LocalRule};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refutation {
    /// The certificate identity fails on this window (digit indices, most
    /// anticipatory first).
    Window {
        window: Vec<usize>,
        table_output: RingElement,
        certified_output: RingElement,
    },
    /// The carry of the zero window is not zero.
    ZeroCarry,
    /// A word whose converted value differs from its own.
    Word(PositionedWord),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    CertifiedCorrect { windows_checked: usize },
    PassedBoundedTests { exhaustive_words: u128, random_words: usize },
    Refuted(Refutation),
}

impl Verdict {
    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted(_))
    }

    pub fn witness_word(&self) -> Option<&PositionedWord> {
        match self {
            Verdict::Refuted(Refutation::Word(w)) => Some(w),
            _ => None,
        }
    }
}

/// Checks `table(u) = u_0 - β ψ(u[..p-1]) + ψ(u[1..])` on every window.
pub fn verify_certificate(
    rule: &LocalRule,
    cert: &CarryCertificate,
    ctx: &RingContext,
    base: &RingElement,
) -> Result<Verdict> {
    let nb = rule.input_alphabet().len();
    let p = rule.window_len();
    let expected = rule.table().len() / nb;
    if cert.psi().len() != expected {
        return Err(Error::ShapeMismatch(format!(
            "certificate has {} carries, expected {expected}",
            cert.psi().len()
        )));
    }
    if let Some(c) = cert.psi().iter().find(|c| c.dim() != ctx.degree()) {
        return Err(Error::ShapeMismatch(format!(
            "carry {c} has dimension {}, expected {}",
            c.dim(),
            ctx.degree()
        )));
    }
    let zb = rule.input_zero();
    let zero_carry = (0..p - 1).fold(0, |acc, _| acc * nb + zb);
    if !cert.carry(zero_carry).is_zero() {
        return Ok(Verdict::Refuted(Refutation::ZeroCarry));
    }
    for (w, &out) in rule.table().iter().enumerate() {
        let expect = certified_output(ctx, base, rule.input_alphabet(), cert, p, rule.anticipation(), w);
        let actual = &rule.output_alphabet()[out];
        if &expect != actual {
            return Ok(Verdict::Refuted(Refutation::Window {
                window: rule.window_digits(w),
                table_output: actual.clone(),
                certified_output: expect,
            }));
        }
    }
    Ok(Verdict::CertifiedCorrect {
        windows_checked: rule.table().len(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum State {
    Live { window: usize, carry: RingElement },
    Dead,
}

/// Exhaustive check of every word supported on `[0, L)` for `L <= max_len`,
/// then `samples` random longer words drawn from `seed`.
///
/// Words are explored with an automaton reading digits from exponent 0 upward:
/// the state is the last `p - 1` digits and the carry `c`, updated by
/// `c' = (c + z_j - w_j) / β`. The word is value-preserving iff every
/// division is exact and the final carry vanishes. Prefixes reaching the same
/// state are merged, keeping the least one read from its top digit down, so
/// the reported counterexample is the shortest and, among those, the least
/// when digits are compared from the most significant end.
pub fn test_rule(
    rule: &LocalRule,
    ctx: &RingContext,
    base: &RingElement,
    max_len: usize,
    samples: usize,
    seed: u64,
) -> Result<Verdict> {
    let div = ctx.divisor(base)?;
    let nb = rule.input_alphabet().len();
    let p = rule.window_len();
    let (r, t) = (rule.memory(), rule.anticipation());
    let zb = rule.input_zero();
    let head = nb.pow((p - 1) as u32);
    let digit_place = nb.pow((p - 1 - t) as u32);
    let zero_window = (0..p - 1).fold(0, |acc, _| acc * nb + zb);
    let deltas: Vec<RingElement> = (0..rule.table().len())
        .map(|w| {
            let wj = (w / digit_place) % nb;
            &rule.output_alphabet()[rule.table()[w]] - &rule.input_alphabet()[wj]
        })
        .collect();

    let mut exhaustive: u128 = 0;
    for len in 1..=max_len {
        exhaustive = exhaustive.saturating_add(
            (nb as u128 - 1).saturating_mul((nb as u128).saturating_pow(len as u32 - 1)),
        );
        // prefixes are stored newest digit first
        let mut states: HashMap<State, Vec<usize>> = HashMap::new();
        states.insert(
            State::Live {
                window: zero_window,
                carry: ctx.zero(),
            },
            Vec::new(),
        );
        for m in 0..len + r + t {
            let choices: Vec<usize> = if m + 1 < len {
                (0..nb).collect()
            } else if m + 1 == len {
                (0..nb).filter(|&d| d != zb).collect()
            } else {
                vec![zb]
            };
            let mut next: HashMap<State, Vec<usize>> = HashMap::with_capacity(states.len());
            for (state, prefix) in &states {
                for &d in &choices {
                    let target = match state {
                        State::Dead => State::Dead,
                        State::Live { window, carry } => {
                            let full = d * head + window;
                            match div.divide(&(carry + &deltas[full])) {
                                Some(c) => State::Live {
                                    window: full / nb,
                                    carry: c,
                                },
                                None => State::Dead,
                            }
                        }
                    };
                    let candidate = if m < len {
                        let mut v = Vec::with_capacity(prefix.len() + 1);
                        v.push(d);
                        v.extend_from_slice(prefix);
                        v
                    } else {
                        prefix.clone()
                    };
                    match next.get_mut(&target) {
                        Some(best) if *best <= candidate => {}
                        Some(best) => *best = candidate,
                        None => {
                            next.insert(target, candidate);
                        }
                    }
                }
            }
            states = next;
        }
        let failing = states
            .iter()
            .filter(|(s, _)| match s {
                State::Dead => true,
                State::Live { carry, .. } => !carry.is_zero(),
            })
            .map(|(_, prefix)| prefix)
            .min();
        if let Some(prefix) = failing {
            let n = prefix.len() as i64;
            let word = PositionedWord::from_pairs(
                prefix.iter().enumerate().map(|(i, &d)| (n - 1 - i as i64, d)),
            )
            .trimmed(zb);
            return Ok(Verdict::Refuted(Refutation::Word(word)));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let len = rng.gen_range(max_len + 1..=2 * max_len + 2);
        let mut w = PositionedWord::new();
        for e in 0..len {
            let d = if e + 1 == len && nb > 1 {
                let d = rng.gen_range(0..nb - 1);
                if d >= zb { d + 1 } else { d }
            } else {
                rng.gen_range(0..nb)
            };
            if d != zb {
                w.set(e as i64, d);
            }
        }
        if !preserves_value(rule, ctx, base, &w)? {
            return Ok(Verdict::Refuted(Refutation::Word(w)));
        }
    }
    Ok(Verdict::PassedBoundedTests {
        exhaustive_words: exhaustive,
        random_words: samples,
    })
}

/// Whether converting `w` keeps its value.
pub fn preserves_value(
    rule: &LocalRule,
    ctx: &RingContext,
    base: &RingElement,
    w: &PositionedWord,
) -> Result<bool> {
    let z = apply_rule(rule, w)?;
    let vw = word_value(ctx, base, rule.input_alphabet(), w)?;
    let vz = word_value(ctx, base, rule.output_alphabet(), &z)?;
    Ok(aligned_equal(ctx, base, &vw, &vz))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conversion::tests::avizienis;
    use crate::numsystem::integer_system;

    #[test]
    fn avizienis_certificate() {
        let (sys, rule, cert) = avizienis();
        assert_eq!(
            verify_certificate(&rule, &cert, sys.context(), sys.base()).unwrap(),
            Verdict::CertifiedCorrect { windows_checked: 625 }
        );
        let w = rule.window_index(&[18, 12]);
        let bumped = rule.with_entry(w, rule.table()[w] + 1).unwrap();
        match verify_certificate(&bumped, &cert, sys.context(), sys.base()).unwrap() {
            Verdict::Refuted(Refutation::Window { window, .. }) => assert_eq!(window, vec![18, 12]),
            other => panic!("{other:?}"),
        }
        let found = test_rule(&bumped, sys.context(), sys.base(), 3, 0, 1).unwrap();
        assert!(found.is_refuted());
        let word = found.witness_word().unwrap();
        assert!(!preserves_value(&bumped, sys.context(), sys.base(), word).unwrap());
    }

    #[test]
    fn avizienis_bounded() {
        let (sys, rule, _) = avizienis();
        let v = test_rule(&rule, sys.context(), sys.base(), 6, 200, 7).unwrap();
        assert!(matches!(v, Verdict::PassedBoundedTests { .. }));
    }

    #[test]
    fn zero_rule_refuted_by_one() {
        let sys = integer_system(2, 0..=1).unwrap();
        let rule = LocalRule::new(sys.alphabet().to_vec(), sys.alphabet().to_vec(), 0, 0, vec![0, 0]).unwrap();
        let v = test_rule(&rule, sys.context(), sys.base(), 4, 0, 0).unwrap();
        assert_eq!(v, Verdict::Refuted(Refutation::Word(PositionedWord::from_pairs([(0, 1)]))));
    }

    #[test]
    fn identity_passes() {
        let sys = integer_system(3, -1..=1).unwrap();
        let rule = LocalRule::identity(sys.alphabet().to_vec(), sys.alphabet().to_vec()).unwrap();
        let cert = CarryCertificate::new(vec![sys.context().zero()]);
        assert!(matches!(
            verify_certificate(&rule, &cert, sys.context(), sys.base()).unwrap(),
            Verdict::CertifiedCorrect { windows_checked: 3 }
        ));
        assert!(matches!(
            test_rule(&rule, sys.context(), sys.base(), 5, 50, 3).unwrap(),
            Verdict::PassedBoundedTests { .. }
        ));
    }
}
