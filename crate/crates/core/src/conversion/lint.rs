use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::One;

use crate::congruence::CongruenceStructure;
use crate::error::Result;
use crate::numsystem::{positive_real_embedding, NumerationSystem};
use crate::ring::RingElement;

use super::LocalRule;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LintFinding {
    /// `φ(b, ..., b)` is not congruent to `b` modulo `β - 1`.
    ConstantWindowNotCongruent { digit: usize, output: usize },
    /// `φ(b, ..., b) = λ` for some `b > λ` with `b >= 0` or `t = 0`.
    ConstantWindowHitsMinimum { digit: usize },
    /// `φ(b, ..., b) = Λ` for some `b < Λ` with `b <= 0` or `t = 0`.
    ConstantWindowHitsMaximum { digit: usize },
    /// `φ(Λ, ..., Λ) = Λ` with `Λ != 0`.
    MaximumFixedPoint { digit: usize },
    /// `φ(λ, ..., λ) = λ` with `λ != 0`.
    MinimumFixedPoint { digit: usize },
}

impl LintFinding {
    pub fn kind(&self) -> &'static str {
        match self {
            LintFinding::ConstantWindowNotCongruent { .. } => "constant_window_not_congruent",
            LintFinding::ConstantWindowHitsMinimum { .. } => "constant_window_hits_minimum",
            LintFinding::ConstantWindowHitsMaximum { .. } => "constant_window_hits_maximum",
            LintFinding::MaximumFixedPoint { .. } => "maximum_fixed_point",
            LintFinding::MinimumFixedPoint { .. } => "minimum_fixed_point",
        }
    }

    /// Digit index in the input alphabet the finding is about.
    pub fn digit(&self) -> usize {
        match self {
            LintFinding::ConstantWindowNotCongruent { digit, .. }
            | LintFinding::ConstantWindowHitsMinimum { digit }
            | LintFinding::ConstantWindowHitsMaximum { digit }
            | LintFinding::MaximumFixedPoint { digit }
            | LintFinding::MinimumFixedPoint { digit } => *digit,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LintReport {
    pub findings: Vec<LintFinding>,
    pub notices: Vec<String>,
}

/// Necessary conditions on constant windows. The extremal checks need a real
/// embedding in which the base exceeds one; otherwise they are skipped.
pub fn lint_rule(rule: &LocalRule, sys: &NumerationSystem) -> Result<LintReport> {
    let ctx = sys.context();
    let mut report = LintReport::default();
    let b = rule.input_alphabet();
    let a = rule.output_alphabet();
    let cs = CongruenceStructure::new(ctx, &sys.base_minus_one())?;
    let constant_out: Vec<usize> = (0..b.len()).map(|i| rule.table()[rule.constant_window(i)]).collect();
    for (i, &o) in constant_out.iter().enumerate() {
        if !cs.congruent(&a[o], &b[i])? {
            report.findings.push(LintFinding::ConstantWindowNotCongruent { digit: i, output: o });
        }
    }

    let embedding = match positive_real_embedding(sys)? {
        Some(k) => {
            let one = BigRational::one();
            if ctx.compare_embedding_modulus(sys.base(), k, &one)? == Ordering::Greater {
                Some(k)
            } else {
                None
            }
        }
        None => None,
    };
    let Some(k) = embedding else {
        report
            .notices
            .push("extremal digit checks skipped: no real embedding sends the base above one".into());
        return Ok(report);
    };
    let cmp = |x: &RingElement, y: &RingElement| ctx.real_embedding_sign(&(x - y), k);
    let sign = |x: &RingElement| ctx.real_embedding_sign(x, k);
    let (mut lo, mut hi) = (0, 0);
    for i in 1..a.len() {
        if cmp(&a[i], &a[lo])? == Ordering::Less {
            lo = i;
        }
        if cmp(&a[i], &a[hi])? == Ordering::Greater {
            hi = i;
        }
    }
    let (lambda, big_lambda) = (&a[lo], &a[hi]);
    let no_anticipation = rule.anticipation() == 0;
    for (i, &o) in constant_out.iter().enumerate() {
        if o == lo
            && cmp(&b[i], lambda)? == Ordering::Greater
            && (no_anticipation || sign(&b[i])? != Ordering::Less)
        {
            report.findings.push(LintFinding::ConstantWindowHitsMinimum { digit: i });
        }
        if o == hi
            && cmp(&b[i], big_lambda)? == Ordering::Less
            && (no_anticipation || sign(&b[i])? != Ordering::Greater)
        {
            report.findings.push(LintFinding::ConstantWindowHitsMaximum { digit: i });
        }
        if &b[i] == big_lambda && !big_lambda.is_zero() && o == hi {
            report.findings.push(LintFinding::MaximumFixedPoint { digit: i });
        }
        if &b[i] == lambda && !lambda.is_zero() && o == lo {
            report.findings.push(LintFinding::MinimumFixedPoint { digit: i });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conversion::tests::avizienis;
    use crate::numsystem::integer_system;

    #[test]
    fn avizienis_is_clean() {
        let (sys, rule, _) = avizienis();
        let report = lint_rule(&rule, &sys).unwrap();
        assert_eq!(report.findings, vec![]);
    }

    #[test]
    fn fixed_maximum_flagged() {
        let (sys, rule, _) = avizienis();
        // input 6 is index 18, output 6 is index 12
        let six = rule.constant_window(18);
        let bad = rule.with_entry(six, 12).unwrap();
        let report = lint_rule(&bad, &sys).unwrap();
        assert!(report.findings.contains(&LintFinding::MaximumFixedPoint { digit: 18 }));
    }

    #[test]
    fn trivial_alphabet_is_clean() {
        let sys = integer_system(2, [0]).unwrap();
        let rule = LocalRule::identity(sys.alphabet().to_vec(), sys.alphabet().to_vec()).unwrap();
        assert!(lint_rule(&rule, &sys).unwrap().findings.is_empty());
    }
}
