use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::congruence::CongruenceStructure;
use crate::error::{Error, Result};
use crate::ring::{RingContext, RingElement};
use crate::roots::count_roots_by_modulus;

use super::NumerationSystem;

/// Classes are listed one by one only up to this many.
pub const COVERAGE_LISTING_LIMIT: usize = 1 << 16;

/// `#A >= max{|m(0)|, |m(1)| + 2}` when `m` has a positive real root, else
/// `max{|m(0)|, |m(1)|}`, with `m` the minimal polynomial of the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerBound {
    pub m_at_zero: BigInt,
    pub m_at_one: BigInt,
    pub positive_real_conjugate: bool,
    pub bound: BigInt,
}

impl LowerBound {
    pub fn from_parts(m_at_zero: BigInt, m_at_one: BigInt, positive_real_conjugate: bool) -> Self {
        let extra = if positive_real_conjugate { 2 } else { 0 };
        let bound = (&m_at_one + BigInt::from(extra)).max(m_at_zero.clone());
        LowerBound {
            m_at_zero,
            m_at_one,
            positive_real_conjugate,
            bound,
        }
    }
}

pub fn lower_bound(sys: &NumerationSystem) -> LowerBound {
    let m = sys.base_min_poly();
    LowerBound::from_parts(
        m.eval(&0.into()).abs(),
        m.eval(&1.into()).abs(),
        m.count_positive_real_roots() > 0,
    )
}

/// Expanding: every conjugate of the base lies strictly outside the unit circle.
pub fn check_expanding(sys: &NumerationSystem) -> Result<bool> {
    let m = sys.base_min_poly();
    if m.count_unit_circle_roots() > 0 {
        return Ok(false);
    }
    let (inside, on, _) = count_roots_by_modulus(&m, sys.context().budget())?;
    Ok(inside == 0 && on == 0)
}

/// No conjugate of the base has modulus one.
pub fn parallel_addition_possible(sys: &NumerationSystem) -> bool {
    sys.base_min_poly().count_unit_circle_roots() == 0
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassCoverage {
    pub canonical_form: Vec<BigInt>,
    pub representative: RingElement,
    /// Alphabet indices falling into this class.
    pub digits: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coverage {
    pub modulus: RingElement,
    pub class_count: BigInt,
    /// Every class when the count is at most [`COVERAGE_LISTING_LIMIT`],
    /// otherwise only the classes that are hit.
    pub classes: Vec<ClassCoverage>,
    pub hit: usize,
}

impl Coverage {
    pub fn pass(&self) -> bool {
        BigInt::from(self.hit) == self.class_count
    }

    pub fn missing(&self) -> BigInt {
        &self.class_count - self.hit
    }

    pub fn compute(ctx: &RingContext, modulus: &RingElement, alphabet: &[RingElement]) -> Result<Self> {
        let cs = CongruenceStructure::new(ctx, modulus)?;
        let mut classes: Vec<ClassCoverage> = Vec::new();
        let listing = cs.class_count().to_usize().filter(|&n| n <= COVERAGE_LISTING_LIMIT);
        if listing.is_some() {
            for rep in cs.representatives() {
                classes.push(ClassCoverage {
                    canonical_form: cs.canonical_form(&rep)?,
                    representative: rep,
                    digits: Vec::new(),
                });
            }
        }
        for (i, a) in alphabet.iter().enumerate() {
            let form = cs.canonical_form(a)?;
            match classes.iter_mut().find(|c| c.canonical_form == form) {
                Some(c) => c.digits.push(i),
                None => classes.push(ClassCoverage {
                    representative: cs.representative_of(&form),
                    canonical_form: form,
                    digits: vec![i],
                }),
            }
        }
        if listing.is_none() {
            classes.sort_by(|a, b| a.canonical_form.cmp(&b.canonical_form));
        }
        let hit = classes.iter().filter(|c| !c.digits.is_empty()).count();
        Ok(Coverage {
            modulus: modulus.clone(),
            class_count: cs.class_count().clone(),
            classes,
            hit,
        })
    }

    /// Representatives of classes holding no digit (listed classes only).
    pub fn empty_classes(&self) -> Vec<&RingElement> {
        self.classes
            .iter()
            .filter(|c| c.digits.is_empty())
            .map(|c| &c.representative)
            .collect()
    }
}

/// Coverage of the classes modulo the base and modulo the base minus one.
pub fn check_representatives(sys: &NumerationSystem) -> Result<(Coverage, Coverage)> {
    let ctx = sys.context();
    Ok((
        Coverage::compute(ctx, sys.base(), sys.alphabet())?,
        Coverage::compute(ctx, &sys.base_minus_one(), sys.alphabet())?,
    ))
}

/// Index of the real embedding sending the base to its largest positive value.
pub fn positive_real_embedding(sys: &NumerationSystem) -> Result<Option<usize>> {
    let ctx = sys.context();
    let mut best: Option<usize> = None;
    for k in ctx.real_embedding_indices() {
        if ctx.real_embedding_sign(sys.base(), k)? != Ordering::Greater {
            continue;
        }
        best = match best {
            None => Some(k),
            Some(j) => {
                let c = compare_across(ctx, sys.base(), k, j)?;
                if c == Ordering::Greater {
                    Some(k)
                } else {
                    Some(j)
                }
            }
        };
    }
    Ok(best)
}

fn compare_across(ctx: &RingContext, u: &RingElement, k: usize, j: usize) -> Result<Ordering> {
    let mut eps = ctx.precision().clone();
    for _ in 0..32 {
        let v = ctx.embedding_values(u, &eps)?;
        if let Some(o) = v[k].re.compare(&v[j].re) {
            return Ok(o);
        }
        eps /= BigInt::from(1u64 << 32);
    }
    Err(Error::PrecisionExhausted)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtremalCheck {
    NotApplicable(String),
    Checked {
        embedding_index: usize,
        /// Alphabet index of the digit with the least embedded value.
        min_digit: usize,
        max_digit: usize,
        same_class: bool,
        /// Digits sharing the class of the extremes (excluding them).
        witnesses: Vec<usize>,
        pass: bool,
    },
}

impl ExtremalCheck {
    pub fn pass(&self) -> Option<bool> {
        match self {
            ExtremalCheck::NotApplicable(_) => None,
            ExtremalCheck::Checked { pass, .. } => Some(*pass),
        }
    }
}

/// Orders digits along the real embedding `k`.
pub(crate) fn compare_digits(
    ctx: &RingContext,
    a: &RingElement,
    b: &RingElement,
    k: usize,
) -> Result<Ordering> {
    ctx.real_embedding_sign(&(a - b), k)
}

pub fn check_extremal_digit_conditions(sys: &NumerationSystem) -> Result<ExtremalCheck> {
    if sys.base_min_poly().count_positive_real_roots() == 0 {
        return Ok(ExtremalCheck::NotApplicable(
            "base has no positive real conjugate".into(),
        ));
    }
    let Some(k) = positive_real_embedding(sys)? else {
        return Ok(ExtremalCheck::NotApplicable(
            "no real embedding of the ambient ring sends the base to a positive number".into(),
        ));
    };
    let ctx = sys.context();
    let alphabet = sys.alphabet();
    let (mut lo, mut hi) = (0, 0);
    for i in 1..alphabet.len() {
        if compare_digits(ctx, &alphabet[i], &alphabet[lo], k)? == Ordering::Less {
            lo = i;
        }
        if compare_digits(ctx, &alphabet[i], &alphabet[hi], k)? == Ordering::Greater {
            hi = i;
        }
    }
    let cs = CongruenceStructure::new(ctx, &sys.base_minus_one())?;
    let same_class = cs.congruent(&alphabet[lo], &alphabet[hi])?;
    let mut witnesses = Vec::new();
    let pass = if same_class {
        for (i, c) in alphabet.iter().enumerate() {
            if i != lo && i != hi && cs.congruent(c, &alphabet[lo])? {
                witnesses.push(i);
            }
        }
        !witnesses.is_empty()
    } else {
        let mut lo_mate = false;
        let mut hi_mate = false;
        for (i, c) in alphabet.iter().enumerate() {
            if i != lo && cs.congruent(c, &alphabet[lo])? {
                lo_mate = true;
                witnesses.push(i);
            } else if i != hi && cs.congruent(c, &alphabet[hi])? {
                hi_mate = true;
                witnesses.push(i);
            }
        }
        lo_mate && hi_mate
    };
    Ok(ExtremalCheck::Checked {
        embedding_index: k,
        min_digit: lo,
        max_digit: hi,
        same_class,
        witnesses,
        pass,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisReport {
    /// `None` when the modulus comparison could not be certified.
    pub expanding: Option<bool>,
    pub unit_modulus_conjugate: bool,
    pub positive_real_conjugate: bool,
    pub class_count_base: BigInt,
    pub class_count_base_minus_one: BigInt,
    pub lower_bound: LowerBound,
    pub coverage_base: Coverage,
    pub coverage_base_minus_one: Coverage,
    pub extremal_check: ExtremalCheck,
    pub warnings: Vec<String>,
}

impl AnalysisReport {
    /// Necessary conditions that can be refuted for this alphabet.
    pub fn pass(&self) -> bool {
        !self.unit_modulus_conjugate
            && self.coverage_base.pass()
            && self.coverage_base_minus_one.pass()
            && self.extremal_check.pass() != Some(false)
            && BigInt::from(self.alphabet_size()) >= self.lower_bound.bound
    }

    fn alphabet_size(&self) -> usize {
        self.coverage_base.classes.iter().map(|c| c.digits.len()).sum()
    }
}

pub fn analyze(sys: &NumerationSystem) -> Result<AnalysisReport> {
    let mut warnings = sys.warnings();
    let expanding = match check_expanding(sys) {
        Ok(b) => Some(b),
        Err(Error::PrecisionExhausted) => {
            warnings.push("expanding property could not be certified".into());
            None
        }
        Err(e) => return Err(e),
    };
    let lb = lower_bound(sys);
    let (cov_b, cov_b1) = check_representatives(sys)?;
    let extremal = check_extremal_digit_conditions(sys)?;
    if let ExtremalCheck::NotApplicable(why) = &extremal {
        warnings.push(format!("extremal digit conditions skipped: {why}"));
    }
    if sys.base_min_poly().degree() < sys.context().degree() {
        warnings.push(format!(
            "base generates a proper subring of the ambient ring {}; congruences are taken in the ambient ring",
            sys.context().min_poly()
        ));
    }
    warnings.push("the lower bound assumes every element of the ring is representable".into());
    Ok(AnalysisReport {
        expanding,
        unit_modulus_conjugate: !parallel_addition_possible(sys),
        positive_real_conjugate: lb.positive_real_conjugate,
        class_count_base: cov_b.class_count.clone(),
        class_count_base_minus_one: cov_b1.class_count.clone(),
        lower_bound: lb,
        coverage_base: cov_b,
        coverage_base_minus_one: cov_b1,
        extremal_check: extremal,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numsystem::{build_system, integer_system};
    use crate::poly::IntPolynomial;
    use crate::ring::default_precision;

    fn quadratic(min: &[i64], base: &[i64], digits: std::ops::RangeInclusive<i64>) -> NumerationSystem {
        build_system(
            IntPolynomial::from_i64(min),
            base.iter().map(|&x| x.into()).collect(),
            digits.map(|a| vec![a.into(), 0.into()]).collect(),
            0,
            default_precision(),
        )
        .unwrap()
    }

    #[test]
    fn lower_bounds() {
        assert_eq!(lower_bound(&integer_system(2, 0..=2).unwrap()).bound, 3.into());
        assert_eq!(lower_bound(&integer_system(10, -6..=6).unwrap()).bound, 11.into());
        let minus_sqrt5 = quadratic(&[-1, -1, 1], &[1, -2], -2..=3);
        let lb = lower_bound(&minus_sqrt5);
        assert_eq!((lb.m_at_zero.clone(), lb.m_at_one.clone()), (5.into(), 4.into()));
        assert_eq!(lb.bound, 6.into());
    }

    #[test]
    fn expanding_and_unit_circle() {
        let root5 = quadratic(&[-5, 0, 1], &[0, 1], 0..=4);
        assert!(check_expanding(&root5).unwrap());
        let golden = build_system(
            IntPolynomial::from_i64(&[-1, -1, 1]),
            vec![0.into(), 1.into()],
            vec![vec![0.into(), 0.into()], vec![1.into(), 0.into()]],
            1,
            default_precision(),
        )
        .unwrap();
        assert!(!check_expanding(&golden).unwrap());
        assert!(parallel_addition_possible(&golden));
        assert!(check_expanding(&integer_system(2, 0..=1).unwrap()).unwrap());
    }

    #[test]
    fn coverage() {
        let (b, b1) = check_representatives(&integer_system(2, 0..=2).unwrap()).unwrap();
        assert!(b.pass() && b1.pass());
        let (b, _) = check_representatives(&integer_system(2, [0, 2]).unwrap()).unwrap();
        assert!(!b.pass());
        assert_eq!(b.empty_classes(), vec![&RingElement::from_i64(&[1])]);
        let minus_sqrt5 = quadratic(&[-1, -1, 1], &[1, -2], -2..=3);
        let (b, b1) = check_representatives(&minus_sqrt5).unwrap();
        assert!(b.pass());
        assert!(!b1.pass());
        assert_eq!(b1.hit, 2);
    }

    #[test]
    fn extremal_conditions() {
        let check = |s: NumerationSystem| check_extremal_digit_conditions(&s).unwrap().pass();
        assert_eq!(check(integer_system(2, 0..=2).unwrap()), Some(true));
        assert_eq!(check(integer_system(2, 0..=1).unwrap()), Some(false));
        let av = integer_system(10, -6..=6).unwrap();
        match check_extremal_digit_conditions(&av).unwrap() {
            ExtremalCheck::Checked { min_digit, max_digit, same_class, pass, .. } => {
                assert_eq!((min_digit, max_digit), (0, 12));
                assert!(!same_class && pass);
            }
            other => panic!("{other:?}"),
        }
        let neg = integer_system(-2, -1..=1).unwrap();
        assert!(matches!(
            check_extremal_digit_conditions(&neg).unwrap(),
            ExtremalCheck::NotApplicable(_)
        ));
    }
}
