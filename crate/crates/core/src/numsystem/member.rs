//! Membership in `A[β]` by exhaustive division search.
//!
//! From a state `s` the successors are `(s - a) / β` for the digits `a` with
//! `s ≡ a (mod β)`. For an expanding base every path ends in the attractor
//! `{y : |σ_i(y)| <= R_i}`, `R_i = max_a |σ_i(a)| / (|σ_i(β)| - 1)`, so the
//! reachable state set is finite.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::interval::ComplexBox;
use crate::matrix::IntegerMatrix;
use crate::ring::{Divisor, RingElement};

use super::analysis::{check_expanding, Coverage};
use super::{NumerationSystem, PositionedWord};

/// Attractor enumeration gives up beyond this many coordinate-box points.
pub const MAX_ATTRACTOR_BOX: u64 = 5_000_000;

const BOUND_BITS: u32 = 64;

fn successors<'a>(
    div: &'a Divisor,
    alphabet: &'a [RingElement],
    s: &'a RingElement,
) -> impl Iterator<Item = (usize, RingElement)> + 'a {
    alphabet
        .iter()
        .enumerate()
        .filter_map(move |(i, a)| div.divide(&(s - a)).map(|n| (i, n)))
}

fn require_expanding(sys: &NumerationSystem) -> Result<()> {
    if check_expanding(sys)? {
        Ok(())
    } else {
        Err(Error::BaseNotExpanding)
    }
}

/// A word with nonnegative exponents whose value is `x`, shortest first and
/// then by digit order at the lowest exponent; `None` when `x ∉ A[β]`.
pub fn member_representation(
    sys: &NumerationSystem,
    x: &RingElement,
) -> Result<Option<PositionedWord>> {
    require_expanding(sys)?;
    let ctx = sys.context();
    ctx.element(x.coords().to_vec())?;
    let div = ctx.divisor(sys.base())?;
    let zero = ctx.zero();
    let mut parent: HashMap<RingElement, Option<(RingElement, usize)>> = HashMap::new();
    parent.insert(x.clone(), None);
    let mut queue = VecDeque::from([x.clone()]);
    while let Some(s) = queue.pop_front() {
        if s == zero {
            let mut digits = Vec::new();
            let mut cur = s;
            while let Some(Some((prev, d))) = parent.get(&cur).cloned() {
                digits.push(d);
                cur = prev;
            }
            // digits were collected from the highest exponent down
            let n = digits.len() as i64;
            return Ok(Some(PositionedWord::from_pairs(
                digits.into_iter().enumerate().map(|(i, d)| (n - 1 - i as i64, d)),
            )
            .trimmed(sys.zero_index())));
        }
        for (d, next) in successors(&div, sys.alphabet(), &s) {
            if !parent.contains_key(&next) {
                parent.insert(next.clone(), Some((s.clone(), d)));
                queue.push_back(next);
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingEquality {
    Equal,
    /// A class modulo the base holding no digit.
    UncoveredClass(RingElement),
    /// An attractor element from which zero cannot be reached.
    Unreachable(RingElement),
}

impl RingEquality {
    pub fn is_equal(&self) -> bool {
        matches!(self, RingEquality::Equal)
    }
}

/// Decides `A[β] = Z[ω]` for an expanding base.
pub fn ring_equality(sys: &NumerationSystem) -> Result<RingEquality> {
    require_expanding(sys)?;
    let ctx = sys.context();
    let cov = Coverage::compute(ctx, sys.base(), sys.alphabet())?;
    if !cov.pass() {
        let rep = match cov.empty_classes().first() {
            Some(r) => (*r).clone(),
            None => return Err(Error::Invalid("too many classes to name an uncovered one".into())),
        };
        return Ok(RingEquality::UncoveredClass(rep));
    }
    let ball = attractor_states(sys)?;
    let div = ctx.divisor(sys.base())?;

    // forward closure with reverse edges
    let mut index: HashMap<RingElement, usize> = HashMap::new();
    let mut states: Vec<RingElement> = Vec::new();
    let mut reverse: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::new();
    let intern = |s: &RingElement,
                  index: &mut HashMap<RingElement, usize>,
                  states: &mut Vec<RingElement>,
                  reverse: &mut Vec<Vec<usize>>,
                  queue: &mut VecDeque<usize>| {
        if let Some(&i) = index.get(s) {
            return i;
        }
        let i = states.len();
        index.insert(s.clone(), i);
        states.push(s.clone());
        reverse.push(Vec::new());
        queue.push_back(i);
        i
    };
    let zero = intern(&ctx.zero(), &mut index, &mut states, &mut reverse, &mut queue);
    for s in &ball {
        intern(s, &mut index, &mut states, &mut reverse, &mut queue);
    }
    while let Some(i) = queue.pop_front() {
        let s = states[i].clone();
        for (_, next) in successors(&div, sys.alphabet(), &s) {
            let j = intern(&next, &mut index, &mut states, &mut reverse, &mut queue);
            reverse[j].push(i);
        }
    }
    let mut reached = vec![false; states.len()];
    reached[zero] = true;
    let mut queue = VecDeque::from([zero]);
    while let Some(j) = queue.pop_front() {
        for &i in &reverse[j] {
            if !reached[i] {
                reached[i] = true;
                queue.push_back(i);
            }
        }
    }
    let stuck = ball
        .iter()
        .filter(|s| !reached[index[*s]])
        .min_by(|a, b| witness_key(a).cmp(&witness_key(b)));
    Ok(match stuck {
        Some(s) => RingEquality::Unreachable(s.clone()),
        None => RingEquality::Equal,
    })
}

fn witness_key(s: &RingElement) -> (BigInt, &[BigInt]) {
    (s.max_abs(), s.coords())
}

/// A superset of the attractor, in lexicographic coordinate order: every
/// element whose certified embedding enclosures are within the radii.
pub fn attractor_states(sys: &NumerationSystem) -> Result<Vec<RingElement>> {
    let ctx = sys.context();
    let d = ctx.degree();
    let radii = attractor_radii(sys)?;
    let roots = ctx.root_boxes();
    let root_moduli: Vec<BigRational> = roots.iter().map(|b| b.modulus_upper(BOUND_BITS)).collect();

    // t_k = Tr(ω^k y) = Σ_i ρ_i^k σ_i(y) and t = G c with G_kj = Tr(ω^(j+k)).
    let traces = power_traces(ctx.companion(), 2 * d - 1);
    let mut g = IntegerMatrix::zeros(d, d);
    for k in 0..d {
        for j in 0..d {
            g[(k, j)] = traces[j + k].clone();
        }
    }
    let t_bounds: Vec<BigRational> = (0..d)
        .map(|k| {
            radii
                .iter()
                .zip(&root_moduli)
                .map(|(r, m)| r * pow_rat(m, k))
                .fold(BigRational::zero(), |a, b| a + b)
        })
        .collect();
    let det = g.determinant()?.abs();
    let adj = g.adjugate()?;
    let mut bounds = Vec::with_capacity(d);
    let mut size: u64 = 1;
    for j in 0..d {
        let mut s = BigRational::zero();
        for k in 0..d {
            s += BigRational::from_integer(adj[(j, k)].abs()) * &t_bounds[k];
        }
        let b = (s / BigRational::from_integer(det.clone())).floor().to_integer();
        let side = (&b * BigInt::from(2) + BigInt::one()).to_u64().unwrap_or(u64::MAX);
        size = size.saturating_mul(side);
        bounds.push(b);
    }
    if size > MAX_ATTRACTOR_BOX {
        return Err(Error::Invalid(format!(
            "attractor coordinate box has {size} points, above the limit {MAX_ATTRACTOR_BOX}"
        )));
    }

    // powers ρ_i^j as boxes, to screen candidates
    let powers: Vec<Vec<ComplexBox>> = roots
        .iter()
        .map(|r| {
            let mut p = vec![ComplexBox::integer(&BigInt::one())];
            for _ in 1..d {
                let next = p.last().unwrap().mul(r);
                p.push(next);
            }
            p
        })
        .collect();
    let radii_sq: Vec<BigRational> = radii.iter().map(|r| r * r).collect();
    let mut out = Vec::new();
    let mut c: Vec<BigInt> = bounds.iter().map(|b| -b).collect();
    loop {
        let keep = powers.iter().zip(&radii_sq).all(|(pw, r2)| {
            let mut acc = ComplexBox::integer(&BigInt::zero());
            for (cj, p) in c.iter().zip(pw) {
                if !cj.is_zero() {
                    acc = acc.add(&p.scale(&BigRational::from_integer(cj.clone())));
                }
            }
            &acc.norm_sqr().lo <= r2
        });
        if keep {
            out.push(RingElement::new(c.clone()));
        }
        let mut pos = d;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            c[pos] += 1;
            if c[pos] <= bounds[pos] {
                break;
            }
            c[pos] = -bounds[pos].clone();
        }
    }
}

/// Certified upper bounds on `R_i`, inflated by the enclosure precision.
fn attractor_radii(sys: &NumerationSystem) -> Result<Vec<BigRational>> {
    let ctx = sys.context();
    let one = BigRational::one();
    let mut eps = ctx.precision().clone();
    for _ in 0..16 {
        let beta = ctx.embedding_values(sys.base(), &eps)?;
        let lows: Vec<BigRational> = beta.iter().map(|b| b.modulus_lower(BOUND_BITS)).collect();
        if lows.iter().all(|l| l > &one) {
            let mut maxes = vec![BigRational::zero(); ctx.degree()];
            for a in sys.alphabet() {
                for (m, b) in maxes.iter_mut().zip(ctx.embedding_values(a, &eps)?) {
                    let u = b.modulus_upper(BOUND_BITS);
                    if u > *m {
                        *m = u;
                    }
                }
            }
            return Ok(maxes
                .into_iter()
                .zip(lows)
                .map(|(m, l)| m / (l - &one) + &eps)
                .collect());
        }
        eps /= BigInt::from(1u64 << 20);
    }
    Err(Error::PrecisionExhausted)
}

fn power_traces(s: &IntegerMatrix, max: usize) -> Vec<BigInt> {
    let n = s.rows();
    let mut p = IntegerMatrix::identity(n);
    let mut out = Vec::with_capacity(max + 1);
    for _ in 0..=max {
        out.push((0..n).map(|i| p[(i, i)].clone()).sum());
        p = p.mul(s);
    }
    out
}

fn pow_rat(x: &BigRational, k: usize) -> BigRational {
    (0..k).fold(BigRational::one(), |acc, _| acc * x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numsystem::{build_system, integer_system, value_of_word};
    use crate::poly::IntPolynomial;
    use crate::ring::default_precision;

    fn int(n: i64) -> RingElement {
        RingElement::from_i64(&[n])
    }

    #[test]
    fn binary_memberships() {
        let s = integer_system(2, 0..=2).unwrap();
        let w = member_representation(&s, &int(1)).unwrap().unwrap();
        assert_eq!(value_of_word(&w, &s).unwrap(), (int(1), 0));
        assert_eq!(w.len(), 1);
        let s = integer_system(2, [0, 2]).unwrap();
        assert_eq!(member_representation(&s, &int(1)).unwrap(), None);
        let s = integer_system(3, 0..=2).unwrap();
        let w = member_representation(&s, &int(5)).unwrap().unwrap();
        assert_eq!(w, PositionedWord::from_pairs([(1, 1), (0, 2)]));
    }

    #[test]
    fn non_expanding_rejected() {
        let s = build_system(
            IntPolynomial::from_i64(&[-1, -1, 1]),
            vec![0.into(), 1.into()],
            vec![vec![0.into(), 0.into()], vec![1.into(), 0.into()]],
            1,
            default_precision(),
        )
        .unwrap();
        assert_eq!(member_representation(&s, &s.context().one()), Err(Error::BaseNotExpanding));
    }

    #[test]
    fn ring_equality_examples() {
        let s = integer_system(2, 0..=2).unwrap();
        assert_eq!(ring_equality(&s).unwrap(), RingEquality::Unreachable(int(-1)));
        assert_eq!(ring_equality(&integer_system(2, -1..=1).unwrap()).unwrap(), RingEquality::Equal);
        assert_eq!(
            ring_equality(&integer_system(2, [0, 2]).unwrap()).unwrap(),
            RingEquality::UncoveredClass(int(1))
        );
    }

    #[test]
    fn attractor_of_signed_binary() {
        let s = integer_system(2, -1..=1).unwrap();
        let ball = attractor_states(&s).unwrap();
        assert!(ball.contains(&int(-1)) && ball.contains(&int(1)));
        assert!(ball.len() <= 5);
    }

    #[test]
    fn quadratic_ring_equality() {
        // base √5 with digits -2..2
        let s = build_system(
            IntPolynomial::from_i64(&[-5, 0, 1]),
            vec![0.into(), 1.into()],
            (-2..=2).map(|a| vec![a.into(), 0.into()]).collect(),
            1,
            default_precision(),
        )
        .unwrap();
        assert!(!matches!(ring_equality(&s).unwrap(), RingEquality::UncoveredClass(_)));
    }
}
