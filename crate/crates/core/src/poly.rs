//! Dense univariate polynomials over the integers.
//!
//! Coefficients are stored constant term first. The zero polynomial is the
//! empty coefficient vector, so a stored polynomial never has a zero leading
//! coefficient.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `x - root`
    pub fn linear_root(root: &BigInt) -> Self {
        Self::new(vec![-root, BigInt::one()])
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| {
            acc * x + BigRational::from_integer(c.clone())
        })
    }

    /// Sign of `p(num/den)` for `den > 0`, computed on the homogenised integer form.
    pub fn sign_at(&self, num: &BigInt, den: &BigInt) -> Ordering {
        debug_assert!(den.is_positive());
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        // Horner in num with increasing powers of den on lower terms.
        for c in self.coeffs.iter().rev() {
            acc = acc * num + c * &den_pow;
            den_pow *= den;
        }
        acc.sign_ordering()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Coefficient reversal `x^deg p(1/x)`.
    pub fn reverse(&self) -> Self {
        Self::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// `p(x + shift)`
    pub fn shift(&self, shift: &BigInt) -> Self {
        let mut out = IntPolynomial::zero();
        let lin = Self::new(vec![shift.clone(), BigInt::one()]);
        for c in self.coeffs.iter().rev() {
            out = &(&out * &lin) + &Self::constant(c.clone());
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading().is_negative() {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn pseudo_rem(&self, b: &Self) -> Self {
        assert!(!b.is_zero(), "pseudo-remainder by zero polynomial");
        if self.degree() < b.degree() || self.is_zero() {
            return self.clone();
        }
        let lb = b.leading();
        let db = b.degree();
        let mut r = self.coeffs.clone();
        let steps = self.degree() - db + 1;
        for _ in 0..steps {
            if r.len() < db + 1 {
                for c in r.iter_mut() {
                    *c *= &lb;
                }
                continue;
            }
            let lr = r.last().unwrap().clone();
            let shift = r.len() - 1 - db;
            for c in r.iter_mut() {
                *c *= &lb;
            }
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[i + shift] -= &lr * bc;
            }
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Self::new(r)
    }

    /// Exact division over Z; `None` when the quotient is not an integer polynomial
    /// or the remainder is nonzero.
    pub fn div_exact(&self, b: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(b)?;
        r.is_zero().then_some(q)
    }

    /// Division with remainder when every quotient step divides exactly over Z.
    pub fn div_rem(&self, b: &Self) -> Option<(Self, Self)> {
        assert!(!b.is_zero(), "division by zero polynomial");
        let db = b.degree();
        let lb = b.leading();
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return Some((Self::zero(), self.clone()));
        }
        let mut q = vec![BigInt::zero(); r.len() - db];
        while r.len() > db {
            let lr = r.last().unwrap().clone();
            let (qc, rem) = lr.div_rem(&lb);
            if !rem.is_zero() {
                return None;
            }
            let shift = r.len() - 1 - db;
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[i + shift] -= &qc * bc;
            }
            q[shift] = qc;
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Some((Self::new(q), Self::new(r)))
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part()
    }

    /// Squarefree part, primitive with positive leading coefficient.
    pub fn squarefree_part(&self) -> Self {
        if self.degree() == 0 {
            return self.primitive_part();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            return self.primitive_part();
        }
        let p = self.primitive_part();
        // p is primitive and g divides it over Z (Gauss), so exact division succeeds.
        p.div_exact(&g)
            .expect("primitive gcd divides a primitive polynomial")
            .primitive_part()
    }

    pub fn is_squarefree(&self) -> bool {
        self.degree() == 0 || self.gcd(&self.derivative()).degree() == 0
    }

    /// Sturm chain of a squarefree polynomial, kept in primitive integer form.
    pub fn sturm_chain(&self) -> Vec<IntPolynomial> {
        let mut chain = vec![self.clone()];
        let d = self.derivative();
        if d.is_zero() {
            return chain;
        }
        chain.push(d);
        loop {
            let n = chain.len();
            let a = &chain[n - 2];
            let b = &chain[n - 1];
            let r = a.pseudo_rem(b);
            if r.is_zero() {
                break;
            }
            // prem = lc(b)^e * rem; the chain needs -rem up to a positive factor.
            let e = a.degree() - b.degree() + 1;
            let multiplier_negative = b.leading().is_negative() && e % 2 == 1;
            let next = if multiplier_negative { r } else { -&r };
            let g = next.content();
            chain.push(Self::new(next.coeffs.iter().map(|c| c / &g).collect()));
        }
        chain
    }

    /// Real roots of `self` strictly inside `(lo, hi)`, counted without multiplicity.
    /// `None` bounds stand for infinity.
    pub fn count_real_roots(&self, lo: Option<&BigRational>, hi: Option<&BigRational>) -> usize {
        if self.is_zero() {
            return 0;
        }
        let mut p = self.squarefree_part();
        for e in [lo, hi].into_iter().flatten() {
            if p.degree() > 0 && p.eval_rational(e).is_zero() {
                let lin = Self::new(vec![-e.numer().clone(), e.denom().clone()]);
                p = p
                    .div_exact(&lin)
                    .expect("rational root yields an exact linear factor");
            }
        }
        if p.degree() == 0 {
            return 0;
        }
        let chain = p.sturm_chain();
        let v_lo = match lo {
            Some(r) => variations(chain.iter().map(|q| q.sign_at(r.numer(), r.denom()))),
            None => variations(chain.iter().map(|q| q.sign_at_neg_infinity())),
        };
        let v_hi = match hi {
            Some(r) => variations(chain.iter().map(|q| q.sign_at(r.numer(), r.denom()))),
            None => variations(chain.iter().map(|q| q.leading().sign_ordering())),
        };
        v_lo.saturating_sub(v_hi)
    }

    fn sign_at_neg_infinity(&self) -> Ordering {
        let s = self.leading().sign_ordering();
        if self.degree() % 2 == 1 {
            s.reverse()
        } else {
            s
        }
    }

    /// Distinct real roots in `(0, inf)`.
    pub fn count_positive_real_roots(&self) -> usize {
        self.count_real_roots(Some(&BigRational::zero()), None)
    }

    /// Distinct roots of modulus exactly one.
    ///
    /// Checks `x = 1` and `x = -1` directly, then restricts to the self-reciprocal
    /// part `gcd(s, reverse(s))` of the squarefree part `s`, folds it with
    /// `w = x + 1/x`, and counts real roots of the folded polynomial in `(-2, 2)`;
    /// each such root is a conjugate pair on the circle.
    pub fn count_unit_circle_roots(&self) -> usize {
        if self.degree() == 0 {
            return 0;
        }
        let mut s = self.squarefree_part();
        let mut count = 0;
        for r in [1i64, -1] {
            let r = BigInt::from(r);
            if s.eval(&r).is_zero() {
                count += 1;
                s = s.div_exact(&Self::linear_root(&r)).unwrap();
            }
        }
        while s.degree() > 0 && s.coeff(0).is_zero() {
            s = Self::new(s.coeffs[1..].to_vec());
        }
        if s.degree() == 0 {
            return count;
        }
        let g = s.gcd(&s.reverse());
        if g.degree() == 0 {
            return count;
        }
        let folded = g.fold_reciprocal();
        let two = BigRational::from_integer(BigInt::from(2));
        count + 2 * folded.count_real_roots(Some(&-two.clone()), Some(&two))
    }

    /// For a palindromic polynomial `g` of even degree `2m`, the polynomial `h`
    /// with `g(x) = x^m h(x + 1/x)`.
    pub fn fold_reciprocal(&self) -> Self {
        let n = self.degree();
        debug_assert!(n.is_multiple_of(2), "self-reciprocal part has even degree");
        debug_assert!(
            self.coeffs.iter().eq(self.coeffs.iter().rev())
                || self.coeffs.iter().eq(self.coeffs.iter().rev().map(|c| -c).collect::<Vec<_>>().iter()),
            "expected a self-reciprocal polynomial"
        );
        let m = n / 2;
        // x^k + x^-k = P_k(w) with P_0 = 2, P_1 = w, P_{k+1} = w P_k - P_{k-1}.
        let w = Self::x();
        let mut prev = Self::constant(BigInt::from(2));
        let mut cur = w.clone();
        let mut h = Self::constant(self.coeff(m));
        for k in 1..=m {
            if k > 1 {
                let next = &(&w * &cur) - &prev;
                prev = cur;
                cur = next;
            }
            h = &h + &cur.scale(&self.coeff(m + k));
        }
        h
    }

    pub fn display_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 || !a.is_one() {
                out.push_str(&a.to_string());
            }
            out.push_str(&mono);
        }
        out
    }
}

fn variations(signs: impl Iterator<Item = Ordering>) -> usize {
    let mut last = Ordering::Equal;
    let mut count = 0;
    for s in signs {
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_var("x"))
    }
}

impl std::ops::Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl std::ops::Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl std::ops::Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl std::ops::Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn trims_and_displays() {
        assert_eq!(p(&[-1, -1, 1, 0, 0]).degree(), 2);
        assert_eq!(p(&[-1, -1, 1]).to_string(), "x^2 - x - 1");
        assert_eq!(p(&[0, 0]).to_string(), "0");
    }

    #[test]
    fn gcd_and_squarefree() {
        // (x-1)^2 (x+2)
        let f = &(&p(&[-1, 1]) * &p(&[-1, 1])) * &p(&[2, 1]);
        assert!(!f.is_squarefree());
        assert_eq!(f.squarefree_part(), &p(&[-1, 1]) * &p(&[2, 1]));
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[1, 1])), p(&[1, 1]));
        assert!(p(&[-1, -1, 1]).is_squarefree());
    }

    #[test]
    fn shift_matches_composition() {
        // (x+1)^2 - 5 = x^2 + 2x - 4
        assert_eq!(p(&[-5, 0, 1]).shift(&BigInt::from(1)), p(&[-4, 2, 1]));
    }

    #[test]
    fn positive_real_roots() {
        assert_eq!(p(&[-5, 0, 1]).count_positive_real_roots(), 1);
        assert_eq!(p(&[-1, -1, 1]).count_positive_real_roots(), 1);
        assert_eq!(p(&[1, 1, 1]).count_positive_real_roots(), 0);
        // x (x - 1)(x - 2): root at zero is excluded
        let f = &(&p(&[0, 1]) * &p(&[-1, 1])) * &p(&[-2, 1]);
        assert_eq!(f.count_positive_real_roots(), 2);
        assert_eq!(f.count_real_roots(None, None), 3);
    }

    #[test]
    fn unit_circle_roots() {
        assert_eq!(p(&[1, 0, 1]).count_unit_circle_roots(), 2);
        assert_eq!(p(&[-5, 0, 1]).count_unit_circle_roots(), 0);
        assert_eq!(p(&[1, -1, -1, -1, 1]).count_unit_circle_roots(), 2);
        assert_eq!(p(&[-1, 1]).count_unit_circle_roots(), 1);
        assert_eq!(p(&[-1, 0, 0, 0, 0, 1]).count_unit_circle_roots(), 5);
        assert_eq!(p(&[1, 1, 1]).count_unit_circle_roots(), 2);
        assert_eq!(p(&[-2, 1]).count_unit_circle_roots(), 0);
        // (x - 2)(2x - 1) has a reciprocal pair off the circle
        assert_eq!(p(&[2, -5, 2]).count_unit_circle_roots(), 0);
    }

    #[test]
    fn salem_fold() {
        let g = p(&[1, -1, -1, -1, 1]);
        assert_eq!(g.fold_reciprocal(), p(&[-3, -1, 1]));
    }

    #[test]
    fn exact_division() {
        let f = &p(&[-1, 1]) * &p(&[3, 0, 1]);
        assert_eq!(f.div_exact(&p(&[-1, 1])), Some(p(&[3, 0, 1])));
        assert_eq!(f.div_exact(&p(&[-2, 1])), None);
    }
}
