//! Congruences modulo a nonzero element `α` of `Z[ω]`.
//!
//! `x ≡ y (mod α)` iff `S_α z = x - y` is solvable over the integers. With the
//! Smith decomposition `U S_α V = D` this is `(U (x - y))_i ≡ 0 (mod d_i)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::{IntegerMatrix, SmithDecomposition};
use crate::ring::{RingContext, RingElement};

#[derive(Clone, Debug)]
pub struct CongruenceStructure {
    modulus: RingElement,
    mult_matrix: IntegerMatrix,
    snf: SmithDecomposition,
    diagonal: Vec<BigInt>,
    class_count: BigInt,
    modulus_constant_term: Option<BigInt>,
}

impl CongruenceStructure {
    pub fn new(ctx: &RingContext, modulus: &RingElement) -> Result<Self> {
        if modulus.is_zero() {
            return Err(Error::DivisorZero);
        }
        let mult_matrix = ctx.multiplication_matrix(modulus)?;
        let det = mult_matrix.determinant()?;
        if det.is_zero() {
            return Err(Error::ZeroDivisorModulus);
        }
        let snf = mult_matrix.smith_normal_form();
        let diagonal = snf.diagonal();
        let class_count: BigInt = diagonal.iter().product();
        debug_assert_eq!(class_count, det.abs());
        let m = ctx.minimal_polynomial(modulus)?;
        let modulus_constant_term = (m.degree() == ctx.degree()).then(|| m.coeff(0).abs());
        if let Some(c) = &modulus_constant_term {
            if c != &class_count {
                return Err(Error::Invalid(format!(
                    "class count {class_count} disagrees with |m(0)| = {c}"
                )));
            }
        }
        Ok(CongruenceStructure {
            modulus: modulus.clone(),
            mult_matrix,
            snf,
            diagonal,
            class_count,
            modulus_constant_term,
        })
    }

    pub fn modulus(&self) -> &RingElement {
        &self.modulus
    }

    pub fn mult_matrix(&self) -> &IntegerMatrix {
        &self.mult_matrix
    }

    pub fn snf(&self) -> &SmithDecomposition {
        &self.snf
    }

    /// Invariant factors `d_1 | d_2 | ...`.
    pub fn diagonal(&self) -> &[BigInt] {
        &self.diagonal
    }

    /// `|det S_α|`.
    pub fn class_count(&self) -> &BigInt {
        &self.class_count
    }

    /// `|m_α(0)|` when `α` generates the full field, `None` otherwise.
    pub fn norm_constant_term(&self) -> Option<&BigInt> {
        self.modulus_constant_term.as_ref()
    }

    fn check(&self, x: &RingElement) -> Result<()> {
        if x.dim() != self.modulus.dim() {
            return Err(Error::ContextMismatch {
                left: self.modulus.dim(),
                right: x.dim(),
            });
        }
        Ok(())
    }

    pub fn congruent(&self, x: &RingElement, y: &RingElement) -> Result<bool> {
        self.check(x)?;
        self.check(y)?;
        let diff = x - y;
        let ux = self.snf.u.mul_vec(diff.coords());
        Ok(ux
            .iter()
            .zip(&self.diagonal)
            .all(|(c, d)| c.is_multiple_of(d)))
    }

    /// `U x` reduced into `[0, d_i)` componentwise.
    pub fn canonical_form(&self, x: &RingElement) -> Result<Vec<BigInt>> {
        self.check(x)?;
        Ok(self
            .snf
            .u
            .mul_vec(x.coords())
            .iter()
            .zip(&self.diagonal)
            .map(|(c, d)| c.mod_floor(d))
            .collect())
    }

    /// Mixed-radix position of the canonical form, first coordinate most significant.
    pub fn class_index(&self, x: &RingElement) -> Result<BigInt> {
        let form = self.canonical_form(x)?;
        let mut idx = BigInt::zero();
        for (c, d) in form.iter().zip(&self.diagonal) {
            idx = idx * d + c;
        }
        Ok(idx)
    }

    /// The element `U⁻¹ r` for the residue vector `r`.
    pub fn representative_of(&self, residues: &[BigInt]) -> RingElement {
        RingElement::new(self.snf.u_inv.mul_vec(residues))
    }

    /// One element per class, residue vectors in lexicographic order.
    /// `None` when the count exceeds `limit`.
    pub fn representatives_bounded(&self, limit: usize) -> Option<Vec<RingElement>> {
        let n = self.class_count.to_usize()?;
        if n > limit {
            return None;
        }
        let mut out = Vec::with_capacity(n);
        let mut r = vec![BigInt::zero(); self.diagonal.len()];
        loop {
            out.push(self.representative_of(&r));
            let mut pos = r.len();
            loop {
                if pos == 0 {
                    return Some(out);
                }
                pos -= 1;
                r[pos] += BigInt::one();
                if r[pos] < self.diagonal[pos] {
                    break;
                }
                r[pos] = BigInt::zero();
            }
        }
    }

    /// All representatives; panics if the class count does not fit in memory.
    pub fn representatives(&self) -> Vec<RingElement> {
        self.representatives_bounded(usize::MAX)
            .expect("class count exceeds addressable size")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::IntPolynomial;
    use crate::ring::default_precision;

    fn ctx(c: &[i64]) -> RingContext {
        RingContext::new(IntPolynomial::from_i64(c), default_precision()).unwrap()
    }

    fn e(c: &[i64]) -> RingElement {
        RingElement::from_i64(c)
    }

    #[test]
    fn golden_modulo_beta_minus_one() {
        let g = ctx(&[-1, -1, 1]);
        let cs = CongruenceStructure::new(&g, &e(&[0, -2])).unwrap();
        assert_eq!(cs.class_count(), &BigInt::from(4));
        assert!(cs.congruent(&e(&[-2, 0]), &e(&[2, 0])).unwrap());
        assert!(cs.congruent(&e(&[-1, 0]), &e(&[3, 0])).unwrap());
        assert!(!cs.congruent(&e(&[0, 0]), &e(&[1, 0])).unwrap());
        let forms: std::collections::BTreeSet<_> = (-2..=3)
            .map(|n| cs.canonical_form(&e(&[n, 0])).unwrap())
            .collect();
        assert_eq!(forms.len(), 2);
    }

    #[test]
    fn parity_in_z() {
        let z = ctx(&[0, 1]);
        let cs = CongruenceStructure::new(&z, &e(&[2])).unwrap();
        assert!(!cs.congruent(&e(&[1]), &e(&[2])).unwrap());
        assert_eq!(cs.canonical_form(&e(&[7])).unwrap(), cs.canonical_form(&e(&[1])).unwrap());
        assert_eq!(cs.representatives(), vec![e(&[0]), e(&[1])]);
    }

    #[test]
    fn representatives_are_incongruent() {
        let g = ctx(&[-1, -1, 1]);
        let cs = CongruenceStructure::new(&g, &e(&[1, -2])).unwrap();
        assert_eq!(cs.class_count(), &BigInt::from(5));
        let reps = cs.representatives();
        assert_eq!(reps.len(), 5);
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(cs.congruent(&reps[i], &reps[j]).unwrap(), i == j);
                let (a, b) = (e(&[i as i64, 0]), e(&[j as i64, 0]));
                assert_eq!(cs.congruent(&a, &b).unwrap(), i == j);
            }
        }
        let unit = CongruenceStructure::new(&g, &e(&[0, 1])).unwrap();
        assert_eq!(unit.representatives(), vec![e(&[0, 0])]);
    }

    #[test]
    fn zero_modulus_rejected() {
        let g = ctx(&[-1, -1, 1]);
        assert_eq!(
            CongruenceStructure::new(&g, &e(&[0, 0])).unwrap_err(),
            Error::DivisorZero
        );
    }
}
