//! Numeration systems `(β, A)` over an explicit ambient ring `Z[ω]`.

mod analysis;
mod block;
mod member;
mod word;

pub use analysis::{
    analyze, check_expanding, check_extremal_digit_conditions, check_representatives,
    lower_bound, parallel_addition_possible, positive_real_embedding, AnalysisReport,
    ClassCoverage, Coverage, ExtremalCheck, LowerBound,
};
pub use block::{block_words, k_block, BlockTransform};
pub use member::{attractor_states, member_representation, ring_equality, RingEquality};
pub use word::{aligned_equal, value_of_word, word_value, PositionedWord};

use std::cmp::Ordering;
use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use crate::ring::{RingContext, RingElement};

#[derive(Clone, Debug)]
pub struct NumerationSystem {
    context: RingContext,
    base: RingElement,
    alphabet: Vec<RingElement>,
    embedding_index: usize,
}

impl NumerationSystem {
    pub fn new(
        context: RingContext,
        base: RingElement,
        alphabet: Vec<RingElement>,
        embedding_index: usize,
    ) -> Result<Self> {
        let d = context.degree();
        if embedding_index >= d {
            return Err(Error::EmbeddingOutOfRange {
                index: embedding_index,
                degree: d,
            });
        }
        for x in std::iter::once(&base).chain(&alphabet) {
            if x.dim() != d {
                return Err(Error::ContextMismatch {
                    left: d,
                    right: x.dim(),
                });
            }
        }
        let mut seen = HashSet::new();
        for a in &alphabet {
            if !seen.insert(a) {
                return Err(Error::DuplicateDigit {
                    digit: a.to_string(),
                });
            }
        }
        if !alphabet.iter().any(RingElement::is_zero) {
            return Err(Error::ZeroMissing);
        }
        let one = BigRational::from_integer(1.into());
        if context.compare_embedding_modulus(&base, embedding_index, &one)? != Ordering::Greater {
            return Err(Error::BaseNotGreaterThanOne);
        }
        Ok(NumerationSystem {
            context,
            base,
            alphabet,
            embedding_index,
        })
    }

    pub fn context(&self) -> &RingContext {
        &self.context
    }

    pub fn base(&self) -> &RingElement {
        &self.base
    }

    pub fn alphabet(&self) -> &[RingElement] {
        &self.alphabet
    }

    pub fn embedding_index(&self) -> usize {
        self.embedding_index
    }

    pub fn zero_index(&self) -> usize {
        self.alphabet
            .iter()
            .position(RingElement::is_zero)
            .expect("alphabet contains zero")
    }

    pub fn index_of(&self, digit: &RingElement) -> Option<usize> {
        self.alphabet.iter().position(|a| a == digit)
    }

    /// Minimal polynomial of the base.
    pub fn base_min_poly(&self) -> IntPolynomial {
        self.context
            .minimal_polynomial(&self.base)
            .expect("base belongs to the context")
    }

    pub fn base_minus_one(&self) -> RingElement {
        &self.base - &self.context.one()
    }

    /// Same ring, base and alphabet, with a different distinguished embedding.
    pub fn with_embedding(&self, index: usize) -> Result<Self> {
        Self::new(
            self.context.clone(),
            self.base.clone(),
            self.alphabet.clone(),
            index,
        )
    }

    pub fn warnings(&self) -> Vec<String> {
        self.context.warnings()
    }
}

/// Builds a context and system from raw coordinates.
pub fn build_system(
    min_poly: IntPolynomial,
    base: Vec<BigInt>,
    alphabet: Vec<Vec<BigInt>>,
    embedding_index: usize,
    precision: BigRational,
) -> Result<NumerationSystem> {
    let ctx = RingContext::new(min_poly, precision)?;
    NumerationSystem::new(
        ctx,
        RingElement::new(base),
        alphabet.into_iter().map(RingElement::new).collect(),
        embedding_index,
    )
}

/// Integer system `(b, {lo, ..., hi})` in the ambient ring `Z`.
pub fn integer_system(base: i64, digits: impl IntoIterator<Item = i64>) -> Result<NumerationSystem> {
    build_system(
        IntPolynomial::from_i64(&[-base, 1]),
        vec![BigInt::from(base)],
        digits.into_iter().map(|a| vec![BigInt::from(a)]).collect(),
        0,
        crate::ring::default_precision(),
    )
}
