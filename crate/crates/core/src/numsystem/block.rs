use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::ring::RingElement;

use super::{NumerationSystem, PositionedWord};

/// `(β^k, A_(k))` together with the lookup needed to regroup words.
#[derive(Clone, Debug)]
pub struct BlockTransform {
    pub k: u32,
    pub system: NumerationSystem,
    index: HashMap<RingElement, usize>,
}

/// Base `β^k` and digits `a_(k-1) β^(k-1) + ... + a_0`, enumerated with
/// `(a_(k-1), ..., a_0)` in lexicographic index order, first occurrence kept.
pub fn k_block(sys: &NumerationSystem, k: u32) -> Result<BlockTransform> {
    if k == 0 {
        return Err(Error::Invalid("block length must be positive".into()));
    }
    let ctx = sys.context();
    let n = sys.alphabet().len();
    let mut alphabet: Vec<RingElement> = Vec::new();
    let mut index = HashMap::new();
    let mut tuple = vec![0usize; k as usize];
    loop {
        let mut v = ctx.zero();
        for &a in &tuple {
            v = &ctx.product(&v, sys.base()) + &sys.alphabet()[a];
        }
        if !index.contains_key(&v) {
            index.insert(v.clone(), alphabet.len());
            alphabet.push(v);
        }
        let mut pos = tuple.len();
        loop {
            if pos == 0 {
                let system = if k == 1 {
                    sys.clone()
                } else {
                    NumerationSystem::new(
                        ctx.clone(),
                        ctx.pow(sys.base(), k),
                        alphabet,
                        sys.embedding_index(),
                    )?
                };
                return Ok(BlockTransform { k, system, index });
            }
            pos -= 1;
            tuple[pos] += 1;
            if tuple[pos] < n {
                break;
            }
            tuple[pos] = 0;
        }
    }
}

impl BlockTransform {
    /// Groups exponents `kq, ..., kq + k - 1` into block exponent `q`.
    pub fn block_word(&self, w: &PositionedWord, sys: &NumerationSystem) -> Result<PositionedWord> {
        let ctx = sys.context();
        let k = self.k as i64;
        let mut blocks: BTreeMap<i64, RingElement> = BTreeMap::new();
        for (e, d) in w.iter() {
            let a = sys.alphabet().get(d).ok_or(Error::DigitIndexOutOfRange {
                index: d,
                size: sys.alphabet().len(),
            })?;
            let (q, s) = (e.div_euclid(k), e.rem_euclid(k));
            let term = ctx.product(a, &ctx.pow(sys.base(), s as u32));
            let slot = blocks.entry(q).or_insert_with(|| ctx.zero());
            *slot = &*slot + &term;
        }
        let mut out = PositionedWord::new();
        for (q, v) in blocks {
            let i = self.index.get(&v).copied().ok_or_else(|| {
                Error::Invalid(format!("block value {v} missing from the block alphabet"))
            })?;
            out.set(q, i);
        }
        Ok(out.trimmed(self.system.zero_index()))
    }
}

pub fn block_words(w: &PositionedWord, sys: &NumerationSystem, k: u32) -> Result<PositionedWord> {
    k_block(sys, k)?.block_word(w, sys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numsystem::{aligned_equal, build_system, integer_system, value_of_word};
    use crate::poly::IntPolynomial;
    use crate::ring::default_precision;

    #[test]
    fn signed_binary_pairs() {
        let s = integer_system(2, -1..=1).unwrap();
        let b = k_block(&s, 2).unwrap();
        assert_eq!(b.system.base(), &RingElement::from_i64(&[4]));
        let digits: Vec<_> = b.system.alphabet().iter().map(|a| a.coords()[0].clone()).collect();
        assert_eq!(digits, (-3..=3).map(Into::into).collect::<Vec<_>>());
        // digits (1,1) at exponents 1,0
        let w = PositionedWord::from_pairs([(1, 2), (0, 2)]);
        let bw = b.block_word(&w, &s).unwrap();
        assert_eq!(bw, PositionedWord::from_pairs([(0, 6)]));
        assert_eq!(value_of_word(&bw, &b.system).unwrap().0, RingElement::from_i64(&[3]));
    }

    #[test]
    fn identity_block() {
        let s = integer_system(10, -6..=6).unwrap();
        let b = k_block(&s, 1).unwrap();
        assert_eq!(b.system.alphabet(), s.alphabet());
        assert_eq!(b.system.base(), s.base());
    }

    #[test]
    fn quadratic_square() {
        let s = build_system(
            IntPolynomial::from_i64(&[-1, -1, 1]),
            vec![1.into(), (-2).into()],
            (-2..=3).map(|a| vec![a.into(), 0.into()]).collect(),
            0,
            default_precision(),
        )
        .unwrap();
        let b = k_block(&s, 2).unwrap();
        assert_eq!(b.system.base(), &RingElement::from_i64(&[5, 0]));
        let w = PositionedWord::from_pairs([(-3, 5), (0, 1), (2, 4)]);
        let bw = b.block_word(&w, &s).unwrap();
        let ctx = s.context();
        let v = value_of_word(&w, &s).unwrap();
        let (bv, bm) = value_of_word(&bw, &b.system).unwrap();
        assert!(aligned_equal(ctx, s.base(), &v, &(bv, 2 * bm)));
    }
}
