//! Bounded synthesis of certified rules.
//!
//! The unknowns are the carries `ψ(s)` for windows `s` of length `r + t`.
//! Each input window `u` ties `ψ(u[..p-1])` to `ψ(u[1..])` through
//! `u_t - β ψ(u[..p-1]) + ψ(u[1..]) ∈ A`. Carries range over ring elements
//! with coordinates in `[-bound, bound]`, in lexicographic order. Variables
//! are assigned in window order by chronological backtracking with arc
//! consistency maintained after every assignment, so the first solution is
//! the lexicographically least one.

use std::collections::HashSet;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::numsystem::NumerationSystem;
use crate::ring::RingElement;

use super::{window_count, CarryCertificate, LocalRule};

/// Carry domains are bit sets of this width.
pub const MAX_CARRY_VALUES: usize = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    pub r_max: usize,
    pub t_max: usize,
    pub carry_bound: u32,
}

/// `A + A` with duplicate sums merged, in order of first appearance over index pairs.
pub fn sum_alphabet(alphabet: &[RingElement]) -> Vec<RingElement> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for a in alphabet {
        for b in alphabet {
            let s = a + b;
            if seen.insert(s.clone()) {
                out.push(s);
            }
        }
    }
    out
}

/// Tries `(r, t)` in increasing `(r + t, r)` order and returns the first
/// certified rule from `A + A` to `A`. `None` only speaks about the bounds.
pub fn search_rule(
    sys: &NumerationSystem,
    limits: SearchLimits,
) -> Result<Option<(LocalRule, CarryCertificate)>> {
    let mut shapes: Vec<(usize, usize)> = (0..=limits.r_max)
        .flat_map(|r| (0..=limits.t_max).map(move |t| (r, t)))
        .collect();
    shapes.sort_by_key(|&(r, t)| (r + t, r));
    let carries = carry_values(sys.context().degree(), limits.carry_bound)?;
    for (r, t) in shapes {
        if let Some(found) = search_shape(sys, r, t, &carries)? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

fn carry_values(d: usize, bound: u32) -> Result<Vec<RingElement>> {
    let side = 2 * bound as usize + 1;
    let count = side.checked_pow(d as u32).filter(|&n| n <= MAX_CARRY_VALUES);
    let Some(count) = count else {
        return Err(Error::Invalid(format!(
            "carry domain ({side}^{d} values) exceeds {MAX_CARRY_VALUES}"
        )));
    };
    let b = bound as i64;
    Ok((0..count)
        .map(|mut i| {
            let mut c = vec![BigInt::from(0); d];
            for slot in c.iter_mut().rev() {
                *slot = BigInt::from((i % side) as i64 - b);
                i /= side;
            }
            RingElement::new(c)
        })
        .collect())
}

type Mask = u128;

fn bits(mask: Mask) -> impl Iterator<Item = usize> {
    (0..MAX_CARRY_VALUES).filter(move |&i| mask >> i & 1 == 1)
}

struct Problem {
    /// per input digit e: fwd[e][x] = values y allowed as ψ(suffix) when ψ(prefix) = x
    fwd: Vec<Vec<Mask>>,
    bwd: Vec<Vec<Mask>>,
    /// (prefix var, suffix var, digit) per window
    windows: Vec<(usize, usize, usize)>,
    /// window ids touching each variable
    touching: Vec<Vec<usize>>,
}

impl Problem {
    /// Makes both ends of `window` arc consistent; returns the variables narrowed.
    fn revise(&self, doms: &mut [Mask], window: usize) -> Vec<usize> {
        let (x, y, e) = self.windows[window];
        let mut changed = Vec::new();
        if x == y {
            let keep = bits(doms[x])
                .filter(|&v| self.fwd[e][v] >> v & 1 == 1)
                .fold(0, |m, v| m | 1 << v);
            if keep != doms[x] {
                doms[x] = keep;
                changed.push(x);
            }
            return changed;
        }
        let support_y = bits(doms[x]).fold(0, |m, v| m | self.fwd[e][v]);
        if doms[y] & support_y != doms[y] {
            doms[y] &= support_y;
            changed.push(y);
        }
        let support_x = bits(doms[y]).fold(0, |m, v| m | self.bwd[e][v]);
        if doms[x] & support_x != doms[x] {
            doms[x] &= support_x;
            changed.push(x);
        }
        changed
    }

    fn propagate(&self, doms: &mut [Mask], mut queue: Vec<usize>) -> bool {
        let mut queued = vec![false; doms.len()];
        for &v in &queue {
            queued[v] = true;
        }
        while let Some(v) = queue.pop() {
            queued[v] = false;
            for &w in &self.touching[v] {
                for c in self.revise(doms, w) {
                    if doms[c] == 0 {
                        return false;
                    }
                    if !queued[c] {
                        queued[c] = true;
                        queue.push(c);
                    }
                }
            }
        }
        true
    }
}

fn search_shape(
    sys: &NumerationSystem,
    r: usize,
    t: usize,
    carries: &[RingElement],
) -> Result<Option<(LocalRule, CarryCertificate)>> {
    let ctx = sys.context();
    let base = sys.base();
    let a = sys.alphabet();
    let b = sum_alphabet(a);
    let nb = b.len();
    let p = r + t + 1;
    let n_windows = window_count(nb, p)
        .ok_or_else(|| Error::Invalid("window count overflows".into()))?;
    let n_vars = n_windows / nb;
    let in_a: HashSet<&RingElement> = a.iter().collect();
    let zero_carry = carries
        .iter()
        .position(RingElement::is_zero)
        .expect("bounds include zero");
    let zb = b.iter().position(RingElement::is_zero).expect("0 + 0");

    let beta_c: Vec<RingElement> = carries.iter().map(|c| ctx.product(base, c)).collect();
    let mut fwd = vec![vec![0 as Mask; carries.len()]; nb];
    let mut bwd = vec![vec![0 as Mask; carries.len()]; nb];
    for (e, digit) in b.iter().enumerate() {
        for (x, bx) in beta_c.iter().enumerate() {
            let head = digit - bx;
            for (y, cy) in carries.iter().enumerate() {
                if in_a.contains(&(&head + cy)) {
                    fwd[e][x] |= 1 << y;
                    bwd[e][y] |= 1 << x;
                }
            }
        }
    }
    let digit_place = nb.pow((p - 1 - t) as u32);
    let tail = n_vars;
    let mut windows = Vec::with_capacity(n_windows);
    let mut touching = vec![Vec::new(); n_vars];
    for w in 0..n_windows {
        let (x, y, e) = (w / nb, w % tail, (w / digit_place) % nb);
        touching[x].push(windows.len());
        if y != x {
            touching[y].push(windows.len());
        }
        windows.push((x, y, e));
    }
    let problem = Problem {
        fwd,
        bwd,
        windows,
        touching,
    };

    let full: Mask = if carries.len() == MAX_CARRY_VALUES {
        Mask::MAX
    } else {
        (1 << carries.len()) - 1
    };
    let mut doms = vec![full; n_vars];
    let zero_var = (0..p - 1).fold(0, |acc, _| acc * nb + zb);
    doms[zero_var] = 1 << zero_carry;
    if !problem.propagate(&mut doms, (0..n_vars).collect()) {
        return Ok(None);
    }

    // chronological backtracking over variables in index order
    let mut stack: Vec<(usize, Vec<Mask>, Mask)> = Vec::new();
    let mut var = 0;
    let mut tried: Mask = 0;
    loop {
        if var == n_vars {
            break;
        }
        let options = doms[var] & !tried;
        match bits(options).next() {
            Some(v) => {
                let saved = doms.clone();
                doms[var] = 1 << v;
                if problem.propagate(&mut doms, vec![var]) {
                    stack.push((var, saved, tried | 1 << v));
                    var += 1;
                    tried = 0;
                } else {
                    doms = saved;
                    tried |= 1 << v;
                }
            }
            None => match stack.pop() {
                Some((v, saved, t_mask)) => {
                    var = v;
                    doms = saved;
                    tried = t_mask;
                }
                None => return Ok(None),
            },
        }
    }
    let psi: Vec<RingElement> = doms
        .iter()
        .map(|&m| carries[m.trailing_zeros() as usize].clone())
        .collect();
    let cert = CarryCertificate::new(psi);
    let rule = LocalRule::from_certificate(ctx, base, b, a.to_vec(), r, t, &cert)?;
    Ok(Some((rule, cert)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conversion::{test_rule, verify_certificate, Verdict};
    use crate::numsystem::integer_system;

    fn limits(r: usize, t: usize, bound: u32) -> SearchLimits {
        SearchLimits {
            r_max: r,
            t_max: t,
            carry_bound: bound,
        }
    }

    #[test]
    fn sum_alphabet_order() {
        let s = integer_system(10, -6..=6).unwrap();
        let b = sum_alphabet(s.alphabet());
        let v: Vec<i64> = b.iter().map(|x| i64::try_from(&x.coords()[0]).unwrap()).collect();
        assert_eq!(v, (-12..=12).collect::<Vec<_>>());
    }

    #[test]
    fn finds_decimal_rule() {
        let s = integer_system(10, -6..=6).unwrap();
        let (rule, cert) = search_rule(&s, limits(1, 1, 1)).unwrap().unwrap();
        assert_eq!((rule.memory(), rule.anticipation()), (1, 0));
        assert!(matches!(
            verify_certificate(&rule, &cert, s.context(), s.base()).unwrap(),
            Verdict::CertifiedCorrect { windows_checked: 625 }
        ));
    }

    #[test]
    fn finds_binary_rule() {
        let s = integer_system(2, 0..=2).unwrap();
        let (rule, cert) = search_rule(&s, limits(2, 2, 2)).unwrap().unwrap();
        assert!(matches!(
            verify_certificate(&rule, &cert, s.context(), s.base()).unwrap(),
            Verdict::CertifiedCorrect { .. }
        ));
        assert!(!test_rule(&rule, s.context(), s.base(), 5, 20, 1).unwrap().is_refuted());
    }

    #[test]
    fn two_digits_not_enough() {
        let s = integer_system(2, 0..=1).unwrap();
        assert_eq!(search_rule(&s, limits(2, 2, 2)).unwrap(), None);
    }

    #[test]
    fn deterministic() {
        let s = integer_system(2, -1..=1).unwrap();
        let a = search_rule(&s, limits(2, 2, 1)).unwrap();
        let b = search_rule(&s, limits(2, 2, 1)).unwrap();
        assert!(a.is_some());
        assert_eq!(a, b);
    }
}
