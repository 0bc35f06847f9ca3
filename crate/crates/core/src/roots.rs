//! Certified isolation of the complex roots of a squarefree integer polynomial.
//!
//! Approximations come from Weierstrass (Durand-Kerner) iteration carried out
//! in dyadic rational arithmetic. They are certified with the inclusion
//! theorem for simultaneous approximations: every root lies in the union of the
//! discs `D(z_k, n |W_k|)`, where `W_k = p(z_k) / (lc * prod_{j != k} (z_k - z_j))`,
//! and a connected component made of `m` discs holds exactly `m` roots. When the
//! discs are pairwise disjoint each one isolates a single root. Discs that meet
//! the real axis are collapsed onto it once their number matches the Sturm
//! count of real roots, and non-real discs are mirrored into exact conjugate
//! pairs. No floating point is involved.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::{rat, sqrt_upper, ComplexBox, ComplexRational};
use crate::poly::IntPolynomial;

/// Iteration limits for root refinement. Exceeding either limit is reported as
/// [`Error::PrecisionExhausted`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootBudget {
    pub max_iterations: usize,
    pub max_bits: u32,
}

impl Default for RootBudget {
    fn default() -> Self {
        RootBudget {
            max_iterations: 4000,
            max_bits: 1 << 13,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatedRoot {
    pub center: ComplexRational,
    /// Certified radius of a disc around `center` holding exactly this root.
    pub radius: BigRational,
    pub real: bool,
}

impl IsolatedRoot {
    /// Axis-aligned box containing the isolating disc.
    pub fn enclosure(&self) -> ComplexBox {
        ComplexBox::around(&self.center, &self.radius, self.real)
    }

    fn disjoint_from(&self, other: &IsolatedRoot) -> bool {
        let r = &self.radius + &other.radius;
        self.center.sub(&other.center).norm_sqr() > &r * &r
    }
}

/// All roots of a squarefree polynomial, each isolated by a certified disc,
/// in canonical order (ascending real part, then imaginary part, of the centers
/// at the coarsest certified precision).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSet {
    poly: IntPolynomial,
    roots: Vec<IsolatedRoot>,
    bits: u32,
}

impl RootSet {
    /// Isolates every root of `p` to discs of radius at most `eps`.
    pub fn isolate(p: &IntPolynomial, eps: &BigRational, budget: RootBudget) -> Result<RootSet> {
        if p.degree() == 0 || p.is_zero() {
            return Err(Error::ConstantPolynomial);
        }
        if !p.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        let n = p.degree();
        if n == 1 {
            let root = BigRational::new(-p.coeff(0), p.coeff(1));
            return Ok(RootSet {
                poly: p.clone(),
                roots: vec![IsolatedRoot {
                    center: ComplexRational::real(root),
                    radius: BigRational::zero(),
                    real: true,
                }],
                bits: 64,
            });
        }
        let z = initial_guesses(p);
        let real_count = p.count_real_roots(None, None);
        let mut state = Iteration::new(p, z, 64, real_count);
        let mut used = 0usize;
        // First certification fixes the canonical order.
        let coarse = loop {
            if let Some(roots) = state.step_and_certify(&mut used, budget)? {
                break roots;
            }
        };
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| canonical_cmp(&coarse[a].center, &coarse[b].center));
        let coarse: Vec<IsolatedRoot> = order.iter().map(|&i| coarse[i].clone()).collect();
        state.z = order.iter().map(|&i| state.z[i].clone()).collect();
        let set = RootSet {
            poly: p.clone(),
            roots: coarse,
            bits: state.bits,
        };
        if set.max_radius() <= *eps {
            return Ok(set);
        }
        set.refine_from(state, eps, budget, used)
    }

    /// Tightens every disc to radius at most `eps`, keeping the root order.
    pub fn refine(&self, eps: &BigRational, budget: RootBudget) -> Result<RootSet> {
        if self.max_radius() <= *eps {
            return Ok(self.clone());
        }
        let z = self.roots.iter().map(|r| r.center.clone()).collect();
        let real_count = self.roots.iter().filter(|r| r.real).count();
        let state = Iteration::new(&self.poly, z, self.bits, real_count);
        self.refine_from(state, eps, budget, 0)
    }

    fn refine_from(
        &self,
        mut state: Iteration,
        eps: &BigRational,
        budget: RootBudget,
        mut used: usize,
    ) -> Result<RootSet> {
        state.raise_bits_for(eps, budget)?;
        loop {
            let Some(mut roots) = state.step_and_certify(&mut used, budget)? else {
                continue;
            };
            // Identity: the new disc k may only meet the old disc k.
            let consistent = roots.iter().enumerate().all(|(k, new)| {
                self.roots
                    .iter()
                    .enumerate()
                    .all(|(j, old)| j == k || new.disjoint_from(old))
            });
            for (new, old) in roots.iter_mut().zip(&self.roots) {
                if old.real && !new.real {
                    new.real = true;
                    new.center.im = BigRational::zero();
                }
            }
            if !consistent {
                continue;
            }
            let set = RootSet {
                poly: self.poly.clone(),
                roots,
                bits: state.bits,
            };
            if set.max_radius() <= *eps {
                return Ok(set);
            }
            state.raise_bits_for(eps, budget)?;
        }
    }

    pub fn poly(&self) -> &IntPolynomial {
        &self.poly
    }

    pub fn roots(&self) -> &[IsolatedRoot] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn enclosures(&self) -> Vec<ComplexBox> {
        self.roots.iter().map(IsolatedRoot::enclosure).collect()
    }

    pub fn max_radius(&self) -> BigRational {
        self.roots
            .iter()
            .map(|r| r.radius.clone())
            .max()
            .unwrap_or_else(BigRational::zero)
    }
}

fn canonical_cmp(a: &ComplexRational, b: &ComplexRational) -> Ordering {
    a.re.cmp(&b.re).then_with(|| a.im.cmp(&b.im))
}

/// Starting points `s * w^k` with `w = 0.4 + 0.9i` and `s` a power of two
/// above the Fujiwara root bound.
fn initial_guesses(p: &IntPolynomial) -> Vec<ComplexRational> {
    let n = p.degree();
    let lc = p.leading().abs();
    let mut t = BigInt::one();
    for i in 1..=n {
        let c = p.coeff(n - i).abs();
        // smallest power of two t with t^i * lc >= c
        while num_traits::pow(t.clone(), i) * &lc < c {
            t <<= 1;
        }
    }
    let s = BigRational::from_integer(t);
    let w = ComplexRational::new(
        BigRational::new(2.into(), 5.into()),
        BigRational::new(9.into(), 10.into()),
    );
    let mut z = Vec::with_capacity(n);
    let mut cur = ComplexRational::one();
    for _ in 0..n {
        z.push(cur.scale(&s));
        cur = cur.mul(&w);
    }
    z
}

fn eval_complex(p: &IntPolynomial, z: &ComplexRational) -> ComplexRational {
    p.coeffs().iter().rev().fold(ComplexRational::zero(), |acc, c| {
        acc.mul(z)
            .add(&ComplexRational::real(BigRational::from_integer(c.clone())))
    })
}

/// Weierstrass correction of approximation `k`; `None` if two approximations coincide.
fn correction(p: &IntPolynomial, z: &[ComplexRational], k: usize) -> Option<ComplexRational> {
    let mut den = ComplexRational::real(BigRational::from_integer(p.leading()));
    for (j, zj) in z.iter().enumerate() {
        if j != k {
            den = den.mul(&z[k].sub(zj));
        }
    }
    eval_complex(p, &z[k]).div(&den)
}

struct Iteration {
    poly: IntPolynomial,
    z: Vec<ComplexRational>,
    bits: u32,
    real_count: usize,
    since_raise: usize,
}

impl Iteration {
    fn new(p: &IntPolynomial, z: Vec<ComplexRational>, bits: u32, real_count: usize) -> Self {
        Iteration {
            poly: p.clone(),
            z,
            bits,
            real_count,
            since_raise: 0,
        }
    }

    fn raise_bits(&mut self, budget: RootBudget) -> Result<()> {
        if self.bits >= budget.max_bits {
            return Err(Error::PrecisionExhausted);
        }
        self.bits = (self.bits * 2).min(budget.max_bits);
        self.since_raise = 0;
        Ok(())
    }

    /// Ensures the working precision can express radii below `eps`.
    fn raise_bits_for(&mut self, eps: &BigRational, budget: RootBudget) -> Result<()> {
        let n = self.poly.degree() as u32;
        let needed = bits_below(eps) + 16 + 2 * (32 - n.leading_zeros());
        while self.bits < needed {
            self.raise_bits(budget)?;
        }
        if self.since_raise > 0 {
            self.raise_bits(budget)?;
        }
        Ok(())
    }

    /// One Gauss-Seidel sweep followed by a certification attempt.
    fn step_and_certify(
        &mut self,
        used: &mut usize,
        budget: RootBudget,
    ) -> Result<Option<Vec<IsolatedRoot>>> {
        if *used >= budget.max_iterations {
            return Err(Error::PrecisionExhausted);
        }
        *used += 1;
        self.since_raise += 1;
        let n = self.z.len();
        let nudge = BigRational::new(BigInt::one(), BigInt::one() << self.bits);
        for k in 0..n {
            match correction(&self.poly, &self.z, k) {
                Some(w) => self.z[k] = self.z[k].sub(&w).round(self.bits),
                None => {
                    let dz = ComplexRational::new(nudge.clone(), nudge.clone() * rat(k as i64 + 1));
                    self.z[k] = self.z[k].add(&dz);
                }
            }
        }
        if let Some(roots) = self.certify() {
            return Ok(Some(roots));
        }
        // Stalled at this precision: widen the mantissa.
        if self.since_raise > 60 + 10 * n {
            self.raise_bits(budget)?;
        }
        Ok(None)
    }

    fn certify(&self) -> Option<Vec<IsolatedRoot>> {
        let n = self.z.len();
        let scale = rat(n as i64);
        let mut roots = Vec::with_capacity(n);
        for k in 0..n {
            let w = correction(&self.poly, &self.z, k)?;
            let radius = sqrt_upper(&w.norm_sqr(), self.bits + 8) * &scale;
            roots.push(IsolatedRoot {
                center: self.z[k].clone(),
                radius,
                real: false,
            });
        }
        if !pairwise_disjoint(&roots) {
            return None;
        }
        // Real roots: once exactly `real_count` discs meet the axis, each holds one.
        let touching: Vec<usize> = (0..n)
            .filter(|&k| roots[k].center.im.abs() <= roots[k].radius)
            .collect();
        if touching.len() != self.real_count {
            return None;
        }
        for &k in &touching {
            roots[k].real = true;
            roots[k].center.im = BigRational::zero();
        }
        // Conjugate pairs: mirror each upper disc onto its unique partner.
        for k in 0..n {
            if roots[k].real || !roots[k].center.im.is_positive() {
                continue;
            }
            let mirror = IsolatedRoot {
                center: roots[k].center.conj(),
                radius: roots[k].radius.clone(),
                real: false,
            };
            let partners: Vec<usize> = (0..n)
                .filter(|&j| j != k && !mirror.disjoint_from(&roots[j]))
                .collect();
            if partners.len() != 1 || roots[partners[0]].real {
                return None;
            }
            roots[partners[0]] = mirror;
        }
        if !pairwise_disjoint(&roots) {
            return None;
        }
        Some(roots)
    }
}

fn pairwise_disjoint(roots: &[IsolatedRoot]) -> bool {
    (0..roots.len()).all(|i| (i + 1..roots.len()).all(|j| roots[i].disjoint_from(&roots[j])))
}

/// Smallest `b` with `2^-b <= eps`.
fn bits_below(eps: &BigRational) -> u32 {
    let mut b = 0u32;
    let mut t = BigRational::one();
    while &t > eps {
        t /= rat(2);
        b += 1;
        if b > 1 << 20 {
            break;
        }
    }
    b
}

/// Counts of distinct roots strictly inside, on, and strictly outside the unit circle.
///
/// The on-circle count is exact (see [`IntPolynomial::count_unit_circle_roots`]);
/// the rest is read off certified enclosures, refined until every root not on the
/// circle has been placed.
pub fn count_roots_by_modulus(p: &IntPolynomial, budget: RootBudget) -> Result<(usize, usize, usize)> {
    let s = p.squarefree_part();
    if s.degree() == 0 {
        return Ok((0, 0, 0));
    }
    let on = s.count_unit_circle_roots();
    let mut eps = BigRational::new(BigInt::one(), BigInt::from(1u64 << 20));
    let mut set = RootSet::isolate(&s, &eps, budget)?;
    loop {
        let (mut inside, mut outside, mut undecided) = (0, 0, 0);
        for b in set.enclosures() {
            match b.compare_modulus(&BigRational::one()) {
                Some(Ordering::Less) => inside += 1,
                Some(Ordering::Greater) => outside += 1,
                _ => undecided += 1,
            }
        }
        if undecided == on {
            return Ok((inside, on, outside));
        }
        eps = &eps * BigRational::new(BigInt::one(), BigInt::from(1u64 << 16));
        set = set.refine(&eps, budget)?;
    }
}
