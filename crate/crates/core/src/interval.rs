//! Exact rational intervals, complex rationals and rectangular complex boxes.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

/// Nearest multiple of `2^-bits`.
pub fn round_dyadic(x: &BigRational, bits: u32) -> BigRational {
    let scale = pow2(bits);
    let scaled = x * BigRational::from_integer(scale.clone());
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let n = (scaled + half).floor().to_integer();
    BigRational::new(n, scale)
}

/// A rational `r >= sqrt(q)` with `r - sqrt(q) <= 2^-bits`; `q >= 0`.
pub fn sqrt_upper(q: &BigRational, bits: u32) -> BigRational {
    debug_assert!(!q.is_negative());
    let scale = pow2(bits);
    let n = (q * BigRational::from_integer(&scale * &scale)).ceil().to_integer();
    let mut s = n.sqrt();
    if &s * &s < n {
        s += 1;
    }
    BigRational::new(s, scale)
}

/// A rational `0 <= r <= sqrt(q)` with `sqrt(q) - r <= 2^-bits`; `q >= 0`.
pub fn sqrt_lower(q: &BigRational, bits: u32) -> BigRational {
    debug_assert!(!q.is_negative());
    let scale = pow2(bits);
    let n = (q * BigRational::from_integer(&scale * &scale)).floor().to_integer();
    BigRational::new(n.sqrt(), scale)
}

/// Closed rational interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn point(x: BigRational) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn around(center: &BigRational, radius: &BigRational) -> Self {
        Interval {
            lo: center - radius,
            hi: center + radius,
        }
    }

    pub fn zero() -> Self {
        Self::point(BigRational::zero())
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / rat(2)
    }

    /// Upper bound on `|x|` over the interval.
    pub fn mag(&self) -> BigRational {
        self.lo.abs().max(self.hi.abs())
    }

    /// Lower bound on `|x|` over the interval.
    pub fn mig(&self) -> BigRational {
        if self.lo.is_positive() {
            self.lo.clone()
        } else if self.hi.is_negative() {
            -self.hi.clone()
        } else {
            BigRational::zero()
        }
    }

    /// Certified comparison: `Some` when the intervals are disjoint or both points.
    pub fn compare(&self, other: &Interval) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if other.hi < self.lo {
            Some(Ordering::Greater)
        } else if self.lo == self.hi && other.lo == other.hi && self.lo == other.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        Interval {
            lo: &self.lo - &o.hi,
            hi: &self.hi - &o.lo,
        }
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let p = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = p.iter().min().unwrap().clone();
        let hi = p.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    pub fn scale(&self, k: &BigRational) -> Interval {
        let a = &self.lo * k;
        let b = &self.hi * k;
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    /// Bounds on `x^2`.
    pub fn square(&self) -> Interval {
        let lo = self.mig();
        let hi = self.mag();
        Interval {
            lo: &lo * &lo,
            hi: &hi * &hi,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Exact complex number with rational parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl ComplexRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        ComplexRational { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        ComplexRational {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::real(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::real(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(&self.re * k, &self.im * k)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// `None` on division by zero.
    pub fn div(&self, o: &Self) -> Option<Self> {
        let n = o.norm_sqr();
        if n.is_zero() {
            return None;
        }
        let num = self.mul(&o.conj());
        Some(Self::new(num.re / &n, num.im / n))
    }

    pub fn round(&self, bits: u32) -> Self {
        Self::new(round_dyadic(&self.re, bits), round_dyadic(&self.im, bits))
    }
}

/// Rectangle `re x im` in the complex plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexBox {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexBox {
    pub fn point(z: &ComplexRational) -> Self {
        ComplexBox {
            re: Interval::point(z.re.clone()),
            im: Interval::point(z.im.clone()),
        }
    }

    pub fn around(center: &ComplexRational, radius: &BigRational, real: bool) -> Self {
        ComplexBox {
            re: Interval::around(&center.re, radius),
            im: if real {
                Interval::zero()
            } else {
                Interval::around(&center.im, radius)
            },
        }
    }

    pub fn integer(n: &BigInt) -> Self {
        Self::point(&ComplexRational::real(BigRational::from_integer(n.clone())))
    }

    pub fn is_real(&self) -> bool {
        self.im.lo.is_zero() && self.im.hi.is_zero()
    }

    pub fn center(&self) -> ComplexRational {
        ComplexRational::new(self.re.midpoint(), self.im.midpoint())
    }

    pub fn half_width(&self) -> BigRational {
        (self.re.width().max(self.im.width())) / rat(2)
    }

    pub fn add(&self, o: &Self) -> Self {
        ComplexBox {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        ComplexBox {
            re: self.re.sub(&o.re),
            im: self.im.sub(&o.im),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        ComplexBox {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        ComplexBox {
            re: self.re.scale(k),
            im: self.im.scale(k),
        }
    }

    pub fn contains(&self, z: &ComplexRational) -> bool {
        self.re.contains(&z.re) && self.im.contains(&z.im)
    }

    /// Bounds on `|z|^2` over the box.
    pub fn norm_sqr(&self) -> Interval {
        self.re.square().add(&self.im.square())
    }

    /// Certified comparison of `|z|` against `r >= 0`: `None` while undecided.
    pub fn compare_modulus(&self, r: &BigRational) -> Option<Ordering> {
        let n = self.norm_sqr();
        let r2 = r * r;
        if n.lo > r2 {
            Some(Ordering::Greater)
        } else if n.hi < r2 {
            Some(Ordering::Less)
        } else if n.lo == n.hi && n.lo == r2 {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Rational upper bound on `|z|` over the box.
    pub fn modulus_upper(&self, bits: u32) -> BigRational {
        sqrt_upper(&self.norm_sqr().hi, bits)
    }

    /// Rational lower bound on `|z|` over the box.
    pub fn modulus_lower(&self, bits: u32) -> BigRational {
        sqrt_lower(&self.norm_sqr().lo, bits)
    }
}

impl fmt::Display for ComplexBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + i{}", self.re, self.im)
    }
}
