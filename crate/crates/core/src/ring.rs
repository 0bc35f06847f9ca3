//! Exact arithmetic in `Z[ω]` for a monic generator `ω`, carried out on integer
//! coordinate vectors in the power basis `1, ω, …, ω^(d-1)`.
//!
//! Multiplication by `u = Σ u_i ω^i` acts on coordinates as the matrix
//! `Σ u_i S^i`, where `S` is the companion matrix of the minimal polynomial
//! (last column `-p_0, …, -p_(d-1)`, ones on the subdiagonal).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::factor::{certify_irreducible, Irreducibility};
use crate::interval::{sqrt_upper, ComplexBox, ComplexRational};
use crate::matrix::IntegerMatrix;
use crate::poly::IntPolynomial;
use crate::roots::{IsolatedRoot, RootBudget, RootSet};

/// Default enclosure half-width, `10^-6`.
pub fn default_precision() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(1_000_000))
}

/// Coordinates of an element of `Z[ω]` in the power basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElement(Vec<BigInt>);

impl RingElement {
    pub fn new(coords: Vec<BigInt>) -> Self {
        RingElement(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        RingElement(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        RingElement(vec![BigInt::zero(); dim])
    }

    /// The rational integer `n` embedded in a ring of dimension `dim`.
    pub fn integer(n: impl Into<BigInt>, dim: usize) -> Self {
        let mut c = vec![BigInt::zero(); dim];
        c[0] = n.into();
        RingElement(c)
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Largest absolute coordinate.
    pub fn max_abs(&self) -> BigInt {
        self.0.iter().map(Signed::abs).max().unwrap_or_default()
    }

    /// The element as a polynomial in `ω`.
    pub fn as_polynomial(&self) -> IntPolynomial {
        IntPolynomial::new(self.0.clone())
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", self.0[0]);
        }
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Add for &RingElement {
    type Output = RingElement;
    /// Panics on dimension mismatch; [`RingContext::add`] is the checked form.
    fn add(self, rhs: &RingElement) -> RingElement {
        assert_eq!(self.dim(), rhs.dim(), "ring dimension mismatch");
        RingElement(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        assert_eq!(self.dim(), rhs.dim(), "ring dimension mismatch");
        RingElement(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement(self.0.iter().map(|a| -a).collect())
    }
}

/// Precomputed exact division by a fixed nonzero element: `x / u = adj(S_u) x / det(S_u)`.
#[derive(Clone, Debug)]
pub struct Divisor {
    adj: IntegerMatrix,
    det: BigInt,
}

impl Divisor {
    /// `None` when the quotient does not have integer coordinates.
    pub fn divide(&self, x: &RingElement) -> Option<RingElement> {
        let y = self.adj.mul_vec(x.coords());
        let mut out = Vec::with_capacity(y.len());
        for c in y {
            let (q, r) = c.div_rem(&self.det);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(RingElement(out))
    }

    pub fn norm(&self) -> &BigInt {
        &self.det
    }
}

/// The ring `Z[ω]` together with certified enclosures of the conjugates of `ω`.
#[derive(Clone, Debug)]
pub struct RingContext {
    min_poly: IntPolynomial,
    companion: IntegerMatrix,
    roots: RootSet,
    precision: BigRational,
    budget: RootBudget,
    irreducibility_certified: bool,
}

impl RingContext {
    pub fn new(min_poly: IntPolynomial, precision: BigRational) -> Result<Self> {
        Self::with_budget(min_poly, precision, RootBudget::default())
    }

    pub fn with_budget(
        min_poly: IntPolynomial,
        precision: BigRational,
        budget: RootBudget,
    ) -> Result<Self> {
        if min_poly.degree() == 0 {
            return Err(Error::ConstantPolynomial);
        }
        if !min_poly.is_monic() {
            return Err(Error::NotMonic);
        }
        if !precision.is_positive() {
            return Err(Error::Invalid("precision must be positive".into()));
        }
        if !min_poly.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        let irreducibility_certified = match certify_irreducible(&min_poly) {
            Irreducibility::Irreducible => true,
            Irreducibility::Reducible(f) => {
                return Err(Error::Reducible {
                    factor: f.to_string(),
                })
            }
            Irreducibility::Uncertified => false,
        };
        let companion = companion_matrix(&min_poly);
        if !companion.eval_poly(&min_poly)?.is_zero() {
            return Err(Error::Invalid("companion matrix fails Cayley-Hamilton".into()));
        }
        let roots = RootSet::isolate(&min_poly, &precision, budget)?;
        Ok(RingContext {
            min_poly,
            companion,
            roots,
            precision,
            budget,
            irreducibility_certified,
        })
    }

    pub fn degree(&self) -> usize {
        self.min_poly.degree()
    }

    pub fn min_poly(&self) -> &IntPolynomial {
        &self.min_poly
    }

    pub fn companion(&self) -> &IntegerMatrix {
        &self.companion
    }

    pub fn roots(&self) -> &RootSet {
        &self.roots
    }

    pub fn root_boxes(&self) -> Vec<ComplexBox> {
        self.roots.enclosures()
    }

    pub fn precision(&self) -> &BigRational {
        &self.precision
    }

    pub fn budget(&self) -> RootBudget {
        self.budget
    }

    pub fn irreducibility_certified(&self) -> bool {
        self.irreducibility_certified
    }

    pub fn warnings(&self) -> Vec<String> {
        let mut w = Vec::new();
        if !self.irreducibility_certified {
            w.push(format!(
                "irreducibility of {} was not certified",
                self.min_poly
            ));
        }
        w
    }

    pub fn zero(&self) -> RingElement {
        RingElement::zero(self.degree())
    }

    pub fn one(&self) -> RingElement {
        self.integer(1)
    }

    pub fn integer(&self, n: impl Into<BigInt>) -> RingElement {
        RingElement::integer(n, self.degree())
    }

    /// `ω` itself; equals the integer `-p_0` when the degree is one.
    pub fn generator(&self) -> RingElement {
        if self.degree() == 1 {
            return self.integer(-self.min_poly.coeff(0));
        }
        let mut c = vec![BigInt::zero(); self.degree()];
        c[1] = BigInt::one();
        RingElement(c)
    }

    /// Validates and wraps coordinates.
    pub fn element(&self, coords: Vec<BigInt>) -> Result<RingElement> {
        self.check(&RingElement(coords))
    }

    fn check(&self, u: &RingElement) -> Result<RingElement> {
        if u.dim() != self.degree() {
            return Err(Error::ContextMismatch {
                left: self.degree(),
                right: u.dim(),
            });
        }
        Ok(u.clone())
    }

    fn same(&self, u: &RingElement) -> Result<()> {
        if u.dim() != self.degree() {
            Err(Error::ContextMismatch {
                left: self.degree(),
                right: u.dim(),
            })
        } else {
            Ok(())
        }
    }

    pub fn add(&self, u: &RingElement, v: &RingElement) -> Result<RingElement> {
        self.same(u)?;
        self.same(v)?;
        Ok(u + v)
    }

    pub fn sub(&self, u: &RingElement, v: &RingElement) -> Result<RingElement> {
        self.same(u)?;
        self.same(v)?;
        Ok(u - v)
    }

    pub fn neg(&self, u: &RingElement) -> Result<RingElement> {
        self.same(u)?;
        Ok(-u)
    }

    pub fn mul(&self, u: &RingElement, v: &RingElement) -> Result<RingElement> {
        self.same(u)?;
        self.same(v)?;
        Ok(self.product(u, v))
    }

    /// Unchecked product; both operands must have this context's dimension.
    pub fn product(&self, u: &RingElement, v: &RingElement) -> RingElement {
        debug_assert_eq!(u.dim(), self.degree());
        debug_assert_eq!(v.dim(), self.degree());
        let d = self.degree();
        if d == 1 {
            return RingElement(vec![&u.0[0] * &v.0[0]]);
        }
        // Horner in S: acc <- S acc + u_i v
        let mut acc = vec![BigInt::zero(); d];
        for ui in u.0.iter().rev() {
            acc = self.times_generator(&acc);
            if !ui.is_zero() {
                for (a, vi) in acc.iter_mut().zip(&v.0) {
                    *a += ui * vi;
                }
            }
        }
        RingElement(acc)
    }

    fn times_generator(&self, x: &[BigInt]) -> Vec<BigInt> {
        let d = x.len();
        let top = &x[d - 1];
        (0..d)
            .map(|i| {
                let shifted = if i == 0 { BigInt::zero() } else { x[i - 1].clone() };
                shifted - self.min_poly.coeff(i) * top
            })
            .collect()
    }

    pub fn pow(&self, u: &RingElement, k: u32) -> RingElement {
        let mut out = self.one();
        for _ in 0..k {
            out = self.product(&out, u);
        }
        out
    }

    /// `Σ u_i S^i`, the matrix of multiplication by `u`.
    pub fn multiplication_matrix(&self, u: &RingElement) -> Result<IntegerMatrix> {
        self.same(u)?;
        let d = self.degree();
        let mut m = IntegerMatrix::zeros(d, d);
        for j in 0..d {
            let mut e = vec![BigInt::zero(); d];
            e[j] = BigInt::one();
            let col = self.product(u, &RingElement(e));
            for (i, c) in col.0.into_iter().enumerate() {
                m[(i, j)] = c;
            }
        }
        Ok(m)
    }

    /// `det S_u`, the norm of `u` down to `Q`.
    pub fn norm(&self, u: &RingElement) -> Result<BigInt> {
        self.multiplication_matrix(u)?.determinant()
    }

    pub fn divisor(&self, u: &RingElement) -> Result<Divisor> {
        self.same(u)?;
        if u.is_zero() {
            return Err(Error::DivisorZero);
        }
        let m = self.multiplication_matrix(u)?;
        let det = m.determinant()?;
        if det.is_zero() {
            return Err(Error::ZeroDivisorModulus);
        }
        Ok(Divisor {
            adj: m.adjugate()?,
            det,
        })
    }

    /// `Some(y)` with `u ⊙ y = x` when such an integer-coordinate `y` exists.
    pub fn exact_divide(&self, x: &RingElement, u: &RingElement) -> Result<Option<RingElement>> {
        self.same(x)?;
        Ok(self.divisor(u)?.divide(x))
    }

    /// Minimal polynomial of `u`: the squarefree part of the characteristic
    /// polynomial of `S_u` (which is diagonalisable, the ring being reduced).
    pub fn minimal_polynomial(&self, u: &RingElement) -> Result<IntPolynomial> {
        let cp = self.multiplication_matrix(u)?.char_poly()?;
        let m = cp.squarefree_part();
        debug_assert!(m.is_monic());
        Ok(m)
    }

    /// Enclosures of `σ_k(u)` for every embedding `k`, each of half-width at
    /// most `precision`, in the canonical root order.
    pub fn embedding_values(
        &self,
        u: &RingElement,
        precision: &BigRational,
    ) -> Result<Vec<ComplexBox>> {
        self.same(u)?;
        let p = u.as_polynomial();
        let mut roots = self.roots.clone();
        let mut eps = precision.clone().min(self.precision.clone());
        for _ in 0..64 {
            let boxes: Vec<ComplexBox> = roots.roots().iter().map(|r| centered_eval(&p, r)).collect();
            if boxes.iter().all(|b| &b.half_width() <= precision) {
                return Ok(boxes);
            }
            eps *= BigRational::new(BigInt::one(), BigInt::from(1u64 << 20));
            roots = roots.refine(&eps, self.budget)?;
        }
        Err(Error::PrecisionExhausted)
    }

    /// Enclosure of `σ_k(u)` refined until `decide` returns a verdict.
    pub fn decide_embedding<T>(
        &self,
        u: &RingElement,
        k: usize,
        mut decide: impl FnMut(&ComplexBox) -> Option<T>,
    ) -> Result<T> {
        self.same(u)?;
        if k >= self.degree() {
            return Err(Error::EmbeddingOutOfRange {
                index: k,
                degree: self.degree(),
            });
        }
        let p = u.as_polynomial();
        let mut root = self.roots.roots()[k].clone();
        let mut roots = self.roots.clone();
        let mut eps = self.precision.clone();
        for _ in 0..64 {
            let b = centered_eval(&p, &root);
            if let Some(v) = decide(&b) {
                return Ok(v);
            }
            eps *= BigRational::new(BigInt::one(), BigInt::from(1u64 << 24));
            roots = roots.refine(&eps, self.budget)?;
            root = roots.roots()[k].clone();
        }
        Err(Error::PrecisionExhausted)
    }

    /// Certified comparison of `|σ_k(u)|` with `r`.
    pub fn compare_embedding_modulus(
        &self,
        u: &RingElement,
        k: usize,
        r: &BigRational,
    ) -> Result<Ordering> {
        self.decide_embedding(u, k, |b| b.compare_modulus(r))
    }

    /// Sign of `σ_k(u)` for a real embedding `k`.
    pub fn real_embedding_sign(&self, u: &RingElement, k: usize) -> Result<Ordering> {
        if k < self.degree() && !self.roots.roots()[k].real {
            return Err(Error::Invalid(format!("embedding {k} is not real")));
        }
        if u.is_zero() {
            return Ok(Ordering::Equal);
        }
        // Embeddings are injective, so a nonzero element never evaluates to 0.
        self.decide_embedding(u, k, |b| b.re.compare(&crate::interval::Interval::zero()))
    }

    pub fn real_embedding_indices(&self) -> Vec<usize> {
        (0..self.degree())
            .filter(|&k| self.roots.roots()[k].real)
            .collect()
    }
}

fn companion_matrix(p: &IntPolynomial) -> IntegerMatrix {
    let d = p.degree();
    let mut s = IntegerMatrix::zeros(d, d);
    for i in 1..d {
        s[(i, i - 1)] = BigInt::one();
    }
    for i in 0..d {
        s[(i, d - 1)] = -p.coeff(i);
    }
    s
}

/// Centered form: `p(c) ± Σ_{k≥1} |p^(k)(c)/k!| r^k` around the root disc `D(c, r)`.
fn centered_eval(p: &IntPolynomial, root: &IsolatedRoot) -> ComplexBox {
    let c = &root.center;
    let taylor = taylor_coefficients(p, c);
    let value = taylor.first().cloned().unwrap_or_else(ComplexRational::zero);
    if root.radius.is_zero() {
        return ComplexBox::point(&value);
    }
    let mut err = BigRational::zero();
    let mut rk = BigRational::one();
    for a in taylor.iter().skip(1) {
        rk = &rk * &root.radius;
        err += sqrt_upper(&a.norm_sqr(), 64) * &rk;
    }
    ComplexBox::around(&value, &err, root.real)
}

/// Coefficients of `p(c + t)` in `t` by repeated synthetic division.
fn taylor_coefficients(p: &IntPolynomial, c: &ComplexRational) -> Vec<ComplexRational> {
    let mut work: Vec<ComplexRational> = p
        .coeffs()
        .iter()
        .map(|x| ComplexRational::real(BigRational::from_integer(x.clone())))
        .collect();
    let n = work.len();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        // Horner pass over work[k..]: the constant produced is the k-th coefficient.
        for i in (k..n - 1).rev() {
            let t = work[i + 1].mul(c);
            work[i] = work[i].add(&t);
        }
        out.push(work[k].clone());
    }
    out
}
