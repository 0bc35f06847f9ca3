//! Dense integer matrices: characteristic polynomials, adjugates and the
//! Smith normal form with unimodular transforms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Invalid("ragged matrix rows".into()));
        }
        Ok(IntegerMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .expect("rectangular literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntegerMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> IntegerMatrix {
        IntegerMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * k).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// `p(M)` by Horner's scheme.
    pub fn eval_poly(&self, p: &IntPolynomial) -> Result<IntegerMatrix> {
        self.require_square()?;
        let n = self.rows;
        let mut acc = Self::zeros(n, n);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).add(&Self::identity(n).scale(c));
        }
        Ok(acc)
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Characteristic polynomial `det(xI - M)` by Berkowitz's division-free
    /// recurrence on trailing principal submatrices.
    pub fn char_poly(&self) -> Result<IntPolynomial> {
        self.require_square()?;
        let n = self.rows;
        // Coefficients, highest degree first.
        let mut v: Vec<BigInt> = vec![BigInt::one()];
        for k in (0..n).rev() {
            let m = n - k - 1;
            let a = &self[(k, k)];
            // column of the Toeplitz factor: 1, -a, -R C, -R A1 C, ...
            let mut col = Vec::with_capacity(m + 2);
            col.push(BigInt::one());
            col.push(-a);
            let mut w: Vec<BigInt> = (k + 1..n).map(|i| self[(i, k)].clone()).collect();
            for j in 0..m {
                if j > 0 {
                    w = (k + 1..n)
                        .map(|i| {
                            (k + 1..n)
                                .zip(&w)
                                .fold(BigInt::zero(), |acc, (l, x)| acc + &self[(i, l)] * x)
                        })
                        .collect();
                }
                let rc = (k + 1..n)
                    .zip(&w)
                    .fold(BigInt::zero(), |acc, (l, x)| acc + &self[(k, l)] * x);
                col.push(-rc);
            }
            let next: Vec<BigInt> = (0..m + 2)
                .map(|i| {
                    (0..=i.min(m))
                        .fold(BigInt::zero(), |acc, j| acc + &col[i - j] * &v[j])
                })
                .collect();
            v = next;
        }
        v.reverse();
        Ok(IntPolynomial::new(v))
    }

    pub fn determinant(&self) -> Result<BigInt> {
        let cp = self.char_poly()?;
        let c0 = cp.coeff(0);
        Ok(if self.rows.is_multiple_of(2) { c0 } else { -c0 })
    }

    /// Adjugate from the characteristic polynomial (Cayley-Hamilton):
    /// `adj(M) = (-1)^(n+1) (M^(n-1) + c_(n-1) M^(n-2) + ... + c_1 I)`.
    pub fn adjugate(&self) -> Result<IntegerMatrix> {
        let cp = self.char_poly()?;
        let n = self.rows;
        let mut acc = Self::zeros(n, n);
        for i in (1..=n).rev() {
            acc = acc.mul(self).add(&Self::identity(n).scale(&cp.coeff(i)));
        }
        Ok(if n.is_multiple_of(2) { acc.scale(&-BigInt::one()) } else { acc })
    }

    pub fn smith_normal_form(&self) -> SmithDecomposition {
        SmithDecomposition::compute(self)
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// `U M V = D` with `U`, `V` unimodular and `D` diagonal with
/// `d_1 | d_2 | ...`, nonnegative. `u_inv` is kept alongside `U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntegerMatrix,
    pub u_inv: IntegerMatrix,
    pub v: IntegerMatrix,
    pub d: IntegerMatrix,
}

impl SmithDecomposition {
    /// Pivot rule: smallest nonzero absolute value in the active block, ties
    /// broken by lowest row then lowest column.
    fn compute(m: &IntegerMatrix) -> Self {
        let (rows, cols) = (m.rows, m.cols);
        let mut a = m.clone();
        let mut u = IntegerMatrix::identity(rows);
        let mut u_inv = IntegerMatrix::identity(rows);
        let mut v = IntegerMatrix::identity(cols);

        for t in 0..rows.min(cols) {
            while let Some((pi, pj)) = pivot(&a, t) {
                if pi != t {
                    swap_rows(&mut a, t, pi);
                    swap_rows(&mut u, t, pi);
                    swap_cols(&mut u_inv, t, pi);
                }
                if pj != t {
                    swap_cols(&mut a, t, pj);
                    swap_cols(&mut v, t, pj);
                }
                let p = a[(t, t)].clone();
                let mut dirty = false;
                for i in t + 1..rows {
                    let q = a[(i, t)].div_floor(&p);
                    if !q.is_zero() {
                        add_row_multiple(&mut a, i, t, &-&q);
                        add_row_multiple(&mut u, i, t, &-&q);
                        add_col_multiple(&mut u_inv, t, i, &q);
                    }
                    dirty |= !a[(i, t)].is_zero();
                }
                for j in t + 1..cols {
                    let q = a[(t, j)].div_floor(&p);
                    if !q.is_zero() {
                        add_col_multiple(&mut a, j, t, &-&q);
                        add_col_multiple(&mut v, j, t, &-&q);
                    }
                    dirty |= !a[(t, j)].is_zero();
                }
                if dirty {
                    continue;
                }
                // Divisibility: fold an offending row into the pivot row.
                let offending = (t + 1..rows).find(|&i| {
                    (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&p))
                });
                match offending {
                    Some(i) => {
                        add_row_multiple(&mut a, t, i, &BigInt::one());
                        add_row_multiple(&mut u, t, i, &BigInt::one());
                        add_col_multiple(&mut u_inv, i, t, &-BigInt::one());
                    }
                    None => break,
                }
            }
            if a[(t, t)].is_negative() {
                negate_row(&mut a, t);
                negate_row(&mut u, t);
                negate_col(&mut u_inv, t);
            }
        }
        SmithDecomposition { u, u_inv, v, d: a }
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }
}

fn pivot(a: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a[(bi, bj)].abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

fn swap_rows(a: &mut IntegerMatrix, i: usize, j: usize) {
    for c in 0..a.cols {
        a.entries.swap(i * a.cols + c, j * a.cols + c);
    }
}

fn swap_cols(a: &mut IntegerMatrix, i: usize, j: usize) {
    for r in 0..a.rows {
        a.entries.swap(r * a.cols + i, r * a.cols + j);
    }
}

/// row `dst` += k * row `src`
fn add_row_multiple(a: &mut IntegerMatrix, dst: usize, src: usize, k: &BigInt) {
    for c in 0..a.cols {
        let s = &a[(src, c)] * k;
        a[(dst, c)] += s;
    }
}

/// column `dst` += k * column `src`
fn add_col_multiple(a: &mut IntegerMatrix, dst: usize, src: usize, k: &BigInt) {
    for r in 0..a.rows {
        let s = &a[(r, src)] * k;
        a[(r, dst)] += s;
    }
}

fn negate_row(a: &mut IntegerMatrix, i: usize) {
    for c in 0..a.cols {
        let x = -&a[(i, c)];
        a[(i, c)] = x;
    }
}

fn negate_col(a: &mut IntegerMatrix, j: usize) {
    for r in 0..a.rows {
        let x = -&a[(r, j)];
        a[(r, j)] = x;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntegerMatrix {
        IntegerMatrix::from_i64(rows)
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(
            m(&[&[0, 1], &[1, 1]]).char_poly().unwrap(),
            IntPolynomial::from_i64(&[-1, -1, 1])
        );
        assert_eq!(
            IntegerMatrix::identity(2).char_poly().unwrap(),
            IntPolynomial::from_i64(&[1, -2, 1])
        );
        assert_eq!(
            m(&[&[0, -2], &[-2, -2]]).char_poly().unwrap(),
            IntPolynomial::from_i64(&[-4, 2, 1])
        );
        assert!(matches!(
            m(&[&[1, 2, 3]]).char_poly(),
            Err(Error::NotSquare { rows: 1, cols: 3 })
        ));
    }

    #[test]
    fn char_poly_matches_cofactor_expansion_3x3() {
        let a = m(&[&[2, -1, 0], &[3, 4, 1], &[-2, 5, 7]]);
        // trace 13, principal 2x2 minors 11 + 14 + 23, det 2*23 + 23
        assert_eq!(
            a.char_poly().unwrap(),
            IntPolynomial::from_i64(&[-69, 48, -13, 1])
        );
        assert_eq!(a.determinant().unwrap(), BigInt::from(69));
    }

    #[test]
    fn adjugate_inverts_up_to_determinant() {
        let a = m(&[&[2, -1, 0], &[3, 4, 1], &[-2, 5, 7]]);
        let adj = a.adjugate().unwrap();
        let det = a.determinant().unwrap();
        assert_eq!(a.mul(&adj), IntegerMatrix::identity(3).scale(&det));
        let b = m(&[&[5]]);
        assert_eq!(b.adjugate().unwrap(), m(&[&[1]]));
    }

    #[test]
    fn smith_examples() {
        let id = IntegerMatrix::identity(2);
        let s = id.smith_normal_form();
        assert_eq!(s.d, id);
        assert_eq!(s.u, id);
        assert_eq!(s.v, id);

        let s = m(&[&[2, 0], &[0, 4]]).smith_normal_form();
        assert_eq!(s.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);

        let a = m(&[&[0, -2], &[-2, -2]]);
        let s = a.smith_normal_form();
        assert_eq!(s.diagonal(), vec![BigInt::from(2), BigInt::from(2)]);
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
        assert_eq!(s.u.mul(&s.u_inv), IntegerMatrix::identity(2));
    }

    #[test]
    fn smith_divisibility_fix() {
        // diag(2, 3) is not in Smith form; expect diag(1, 6)
        let a = m(&[&[2, 0], &[0, 3]]);
        let s = a.smith_normal_form();
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
        assert_eq!(s.u_inv.mul(&s.u), IntegerMatrix::identity(2));
    }
}
