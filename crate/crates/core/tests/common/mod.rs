//! Independent oracles. Nothing here calls into the library's arithmetic.
#![allow(dead_code)]

use std::collections::HashSet;
use std::path::PathBuf;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Product of coordinate polynomials reduced modulo a monic `p` (constant term first).
pub fn polymod_mul(a: &[BigInt], b: &[BigInt], p: &[BigInt]) -> Vec<BigInt> {
    let d = p.len() - 1;
    let mut prod = vec![BigInt::zero(); a.len() + b.len()];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            prod[i + j] += x * y;
        }
    }
    for k in (d..prod.len()).rev() {
        let c = std::mem::take(&mut prod[k]);
        if c.is_zero() {
            continue;
        }
        for i in 0..d {
            prod[k - d + i] -= &c * &p[i];
        }
    }
    prod.truncate(d);
    prod.resize(d, BigInt::zero());
    prod
}

pub fn polymod_pow(a: &[BigInt], k: u32, p: &[BigInt]) -> Vec<BigInt> {
    let d = p.len() - 1;
    let mut acc = vec![BigInt::zero(); d];
    acc[0] = BigInt::one();
    for _ in 0..k {
        acc = polymod_mul(&acc, a, p);
    }
    acc
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Matrix of multiplication by `a`: column `j` holds `a ω^j`.
pub fn mult_matrix(a: &[BigInt], p: &[BigInt]) -> Vec<Vec<BigInt>> {
    let d = p.len() - 1;
    let cols: Vec<Vec<BigInt>> = (0..d)
        .map(|j| {
            let mut e = vec![BigInt::zero(); d];
            e[j] = BigInt::one();
            polymod_mul(a, &e, p)
        })
        .collect();
    (0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect()
}

/// Laplace expansion; fine for the small sizes used here.
pub fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let term = &m[0][j] * det(&minor(m, 0, j));
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn minor(m: &[Vec<BigInt>], r: usize, c: usize) -> Vec<Vec<BigInt>> {
    m.iter()
        .enumerate()
        .filter(|&(i, _)| i != r)
        .map(|(_, row)| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, x)| x.clone()).collect())
        .collect()
}

pub fn adjugate(m: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = m.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = det(&minor(m, j, i));
                    if (i + j) % 2 == 0 { c } else { -c }
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(m: &[Vec<BigInt>], v: &[BigInt]) -> Vec<BigInt> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    (0..a.len())
        .map(|i| (0..b[0].len()).map(|j| (0..b.len()).map(|k| &a[i][k] * &b[k][j]).sum()).collect())
        .collect()
}

/// `x ≡ y (mod α)` iff `adj(M_α)(x - y) ≡ 0 (mod det M_α)`, for `det ≠ 0`.
pub fn congruent(alpha: &[BigInt], p: &[BigInt], x: &[BigInt], y: &[BigInt]) -> bool {
    let m = mult_matrix(alpha, p);
    let n = det(&m).abs();
    mat_vec(&adjugate(&m), &sub(x, y)).iter().all(|c| c.mod_floor(&n).is_zero())
}

/// Class keys of every point of `[0, side)^d`.
pub fn class_count_in_box(alpha: &[BigInt], p: &[BigInt], side: i64) -> usize {
    let m = mult_matrix(alpha, p);
    let n = det(&m).abs();
    let adj = adjugate(&m);
    let mut keys = HashSet::new();
    for x in box_points(p.len() - 1, 0, side) {
        let key: Vec<BigInt> = mat_vec(&adj, &x).iter().map(|c| c.mod_floor(&n)).collect();
        keys.insert(key);
    }
    keys.len()
}

pub fn box_points(d: usize, lo: i64, hi: i64) -> Vec<Vec<BigInt>> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|v: Vec<BigInt>| {
                (lo..hi).map(move |c| {
                    let mut w = v.clone();
                    w.push(c.into());
                    w
                })
            })
            .collect();
    }
    out
}

/// `Σ a_j β^(j + shift)` over `(exponent, digit coordinates)` pairs; requires `j + shift ≥ 0`.
pub fn scaled_value(digits: &[(i64, Vec<BigInt>)], base: &[BigInt], p: &[BigInt], shift: i64) -> Vec<BigInt> {
    let d = p.len() - 1;
    let mut acc = vec![BigInt::zero(); d];
    for (e, a) in digits {
        let k = e + shift;
        assert!(k >= 0, "shift too small");
        acc = add(&acc, &polymod_mul(a, &polymod_pow(base, k as u32, p), p));
    }
    acc
}

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap()
}
