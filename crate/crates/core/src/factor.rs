//! Bounded irreducibility certification for monic integer polynomials.
//!
//! Kronecker's method: a monic factor of degree `k` is pinned down by its
//! values at `k` integer points, and each value must divide the value of the
//! polynomial there. Candidates are additionally filtered by the Mignotte
//! coefficient bound before trial division.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::poly::IntPolynomial;

/// Degrees above this are accepted without certification.
pub const MAX_CERTIFIED_DEGREE: usize = 6;

const MAX_POINT_VALUE: i128 = 1_000_000_000_000;
const MAX_CANDIDATES: u128 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    Reducible(IntPolynomial),
    Uncertified,
}

/// Decides irreducibility of a monic polynomial of degree at most
/// [`MAX_CERTIFIED_DEGREE`]; larger or numerically unwieldy inputs come back
/// as `Uncertified`.
pub fn certify_irreducible(p: &IntPolynomial) -> Irreducibility {
    let d = p.degree();
    if d <= 1 {
        return Irreducibility::Irreducible;
    }
    if d > MAX_CERTIFIED_DEGREE || !p.is_monic() {
        return Irreducibility::Uncertified;
    }
    let mut uncertified = false;
    for k in 1..=d / 2 {
        match monic_factor_of_degree(p, k) {
            Search::Found(q) => return Irreducibility::Reducible(q),
            Search::None => {}
            Search::GaveUp => uncertified = true,
        }
    }
    if uncertified {
        Irreducibility::Uncertified
    } else {
        Irreducibility::Irreducible
    }
}

enum Search {
    Found(IntPolynomial),
    None,
    GaveUp,
}

fn monic_factor_of_degree(p: &IntPolynomial, k: usize) -> Search {
    // Sample points 0, 1, -1, 2, -2, ...; an integer root is a linear factor.
    let mut samples: Vec<(i128, i128)> = Vec::new();
    for i in 0..(4 * p.degree() as i64 + 8) {
        let a = if i % 2 == 0 { -(i / 2) } else { i / 2 + 1 };
        let v = p.eval(&BigInt::from(a));
        if v.is_zero() {
            return Search::Found(IntPolynomial::linear_root(&BigInt::from(a)));
        }
        match v.abs().to_i128() {
            Some(x) if x <= MAX_POINT_VALUE => samples.push((a as i128, x)),
            _ => {}
        }
    }
    if samples.len() < k {
        return Search::GaveUp;
    }
    samples.sort_by_key(|&(a, v)| (v, a.abs(), a));
    let pts: Vec<(i128, i128)> = samples.into_iter().take(k).collect();
    let options: Vec<Vec<i128>> = pts
        .iter()
        .map(|&(_, v)| {
            divisors(v)
                .into_iter()
                .flat_map(|d| [d, -d])
                .collect()
        })
        .collect();
    let total: u128 = options.iter().map(|o| o.len() as u128).product();
    if total > MAX_CANDIDATES {
        return Search::GaveUp;
    }

    // Lagrange basis scaled to integers: N_i = D * L_i.
    let xs: Vec<i128> = pts.iter().map(|&(a, _)| a).collect();
    let mut denom: i128 = 1;
    let mut bases: Vec<Vec<i128>> = Vec::with_capacity(k);
    let mut dens: Vec<i128> = Vec::with_capacity(k);
    for i in 0..k {
        let mut num = vec![1i128];
        let mut den = 1i128;
        for j in 0..k {
            if j == i {
                continue;
            }
            num = poly_mul_linear(&num, -xs[j]);
            den *= xs[i] - xs[j];
        }
        bases.push(num);
        dens.push(den);
        denom = lcm(denom, den.abs());
    }
    for (b, den) in bases.iter_mut().zip(&dens) {
        let f = denom / den;
        for c in b.iter_mut() {
            *c *= f;
        }
    }

    let norm_bound = {
        let s: BigInt = p.coeffs().iter().map(|c| c * c).sum();
        let r = s.sqrt();
        let r = if &r * &r < s { r + 1 } else { r };
        match r.to_i128() {
            Some(x) => x,
            None => return Search::GaveUp,
        }
    };
    let bounds: Vec<i128> = (0..k).map(|j| binom(k, j) * norm_bound).collect();

    let mut idx = vec![0usize; k];
    loop {
        let mut coeffs = vec![0i128; k];
        for i in 0..k {
            let y = options[i][idx[i]] - pow_i128(xs[i], k);
            for (c, b) in coeffs.iter_mut().zip(&bases[i]) {
                *c += y * b;
            }
        }
        if coeffs.iter().all(|c| c % denom == 0) {
            let mut q: Vec<BigInt> = coeffs.iter().map(|c| BigInt::from(c / denom)).collect();
            let within = q
                .iter()
                .zip(&bounds)
                .all(|(c, b)| c.abs() <= BigInt::from(*b));
            if within {
                q.push(BigInt::from(1));
                let q = IntPolynomial::new(q);
                if p.div_exact(&q).is_some() {
                    return Search::Found(q);
                }
            }
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == k {
                return Search::None;
            }
            idx[pos] += 1;
            if idx[pos] < options[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn poly_mul_linear(p: &[i128], c: i128) -> Vec<i128> {
    // p(x) * (x + c)
    let mut out = vec![0i128; p.len() + 1];
    for (i, a) in p.iter().enumerate() {
        out[i] += a * c;
        out[i + 1] += a;
    }
    out
}

fn pow_i128(a: i128, k: usize) -> i128 {
    (0..k).fold(1, |acc, _| acc * a)
}

fn binom(n: usize, k: usize) -> i128 {
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: i128, b: i128) -> i128 {
    a / gcd(a, b) * b
}

fn divisors(n: i128) -> Vec<i128> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1i128;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}
