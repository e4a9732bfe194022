//! Arithmetic modulo word-sized primes: determinants of the Alexander pencil
//! `V − xVᵀ`, multimodular reconstruction of the Alexander polynomial, and
//! primitive roots of unity for cyclotomic root tests.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::poly::IntPoly;

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

const PRIME_CEILING: u64 = 1 << 61;

/// Primes below 2^61 in decreasing order.
pub fn large_primes() -> impl Iterator<Item = u64> {
    (1..PRIME_CEILING).rev().step_by(2).filter(|&n| is_prime(n))
}

/// Primes `p ≡ 1 (mod n)` below 2^61 in decreasing order.
pub fn primes_one_mod(n: u64) -> impl Iterator<Item = u64> {
    let top = (PRIME_CEILING - 1) / n;
    (1..=top).rev().map(move |m| m * n + 1).filter(|&p| is_prime(p))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// An element of exact multiplicative order `n` modulo `p` (requires
/// `n | p − 1`).
pub fn root_of_unity(n: u64, p: u64) -> u64 {
    assert_eq!((p - 1) % n, 0, "n must divide p - 1");
    let factors = prime_factors(n);
    (2..p)
        .map(|x| pow_mod(x, (p - 1) / n, p))
        .find(|&r| factors.iter().all(|&l| pow_mod(r, n / l, p) != 1))
        .expect("the multiplicative group is cyclic")
}

/// Determinant modulo `p` by Gaussian elimination; consumes the matrix.
pub fn det_mod(mut m: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = m.len();
    let mut det = 1 % p;
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| m[r][col] != 0) else {
            return 0;
        };
        if pivot != col {
            m.swap(pivot, col);
            det = (p - det) % p;
        }
        det = mul_mod(det, m[col][col], p);
        let inv = inv_mod(m[col][col], p);
        let (top, rest) = m.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in rest.iter_mut() {
            let f = mul_mod(row[col], inv, p);
            if f == 0 {
                continue;
            }
            for j in col..n {
                row[j] = (row[j] + p - mul_mod(f, pivot_row[j], p)) % p;
            }
        }
    }
    det
}

fn reduce(v: i64, p: u64) -> u64 {
    v.rem_euclid(p as i64) as u64
}

/// `det(V − xVᵀ) mod p`.
pub fn pencil_det_mod(v: &[Vec<i64>], x: u64, p: u64) -> u64 {
    let n = v.len();
    let m = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let a = reduce(v[i][j], p);
                    let b = mul_mod(x, reduce(v[j][i], p), p);
                    (a + p - b) % p
                })
                .collect()
        })
        .collect();
    det_mod(m, p)
}

/// `det M mod p` for a small integer matrix.
pub fn int_det_mod(m: &[Vec<i64>], p: u64) -> u64 {
    det_mod(m.iter().map(|row| row.iter().map(|&v| reduce(v, p)).collect()).collect(), p)
}

// coefficients of the interpolant through (k, ys[k]), k = 0..n
fn interpolate(ys: &[u64], p: u64) -> Vec<u64> {
    let n = ys.len();
    let mut c = ys.to_vec();
    for j in 1..n {
        let inv = inv_mod(j as u64 % p, p);
        for i in (j..n).rev() {
            c[i] = mul_mod((c[i] + p - c[i - 1]) % p, inv, p);
        }
    }
    let mut poly = vec![0u64; n];
    for i in (0..n).rev() {
        // poly = poly·(t − i) + c[i]
        let xi = i as u64 % p;
        let mut next = vec![0u64; n];
        for k in 0..n - 1 {
            next[k + 1] = (next[k + 1] + poly[k]) % p;
            next[k] = (next[k] + p - mul_mod(poly[k], xi, p)) % p;
        }
        next[0] = (next[0] + c[i]) % p;
        poly = next;
    }
    poly
}

/// Bound on every coefficient of `det(V − tVᵀ)`: the product of row sums
/// of `|V| + |Vᵀ|` bounds the determinant on the unit circle.
fn coefficient_bound(v: &[Vec<i64>]) -> BigInt {
    let n = v.len();
    (0..n)
        .map(|i| BigInt::from((0..n).map(|j| v[i][j].unsigned_abs() + v[j][i].unsigned_abs()).sum::<u64>()))
        .fold(BigInt::one(), |acc, r| acc * r)
}

/// `det(V − tVᵀ)` exactly, by evaluation and interpolation modulo enough
/// primes to exceed the coefficient bound, then CRT.
pub fn alexander_polynomial(v: &[Vec<i64>]) -> IntPoly {
    let n = v.len();
    if n == 0 {
        return IntPoly::one();
    }
    let target = coefficient_bound(v) * 2 + 1;
    let mut modulus = BigInt::one();
    let mut residues: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    for p in large_primes() {
        let values: Vec<u64> = (0..=n as u64).into_par_iter().map(|x| pencil_det_mod(v, x, p)).collect();
        let coeffs = interpolate(&values, p);
        let pb = BigInt::from(p);
        let m_inv = BigInt::from(inv_mod((&modulus % &pb).iter_u64_digits().next().unwrap_or(0), p));
        for (r, &c) in residues.iter_mut().zip(&coeffs) {
            let delta = (BigInt::from(c) - &*r).mod_floor(&pb) * &m_inv % &pb;
            *r += &modulus * delta;
        }
        modulus *= pb;
        if modulus > target {
            break;
        }
    }
    let half = &modulus / 2;
    IntPoly::new(
        residues
            .into_iter()
            .map(|r| if r > half { r - &modulus } else { r })
            .collect(),
    )
}

/// Certifies that no primitive `n`-th root of unity is a root of
/// `det(V − tVᵀ)`, by finding a prime `p ≡ 1 (mod n)` and an element `r` of
/// order `n` with `det(V − rVᵀ) ≢ 0 (mod p)`. A `false` answer is
/// inconclusive.
pub fn certify_not_cyclotomic_root(v: &[Vec<i64>], n: u64, attempts: usize) -> bool {
    primes_one_mod(n).take(attempts).any(|p| {
        let r = root_of_unity(n, p);
        pencil_det_mod(v, r, p) != 0
    })
}
