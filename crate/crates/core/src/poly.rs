//! Dense integer polynomials in one variable, coefficients low degree first.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `t^n − 1`.
    pub fn t_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = BigInt::from(-1);
        coeffs[n] = BigInt::one();
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Quotient and remainder by a divisor with leading coefficient ±1.
    pub fn div_rem_unit(&self, divisor: &IntPoly) -> Option<(IntPoly, IntPoly)> {
        let lead = divisor.leading()?;
        if !lead.abs().is_one() {
            return None;
        }
        let d = divisor.degree()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Some((IntPoly::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + d] * lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        Some((IntPoly::new(quot), IntPoly::new(rem)))
    }

    /// Exact quotient, if the division leaves no remainder.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let (q, r) = self.div_rem_unit(divisor)?;
        r.is_zero().then_some(q)
    }

    pub fn divisible_by(&self, divisor: &IntPoly) -> bool {
        self.div_rem_unit(divisor).is_some_and(|(_, r)| r.is_zero())
    }

    /// Representative up to units `±t^k`: no factor of `t`, positive leading
    /// coefficient.
    pub fn normalize_unit(&self) -> IntPoly {
        let skip = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        let mut coeffs: Vec<BigInt> = self.coeffs[skip..].to_vec();
        if coeffs.last().is_some_and(|c| c.is_negative()) {
            coeffs.iter_mut().for_each(|c| *c = -&*c);
        }
        IntPoly::new(coeffs)
    }

    pub fn eval_mod(&self, x: u64, p: u64) -> u64 {
        let pb = BigInt::from(p);
        self.coeffs.iter().rev().fold(0u64, |acc, c| {
            let c = c.mod_floor(&pb).iter_u64_digits().next().unwrap_or(0);
            ((acc as u128 * x as u128 + c as u128) % p as u128) as u64
        })
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigInt::zero();
        IntPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigInt::zero();
        IntPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) - other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            match (k, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{a}t")?,
                (_, true) => write!(f, "t^{k}")?,
                (_, false) => write!(f, "{a}t^{k}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// The `n`-th cyclotomic polynomial.
pub fn cyclotomic(n: usize) -> IntPoly {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut phi = IntPoly::t_pow_minus_one(n);
    for d in 1..n {
        if n % d == 0 {
            phi = phi.div_exact(&cyclotomic(d)).expect("cyclotomic factors divide t^n - 1");
        }
    }
    phi
}

/// `(t^{pq} − 1)(t − 1) / ((t^p − 1)(t^q − 1))`, the Alexander polynomial
/// of the torus knot `T(p, q)`.
pub fn torus_alexander(p: usize, q: usize) -> IntPoly {
    let num = &IntPoly::t_pow_minus_one(p * q) * &IntPoly::t_pow_minus_one(1);
    let den = &IntPoly::t_pow_minus_one(p) * &IntPoly::t_pow_minus_one(q);
    num.div_exact(&den).expect("torus Alexander quotient is exact for coprime p, q")
}
