//! Real interval arithmetic with two backends: `f64` endpoints with outward
//! rounding, and arbitrary-precision dyadic fixed point. Also certified
//! enclosures of π, sin and cos.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::rational::Rational;

/// Operations needed by the certified elimination.
pub trait Interval: Clone + Send + Sync {
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// `None` when the divisor contains zero.
    fn div(&self, other: &Self) -> Option<Self>;
    fn scale(&self, k: i64) -> Self;
    fn zero(&self) -> Self;
    /// Certainly positive.
    fn is_pos(&self) -> bool;
    /// Certainly negative.
    fn is_neg(&self) -> bool;
    /// Approximate magnitude of the midpoint, for pivot selection only.
    fn magnitude(&self) -> f64;
    /// The degenerate interval `[0, 0]`.
    fn is_exact_zero(&self) -> bool;

    fn sign(&self) -> Option<i8> {
        if self.is_pos() {
            Some(1)
        } else if self.is_neg() {
            Some(-1)
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct F64Interval {
    pub lo: f64,
    pub hi: f64,
}

impl F64Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        F64Interval { lo, hi }
    }

    fn widen(lo: f64, hi: f64) -> Self {
        F64Interval { lo: lo.next_down(), hi: hi.next_up() }
    }

    /// Outward-rounded conversion of a fixed-point interval.
    pub fn from_fixed(x: &FixedInterval) -> Self {
        let scale = (-(x.bits as i32)) as f64;
        let lo = x.lo.to_f64().unwrap_or(f64::NEG_INFINITY) * scale.exp2();
        let hi = x.hi.to_f64().unwrap_or(f64::INFINITY) * scale.exp2();
        F64Interval { lo: lo.next_down().next_down(), hi: hi.next_up().next_up() }
    }

    fn valid(&self) -> bool {
        !self.lo.is_nan() && !self.hi.is_nan()
    }
}

fn min4(v: [f64; 4]) -> f64 {
    v.into_iter().fold(f64::INFINITY, f64::min)
}

fn max4(v: [f64; 4]) -> f64 {
    v.into_iter().fold(f64::NEG_INFINITY, f64::max)
}

impl Interval for F64Interval {
    fn add(&self, o: &Self) -> Self {
        Self::widen(self.lo + o.lo, self.hi + o.hi)
    }

    fn sub(&self, o: &Self) -> Self {
        Self::widen(self.lo - o.hi, self.hi - o.lo)
    }

    fn mul(&self, o: &Self) -> Self {
        let p = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        if p.iter().any(|x| x.is_nan()) {
            return F64Interval::new(f64::NEG_INFINITY, f64::INFINITY);
        }
        Self::widen(min4(p), max4(p))
    }

    fn div(&self, o: &Self) -> Option<Self> {
        if !(o.is_pos() || o.is_neg()) {
            return None;
        }
        let p = [self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi];
        if p.iter().any(|x| x.is_nan()) {
            return None;
        }
        Some(Self::widen(min4(p), max4(p)))
    }

    fn scale(&self, k: i64) -> Self {
        self.mul(&F64Interval::new(k as f64, k as f64))
    }

    fn zero(&self) -> Self {
        F64Interval::new(0.0, 0.0)
    }

    fn is_exact_zero(&self) -> bool {
        self.lo == 0.0 && self.hi == 0.0
    }

    fn is_pos(&self) -> bool {
        self.valid() && self.lo > 0.0
    }

    fn is_neg(&self) -> bool {
        self.valid() && self.hi < 0.0
    }

    fn magnitude(&self) -> f64 {
        (0.5 * self.lo + 0.5 * self.hi).abs()
    }
}

/// The interval `[lo, hi] / 2^bits`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedInterval {
    pub lo: BigInt,
    pub hi: BigInt,
    pub bits: u32,
}

fn ceil_shr(x: BigInt, bits: u32) -> BigInt {
    -((-x) >> bits)
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

impl FixedInterval {
    pub fn exact_int(v: i64, bits: u32) -> Self {
        let x = BigInt::from(v) << bits;
        FixedInterval { lo: x.clone(), hi: x, bits }
    }

    /// Enclosure of a rational.
    pub fn from_rational(r: &Rational, bits: u32) -> Self {
        let num = r.numer() << bits;
        FixedInterval { lo: num.div_floor(r.denom()), hi: ceil_div(&num, r.denom()), bits }
    }

    fn point_error(x: BigInt, err: u64, bits: u32) -> Self {
        FixedInterval { lo: &x - err, hi: x + err, bits }
    }

    /// Rescale to fewer fractional bits, rounding outward.
    pub fn reduce_to(&self, bits: u32) -> Self {
        assert!(bits <= self.bits);
        let d = self.bits - bits;
        FixedInterval { lo: &self.lo >> d, hi: ceil_shr(self.hi.clone(), d), bits }
    }

    pub fn div_int(&self, k: i64) -> Self {
        assert!(k > 0);
        let k = BigInt::from(k);
        FixedInterval { lo: self.lo.div_floor(&k), hi: ceil_div(&self.hi, &k), bits: self.bits }
    }

    pub fn abs_upper(&self) -> BigInt {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn widen_by(&self, r: &BigInt) -> Self {
        FixedInterval { lo: &self.lo - r, hi: &self.hi + r, bits: self.bits }
    }
}

impl Interval for FixedInterval {
    fn add(&self, o: &Self) -> Self {
        FixedInterval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi, bits: self.bits }
    }

    fn sub(&self, o: &Self) -> Self {
        FixedInterval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo, bits: self.bits }
    }

    fn mul(&self, o: &Self) -> Self {
        let p = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = p.iter().min().expect("four products").clone();
        let hi = p.iter().max().expect("four products").clone();
        FixedInterval { lo: lo >> self.bits, hi: ceil_shr(hi, self.bits), bits: self.bits }
    }

    fn div(&self, o: &Self) -> Option<Self> {
        if !(o.is_pos() || o.is_neg()) {
            return None;
        }
        let (a, b) = (&self.lo << self.bits, &self.hi << self.bits);
        let lows = [a.div_floor(&o.lo), a.div_floor(&o.hi), b.div_floor(&o.lo), b.div_floor(&o.hi)];
        let highs = [ceil_div(&a, &o.lo), ceil_div(&a, &o.hi), ceil_div(&b, &o.lo), ceil_div(&b, &o.hi)];
        Some(FixedInterval {
            lo: lows.into_iter().min().expect("four quotients"),
            hi: highs.into_iter().max().expect("four quotients"),
            bits: self.bits,
        })
    }

    fn scale(&self, k: i64) -> Self {
        let (a, b) = (&self.lo * k, &self.hi * k);
        if k >= 0 {
            FixedInterval { lo: a, hi: b, bits: self.bits }
        } else {
            FixedInterval { lo: b, hi: a, bits: self.bits }
        }
    }

    fn zero(&self) -> Self {
        FixedInterval { lo: BigInt::zero(), hi: BigInt::zero(), bits: self.bits }
    }

    fn is_exact_zero(&self) -> bool {
        self.lo.is_zero() && self.hi.is_zero()
    }

    fn is_pos(&self) -> bool {
        self.lo.is_positive()
    }

    fn is_neg(&self) -> bool {
        self.hi.is_negative()
    }

    fn magnitude(&self) -> f64 {
        let mid: BigInt = (&self.lo + &self.hi) >> 1u32;
        let shift = self.bits.saturating_sub(60);
        let top = (mid >> shift).to_f64().unwrap_or(f64::INFINITY);
        (top * (-((self.bits - shift) as i32) as f64).exp2()).abs()
    }
}

// atan(1/x) at scale 2^w, with its error bound in units of 2^-w
fn atan_inv(x: u64, w: u32) -> (BigInt, u64) {
    let one = BigInt::from(1) << w;
    let x2 = BigInt::from(x * x);
    let mut power = one / x;
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        let term = &power / (2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    // each term and each power carries at most one unit of truncation error
    (sum, 2 * k + 2)
}

/// Enclosure of π with `bits` fractional bits.
pub fn pi(bits: u32) -> FixedInterval {
    let w = bits + 32;
    let (a, ea) = atan_inv(5, w);
    let (b, eb) = atan_inv(239, w);
    FixedInterval::point_error(a * 16 - b * 4, 16 * ea + 4 * eb, w).reduce_to(bits)
}

fn factorial_free_series(x: &FixedInterval, start: FixedInterval, first_power: u64) -> FixedInterval {
    // Σ_k (−1)^k x^{2k+m} / (2k+m)!  with m = first_power and `start` = x^m/m!
    let x2 = x.mul(x);
    let mut term = start;
    let mut sum = term.clone();
    let mut m = first_power;
    loop {
        term = term.mul(&x2).div_int(((m + 1) * (m + 2)) as i64);
        m += 2;
        let neg = ((m - first_power) / 2) % 2 == 1;
        sum = if neg { sum.sub(&term) } else { sum.add(&term) };
        // Lagrange remainder: |x|^{m+2}/(m+2)! bounded by the next term
        let next_bound = (term.abs_upper() * x2.abs_upper() >> x.bits) / ((m + 1) * (m + 2)) + 2u32;
        if m > 4 && next_bound <= BigInt::from(1u32) << 2u32 {
            return sum.widen_by(&next_bound);
        }
    }
}

/// Enclosures of `cos x` and `sin x` for `x` in `[0, 4]`.
pub fn cos_sin(x: &FixedInterval) -> (FixedInterval, FixedInterval) {
    let one = FixedInterval::exact_int(1, x.bits);
    (factorial_free_series(x, one, 0), factorial_free_series(x, x.clone(), 1))
}

/// Enclosures of `1 − cos πs` and `sin πs` with `bits` fractional bits.
pub fn omega_parts(s: &Rational, bits: u32) -> (FixedInterval, FixedInterval) {
    let w = bits + 32;
    let x = pi(w).mul(&FixedInterval::from_rational(s, w));
    let (c, sn) = cos_sin(&x);
    let one_minus_c = FixedInterval::exact_int(1, w).sub(&c);
    (one_minus_c.reduce_to(bits), sn.reduce_to(bits))
}
