//! Levine–Tristram signatures of braid closures.
//!
//! For `ω = e^{iπs}` the form `(1 − ω)V + (1 − ω̄)Vᵀ` equals
//! `(1 − cos πs)(V + Vᵀ) + i·sin(πs)(Vᵀ − V)`. At `s = 1` it is `2(V + Vᵀ)`
//! and the signature is computed exactly. Otherwise the complex form
//! `A + iB` is replaced by the real symmetric `[[A, −B], [B, A]]`, whose
//! inertia is twice that of the Hermitian form, and that inertia is certified
//! by interval elimination at escalating precision. A stalled elimination is
//! resolved by deciding whether `ω` is a root of the Alexander polynomial.

pub mod hermitian;
pub mod interval;
pub mod modular;
pub mod seifert;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::knot::{KnotExpr, TorusKnot};
use crate::poly::{cyclotomic, torus_alexander, IntPoly};
use crate::rational::{format_rational, int, Rational};
use crate::upsilon::upsilon_at_one;

use hermitian::{certified_inertia, exact_inertia};
use interval::{omega_parts, F64Interval, FixedInterval, Interval};
pub use seifert::SeifertMatrix;

/// `ω = e^{iπs}` with `0 < s ≤ 1`; `s = 1` is the classical case `ω = −1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OmegaPoint {
    s: Rational,
}

impl OmegaPoint {
    pub fn new(s: Rational) -> Result<Self> {
        if !s.is_positive() || s > int(1) {
            return Err(Error::Domain(format!(
                "omega = exp(i*pi*s) needs 0 < s <= 1, got s = {}",
                format_rational(&s)
            )));
        }
        Ok(OmegaPoint { s })
    }

    pub fn classical() -> Self {
        OmegaPoint { s: int(1) }
    }

    pub fn s(&self) -> &Rational {
        &self.s
    }

    /// Multiplicative order of `ω`: `2b` for `s = a/b` with `a` odd, else `b`.
    pub fn order(&self) -> u64 {
        let a = self.s.numer().to_u64().expect("numerator fits");
        let b = self.s.denom().to_u64().expect("denominator fits");
        if a.is_odd() {
            2 * b
        } else {
            b
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignatureOptions {
    /// Highest fixed-point precision tried before giving up.
    pub max_bits: u32,
}

impl Default for SignatureOptions {
    fn default() -> Self {
        SignatureOptions { max_bits: 2048 }
    }
}

fn realified<I: Interval>(v: &SeifertMatrix, one_minus_c: &I, sn: &I) -> Vec<Vec<I>> {
    let (sym, skew) = (v.symmetrized(), v.skew());
    let n = v.size();
    // real and imaginary parts interleaved, to keep the band structure
    let mut m = vec![vec![one_minus_c.zero(); 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            if sym[i][j] != 0 {
                let a = one_minus_c.scale(sym[i][j]);
                m[2 * i][2 * j] = a.clone();
                m[2 * i + 1][2 * j + 1] = a;
            }
            if skew[i][j] != 0 {
                let b = sn.scale(skew[i][j]);
                m[2 * i][2 * j + 1] = b.scale(-1);
                m[2 * i + 1][2 * j] = b;
            }
        }
    }
    m
}

fn halve_inertia(pos: usize, neg: usize) -> Result<i64> {
    if pos % 2 != 0 || neg % 2 != 0 {
        return Err(Error::Internal(format!("realified inertia ({pos}, {neg}) is not doubled")));
    }
    Ok((pos as i64 - neg as i64) / 2)
}

fn check_even(sigma: i64) -> Result<i64> {
    if sigma % 2 != 0 {
        return Err(Error::Internal(format!("odd signature {sigma} for a knot")));
    }
    Ok(sigma)
}

/// Exact Alexander polynomial `det(V − tVᵀ)`.
pub fn alexander_polynomial(v: &SeifertMatrix) -> IntPoly {
    modular::alexander_polynomial(v.entries())
}

/// Whether `ω` is a root of the Alexander polynomial, decided exactly.
pub fn is_jump_point(v: &SeifertMatrix, w: &OmegaPoint) -> bool {
    let n = w.order();
    if modular::certify_not_cyclotomic_root(v.entries(), n, 4) {
        return false;
    }
    alexander_polynomial(v).divisible_by(&cyclotomic(n as usize))
}

/// σ_ω of the closure whose Seifert matrix is `v`.
pub fn lt_signature(v: &SeifertMatrix, w: &OmegaPoint) -> Result<i64> {
    lt_signature_with(v, w, SignatureOptions::default())
}

pub fn lt_signature_with(v: &SeifertMatrix, w: &OmegaPoint, opts: SignatureOptions) -> Result<i64> {
    if v.size() == 0 {
        return Ok(0);
    }
    if w.s().is_one() {
        let (pos, neg, zero) = exact_inertia(&v.symmetrized());
        if zero > 0 {
            return Err(Error::JumpPoint { s: w.s().clone() });
        }
        return check_even(pos as i64 - neg as i64);
    }

    let (omc, sn) = omega_parts(w.s(), 96);
    let fast = realified(v, &F64Interval::from_fixed(&omc), &F64Interval::from_fixed(&sn));
    if let Some((pos, neg)) = certified_inertia(fast) {
        return check_even(halve_inertia(pos, neg)?);
    }
    let mut nonsingular = false;
    let mut bits = 128;
    while bits <= opts.max_bits {
        let (omc, sn): (FixedInterval, FixedInterval) = omega_parts(w.s(), bits);
        if let Some((pos, neg)) = certified_inertia(realified(v, &omc, &sn)) {
            return check_even(halve_inertia(pos, neg)?);
        }
        if !nonsingular {
            if is_jump_point(v, w) {
                return Err(Error::JumpPoint { s: w.s().clone() });
            }
            nonsingular = true;
        }
        bits *= 2;
    }
    Err(Error::Undecidable { s: w.s().clone(), max_bits: opts.max_bits })
}

/// σ_ω of a braid closure.
pub fn braid_signature(b: &BraidWord, w: &OmegaPoint) -> Result<i64> {
    lt_signature(&SeifertMatrix::from_braid(b)?, w)
}

/// σ_ω of a torus knot via its torus braid; mirrors negate.
pub fn torus_signature(knot: &TorusKnot, w: &OmegaPoint) -> Result<i64> {
    if knot.is_unknot() {
        return Ok(0);
    }
    let b = BraidWord::torus_braid(knot.p() as usize, knot.q() as usize)?;
    let sigma = braid_signature(&b, w)?;
    Ok(if knot.is_mirrored() { -sigma } else { sigma })
}

/// σ_ω of a connected sum, by additivity.
pub fn expr_signature(e: &KnotExpr, w: &OmegaPoint) -> Result<i64> {
    e.summands()
        .iter()
        .map(|(k, m)| torus_signature(k, w).map(|s| s * *m as i64))
        .sum()
}

/// The classical signature σ = σ_{−1}.
pub fn classical_signature(e: &KnotExpr) -> Result<i64> {
    expr_signature(e, &OmegaPoint::classical())
}

pub fn classical_signature_braid(b: &BraidWord) -> Result<i64> {
    braid_signature(b, &OmegaPoint::classical())
}

/// Checks `det(V − tVᵀ) ≐ (t^{pq} − 1)(t − 1)/((t^p − 1)(t^q − 1))` up to
/// units `±t^k`.
pub fn alexander_check(v: &SeifertMatrix, p: u64, q: u64) -> Result<bool> {
    let computed = alexander_polynomial(v).normalize_unit();
    let expected = torus_alexander(p as usize, q as usize).normalize_unit();
    if computed != expected {
        return Err(Error::Validation(format!(
            "Alexander polynomial mismatch for T({p},{q}): got {computed}, expected {expected}"
        )));
    }
    Ok(true)
}

/// `|υ − σ/2|`, a lower bound for the smooth 4-dimensional crosscap number.
pub fn crosscap_lower_bound(e: &KnotExpr) -> Result<Rational> {
    let upsilon = upsilon_at_one(e)?;
    let sigma = int(classical_signature(e)?);
    Ok((upsilon - sigma / int(2)).abs())
}

/// One sample of an ω-sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SweepValue {
    Value(i64),
    Jump,
}

/// σ at `s = j/k` for `j = 1, …, k−1`, evaluated in parallel.
pub fn sweep(v: &SeifertMatrix, k: u64) -> Result<Vec<(Rational, SweepValue)>> {
    if k < 2 {
        return Err(Error::Argument(format!("sweep needs k >= 2, got {k}")));
    }
    (1..k)
        .into_par_iter()
        .map(|j| {
            let s = Rational::new(j.into(), k.into());
            let w = OmegaPoint::new(s.clone())?;
            match lt_signature(v, &w) {
                Ok(sigma) => Ok((s, SweepValue::Value(sigma))),
                Err(Error::JumpPoint { .. }) => Ok((s, SweepValue::Jump)),
                Err(e) => Err(e),
            }
        })
        .collect()
}
