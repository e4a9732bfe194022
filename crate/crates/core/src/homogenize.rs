//! Homogenized Υ and signature invariants of braids, in closed form for the
//! families where they are known, with checks against the exact engines.

use num_integer::Integer;
use num_traits::Signed;
use rayon::prelude::*;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::knot::TorusKnot;
use crate::plcalc::PlFunction;
use crate::rational::{format_rational, int, rat, Rational};
use crate::signature::{torus_signature, OmegaPoint};
use crate::upsilon::{ups_staircase, ups_torus, Route};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `(a_1⋯a_{n−1})^m`.
    TorusBraid { n: u64, m: i64 },
    /// `(a_1² a_2²)^n`.
    BetaN { n: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogenizedProfile {
    pub family: Family,
    pub profile: PlFunction,
}

/// `−t·ℓ(β)/2`, valid for `0 < t ≤ 2/n`.
pub fn hom_ups_small_t(b: &BraidWord, t: &Rational) -> Result<Rational> {
    let n = b.strands() as i64;
    if !t.is_positive() || *t > rat(2, n) {
        return Err(Error::Domain(format!("t = {} outside (0, 2/{n}]", format_rational(t))));
    }
    Ok(-(t * int(b.writhe())) / int(2))
}

/// `−t·ℓ(β)`, the homogenized signature at `e^{iπt}` for `t ≤ 2/n`.
pub fn hom_sig_small_t(b: &BraidWord, t: &Rational) -> Result<Rational> {
    Ok(hom_ups_small_t(b, t)? * int(2))
}

/// `(m/n)·Υ_{T(n,n+1)}`.
pub fn hom_ups_torus_braid(n: u64, m: i64) -> Result<HomogenizedProfile> {
    let profile = ups_staircase(n)?.scale(&rat(m, n as i64));
    Ok(HomogenizedProfile { family: Family::TorusBraid { n, m }, profile })
}

/// `−2nt` on `[0, 2/3]`, `−2n + nt` on `[2/3, 1]`, symmetrized.
pub fn hom_ups_beta_n(n: u64) -> Result<HomogenizedProfile> {
    if n == 0 {
        return Err(Error::Argument("beta_n needs n >= 1".into()));
    }
    let k = n as i64;
    let half = PlFunction::new(vec![(int(0), int(0)), (rat(2, 3), rat(-4 * k, 3)), (int(1), int(-k))])?;
    Ok(HomogenizedProfile { family: Family::BetaN { n }, profile: half.symmetrize()? })
}

/// `Υ_{T(3,3n+1)}(t) − Υ_{T(2,2n+1)}(t) ∓ (1 − |1 − t|)`, bracketing `Υ_{K_n}(t)`.
pub fn kn_sandwich(n: u64, t: &Rational) -> Result<(Rational, Rational)> {
    if n == 0 {
        return Err(Error::Argument("K_n needs n >= 1".into()));
    }
    let three = ups_torus(&TorusKnot::positive(3, 3 * n + 1)?, Route::Euclid)?;
    let two = ups_torus(&TorusKnot::positive(2, 2 * n + 1)?, Route::Euclid)?;
    let centre = three.eval(t)? - two.eval(t)?;
    let spread = int(1) - (int(1) - t).abs();
    Ok((&centre - &spread, centre + spread))
}

/// `(2m/n)(−(i+1)i − ½n(n−1−2i)t)` with `i = ⌊nt/2⌋`, for `t ∈ [0, 1]`.
pub fn hom_sig_torus_braid(n: u64, m: i64, t: &Rational) -> Result<Rational> {
    if n < 2 {
        return Err(Error::Argument(format!("torus braid needs n >= 2, got {n}")));
    }
    if t.is_negative() || *t > int(1) {
        return Err(Error::Domain(format!("t = {} outside [0, 1]", format_rational(t))));
    }
    let nn = n as i64;
    let i = (t * int(nn) / int(2)).floor();
    let inner = -(&i + int(1)) * &i - int(nn) * (int(nn - 1) - int(2) * &i) * t / int(2);
    Ok(rat(2 * m, nn) * inner)
}

/// `(q/n)·Υ_{T(n,n+1)}(t) − Υ_{T(n,q)}(t)`, checked against `t(n − 1)/2`.
pub fn defect_gap_check(n: u64, q: u64, t: &Rational) -> Result<Rational> {
    if n.gcd(&q) != 1 {
        return Err(Error::Semantic(format!("T({n},{q}) is not a knot: gcd is {}", n.gcd(&q))));
    }
    let hom = hom_ups_torus_braid(n, q as i64)?.profile.eval(t)?;
    let exact = ups_torus(&TorusKnot::positive(n, q)?, Route::Euclid)?.eval(t)?;
    let gap = hom - exact;
    let bound = t * int(n as i64 - 1) / int(2);
    if gap > bound {
        return Err(Error::Validation(format!(
            "homogenization gap {} for T({n},{q}) at t = {} exceeds t(n-1)/2 = {}",
            format_rational(&gap),
            format_rational(t),
            format_rational(&bound)
        )));
    }
    Ok(gap)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergenceSample {
    pub k: u64,
    /// `σ_{e^{iπt}}(T(n, nk+1)) / k`.
    pub ratio: Rational,
    /// Distance to the homogenized value.
    pub difference: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergenceReport {
    pub limit: Rational,
    pub samples: Vec<ConvergenceSample>,
    /// `k` whose closure has a signature jump at `t`.
    pub jumps: Vec<u64>,
}

/// `σ_{e^{iπt}}(T(n, nk+1))/k` for `k = 1..=kmax`, each within `4n/k` of
/// the homogenized value per full twist.
pub fn sigma_convergence_check(n: u64, t: &Rational, kmax: u64) -> Result<ConvergenceReport> {
    let limit = hom_sig_torus_braid(n, n as i64, t)?;
    let w = OmegaPoint::new(t.clone())?;
    let results: Vec<(u64, Result<i64>)> = (1..=kmax)
        .into_par_iter()
        .map(|k| (k, TorusKnot::positive(n, n * k + 1).and_then(|knot| torus_signature(&knot, &w))))
        .collect();
    let mut report = ConvergenceReport { limit: limit.clone(), samples: Vec::new(), jumps: Vec::new() };
    for (k, r) in results {
        let sigma = match r {
            Ok(s) => s,
            Err(Error::JumpPoint { .. }) => {
                report.jumps.push(k);
                continue;
            }
            Err(e) => return Err(e),
        };
        let ratio = rat(sigma, k as i64);
        let difference = (&ratio - &limit).abs();
        let allowance = rat(4 * n as i64, k as i64);
        if difference > allowance {
            return Err(Error::Validation(format!(
                "sigma(T({n},{}))/{k} = {} is {} from the limit {}, beyond 4n/k",
                n * k + 1,
                format_rational(&ratio),
                format_rational(&difference),
                format_rational(&limit)
            )));
        }
        report.samples.push(ConvergenceSample { k, ratio, difference });
    }
    Ok(report)
}
