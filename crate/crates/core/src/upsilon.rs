//! Υ of torus knots and their connected sums.
//!
//! Three independent routes produce Υ of a torus knot:
//! the closed form for `T(n, n+1)` ([`ups_staircase`]), the Euclidean
//! recursion into such staircases ([`ups_torus_euclid`]), and the upper
//! envelope of lines built from the semigroup counting function
//! ([`ups_torus_semigroup`]).

use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::knot::{KnotExpr, TorusKnot};
use crate::plcalc::{Line, PlFunction};
use crate::rational::{ceil_int, format_rational, int, rat, Rational};
use crate::semigroup::{torus_counting, CountingFunction};

/// Υ of `T(n, n+1)`: value `−i(n − i)` at `t = 2i/n`, linear in between.
pub fn ups_staircase(n: u64) -> Result<PlFunction> {
    if n < 2 {
        return Err(Error::Argument(format!("staircase needs n >= 2, got {n}")));
    }
    let n = n as i64;
    let points = (0..=n).map(|i| (rat(2 * i, n), int(-i * (n - i)))).collect();
    PlFunction::new(points)
}

/// Terms `(r_i, q_i)` of the Euclidean algorithm on `(p, q)` with `r_i ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EuclidDecomposition {
    terms: Vec<(u64, u64)>,
}

impl EuclidDecomposition {
    pub fn terms(&self) -> &[(u64, u64)] {
        &self.terms
    }

    /// `Σ q_i (r_i − 1) r_i / 2`.
    pub fn genus(&self) -> u64 {
        self.terms.iter().map(|(r, q)| q * (r - 1) * r / 2).sum()
    }
}

/// Runs `r_{i−1} = q_i r_i + r_{i+1}` from `r_{−1} = q`, `r_0 = p`.
pub fn euclid_decompose(p: u64, q: u64) -> Result<EuclidDecomposition> {
    let knot = TorusKnot::positive(p, q).map_err(|e| Error::Argument(e.to_string()))?;
    let (mut prev, mut cur) = (knot.q(), knot.p());
    let mut terms: Vec<(u64, u64)> = Vec::new();
    while cur >= 2 {
        let (quot, rem) = prev.div_rem(&cur);
        match terms.iter_mut().find(|(r, _)| *r == cur) {
            Some(term) => term.1 += quot,
            None => terms.push((cur, quot)),
        }
        (prev, cur) = (cur, rem);
    }
    let decomposition = EuclidDecomposition { terms };
    if decomposition.genus() != knot.genus() {
        return Err(Error::Internal(format!(
            "Euclidean decomposition of T({p},{q}) has genus {} instead of {}",
            decomposition.genus(),
            knot.genus()
        )));
    }
    Ok(decomposition)
}

/// `Σ q_i · Υ_{T(r_i, r_i+1)}`.
pub fn ups_torus_euclid(p: u64, q: u64) -> Result<PlFunction> {
    let mut total = PlFunction::zero(int(2));
    for &(r, k) in euclid_decompose(p, q)?.terms() {
        total = total.add(&ups_staircase(r)?.scale(&int(k as i64)))?;
    }
    Ok(total)
}

/// Υ on `[0, 1]` as the upper envelope of `−2H(i) − (g − i)t` over
/// `i ∈ [lo, hi]`, then reflected to `[0, 2]`.
pub fn ups_from_counting_window(h: &CountingFunction, lo: i64, hi: i64) -> Result<PlFunction> {
    let g = h.genus() as i64;
    let lines: Vec<Line> = (lo..=hi)
        .map(|i| Line::new(int(i - g), int(-2 * h.at(i))))
        .collect();
    PlFunction::upper_envelope(&lines, &int(1))?.symmetrize()
}

/// Υ from a counting function over the window `i ∈ {0, …, 2g}`.
pub fn ups_from_counting(h: &CountingFunction) -> Result<PlFunction> {
    ups_from_counting_window(h, 0, 2 * h.genus() as i64)
}

pub fn ups_torus_semigroup(p: u64, q: u64) -> Result<PlFunction> {
    ups_from_counting(&torus_counting(p, q)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Route {
    #[default]
    Euclid,
    Semigroup,
}

/// Υ of a single (possibly mirrored) torus knot.
pub fn ups_torus(knot: &TorusKnot, route: Route) -> Result<PlFunction> {
    if knot.is_unknot() {
        return Ok(PlFunction::zero(int(2)));
    }
    let f = match route {
        Route::Euclid => ups_torus_euclid(knot.p(), knot.q())?,
        Route::Semigroup => ups_torus_semigroup(knot.p(), knot.q())?,
    };
    Ok(if knot.is_mirrored() { f.negate() } else { f })
}

/// Υ of a connected sum: additive, odd under mirroring.
pub fn ups_expr(e: &KnotExpr, route: Route) -> Result<PlFunction> {
    let mut total = PlFunction::zero(int(2));
    for (knot, m) in e.summands() {
        total = total.add(&ups_torus(knot, route)?.scale(&int(*m as i64)))?;
    }
    Ok(total)
}

/// υ = Υ(1).
pub fn upsilon_at_one(e: &KnotExpr) -> Result<Rational> {
    ups_expr(e, Route::Euclid)?.eval(&int(1))
}

fn unmirrored(knot: &TorusKnot) -> Result<()> {
    if knot.is_mirrored() {
        return Err(Error::Unsupported(format!("{knot}: only unmirrored torus knots are supported")));
    }
    Ok(())
}

/// Whether Υ coincides with `−g4·t` on `[0, 2/p]`.
pub fn check_obs_small_t(knot: &TorusKnot) -> Result<bool> {
    unmirrored(knot)?;
    if knot.is_unknot() {
        return Ok(true);
    }
    let f = ups_torus(knot, Route::Euclid)?;
    let edge = rat(2, knot.p() as i64);
    let g4 = knot.g4()?;
    let on_line = |t: &Rational| f.eval(t).map(|v| v == -&g4 * t);
    let mut ok = on_line(&edge)?;
    for (t, _) in f.breakpoints().iter().filter(|(t, _)| *t < edge) {
        ok &= on_line(t)?;
    }
    Ok(ok)
}

/// `Υ(t) − (−t·g4 + ⌊q/p⌋(pt − 2))` for `t ∈ (2/p, 1]`.
pub fn slack_obs(knot: &TorusKnot, t: &Rational) -> Result<Rational> {
    unmirrored(knot)?;
    if knot.is_unknot() {
        return Err(Error::Argument("the unknot has no small-t observation window".into()));
    }
    let p = knot.p() as i64;
    if *t <= rat(2, p) || *t > int(1) {
        return Err(Error::Domain(format!(
            "t = {} outside (2/{p}, 1]",
            format_rational(t)
        )));
    }
    let f = ups_torus(knot, Route::Euclid)?;
    let k = int((knot.q() / knot.p()) as i64);
    let bound = -t * knot.g4()? + k * (int(p) * t - int(2));
    Ok(f.eval(t)? - bound)
}

/// Largest `t*` with `f = −g4·t` on `[0, t*]`.
pub fn first_breakpoint(f: &PlFunction, g4: &Rational) -> Result<Rational> {
    let points = f.breakpoints();
    if !points[0].1.is_zero() {
        return Err(Error::Contract("Υ(0) must vanish".into()));
    }
    let initial = &f.slopes()[0];
    if initial != &-g4 {
        return Err(Error::Contract(format!(
            "initial slope {} does not match -g4 = {}",
            format_rational(initial),
            format_rational(&-g4)
        )));
    }
    Ok(points[1].0.clone())
}

/// `⌈2 / t*⌉`, a lower bound for `m_K`.
pub fn mk_lower_bound(f: &PlFunction, g4: &Rational) -> Result<u64> {
    let t = first_breakpoint(f, g4)?;
    let bound = ceil_int(&(int(2) / t));
    u64::try_from(bound).map_err(|e| Error::Internal(e.to_string()))
}

/// One cell of a torus-knot Υ table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableCell {
    pub p: u64,
    pub q: u64,
    pub value: Rational,
}

/// Υ_{T(p,q)}(t) for all coprime `2 ≤ p < q`, `p ≤ pmax`, `q ≤ qmax`.
pub fn torus_table(pmax: u64, qmax: u64, t: &Rational) -> Result<Vec<TableCell>> {
    if t.is_negative() || *t > int(2) {
        return Err(Error::Domain(format!("t = {} outside [0, 2]", format_rational(t))));
    }
    let pairs: Vec<(u64, u64)> = (2..=pmax)
        .flat_map(|p| (p + 1..=qmax).map(move |q| (p, q)))
        .filter(|(p, q)| p.gcd(q) == 1)
        .collect();
    pairs
        .into_par_iter()
        .map(|(p, q)| Ok(TableCell { p, q, value: ups_torus_euclid(p, q)?.eval(t)? }))
        .collect()
}
