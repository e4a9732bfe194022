//! Lower bounds for the cobordism distance `d(K, L) = g4(K # −L)` and for
//! braid indices, evaluated on certificates for the twist quantities
//! `n_K`, `k_K`, `m_K`.
//!
//! The twist quantities are never computed. A certificate carries bounds
//! in the sound direction only (lower bounds for `n_K` and `k_K`, an upper
//! bound for `m_K`), so every emitted inequality remains true.

use std::fmt;

use num_traits::{Signed, Zero};
use serde_json::json;

use crate::braid::{BraidWord, QuasipositiveWitness};
use crate::error::{Error, Result};
use crate::knot::{KnotExpr, TorusKnot};
use crate::plcalc::PlFunction;
use crate::rational::{format_rational, int, parse_rational, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    /// Closure of `(a_1⋯a_{n−1})^{nk+1} α` or `Δ^{2k} α`.
    TwistedBraidClosure { n: u64, k: u64 },
    /// Closure of an `n`-braid with a sharp slice-Bennequin inequality.
    QuasiPositiveBraidIndex { strands: u64 },
    Manual,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::TwistedBraidClosure { n, k } => write!(f, "twisted-braid-closure(n={n},k={k})"),
            Provenance::QuasiPositiveBraidIndex { strands } => {
                write!(f, "quasi-positive-braid-index(strands={strands})")
            }
            Provenance::Manual => write!(f, "manual"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistCertificate {
    n_lower: u64,
    k_lower: u64,
    /// `None` is infinity.
    m_upper: Option<u64>,
    g4: Rational,
    provenance: Provenance,
    /// `g4` was supplied by hand rather than derived.
    unverified: bool,
}

impl TwistCertificate {
    fn checked(self) -> Result<Self> {
        if self.n_lower == 0 {
            return Err(Error::Argument("n must be at least 1".into()));
        }
        if self.m_upper == Some(0) {
            return Err(Error::Argument("m must be at least 1".into()));
        }
        if self.g4.is_negative() {
            return Err(Error::Argument(format!("negative g4 {}", format_rational(&self.g4))));
        }
        if !(&self.g4 * int(2)).is_integer() {
            return Err(Error::Argument(format!("g4 {} is not a half-integer", format_rational(&self.g4))));
        }
        if let Some(m) = self.m_upper {
            if self.n_lower > m {
                return Err(Error::Contract(format!(
                    "n_K >= {} contradicts m_K <= {m}: n_K <= m_K for every knot",
                    self.n_lower
                )));
            }
        }
        Ok(self)
    }

    /// The twisted-braid certificate: `n_K = m_K = n` and `k_K ≥ k`.
    pub fn twisted_braid_closure(n: u64, k: u64, g4: Rational) -> Result<Self> {
        if k == 0 {
            return Err(Error::Argument("a twisted braid closure needs k >= 1".into()));
        }
        TwistCertificate {
            n_lower: n,
            k_lower: k,
            m_upper: Some(n),
            g4,
            provenance: Provenance::TwistedBraidClosure { n, k },
            unverified: false,
        }
        .checked()
    }

    /// `T(p, q) = (a_1⋯a_{p−1})^{pk+1} · (a_1⋯a_{p−1})^{q−pk−1}` with
    /// `k = ⌊(q − 1)/p⌋`.
    pub fn from_torus(knot: &TorusKnot) -> Result<Self> {
        if knot.is_unknot() {
            return Ok(Self::unknot());
        }
        if knot.is_mirrored() {
            return Err(Error::Unsupported(format!("no twist certificate for the mirror {knot}")));
        }
        Self::twisted_braid_closure(knot.p(), (knot.q() - 1) / knot.p(), knot.g4()?)
    }

    pub fn unknot() -> Self {
        TwistCertificate {
            n_lower: 1,
            k_lower: 0,
            m_upper: Some(1),
            g4: Rational::zero(),
            provenance: Provenance::QuasiPositiveBraidIndex { strands: 1 },
            unverified: false,
        }
    }

    /// Slice-Bennequin sharp `n`-braid closure: `m_K ≤ n`.
    pub fn from_quasipositive(w: &QuasipositiveWitness) -> Result<Self> {
        let g4 = w.rudolph_genus()?;
        TwistCertificate {
            n_lower: 1,
            k_lower: 0,
            m_upper: Some(w.strands() as u64),
            g4,
            provenance: Provenance::QuasiPositiveBraidIndex { strands: w.strands() as u64 },
            unverified: false,
        }
        .checked()
    }

    /// A positive word; recognised as twisted when it starts with `k ≥ 1`
    /// full twists.
    pub fn from_positive_braid(b: &BraidWord) -> Result<Self> {
        let w = QuasipositiveWitness::from_positive_word(b)?;
        let g4 = w.rudolph_genus()?;
        let n = b.strands();
        let k = leading_cycles(b) / n.max(1);
        if n >= 2 && k >= 1 {
            Self::twisted_braid_closure(n as u64, k as u64, g4)
        } else {
            Self::from_quasipositive(&w)
        }
    }

    /// Positive torus knots and their sums; mirrors are not certified.
    pub fn from_knot_expr(e: &KnotExpr) -> Result<Self> {
        match e.summands() {
            [] => Ok(Self::unknot()),
            [(knot, 1)] => Self::from_torus(knot),
            summands => {
                let g4 = e.g4()?;
                // the split sum of the torus braids is a positive braid
                let count: u64 = summands.iter().map(|(_, m)| *m).sum();
                let strands: u64 = summands.iter().map(|(k, m)| k.p() * m).sum::<u64>() - (count - 1);
                TwistCertificate {
                    n_lower: 1,
                    k_lower: 0,
                    m_upper: Some(strands),
                    g4,
                    provenance: Provenance::QuasiPositiveBraidIndex { strands },
                    unverified: false,
                }
                .checked()
            }
        }
    }

    /// Hand-entered bounds; `g4` is flagged unverified.
    pub fn manual(n_lower: u64, k_lower: u64, m_upper: Option<u64>, g4: Rational) -> Result<Self> {
        TwistCertificate { n_lower, k_lower, m_upper, g4, provenance: Provenance::Manual, unverified: true }.checked()
    }

    /// Parses `cert(n=3,k=2,g4=6)` with optional `m=…` (`m=inf` allowed).
    pub fn parse(text: &str) -> Result<Self> {
        let s = text.trim_end();
        let lead = text.len() - text.trim_start().len();
        let body = s
            .trim_start()
            .strip_prefix("cert")
            .map(str::trim_start)
            .and_then(|r| r.strip_prefix('('))
            .ok_or_else(|| Error::parse(lead, "expected `cert(`"))?;
        let open = s.len() - body.len();
        let inner = body.strip_suffix(')').ok_or_else(|| Error::parse(s.len(), "expected `)`"))?;
        let (mut n, mut k, mut m, mut g4) = (None, None, None, None);
        let mut offset = open;
        for field in inner.split(',') {
            let pos = offset + field.len() - field.trim_start().len();
            offset += field.len() + 1;
            let (key, value) =
                field.split_once('=').ok_or_else(|| Error::parse(pos, format!("expected `key=value`, got `{}`", field.trim())))?;
            let value = value.trim();
            let int_value = || {
                value
                    .parse::<u64>()
                    .map_err(|_| Error::parse(pos, format!("expected a nonnegative integer, got `{value}`")))
            };
            let slot_taken = match key.trim() {
                "n" => n.replace(int_value()?).is_some(),
                "k" => k.replace(int_value()?).is_some(),
                "m" => {
                    let v = if value == "inf" { None } else { Some(int_value()?) };
                    m.replace(v).is_some()
                }
                "g4" => g4.replace(parse_rational(value).map_err(|_| Error::parse(pos, format!("bad g4 `{value}`")))?).is_some(),
                other => return Err(Error::parse(pos, format!("unknown certificate field `{other}`"))),
            };
            if slot_taken {
                return Err(Error::parse(pos, format!("duplicate field `{}`", key.trim())));
            }
        }
        let missing = |f: &str| Error::parse(s.len(), format!("certificate is missing `{f}`"));
        Self::manual(n.ok_or_else(|| missing("n"))?, k.ok_or_else(|| missing("k"))?, m.flatten(), g4.ok_or_else(|| missing("g4"))?)
    }

    pub fn n_lower(&self) -> u64 {
        self.n_lower
    }

    pub fn k_lower(&self) -> u64 {
        self.k_lower
    }

    pub fn m_upper(&self) -> Option<u64> {
        self.m_upper
    }

    pub fn g4(&self) -> &Rational {
        &self.g4
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn is_unverified(&self) -> bool {
        self.unverified
    }

    /// Same bounds with a different `k`; for probing.
    pub fn with_k_lower(&self, k_lower: u64) -> Self {
        TwistCertificate { k_lower, ..self.clone() }
    }
}

impl fmt::Display for TwistCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cert(n={},k={},g4={}", self.n_lower, self.k_lower, format_rational(&self.g4))?;
        match self.m_upper {
            Some(m) => write!(f, ",m={m})"),
            None => write!(f, ",m=inf)"),
        }
    }
}

/// Number of leading complete copies of `a_1⋯a_{n−1}`.
fn leading_cycles(b: &BraidWord) -> usize {
    let n = b.strands();
    if n < 2 {
        return 0;
    }
    let cycle: Vec<i32> = (1..n as i32).collect();
    b.letters().chunks(n - 1).take_while(|c| *c == cycle.as_slice()).count()
}

/// A knot given either as a torus-knot expression or as a certificate.
pub fn parse_operand(text: &str) -> Result<TwistCertificate> {
    if text.trim_start().starts_with("cert") {
        TwistCertificate::parse(text)
    } else {
        TwistCertificate::from_knot_expr(&KnotExpr::parse(text)?)
    }
}

/// `(|g4(K) − g4(L)|, g4(K) + g4(L))`.
pub fn triangle_bounds(g4_k: &Rational, g4_l: &Rational) -> (Rational, Rational) {
    ((g4_k - g4_l).abs(), g4_k + g4_l)
}

/// `k_L(n_L − m_K) + g4(K) − g4(L)`; `None` when `m_K` is unbounded.
pub fn improved_bound(cert_k: &TwistCertificate, cert_l: &TwistCertificate) -> Option<Rational> {
    let m = cert_k.m_upper? as i64;
    let twist = cert_l.k_lower as i64 * (cert_l.n_lower as i64 - m);
    Some(int(twist) + &cert_k.g4 - &cert_l.g4)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub rule: String,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub triangle_lower: Rational,
    pub triangle_upper: Rational,
    /// Best of the applicable improved rules.
    pub improved_lower: Option<Rational>,
    pub best_lower: Rational,
    pub witnesses: Vec<Witness>,
    pub inapplicable: Vec<String>,
    /// Some `g4` was hand-entered.
    pub unverified: bool,
}

const TRIANGLE: &str = "triangle";
const IMPROVED_KL: &str = "improved k_L(n_L-m_K)+g4(K)-g4(L)";
const IMPROVED_LK: &str = "improved k_K(n_K-m_L)+g4(L)-g4(K)";

/// All rules for `d(K, L)`, in both directions.
pub fn cobordism_report(cert_k: &TwistCertificate, cert_l: &TwistCertificate) -> BoundReport {
    let (triangle_lower, triangle_upper) = triangle_bounds(&cert_k.g4, &cert_l.g4);
    let mut witnesses = vec![Witness { rule: TRIANGLE.into(), value: triangle_lower.clone() }];
    let mut inapplicable = Vec::new();
    for (rule, a, b) in [(IMPROVED_KL, cert_k, cert_l), (IMPROVED_LK, cert_l, cert_k)] {
        match improved_bound(a, b) {
            Some(value) => witnesses.push(Witness { rule: rule.into(), value }),
            None => inapplicable.push(rule.to_string()),
        }
    }
    let improved_lower = witnesses[1..].iter().map(|w| w.value.clone()).max();
    let best_lower = witnesses.iter().map(|w| w.value.clone()).max().unwrap_or_default();
    BoundReport {
        triangle_lower,
        triangle_upper,
        improved_lower,
        best_lower,
        witnesses,
        inapplicable,
        unverified: cert_k.unverified || cert_l.unverified,
    }
}

impl BoundReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "triangle_lower": format_rational(&self.triangle_lower),
            "triangle_upper": format_rational(&self.triangle_upper),
            "improved_lower": self.improved_lower.as_ref().map(format_rational),
            "best_lower": format_rational(&self.best_lower),
            "witnesses": self.witnesses.iter().map(|w| json!({"rule": w.rule, "value": format_rational(&w.value)})).collect::<Vec<_>>(),
            "inapplicable": self.inapplicable,
            "unverified_g4": self.unverified,
        })
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "lower bound for d(K,L): {}", format_rational(&self.best_lower))?;
        writeln!(f, "upper bound (triangle): {}", format_rational(&self.triangle_upper))?;
        for w in &self.witnesses {
            writeln!(f, "  {:<40} {}", w.rule, format_rational(&w.value))?;
        }
        for rule in &self.inapplicable {
            writeln!(f, "  {rule:<40} inapplicable (m unbounded)")?;
        }
        if self.unverified {
            writeln!(f, "note: hand-entered g4, unverified")?;
        }
        Ok(())
    }
}

/// `(ℓ(β) − n + 1)/2`, a lower bound for τ and g4 of the closure.
pub fn slice_bennequin_tau(b: &BraidWord) -> Result<Rational> {
    if !b.closes_to_knot() {
        return Err(Error::Unsupported(format!(
            "the closure of `{b}` has {} components",
            b.closure_components()
        )));
    }
    Ok(rat(b.writhe() - b.strands() as i64 + 1, 2))
}

/// `|ℓ(β) − ℓ(β′)| ≤ n − b`, with `β′` realizing braid index `b`.
pub fn jones_inequality_check(beta: &BraidWord, beta_prime: &BraidWord, b: u64) -> bool {
    (beta.writhe() - beta_prime.writhe()).abs() <= beta.strands() as i64 - b as i64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BraidIndexScope {
    /// Every knot concordant to the closure.
    AllConcordant,
    /// Quasi-positive knots concordant to the closure.
    QuasiPositiveOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BraidIndexBound {
    pub value: u64,
    pub scope: BraidIndexScope,
}

/// Braid index lower bound over the concordance class; `None` when the
/// certificate is not a twisted braid closure.
pub fn concordance_braid_index_bound(cert: &TwistCertificate, extra_positive_row: bool) -> Option<BraidIndexBound> {
    let Provenance::TwistedBraidClosure { n, k } = cert.provenance else {
        return None;
    };
    if k == 0 {
        return None;
    }
    let scope = if extra_positive_row && k + 1 >= n {
        BraidIndexScope::AllConcordant
    } else {
        BraidIndexScope::QuasiPositiveOnly
    };
    Some(BraidIndexBound { value: n, scope })
}

/// The bound for a positive word `Δ^{2k} a_1⋯a_{n−1} α`, taking the largest
/// `k` that leaves the extra row; `None` without a full twist.
pub fn braid_index_bound_for_word(b: &BraidWord) -> Result<Option<BraidIndexBound>> {
    let cert = TwistCertificate::from_positive_braid(b)?;
    let Provenance::TwistedBraidClosure { n, .. } = cert.provenance else {
        return Ok(None);
    };
    let k = (leading_cycles(b) as u64 - 1) / n;
    let with_row = TwistCertificate { provenance: Provenance::TwistedBraidClosure { n, k }, ..cert.clone() };
    Ok(concordance_braid_index_bound(&with_row, true).or_else(|| concordance_braid_index_bound(&cert, false)))
}

/// Sample points for checking a PL inequality on `[lo, hi]`.
fn samples(f: &PlFunction, lo: &Rational, hi: &Rational) -> Vec<Rational> {
    let mut ts: Vec<Rational> = f.breakpoints().iter().map(|(t, _)| t.clone()).filter(|t| lo <= t && t <= hi).collect();
    ts.push(lo.clone());
    ts.push(hi.clone());
    ts
}

/// `Υ(t) = −t·g4` on `[0, 2/m]` and `Υ(t) ≥ −t·g4 + k(nt − 2)` on `(2/n, 1]`,
/// with the certificate bounds substituted.
pub fn twist_profile_consistency(f: &PlFunction, g4: &Rational, cert: &TwistCertificate) -> Result<bool> {
    if let Some(m) = cert.m_upper {
        let end = rat(2, m as i64).min(int(1));
        for t in samples(f, &Rational::zero(), &end) {
            if f.eval(&t)? != -(&t * g4) {
                return Ok(false);
            }
        }
    }
    let start = rat(2, cert.n_lower as i64);
    if start < int(1) {
        for t in samples(f, &start, &int(1)) {
            if f.eval(&t)? < twist_profile_lower(&t, g4, cert) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `−t·g4 + k(nt − 2)`.
pub fn twist_profile_lower(t: &Rational, g4: &Rational, cert: &TwistCertificate) -> Rational {
    -(t * g4) + int(cert.k_lower as i64) * (t * int(cert.n_lower as i64) - int(2))
}

/// `Υ(1) − (−g4 + k(n − 2))`.
pub fn twist_profile_slack_at_one(f: &PlFunction, g4: &Rational, cert: &TwistCertificate) -> Result<Rational> {
    Ok(f.eval(&int(1))? - twist_profile_lower(&int(1), g4, cert))
}
