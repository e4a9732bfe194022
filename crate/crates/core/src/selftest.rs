//! The validation suite behind `upsig selftest`: route equivalence,
//! regression values, and property checks, one entry per criterion.

use std::time::{Duration, Instant};

use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bounds::{improved_bound, twist_profile_consistency, twist_profile_slack_at_one, triangle_bounds, TwistCertificate};
use crate::braid::BraidWord;
use crate::homogenize::{defect_gap_check, hom_sig_torus_braid, hom_ups_beta_n, hom_ups_torus_braid, kn_sandwich};
use crate::knot::{KnotExpr, TorusKnot};
use crate::plcalc::PlFunction;
use crate::rational::{format_rational, int, rat, Rational};
use crate::semigroup::{blowup_factors, min_convolve, torus_counting};
use crate::signature::{
    alexander_check, braid_signature, classical_signature, lt_signature, OmegaPoint, SeifertMatrix,
};
use crate::upsilon::{
    euclid_decompose, ups_expr, ups_staircase, ups_torus_euclid, ups_torus_semigroup, upsilon_at_one, Route,
};
use crate::Error;

type Check = std::result::Result<String, String>;

pub struct Criterion {
    pub id: u32,
    pub title: &'static str,
    run: fn() -> Check,
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl Criterion {
    pub fn run(&self) -> Outcome {
        let start = Instant::now();
        let result = (self.run)();
        let elapsed = start.elapsed();
        let (passed, detail) = match result {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        Outcome { id: self.id, title: self.title, passed, detail, elapsed }
    }
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { id: 1, title: "route equivalence for 2 <= p < q <= 40", run: route_equivalence },
        Criterion { id: 2, title: "T(8,11) decomposition regression", run: t8_11_regression },
        Criterion { id: 3, title: "staircase and twist-family identities", run: staircase_identities },
        Criterion { id: 4, title: "upsilon(1) of T(3,3n+1) and T(3,3n+2)", run: three_strand_values },
        Criterion { id: 5, title: "blowup recursion for a < b <= 25", run: blowup_recursion },
        Criterion { id: 6, title: "universal upsilon properties", run: universal_properties },
        Criterion { id: 7, title: "signature validation gate", run: signature_gate },
        Criterion { id: 8, title: "signature of (a1^3 a2^7)^16 at exp(3*pi*i/4)", run: example_power },
        Criterion { id: 9, title: "|upsilon - sigma/2| <= 2 for T(3,q)", run: crosscap_window },
        Criterion { id: 10, title: "non-convexity certificates", run: non_convexity },
        Criterion { id: 11, title: "bounds grid", run: bounds_grid },
        Criterion { id: 12, title: "homogenization identities", run: homogenization_identities },
    ]
}

pub fn run_all() -> Vec<Outcome> {
    criteria().iter().map(Criterion::run).collect()
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err(e: Error) -> String {
    e.to_string()
}

fn coprime_pairs(lo: u64, max: u64) -> Vec<(u64, u64)> {
    (lo..=max).flat_map(|p| (p + 1..=max).map(move |q| (p, q))).filter(|(p, q)| p.gcd(q) == 1).collect()
}

fn route_equivalence() -> Check {
    let pairs = coprime_pairs(2, 40);
    let bad: Vec<(u64, u64)> = pairs
        .par_iter()
        .filter(|&&(p, q)| match (ups_torus_euclid(p, q), ups_torus_semigroup(p, q)) {
            (Ok(a), Ok(b)) => a != b,
            _ => true,
        })
        .copied()
        .collect();
    ensure!(bad.is_empty(), "routes disagree on {bad:?}");
    Ok(format!("{} pairs", pairs.len()))
}

fn t8_11_regression() -> Check {
    let d = euclid_decompose(8, 11).map_err(err)?;
    ensure!(d.terms() == [(8, 1), (3, 2), (2, 1)], "decomposition {:?}", d.terms());
    let lhs = ups_torus_euclid(8, 11).map_err(err)?;
    let rhs = ups_torus_euclid(8, 9)
        .and_then(|a| a.add(&ups_torus_euclid(3, 4)?.scale(&int(2))))
        .and_then(|a| a.add(&ups_torus_euclid(2, 3)?))
        .map_err(err)?;
    ensure!(lhs == rhs, "Υ(T(8,11)) = {lhs} differs from the sum {rhs}");
    let e = KnotExpr::parse("T(8,11) # -T(8,9) # -2*T(3,4) # -T(2,3)").map_err(err)?;
    let zero = ups_expr(&e, Route::Semigroup).map_err(err)?;
    ensure!(zero.breakpoints().iter().all(|(_, v)| v.is_zero()), "difference is not zero: {zero}");
    Ok(format!("Υ(1) = {}", format_rational(&lhs.eval(&int(1)).map_err(err)?)))
}

fn staircase_identities() -> Check {
    for n in 2..=20 {
        let s = ups_staircase(n).map_err(err)?;
        ensure!(s == ups_torus_semigroup(n, n + 1).map_err(err)?, "staircase({n}) differs from T({n},{})", n + 1);
    }
    for n in 2..=8 {
        let s = ups_staircase(n).map_err(err)?;
        for k in 1..=6 {
            let f = ups_torus_euclid(n, n * k + 1).map_err(err)?;
            ensure!(f == s.scale(&int(k as i64)), "T({n},{}) is not {k} staircases", n * k + 1);
        }
    }
    Ok("n <= 20 staircases; n <= 8, k <= 6 twist families".into())
}

fn three_strand_values() -> Check {
    for n in 1..=12i64 {
        for (r, expected) in [(1, -2 * n), (2, -2 * n - 1)] {
            let q = (3 * n + r) as u64;
            let v = ups_torus_euclid(3, q).and_then(|f| f.eval(&int(1))).map_err(err)?;
            ensure!(v == int(expected), "Υ_T(3,{q})(1) = {} instead of {expected}", format_rational(&v));
        }
    }
    Ok("n <= 12".into())
}

fn blowup_recursion() -> Check {
    let pairs = coprime_pairs(2, 25);
    for &(a, b) in &pairs {
        let (h1, h2) = blowup_factors(a, b).map_err(err)?;
        let h = torus_counting(a, b).map_err(err)?;
        ensure!(h == min_convolve(&h1, &h2).map_err(err)?, "recursion fails for ({a}, {b})");
    }
    Ok(format!("{} pairs", pairs.len()))
}

fn check_universal(f: &PlFunction, g4: Option<&Rational>, convex: bool) -> std::result::Result<(), String> {
    let pts = f.breakpoints();
    ensure!(pts[0].1.is_zero(), "Υ(0) = {}", format_rational(&pts[0].1));
    ensure!(f.domain_end() == &int(2), "domain ends at {}", format_rational(f.domain_end()));
    for (t, v) in pts {
        let mirror = f.eval(&(int(2) - t)).map_err(err)?;
        ensure!(&mirror == v, "Υ({0}) != Υ(2 - {0})", format_rational(t));
        if let Some(g) = g4 {
            if t.is_positive() {
                ensure!((v / t).abs() <= *g, "|Υ(t)/t| > g4 at t = {}", format_rational(t));
            }
        }
    }
    ensure!(!convex || f.is_convex(), "not convex");
    Ok(())
}

fn universal_properties() -> Check {
    let mut count = 0;
    for (p, q) in coprime_pairs(2, 40) {
        let g4 = int(((p - 1) * (q - 1) / 2) as i64);
        for f in [ups_torus_euclid(p, q), ups_torus_semigroup(p, q)] {
            check_universal(&f.map_err(err)?, Some(&g4), true).map_err(|m| format!("T({p},{q}): {m}"))?;
            count += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let small = coprime_pairs(2, 15);
    for _ in 0..60 {
        let summands: Vec<(TorusKnot, u64)> = (0..rng.gen_range(1..=3))
            .map(|_| {
                let (p, q) = small[rng.gen_range(0..small.len())];
                (TorusKnot::new(p, q, rng.gen_bool(0.3)).expect("coprime"), rng.gen_range(1..=2))
            })
            .collect();
        let e = KnotExpr::new(summands);
        let f = ups_expr(&e, Route::Euclid).map_err(err)?;
        let g4 = if e.has_mirrors() { None } else { Some(e.g4().map_err(err)?) };
        check_universal(&f, g4.as_ref(), false).map_err(|m| format!("{e}: {m}"))?;
        count += 1;
    }
    Ok(format!("{count} functions"))
}

fn random_knot_word(rng: &mut ChaCha8Rng) -> BraidWord {
    let strands = rng.gen_range(2..=5usize);
    let mut len = rng.gen_range(strands..strands + 16);
    if (len + strands) % 2 == 0 {
        len += 1;
    }
    loop {
        let letters = (0..len)
            .map(|_| {
                let g = rng.gen_range(1..strands as i32);
                if rng.gen_bool(0.5) {
                    g
                } else {
                    -g
                }
            })
            .collect();
        let b = BraidWord::new(strands, letters).expect("letters in range");
        if b.closes_to_knot() {
            return b;
        }
    }
}

fn signature_gate() -> Check {
    let pairs = coprime_pairs(2, 12);
    for &(p, q) in &pairs {
        let v = BraidWord::torus_braid(p as usize, q as usize)
            .and_then(|b| SeifertMatrix::from_braid(&b))
            .map_err(err)?;
        alexander_check(&v, p, q).map_err(err)?;
    }
    for n in 1..=10u64 {
        let e = KnotExpr::single(TorusKnot::positive(2, 2 * n + 1).map_err(err)?);
        let s = classical_signature(&e).map_err(err)?;
        ensure!(s == -2 * n as i64, "σ(T(2,{})) = {s}", 2 * n + 1);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let w = OmegaPoint::classical();
    for _ in 0..25 {
        let b = random_knot_word(&mut rng);
        let (a, m) = (braid_signature(&b, &w).map_err(err)?, braid_signature(&b.mirror(), &w).map_err(err)?);
        ensure!(a == -m, "σ(`{b}`) = {a} but the mirror has {m}");
    }
    Ok(format!("{} Alexander checks, 10 two-strand values, 25 mirrors", pairs.len()))
}

fn example_power() -> Check {
    let beta = BraidWord::parse("1 1 1 2 2 2 2 2 2 2", None).map_err(err)?.power(16);
    ensure!(beta.closes_to_knot(), "the closure is not a knot");
    let start = Instant::now();
    let v = SeifertMatrix::from_braid(&beta).map_err(err)?;
    let sigma = lt_signature(&v, &OmegaPoint::new(rat(3, 4)).map_err(err)?).map_err(err)?;
    let elapsed = start.elapsed();
    ensure!(sigma == -128, "σ = {sigma}");
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    Ok(format!("σ = -128, matrix size {}, {:.2?}", v.size(), elapsed))
}

fn crosscap_window() -> Check {
    for q in (1..=40u64).filter(|q| q % 3 != 0) {
        let e = KnotExpr::single(TorusKnot::positive(3, q).map_err(err)?);
        let upsilon = upsilon_at_one(&e).map_err(err)?;
        let sigma = classical_signature(&e).map_err(err)?;
        let gap = (&upsilon - rat(sigma, 2)).abs();
        ensure!(gap <= int(2), "T(3,{q}): |υ - σ/2| = {}", format_rational(&gap));
    }
    Ok("q <= 40".into())
}

fn non_convexity() -> Check {
    for n in 1..=20 {
        ensure!(!hom_ups_beta_n(n).map_err(err)?.profile.is_convex(), "beta_{n} profile is convex");
    }
    for n in 6..=20 {
        let (_, upper) = kn_sandwich(n, &rat(2, 3)).map_err(err)?;
        let (lower, _) = kn_sandwich(n, &int(1)).map_err(err)?;
        ensure!(
            upper < lower,
            "K_{n}: upper(2/3) = {} is not below lower(1) = {}",
            format_rational(&upper),
            format_rational(&lower)
        );
    }
    Ok("beta_n for n <= 20; K_n for 6 <= n <= 20".into())
}

fn bounds_grid() -> Check {
    let cert = |p, q| TorusKnot::positive(p, q).and_then(|k| TwistCertificate::from_torus(&k)).map_err(err);
    let (k, l) = (cert(2, 13)?, cert(3, 7)?);
    let improved = improved_bound(&k, &l).ok_or("improved bound inapplicable")?;
    let (triangle, _) = triangle_bounds(k.g4(), l.g4());
    ensure!(
        improved > triangle,
        "improved {} does not beat triangle {}",
        format_rational(&improved),
        format_rational(&triangle)
    );
    let mut certs = 0;
    for (p, q) in coprime_pairs(2, 12).into_iter().take(20) {
        let c = cert(p, q)?;
        ensure!(improved_bound(&c, &c) == Some(int(0)), "self-distance bound nonzero for T({p},{q})");
        certs += 1;
    }
    ensure!(certs == 20, "only {certs} self-pairs");
    let mut slack_failures = Vec::new();
    for n in 2..=8u64 {
        for kk in 1..=5u64 {
            let knot = TorusKnot::positive(n, n * kk + 1).map_err(err)?;
            let c = TwistCertificate::from_torus(&knot).map_err(err)?;
            let f = ups_torus_euclid(n, n * kk + 1).map_err(err)?;
            let g4 = knot.g4().map_err(err)?;
            ensure!(twist_profile_consistency(&f, &g4, &c).map_err(err)?, "consistency fails for {knot}");
            let slack = twist_profile_slack_at_one(&f, &g4, &c).map_err(err)?;
            if !slack.is_zero() {
                slack_failures.push(format!("{knot}: {}", format_rational(&slack)));
            }
        }
    }
    ensure!(
        slack_failures.is_empty(),
        "slack at t = 1 nonzero for {} of 35 certificates ({} ...)",
        slack_failures.len(),
        slack_failures[..slack_failures.len().min(3)].join(", ")
    );
    Ok("improved 2 > triangle 0; 20 self-pairs; 35 certificates".into())
}

fn homogenization_identities() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..20 {
        let n = rng.gen_range(2..=6u64);
        let m = rng.gen_range(1..=12i64);
        let b = rng.gen_range(1..=12i64);
        let t = rat(rng.gen_range(0..=b), b);
        let sig = hom_sig_torus_braid(n, m, &t).map_err(err)?;
        let ups = hom_ups_torus_braid(n, m).and_then(|p| p.profile.eval(&t)).map_err(err)?;
        ensure!(sig == &ups * int(2), "n = {n}, m = {m}, t = {}", format_rational(&t));
    }
    let mut gaps = 0;
    for n in 2..=6u64 {
        for q in (1..=25u64).filter(|q| q.gcd(&n) == 1) {
            for t in [rat(1, 4), rat(1, 2), int(1)] {
                defect_gap_check(n, q, &t).map_err(err)?;
                gaps += 1;
            }
        }
    }
    Ok(format!("20 identity samples, {gaps} gap checks"))
}
