//! Acceptance run: one PASS/FAIL line per criterion, exit status nonzero if
//! any criterion fails. All comparisons are exact; the only tolerances are
//! the wall-time targets.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use upsig_core::bounds::{
    cobordism_report, improved_bound, twist_profile_consistency, twist_profile_slack_at_one, triangle_bounds, TwistCertificate,
};
use upsig_core::braid::BraidWord;
use upsig_core::homogenize::{defect_gap_check, hom_sig_torus_braid, hom_ups_beta_n, hom_ups_torus_braid, kn_sandwich};
use upsig_core::knot::{KnotExpr, TorusKnot};
use upsig_core::plcalc::PlFunction;
use upsig_core::rational::{format_rational, int, rat, Rational};
use upsig_core::semigroup::{blowup_factors, min_convolve, torus_counting};
use upsig_core::signature::{alexander_check, braid_signature, classical_signature, lt_signature, OmegaPoint, SeifertMatrix};
use upsig_core::upsilon::{euclid_decompose, ups_expr, ups_staircase, ups_torus_euclid, ups_torus_semigroup, Route};

type Outcome = Result<String, String>;

macro_rules! check {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn coprime(lo: u64, hi: u64) -> impl Iterator<Item = (u64, u64)> {
    (lo..=hi).flat_map(move |p| (p + 1..=hi).map(move |q| (p, q))).filter(|(p, q)| p.gcd(q) == 1)
}

fn c1_route_equivalence() -> Outcome {
    let start = Instant::now();
    let mut n = 0;
    for (p, q) in coprime(2, 40) {
        let (a, b) = (ups_torus_euclid(p, q).map_err(e)?, ups_torus_semigroup(p, q).map_err(e)?);
        check!(a == b, "T({p},{q}): euclid {a} vs semigroup {b}");
        n += 1;
    }
    let elapsed = start.elapsed();
    check!(elapsed < Duration::from_secs(30), "{n} pairs took {elapsed:.2?}, target < 30 s");
    Ok(format!("{n} pairs equal in {elapsed:.2?}"))
}

fn c2_example_regression() -> Outcome {
    let terms = euclid_decompose(8, 11).map_err(e)?;
    check!(terms.terms() == [(8, 1), (3, 2), (2, 1)], "decomposition {:?}", terms.terms());
    let sum = ups_torus_euclid(8, 9)
        .and_then(|f| f.add(&ups_torus_euclid(3, 4)?.scale(&int(2))))
        .and_then(|f| f.add(&ups_torus_euclid(2, 3)?))
        .map_err(e)?;
    for route in [Route::Euclid, Route::Semigroup] {
        let lhs = ups_expr(&KnotExpr::parse("T(8,11)").map_err(e)?, route).map_err(e)?;
        check!(lhs == sum, "{route:?}: {lhs} vs {sum}");
    }
    Ok("decomposition {(8,1),(3,2),(2,1)}; both routes equal the sum".into())
}

fn c3_staircases() -> Outcome {
    for n in 2..=20 {
        check!(ups_staircase(n).map_err(e)? == ups_torus_semigroup(n, n + 1).map_err(e)?, "n = {n}");
    }
    for n in 2..=8u64 {
        for k in 1..=6u64 {
            let scaled = ups_staircase(n).map_err(e)?.scale(&int(k as i64));
            check!(ups_torus_euclid(n, n * k + 1).map_err(e)? == scaled, "T({n},{})", n * k + 1);
        }
    }
    Ok("19 staircases, 42 twist families".into())
}

fn c4_three_strand() -> Outcome {
    for n in 1..=12i64 {
        let a = ups_torus_euclid(3, 3 * n as u64 + 1).and_then(|f| f.eval(&int(1))).map_err(e)?;
        let b = ups_torus_euclid(3, 3 * n as u64 + 2).and_then(|f| f.eval(&int(1))).map_err(e)?;
        check!(a == int(-2 * n) && b == int(-2 * n - 1), "n = {n}: {a}, {b}");
    }
    Ok("n = 1..12".into())
}

fn c5_blowups() -> Outcome {
    let mut n = 0;
    for (a, b) in coprime(2, 25) {
        let (h1, h2) = blowup_factors(a, b).map_err(e)?;
        check!(torus_counting(a, b).map_err(e)? == min_convolve(&h1, &h2).map_err(e)?, "({a}, {b})");
        n += 1;
    }
    Ok(format!("{n} pairs"))
}

fn universal(f: &PlFunction, g4: Option<&Rational>, convex: bool) -> Result<(), String> {
    check!(f.eval(&int(0)).map_err(e)?.is_zero(), "Υ(0) != 0");
    for (t, v) in f.breakpoints() {
        check!(f.eval(&(int(2) - t)).map_err(e)? == *v, "asymmetric at {t}");
        if let (Some(g), true) = (g4, t.is_positive()) {
            check!((v / t).abs() <= *g, "|Υ/t| > g4 at {t}");
        }
    }
    check!(!convex || f.is_convex(), "not convex");
    Ok(())
}

fn c6_universal_properties() -> Outcome {
    let mut n = 0;
    for (p, q) in coprime(2, 40) {
        let g4 = int(((p - 1) * (q - 1) / 2) as i64);
        for f in [ups_torus_euclid(p, q).map_err(e)?, ups_torus_semigroup(p, q).map_err(e)?] {
            universal(&f, Some(&g4), true).map_err(|m| format!("T({p},{q}): {m}"))?;
            n += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let pairs: Vec<(u64, u64)> = coprime(2, 12).collect();
    for _ in 0..100 {
        let summands = (0..rng.gen_range(1..=4))
            .map(|_| {
                let (p, q) = pairs[rng.gen_range(0..pairs.len())];
                (TorusKnot::new(p, q, rng.gen_bool(0.4)).unwrap(), rng.gen_range(1..=3))
            })
            .collect();
        let expr = KnotExpr::new(summands);
        let f = ups_expr(&expr, Route::Semigroup).map_err(e)?;
        let g4 = (!expr.has_mirrors()).then(|| expr.g4().unwrap());
        universal(&f, g4.as_ref(), false).map_err(|m| format!("{expr}: {m}"))?;
        n += 1;
    }
    Ok(format!("{n} functions"))
}

fn random_knot_word(rng: &mut ChaCha8Rng) -> BraidWord {
    let strands = rng.gen_range(2..=5usize);
    // knots need an n-cycle, i.e. length of parity n - 1
    let len = 2 * rng.gen_range(1..8) + strands - 1;
    loop {
        let letters = (0..len)
            .map(|_| rng.gen_range(1..strands as i32) * if rng.gen_bool(0.5) { 1 } else { -1 })
            .collect();
        let b = BraidWord::new(strands, letters).unwrap();
        if b.closes_to_knot() {
            return b;
        }
    }
}

fn c7_signature_gate() -> Outcome {
    let mut checks = 0;
    for (p, q) in coprime(2, 12) {
        let v = SeifertMatrix::from_braid(&BraidWord::torus_braid(p as usize, q as usize).map_err(e)?).map_err(e)?;
        check!(alexander_check(&v, p, q).map_err(e)?, "T({p},{q})");
        checks += 1;
    }
    for n in 1..=10i64 {
        let knot = KnotExpr::single(TorusKnot::positive(2, 2 * n as u64 + 1).map_err(e)?);
        let s = classical_signature(&knot).map_err(e)?;
        check!(s == -2 * n, "σ(T(2,{})) = {s}", 2 * n + 1);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..25 {
        let b = random_knot_word(&mut rng);
        let w = OmegaPoint::classical();
        let (s, m) = (braid_signature(&b, &w).map_err(e)?, braid_signature(&b.mirror(), &w).map_err(e)?);
        check!(s == -m, "`{b}`: {s} vs mirror {m}");
    }
    Ok(format!("{checks} Alexander checks, 10 two-strand signatures, 25 mirror pairs"))
}

fn c8_example_power() -> Outcome {
    let start = Instant::now();
    let b = BraidWord::parse("1 1 1 2 2 2 2 2 2 2", None).map_err(e)?.power(16);
    check!(b.closes_to_knot(), "closure is a {}-component link", b.closure_components());
    let v = SeifertMatrix::from_braid(&b).map_err(e)?;
    let sigma = lt_signature(&v, &OmegaPoint::new(rat(3, 4)).map_err(e)?).map_err(e)?;
    let elapsed = start.elapsed();
    check!(sigma == -128, "σ = {sigma}");
    check!(elapsed < Duration::from_secs(60), "took {elapsed:.2?}, target < 60 s");
    Ok(format!("σ = -128 (size {}) in {elapsed:.2?}", v.size()))
}

fn c9_crosscap_window() -> Outcome {
    let mut worst = Rational::zero();
    for q in (1..=40u64).filter(|q| q.gcd(&3) == 1) {
        let knot = TorusKnot::positive(3, q).map_err(e)?;
        let upsilon = ups_torus_euclid(knot.p(), knot.q()).and_then(|f| f.eval(&int(1)));
        let upsilon = if knot.is_unknot() { int(0) } else { upsilon.map_err(e)? };
        let sigma = classical_signature(&KnotExpr::single(knot)).map_err(e)?;
        let gap = (upsilon - rat(sigma, 2)).abs();
        check!(gap <= int(2), "T(3,{q}): {gap}");
        worst = worst.max(gap);
    }
    Ok(format!("max |υ - σ/2| = {}", format_rational(&worst)))
}

fn c10_non_convexity() -> Outcome {
    for n in 1..=20 {
        check!(!hom_ups_beta_n(n).map_err(e)?.profile.is_convex(), "beta_{n} convex");
    }
    for n in 6..=20 {
        let upper = kn_sandwich(n, &rat(2, 3)).map_err(e)?.1;
        let lower = kn_sandwich(n, &int(1)).map_err(e)?.0;
        check!(upper < lower, "K_{n}: {upper} >= {lower}");
    }
    Ok("beta_n non-convex for n <= 20; K_n certified for 6 <= n <= 20".into())
}

fn c11_bounds_grid() -> Outcome {
    let cert = |p, q| TwistCertificate::from_torus(&TorusKnot::positive(p, q).unwrap()).unwrap();
    let (k, l) = (cert(2, 13), cert(3, 7));
    let improved = improved_bound(&k, &l).ok_or("inapplicable")?;
    let triangle = triangle_bounds(k.g4(), l.g4()).0;
    check!(improved == int(2) && triangle == int(0), "improved {improved}, triangle {triangle}");
    check!(cobordism_report(&k, &l).best_lower == int(2), "best lower bound is not 2");
    let selfs: Vec<_> = coprime(2, 11).take(20).map(|(p, q)| cert(p, q)).collect();
    check!(selfs.len() == 20, "only {} certificates", selfs.len());
    check!(selfs.iter().all(|c| improved_bound(c, c) == Some(int(0))), "nonzero self bound");
    let mut nonzero = Vec::new();
    for n in 2..=8u64 {
        for kk in 1..=5u64 {
            let knot = TorusKnot::positive(n, n * kk + 1).unwrap();
            let c = TwistCertificate::twisted_braid_closure(n, kk, knot.g4().unwrap()).map_err(e)?;
            let f = ups_torus_euclid(n, n * kk + 1).map_err(e)?;
            check!(twist_profile_consistency(&f, c.g4(), &c).map_err(e)?, "{knot} inconsistent");
            let slack = twist_profile_slack_at_one(&f, c.g4(), &c).map_err(e)?;
            if !slack.is_zero() {
                nonzero.push(format!("{knot}:{slack}"));
            }
        }
    }
    check!(
        nonzero.is_empty(),
        "consistency holds for all 35, but slack at t = 1 is nonzero for {}: {}",
        nonzero.len(),
        nonzero.join(" ")
    );
    Ok("2 > 0; 20 self-pairs; 35 certificates with zero slack".into())
}

fn c12_homogenization() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..20 {
        let (n, m) = (rng.gen_range(2..=6u64), rng.gen_range(1..=12i64));
        let d = rng.gen_range(1..=20i64);
        let t = rat(rng.gen_range(0..=d), d);
        let ups = hom_ups_torus_braid(n, m).and_then(|h| h.profile.eval(&t)).map_err(e)?;
        check!(hom_sig_torus_braid(n, m, &t).map_err(e)? == ups * int(2), "n = {n}, m = {m}, t = {t}");
    }
    let mut n_checks = 0;
    for n in 2..=6u64 {
        for q in (1..=25u64).filter(|q| q.gcd(&n) == 1) {
            for t in [rat(1, 4), rat(1, 2), int(1)] {
                let gap = defect_gap_check(n, q, &t).map_err(e)?;
                check!(gap <= &t * int(n as i64 - 1) / int(2), "T({n},{q}) at {t}");
                n_checks += 1;
            }
        }
    }
    Ok(format!("20 samples, {n_checks} gap checks"))
}

fn c13_selftest() -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_upsig")).arg("selftest").output().map_err(e)?;
    let elapsed = start.elapsed();
    let text = String::from_utf8_lossy(&out.stdout);
    let failing: Vec<&str> = text.lines().filter(|l| l.starts_with("FAIL")).collect();
    check!(
        out.status.success(),
        "exit status {:?} after {elapsed:.2?}; {}",
        out.status.code(),
        failing.join("; ")
    );
    check!(elapsed < Duration::from_secs(300), "took {elapsed:.2?}, target < 5 min");
    Ok(format!("exit 0 in {elapsed:.2?}"))
}

fn main() -> ExitCode {
    let criteria: [(u32, fn() -> Outcome); 13] = [
        (1, c1_route_equivalence),
        (2, c2_example_regression),
        (3, c3_staircases),
        (4, c4_three_strand),
        (5, c5_blowups),
        (6, c6_universal_properties),
        (7, c7_signature_gate),
        (8, c8_example_power),
        (9, c9_crosscap_window),
        (10, c10_non_convexity),
        (11, c11_bounds_grid),
        (12, c12_homogenization),
        (13, c13_selftest),
    ];
    let mut failed = 0;
    for (id, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS criterion {id:>2}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {id:>2}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
