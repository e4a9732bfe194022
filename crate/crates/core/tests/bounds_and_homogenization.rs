use num_integer::Integer;
use num_traits::Zero;
use proptest::prelude::*;

use upsig_core::bounds::{cobordism_report, improved_bound, triangle_bounds, TwistCertificate};
use upsig_core::homogenize::{hom_ups_torus_braid, sigma_convergence_check};
use upsig_core::knot::TorusKnot;
use upsig_core::rational::{int, rat};

fn cert(p: u64, q: u64) -> TwistCertificate {
    TwistCertificate::from_torus(&TorusKnot::positive(p, q).unwrap()).unwrap()
}

#[test]
fn equal_genus_grid() {
    // T(2,2j+1) and T(3,3k+1) share g4 = j when j = 3k
    for k in 1..=10u64 {
        let (two, three) = (cert(2, 6 * k + 1), cert(3, 3 * k + 1));
        assert_eq!(two.g4(), three.g4());
        let (lower, upper) = triangle_bounds(two.g4(), three.g4());
        assert!(lower.is_zero());
        let improved = improved_bound(&two, &three).unwrap();
        assert_eq!(improved, int(k as i64));
        assert!(improved > lower && improved <= upper);
        assert_eq!(cobordism_report(&two, &three).best_lower, improved);
    }
}

#[test]
fn self_distance_is_zero() {
    for p in 2..=9u64 {
        for q in (p + 1..=20).filter(|q| q.gcd(&p) == 1) {
            let c = cert(p, q);
            assert_eq!(improved_bound(&c, &c), Some(int(0)));
            assert_eq!(cobordism_report(&c, &c).best_lower, int(0));
        }
    }
}

#[test]
fn unknot_distance_is_genus() {
    let report = cobordism_report(&cert(3, 7), &TwistCertificate::unknot());
    assert_eq!(report.best_lower, int(6));
    assert_eq!(report.triangle_upper, int(6));
}

#[test]
fn convergence_small_braids() {
    let r = sigma_convergence_check(2, &rat(1, 2), 10).unwrap();
    assert!(r.jumps.is_empty());
    assert_eq!(r.samples.len(), 10);
    let r = sigma_convergence_check(3, &rat(1, 2), 10).unwrap();
    let last = r.samples.last().unwrap();
    assert!(last.difference <= rat(12, last.k as i64));
}

fn coprime_pair() -> impl Strategy<Value = (u64, u64)> {
    (2u64..9, 3u64..30).prop_filter_map("coprime", |(p, q)| (q > p && p.gcd(&q) == 1).then_some((p, q)))
}

proptest! {
    #[test]
    fn best_lower_dominates((a, b) in coprime_pair(), (c, d) in coprime_pair()) {
        let (k, l) = (cert(a, b), cert(c, d));
        let report = cobordism_report(&k, &l);
        prop_assert!(report.best_lower >= report.triangle_lower);
        prop_assert!(report.best_lower <= report.triangle_upper);
        if let Some(x) = improved_bound(&k, &l) {
            prop_assert!(report.best_lower >= x);
        }
        prop_assert_eq!(report.best_lower, cobordism_report(&l, &k).best_lower);
    }

    #[test]
    fn homogenized_additive_in_m(n in 2u64..8, m1 in -20i64..20, m2 in -20i64..20) {
        let a = hom_ups_torus_braid(n, m1).unwrap().profile;
        let b = hom_ups_torus_braid(n, m2).unwrap().profile;
        prop_assert_eq!(a.add(&b).unwrap(), hom_ups_torus_braid(n, m1 + m2).unwrap().profile);
    }
}
