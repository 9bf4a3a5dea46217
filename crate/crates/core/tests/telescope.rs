mod common;

use std::f64::consts::PI;

use proptest::prelude::*;
use zc_core::contour::{pair_term, Rectangle};
use zc_core::telescope::{
    arctan_add, fixed_point_check, fixed_point_scan, h_functions, limit_model, linearize_riccati,
    riccati_iterate, s_n_direct, telescope_sum, telescoped_term, FixedPointVerdict, RiccatiKind,
};
use zc_core::Error;

/// Distance of x from the nearest multiple of π.
fn mod_pi(x: f64) -> f64 {
    (x - PI * (x / PI).round()).abs()
}

#[test]
fn lemma_example() {
    let r = telescope_sum(|k| k as f64, 10).unwrap();
    assert!((r.sum.value - (11f64.atan() - PI / 4.0)).abs() < 1e-12);
    assert!(r.wraps.is_empty());
}

#[test]
fn wrap_example() {
    let f = |k: usize| if k == 1 { 2.0 } else { -2.0 };
    let r = telescope_sum(f, 1).unwrap();
    assert_eq!(r.sum.wrap_count, 1);
    // h = (−2 − 2)/(1 − 4) = 4/3
    assert!((r.sum.value - (4f64 / 3.0).atan()).abs() < 1e-12);
}

proptest! {
    #[test]
    fn addition_matches_direct(x in -50.0f64..50.0, y in -50.0f64..50.0) {
        prop_assume!((x * y - 1.0).abs() > 1e-6);
        let s = arctan_add(x, y).unwrap();
        prop_assert!((s.value - (x.atan() + y.atan())).abs() < 1e-12);
    }

    #[test]
    fn telescoping_matches_direct(seq in prop::collection::vec(-20.0f64..20.0, 2..60)) {
        let n = seq.len() - 1;
        let f = |k: usize| seq[k - 1];
        prop_assume!((1..=n).all(|k| (1.0 + f(k) * f(k + 1)).abs() > 1e-6));
        let direct: f64 = (1..=n).map(|k| telescoped_term(&f, k).atan()).sum();
        let r = telescope_sum(f, n).unwrap();
        prop_assert!((r.sum.value - direct).abs() < 1e-10 * (1.0 + n as f64));
    }
}

#[test]
fn degenerate_inputs_refused() {
    assert!(matches!(arctan_add(4.0, 0.25), Err(Error::DegenerateProduct { .. })));
    assert!(matches!(telescope_sum(|k| [0.0, 3.0, -1.0 / 3.0][k], 1), Err(Error::DegenerateStep(1))));
}

#[test]
fn s_n_is_sum_of_pair_terms() {
    let zeros = common::zero_table(6000.0);
    let rect = Rectangle::paper(0.6, 0.8, 100.0).unwrap();
    let s = s_n_direct(&rect, &zeros, 29).unwrap();
    let by_pairs: f64 = zeros.gammas()[..29].iter().map(|&g| pair_term(&rect, g)).sum();
    assert!((s.value - by_pairs).abs() < 1e-12);
    assert!((s.pi_residual - mod_pi(s.value)).abs() < 1e-15);
    assert!(s_n_direct(&rect, &zeros, zeros.len() + 1).is_err());
}

#[test]
fn riccati_steps_reproduce_h() {
    let zeros = common::zero_table(6000.0);
    let rect = Rectangle::paper(0.6, 0.8, 100.0).unwrap();
    for kind in [RiccatiKind::F, RiccatiKind::G] {
        let tr = riccati_iterate(kind, 200, &rect, &zeros).unwrap();
        assert_eq!(tr.iterates.len(), 201);
        for k in 1..=200 {
            let (h1, h2) = h_functions(k, &rect, &zeros).unwrap();
            let h = if kind == RiccatiKind::F { h1 } else { h2 };
            assert!((tr.h[k - 1] - h).abs() < 1e-15);
            let step = tr.iterates[k].atan() - tr.iterates[k - 1].atan() - h.atan();
            assert!(mod_pi(step) < 1e-10, "{kind:?} step {k}");
        }
    }
}

#[test]
fn linearization_limit_has_double_root() {
    let zeros = common::zero_table(6000.0);
    let rect = Rectangle::paper(0.6, 0.8, 100.0).unwrap();
    let tr = riccati_iterate(RiccatiKind::F, 2000, &rect, &zeros).unwrap();
    let rep = linearize_riccati(&tr, 2.0).unwrap();
    let (p, r) = limit_model(2.0);
    assert_eq!((p, r), (4.0, -4.0));
    assert!(rep.char_discriminant.abs() < 1e-9);
    assert!(rep.char_roots.iter().all(|z| (z - 2.0).norm() < 1e-9));
    assert!(rep.envelope_decreasing);
    assert!(linearize_riccati(&tr, 1.0).is_err());
}

#[test]
fn no_real_fixed_point() {
    assert!(matches!(fixed_point_check(0.3, 1.7), FixedPointVerdict::NoRealFixedPoint { .. }));
    let scan = fixed_point_scan(0.3, 1.7, -100.0, 100.0, 10_001);
    assert_eq!(scan.sign_changes, 0);
    assert!(scan.min_residual > 0.0 || scan.max_residual < 0.0);
}
