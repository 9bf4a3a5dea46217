mod common;

use std::f64::consts::PI;

use zc_core::universality::{good_interval, scan, sup_distance, SegmentK};
use zc_core::PrecisionConfig;

fn k() -> SegmentK {
    SegmentK::new(0.6, 0.8, 0.0, 33).unwrap()
}

#[test]
fn scan_is_deterministic() {
    let zeros = common::zero_table(6000.0);
    let cfg = PrecisionConfig::default();
    let a = scan(0.0, 40.0, 0.1, &k(), 0.0, -PI, 0.5, &zeros, &cfg).unwrap();
    let b = scan(0.0, 40.0, 0.1, &k(), 0.0, -PI, 0.5, &zeros, &cfg).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.entries.len(), 401);
    assert!(a.results.windows(2).all(|w| w[0].sup_distance <= w[1].sup_distance));
}

#[test]
fn refinement_never_lowers_the_supremum() {
    let zeros = common::zero_table(6000.0);
    let cfg = PrecisionConfig::default();
    for tau in [3.0, 17.5, 100.0, 250.25] {
        let coarse = sup_distance(tau, &k(), 0.0, -PI, &zeros, &cfg).unwrap();
        let fine = sup_distance(tau, &k().refined(), 0.0, -PI, &zeros, &cfg).unwrap();
        assert!(fine.sup_distance >= coarse.sup_distance);
        assert_eq!(fine.samples_used, 65);
    }
}

#[test]
fn continuity_in_tau() {
    let zeros = common::zero_table(6000.0);
    let cfg = PrecisionConfig::default();
    let a = sup_distance(50.0, &k(), 0.0, -PI, &zeros, &cfg).unwrap().sup_distance;
    let b = sup_distance(50.0 + 1e-7, &k(), 0.0, -PI, &zeros, &cfg).unwrap().sup_distance;
    assert!((a - b).abs() < 1e-4);
}

#[test]
fn extreme_tolerances() {
    let zeros = common::zero_table(6000.0);
    let cfg = PrecisionConfig::default();
    let all = scan(0.0, 5.0, 0.5, &k(), 1.0, 1.0, f64::INFINITY, &zeros, &cfg).unwrap();
    assert_eq!(all.good_fraction, 1.0);
    let none = scan(0.0, 5.0, 0.5, &k(), 1.0, 1.0, 0.0, &zeros, &cfg).unwrap();
    assert_eq!(none.good_fraction, 0.0);
    assert!(scan(0.0, 5.0, 0.5, &k(), 1.0, 1.0, f64::NAN, &zeros, &cfg).is_err());
}

#[test]
fn target_equal_to_value_is_good_nearby() {
    let zeros = common::zero_table(6000.0);
    let cfg = PrecisionConfig::default();
    // aim at the value on K's midpoint: the distance is small but not zero elsewhere on K
    let mid = zc_core::special_functions::log_deriv_zeta(zc_core::Complex64::new(0.7, 123.0), &cfg, &zeros)
        .unwrap()
        .value;
    let r = sup_distance(123.0, &k(), mid.re, mid.im, &zeros, &cfg).unwrap();
    let iv = good_interval(123.0, &k(), mid.re, mid.im, r.sup_distance + 0.5, 0.01, 50, &zeros, &cfg)
        .unwrap()
        .unwrap();
    assert!(iv.lo <= 123.0 && iv.hi >= 123.0 && iv.width > 0.0);
    assert!(good_interval(123.0, &k(), mid.re, mid.im, 0.0, 0.01, 5, &zeros, &cfg).unwrap().is_none());
}

#[test]
fn bad_segments_rejected() {
    assert!(SegmentK::new(0.4, 0.8, 0.0, 33).is_err());
    assert!(SegmentK::new(0.6, 1.0, 0.0, 33).is_err());
    assert!(SegmentK::new(0.6, 0.8, 0.0, 1).is_err());
}
