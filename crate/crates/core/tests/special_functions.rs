mod common;

use std::f64::consts::PI;

use common::{c, zeta_eta, zeta_prime_two};
use proptest::prelude::*;
use rand::Rng;
use zc_core::special_functions::{chi, digamma, ln_gamma, log_deriv_zeta, xi, zeta, zeta_prime};
use zc_core::{Error, PrecisionConfig, ZeroTable};

fn p() -> PrecisionConfig {
    PrecisionConfig::default()
}

#[test]
fn matches_eta_oracle_on_random_strip_points() {
    let mut rng = common::rng(11);
    for _ in 0..200 {
        let s = c(rng.gen_range(0.0..1.0), rng.gen_range(-100.0..100.0));
        let d = (zeta(s, &p()).unwrap().value - zeta_eta(s)).norm();
        assert!(d < 1e-12, "{s}: {d:e}");
    }
}

#[test]
fn matches_eta_oracle_right_of_strip() {
    for s in [c(1.5, 3.0), c(2.0, 0.0), c(3.0, -20.0), c(1.0, 10.0)] {
        let d = (zeta(s, &p()).unwrap().value - zeta_eta(s)).norm();
        assert!(d < 1e-12, "{s}: {d:e}");
    }
}

#[test]
fn derivative_at_two() {
    let d = zeta_prime(c(2.0, 0.0), &p()).unwrap().value;
    assert!((d.re - zeta_prime_two()).abs() < 1e-12 && d.im.abs() < 1e-14);
}

#[test]
fn derivative_matches_oracle_difference_quotient() {
    let h = 1e-5;
    for s in [c(0.3, 17.0), c(0.75, 40.0), c(0.05, 5.0)] {
        let fd = (zeta_eta(s + h) - zeta_eta(s - h)) / (2.0 * h);
        let d = (zeta_prime(s, &p()).unwrap().value - fd).norm();
        assert!(d < 1e-7, "{s}: {d:e}");
    }
}

#[test]
fn pole_is_rejected() {
    assert!(matches!(zeta(c(1.0, 0.0), &p()), Err(Error::PoleAtOne(_))));
}

#[test]
fn log_derivative_refuses_tabulated_zero() {
    let zeros = ZeroTable::new(vec![14.134725141734695], 1e-12, 15.0).unwrap();
    let r = log_deriv_zeta(c(0.5, 14.134725141734695), &p(), &zeros);
    assert!(matches!(r, Err(Error::NearSingularity { .. })));
    assert!(log_deriv_zeta(c(0.7, 14.134725141734695), &p(), &zeros).is_ok());
}

#[test]
fn chi_reflection_both_sides() {
    for s in [c(0.3, 12.0), c(1.7, -4.0), c(-0.8, 25.0)] {
        let lhs = zeta(s, &p()).unwrap().value;
        let rhs = chi(s, &p()).unwrap().value * zeta(1.0 - s, &p()).unwrap().value;
        assert!((lhs - rhs).norm() < 1e-10, "{s}");
    }
}

#[test]
fn xi_is_real_on_critical_line_and_symmetric() {
    for t in [3.0, 14.0, 27.5] {
        let v = xi(c(0.5, t), &p()).unwrap().value;
        assert!(v.im.abs() < 1e-12 * v.re.abs().max(1e-3));
        let s = c(0.2, t);
        let d = (xi(s, &p()).unwrap().value - xi(1.0 - s, &p()).unwrap().value).norm();
        assert!(d < 1e-10);
    }
}

#[test]
fn digamma_is_derivative_of_log_gamma() {
    let h = 1e-5;
    for z in [c(0.7, 0.0), c(2.5, 3.0), c(0.1, 30.0), c(10.0, -7.0)] {
        let fd = (ln_gamma(z + h, &p()).unwrap().value - ln_gamma(z - h, &p()).unwrap().value) / (2.0 * h);
        assert!((digamma(z, &p()).unwrap().value - fd).norm() < 1e-8, "{z}");
    }
    let g = digamma(c(1.0, 0.0), &p()).unwrap().value;
    assert!((g.re + 0.5772156649015329).abs() < 1e-13);
}

#[test]
fn invalid_precision_rejected() {
    let cfg = PrecisionConfig {
        working_digits: 30,
        ..p()
    };
    assert!(cfg.validate().is_err());
    assert!(p().validate().is_ok());
}

#[test]
fn trivial_zeros_and_special_values() {
    for k in 1..4 {
        assert!(zeta(c(-2.0 * k as f64, 0.0), &p()).unwrap().value.norm() < 1e-12);
    }
    assert!((zeta(c(2.0, 0.0), &p()).unwrap().value.re - PI * PI / 6.0).abs() < 1e-13);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugate_symmetry(sigma in -1.0f64..2.0, t in -60.0f64..60.0) {
        prop_assume!((c(sigma, t) - 1.0).norm() > 1e-3);
        let a = zeta(c(sigma, t), &p()).unwrap().value;
        let b = zeta(c(sigma, -t), &p()).unwrap().value;
        prop_assert!((a - b.conj()).norm() <= 1e-12 * a.norm().max(1.0));
    }
}
