mod common;

use std::f64::consts::PI;

use common::c;
use zc_core::contour::{
    decompose, integrate_rectangle, integrate_rectangle_reversed, logpi_term_integral, pair_term,
    pole_term_integral, Edge, Rectangle,
};
use zc_core::{Complex64, Error, PrecisionConfig};

/// Composite Simpson along the vertical segment x + it, t ∈ [−T, T], upwards.
fn simpson_vertical(f: impl Fn(Complex64) -> Complex64, x: f64, t: f64, n: usize) -> Complex64 {
    let h = 2.0 * t / n as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..=n {
        let w = if k == 0 || k == n { 1.0 } else if k % 2 == 1 { 4.0 } else { 2.0 };
        acc += f(c(x, -t + k as f64 * h)) * w;
    }
    acc * h / 3.0 * Complex64::i()
}

#[test]
fn windings_of_reference_boxes() {
    let zeros = common::zero_table(6000.0);
    let cfg = PrecisionConfig::default();
    let cases = [
        (Rectangle::general(0.9, 1.1, -1.0, 1.0).unwrap(), -1),
        (Rectangle::general(0.4, 0.6, 14.0, 14.3).unwrap(), 1),
        (Rectangle::paper(0.6, 0.8, 30.0).unwrap(), 0),
        (Rectangle::general(-1.0, 2.0, -30.0, 30.0).unwrap(), 5),
    ];
    for (rect, want) in cases {
        let r = integrate_rectangle(&rect, &zeros, &cfg).unwrap();
        assert_eq!(r.winding, want);
        assert_eq!(r.expected_winding, want);
        assert!(r.gap < 1e-6, "gap {}", r.gap);
    }
}

#[test]
fn reversal_negates() {
    let zeros = common::zero_table(6000.0);
    let cfg = PrecisionConfig::default();
    let rect = Rectangle::general(0.3, 0.9, 10.0, 22.0).unwrap();
    let fwd = integrate_rectangle(&rect, &zeros, &cfg).unwrap().total;
    let back = integrate_rectangle_reversed(&rect, &zeros, &cfg).unwrap();
    assert!((fwd + back).norm() < 1e-8);
    assert!((fwd - Complex64::new(0.0, 4.0 * PI)).norm() < 1e-8);
}

#[test]
fn zero_on_boundary_refused() {
    let zeros = common::zero_table(6000.0);
    let rect = Rectangle::general(0.5, 0.9, 10.0, 20.0).unwrap();
    let r = integrate_rectangle(&rect, &zeros, &PrecisionConfig::default());
    assert!(matches!(r, Err(Error::BoundarySingularity { .. })));
    let r = integrate_rectangle(&Rectangle::general(0.2, 0.8, 10.0, 14.134725141734695).unwrap(), &zeros, &PrecisionConfig::default());
    match r {
        Err(Error::BoundarySingularity { edge, .. }) => assert_eq!(edge, "AB"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn pole_and_logpi_terms_match_simpson() {
    let rect = Rectangle::paper(0.6, 0.8, 20.0).unwrap();
    let pole = pole_term_integral(&rect).unwrap();
    let f = |s: Complex64| 1.0 / (1.0 - s);
    let da = simpson_vertical(f, 0.8, 20.0, 20_000);
    let bc = -simpson_vertical(f, 0.6, 20.0, 20_000);
    assert!((pole.da - da).norm() < 1e-9 && (pole.bc - bc).norm() < 1e-9);
    let lp = logpi_term_integral(&rect).unwrap();
    assert!((lp.da - c(0.0, 20.0 * PI.ln())).norm() < 1e-13);
}

#[test]
fn pair_term_matches_simpson() {
    let (alpha, beta, t, g) = (0.6, 0.8, 20.0, 14.134725141734695);
    let rect = Rectangle::paper(alpha, beta, t).unwrap();
    let f = |s: Complex64| 1.0 / (s - c(0.5, g)) + 1.0 / (s - c(0.5, -g));
    let q = simpson_vertical(f, beta, t, 40_000) - simpson_vertical(f, alpha, t, 40_000);
    assert!((q - c(0.0, 2.0 * pair_term(&rect, g))).norm() < 1e-8, "{q}");
}

#[test]
fn decomposition_identity_small_box() {
    let zeros = common::zero_table(6000.0);
    let rect = Rectangle::paper(0.6, 0.8, 20.0).unwrap();
    let d = decompose(&rect, &zeros, 1.0 / 400.0, &PrecisionConfig::default()).unwrap();
    assert!(d.residual < 1e-4, "{}", d.residual);
    assert!(d.term_checks.iter().all(|tc| tc.difference < 1e-8));
}

#[test]
fn edge_lookup_and_reports() {
    let zeros = common::zero_table(6000.0);
    let rect = Rectangle::paper(0.6, 0.8, 30.0).unwrap();
    let r = integrate_rectangle(&rect, &zeros, &PrecisionConfig::default()).unwrap();
    let sum: Complex64 = Edge::ALL.iter().map(|&e| r.edge(e).value).sum();
    assert!((sum - r.total).norm() < 1e-15);
    // horizontal edges are conjugate-symmetric: AB = −conj(CD)
    assert!((r.edge(Edge::AB).value + r.edge(Edge::CD).value.conj()).norm() < 1e-9);
}
