//! Complex log-gamma, gamma and digamma.
//!
//! All three shift the argument upward with the recurrence until |w| ≥ 12 and
//! then sum the Stirling-type asymptotic series, stopping as soon as the
//! classical remainder bound (first omitted term times a power of
//! sec(arg w / 2)) drops under the truncation budget.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{cot, ComplexValue, PrecisionConfig, BERNOULLI_EVEN};
use crate::error::{Error, Result};

const ASYMPTOTIC_MODULUS: f64 = 12.0;
const MAX_SERIES_TERMS: usize = 30;

fn half_angle_secant(w: Complex64) -> f64 {
    1.0 / (0.5 * w.arg()).cos()
}

/// Stirling series for lnΓ(w) with its remainder bound. Requires Re w ≥ 0.
fn stirling_series(w: Complex64, budget: f64) -> (Complex64, f64) {
    let ln_w = w.ln();
    let mut value = (w - 0.5) * ln_w - w + 0.5 * (2.0 * PI).ln();
    let sec = half_angle_secant(w);
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut power = inv;
    let modulus = w.norm();
    let mut remainder = f64::INFINITY;
    for k in 1..=MAX_SERIES_TERMS {
        let two_k = 2.0 * k as f64;
        let coeff = BERNOULLI_EVEN[k - 1] / (two_k * (two_k - 1.0));
        remainder = coeff.abs() * modulus.powf(1.0 - two_k) * sec.powf(two_k);
        if remainder < budget {
            break;
        }
        value += power * coeff;
        power *= inv2;
    }
    (value, remainder)
}

/// Principal-branch-continuous log-gamma for Re z > 0.
pub fn ln_gamma(z: Complex64, cfg: &PrecisionConfig) -> Result<ComplexValue> {
    if !(z.re > 0.0) {
        return Err(Error::Domain(format!(
            "ln_gamma is only provided for Re z > 0, got {z}"
        )));
    }
    let u = cfg.rounding_unit();
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    let mut shift_mag = 0.0;
    while w.norm() < ASYMPTOTIC_MODULUS {
        let l = w.ln();
        shift += l;
        shift_mag += l.norm();
        w += 1.0;
    }
    let (series, remainder) = stirling_series(w, cfg.truncation_budget());
    let value = series - shift;
    let magnitude = ((w - 0.5) * w.ln()).norm() + w.norm() + shift_mag;
    Ok(ComplexValue::new(value, remainder + 4.0 * u * magnitude))
}

fn nonpositive_integer_pole(z: Complex64, radius: f64) -> bool {
    if z.re > 0.5 {
        return false;
    }
    let k = z.re.round();
    (z - Complex64::new(k, 0.0)).norm() < radius
}

/// Γ(z) for all z off the non-positive integers (reflection for Re z ≤ 0).
pub fn gamma(z: Complex64, cfg: &PrecisionConfig) -> Result<ComplexValue> {
    if nonpositive_integer_pole(z, cfg.exclusion_radius) {
        return Err(Error::PoleAtNonpositiveInteger(z));
    }
    if z.re > 0.0 {
        let lg = ln_gamma(z, cfg)?;
        let value = lg.value.exp();
        return Ok(ComplexValue::new(value, value.norm() * lg.abs_err * 1.01));
    }
    let reflected = ln_gamma(1.0 - z, cfg)?;
    let ln_value = Complex64::new(PI.ln(), 0.0) - super::ln_sin(PI * z) - reflected.value;
    let value = ln_value.exp();
    let rel = reflected.abs_err + 4.0 * cfg.rounding_unit() * (1.0 + PI * z.norm());
    Ok(ComplexValue::new(value, value.norm() * rel))
}

/// The asymptotic expansion ψ(z) ≈ log z − 1/(2z) − Σ_{k≤terms} B_{2k}/(2k z^{2k})
/// evaluated directly at `z` (no recurrence shift), with the bound on the
/// first omitted term.
pub fn digamma_asymptotic(z: Complex64, terms: usize) -> ComplexValue {
    let terms = terms.min(MAX_SERIES_TERMS);
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut value = z.ln() - 0.5 * inv;
    let mut power = inv2;
    for k in 1..=terms {
        let two_k = 2.0 * k as f64;
        value -= power * (BERNOULLI_EVEN[k - 1] / two_k);
        power *= inv2;
    }
    let next = 2.0 * (terms + 1) as f64;
    let bound = BERNOULLI_EVEN[terms].abs() / next
        * z.norm().powf(-next)
        * half_angle_secant(z).powf(next + 1.0);
    ComplexValue::new(value, bound)
}

/// Digamma ψ(z) = Γ'(z)/Γ(z).
pub fn digamma(z: Complex64, cfg: &PrecisionConfig) -> Result<ComplexValue> {
    if nonpositive_integer_pole(z, cfg.exclusion_radius) {
        return Err(Error::PoleAtNonpositiveInteger(z));
    }
    if z.re < 0.5 {
        let reflected = digamma(1.0 - z, cfg)?;
        let c = cot(PI * z) * PI;
        let value = reflected.value - c;
        let err = reflected.abs_err + 4.0 * cfg.rounding_unit() * c.norm() * (1.0 + PI * z.norm());
        return cfg.accept(value, err);
    }
    let u = cfg.rounding_unit();
    let budget = cfg.truncation_budget();
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    let mut shift_mag = 0.0;
    while w.norm() < ASYMPTOTIC_MODULUS {
        let r = w.inv();
        shift += r;
        shift_mag += r.norm();
        w += 1.0;
    }
    let sec = half_angle_secant(w);
    let inv = w.inv();
    let inv2 = inv * inv;
    let ln_w = w.ln();
    let mut value = ln_w - 0.5 * inv;
    let mut power = inv2;
    let modulus = w.norm();
    let mut remainder = f64::INFINITY;
    for k in 1..=MAX_SERIES_TERMS {
        let two_k = 2.0 * k as f64;
        let coeff = BERNOULLI_EVEN[k - 1] / two_k;
        remainder = coeff.abs() * modulus.powf(-two_k) * sec.powf(two_k + 1.0);
        if remainder < budget {
            break;
        }
        value -= power * coeff;
        power *= inv2;
    }
    let value = value - shift;
    let err = remainder + 4.0 * u * (ln_w.norm() + shift_mag + 1.0);
    cfg.accept(value, err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_functions::EULER_MASCHERONI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn digamma_at_one_and_two() {
        let cfg = PrecisionConfig::default();
        let p1 = digamma(c(1.0, 0.0), &cfg).unwrap();
        assert!((p1.value - c(-EULER_MASCHERONI, 0.0)).norm() < 1e-14);
        assert!((p1.re() + 0.577216).abs() < 1e-6);
        let p2 = digamma(c(2.0, 0.0), &cfg).unwrap();
        assert!((p2.re() - (1.0 - EULER_MASCHERONI)).abs() < 1e-14);
    }

    #[test]
    fn digamma_poles_rejected() {
        let cfg = PrecisionConfig::default();
        for k in 0..4 {
            let r = digamma(c(-(k as f64), 0.0), &cfg);
            assert!(matches!(r, Err(Error::PoleAtNonpositiveInteger(_))));
        }
        assert!(digamma(c(-1.5, 0.0), &cfg).is_ok());
    }

    #[test]
    fn digamma_reflection_half_integer() {
        // ψ(−½) = ψ(½) + 2 = −C − 2 log 2 + 2
        let cfg = PrecisionConfig::default();
        let v = digamma(c(-0.5, 0.0), &cfg).unwrap();
        let expected = -EULER_MASCHERONI - 2.0 * 2f64.ln() + 2.0;
        assert!((v.re() - expected).abs() < 1e-13);
    }

    #[test]
    fn asymptotic_truncation_within_its_remainder() {
        let cfg = PrecisionConfig::default();
        let z = c(50.0, 50.0);
        let full = digamma(z, &cfg).unwrap();
        for terms in 1..4 {
            let asym = digamma_asymptotic(z, terms);
            let diff = (asym.value - full.value).norm();
            assert!(
                diff <= asym.abs_err + full.abs_err,
                "terms={terms} diff={diff:e} bound={:e}",
                asym.abs_err
            );
        }
    }

    #[test]
    fn ln_gamma_known_values() {
        let cfg = PrecisionConfig::default();
        assert!(ln_gamma(c(1.0, 0.0), &cfg).unwrap().value.norm() < 1e-14);
        let half = ln_gamma(c(0.5, 0.0), &cfg).unwrap();
        assert!((half.re() - 0.5 * PI.ln()).abs() < 1e-14);
        // |Γ(½ + it)|² = π / cosh(πt)
        let t = 7.0;
        let g = ln_gamma(c(0.5, t), &cfg).unwrap();
        let expected = 0.5 * (PI / (PI * t).cosh()).ln();
        assert!((g.re() - expected).abs() < 1e-13);
        assert!(ln_gamma(c(-1.0, 0.0), &cfg).is_err());
    }

    #[test]
    fn gamma_reflection() {
        let cfg = PrecisionConfig::default();
        let g = gamma(c(-0.5, 0.0), &cfg).unwrap();
        assert!((g.re() + 2.0 * PI.sqrt()).abs() < 1e-13);
        assert!(matches!(
            gamma(c(-3.0, 0.0), &cfg),
            Err(Error::PoleAtNonpositiveInteger(_))
        ));
        let g5 = gamma(c(5.0, 0.0), &cfg).unwrap();
        assert!((g5.re() - 24.0).abs() < 1e-12);
    }

    #[test]
    fn digamma_matches_log_gamma_finite_difference() {
        let cfg = PrecisionConfig::default();
        let h = 1e-3;
        let lg = |z: Complex64| ln_gamma(z, &cfg).unwrap().value;
        for &(x, y) in &[(0.7, 0.0), (1.3, 2.0), (0.5, 14.0), (3.2, -9.5), (1.4, 250.0)] {
            let z = c(x, y);
            // fourth-order central stencil
            let fd = (lg(z - 2.0 * h) - 8.0 * lg(z - h) + 8.0 * lg(z + h) - lg(z + 2.0 * h))
                / (12.0 * h);
            let psi = digamma(z, &cfg).unwrap().value;
            assert!((fd - psi).norm() < 1e-8, "z={z}: {fd} vs {psi}");
        }
    }
}
