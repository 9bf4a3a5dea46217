//! Evaluation of ζ, ζ', ζ'/ζ, ξ, Γ and ψ with attached error estimates.
//!
//! Everything here runs in IEEE double precision. `working_digits` controls
//! how far the series truncation is pushed and the rounding unit used in the
//! error estimates; it cannot exceed what an `f64` carries.

mod bernoulli;
mod gamma;
mod zeta;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) use bernoulli::{BERNOULLI_EVEN, BERNOULLI_OVER_FACTORIAL};
pub use gamma::{digamma, digamma_asymptotic, gamma, ln_gamma};
pub use zeta::{
    chi, log_deriv_zeta, log_deriv_zeta_line, nearest_singularity, xi, zeta, zeta_prime, zeta_with_derivative,
};

/// Euler–Mascheroni constant C = lim (H_n − log n).
pub const EULER_MASCHERONI: f64 = 0.577_215_664_901_532_9;

/// Largest number of significant decimal digits the `f64` backend can honour
/// (53 bits ≈ 15.95 digits; 16 selects machine epsilon as the rounding unit).
pub const MAX_WORKING_DIGITS: u32 = 16;

/// Working precision and error budget shared by every numeric operation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrecisionConfig {
    pub working_digits: u32,
    /// Absolute error allowed on a single scalar evaluation.
    pub target_abs_tol: f64,
    /// Upper limit on the number of Bernoulli correction terms.
    pub euler_maclaurin_terms: usize,
    /// Smallest direct-sum length used by Euler–Maclaurin.
    pub cutoff_n: usize,
    /// Points closer than this to a pole or tabulated zero are rejected.
    pub exclusion_radius: f64,
    /// Points closer than this to a singularity are flagged in reports.
    pub flag_radius: f64,
    /// Absolute tolerance requested from path quadrature.
    pub quad_tol: f64,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        Self {
            working_digits: MAX_WORKING_DIGITS,
            target_abs_tol: 1e-10,
            euler_maclaurin_terms: 40,
            cutoff_n: 8,
            exclusion_radius: 1e-6,
            flag_radius: 1e-3,
            quad_tol: 1e-10,
        }
    }
}

impl PrecisionConfig {
    pub fn validate(&self) -> Result<()> {
        if self.working_digits == 0 || self.working_digits > MAX_WORKING_DIGITS {
            return Err(Error::InvalidConfig(format!(
                "working_digits must lie in 1..={MAX_WORKING_DIGITS}, got {}",
                self.working_digits
            )));
        }
        let positive = |x: f64| x.is_finite() && x > 0.0;
        if !positive(self.target_abs_tol) {
            return Err(Error::InvalidConfig("target_abs_tol must be > 0".into()));
        }
        if !positive(self.exclusion_radius) || !positive(self.quad_tol) {
            return Err(Error::InvalidConfig(
                "exclusion_radius and quad_tol must be > 0".into(),
            ));
        }
        if self.euler_maclaurin_terms == 0
            || self.euler_maclaurin_terms >= BERNOULLI_OVER_FACTORIAL.len()
        {
            return Err(Error::InvalidConfig(format!(
                "euler_maclaurin_terms must lie in 1..{}",
                BERNOULLI_OVER_FACTORIAL.len()
            )));
        }
        if self.cutoff_n == 0 {
            return Err(Error::InvalidConfig("cutoff_n must be positive".into()));
        }
        Ok(())
    }

    /// Rounding unit assumed by the error estimates.
    pub fn rounding_unit(&self) -> f64 {
        10f64.powi(-(self.working_digits as i32)).max(f64::EPSILON)
    }

    /// Budget for series truncation: no coarser than the working precision.
    pub(crate) fn truncation_budget(&self) -> f64 {
        (0.25 * self.target_abs_tol).min(10f64.powi(-(self.working_digits as i32)))
    }

    pub(crate) fn accept(&self, value: Complex64, abs_err: f64) -> Result<ComplexValue> {
        if !(abs_err <= self.target_abs_tol) || !value.re.is_finite() || !value.im.is_finite() {
            return Err(Error::PrecisionExhausted {
                estimate: abs_err,
                target: self.target_abs_tol,
            });
        }
        Ok(ComplexValue { value, abs_err })
    }
}

/// A complex result together with an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexValue {
    pub value: Complex64,
    pub abs_err: f64,
}

impl ComplexValue {
    pub fn new(value: Complex64, abs_err: f64) -> Self {
        Self { value, abs_err }
    }

    pub fn re(&self) -> f64 {
        self.value.re
    }

    pub fn im(&self) -> f64 {
        self.value.im
    }
}

/// Principal logarithm split as `(log|z|, arg z)` with `arg z ∈ (−π, π]`.
pub fn principal_log_arg(z: Complex64) -> Result<(f64, f64)> {
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::ZeroArgument);
    }
    let mut arg = z.im.atan2(z.re);
    // atan2 returns −π for a negative real with a negative-zero imaginary part.
    if arg <= -std::f64::consts::PI {
        arg = std::f64::consts::PI;
    }
    Ok((z.norm().ln(), arg))
}

/// `cot z`, stable for large |Im z|.
pub(crate) fn cot(z: Complex64) -> Complex64 {
    if z.im.abs() > 20.0 {
        // e^{−2|Im z|} < 1e-17 relative to the limit ∓i
        Complex64::new(0.0, -z.im.signum())
    } else {
        z.cos() / z.sin()
    }
}

/// `log sin z` on some branch, without overflow for large |Im z|.
pub(crate) fn ln_sin(z: Complex64) -> Complex64 {
    let i = Complex64::i();
    if z.im.abs() < 30.0 {
        z.sin().ln()
    } else if z.im > 0.0 {
        -i * z + ((i * 2.0 * z).exp() - 1.0).ln() - (2.0 * i).ln()
    } else {
        i * z + ((1.0 - (-i * 2.0 * z).exp()) / (2.0 * i)).ln()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    #[test]
    fn principal_arg_examples() {
        let (_, a) = principal_log_arg(Complex64::new(1.0, 1.0)).unwrap();
        assert!((a - FRAC_PI_4).abs() < 1e-15);
        let (l, a) = principal_log_arg(Complex64::new(-1.0, 0.0)).unwrap();
        assert_eq!(a, PI);
        assert_eq!(l, 0.0);
        let (_, a) = principal_log_arg(Complex64::new(-1.0, -0.0)).unwrap();
        assert_eq!(a, PI);
        assert!(matches!(
            principal_log_arg(Complex64::new(0.0, 0.0)),
            Err(Error::ZeroArgument)
        ));
    }

    #[test]
    fn arg_of_alpha_minus_one_approaches_half_pi() {
        let alpha = 0.6;
        let mut last_gap = f64::INFINITY;
        for t in [10.0, 100.0, 1000.0, 1e5] {
            let (_, a) = principal_log_arg(Complex64::new(alpha - 1.0, t)).unwrap();
            let gap = (a - FRAC_PI_2).abs();
            assert!(gap < last_gap);
            last_gap = gap;
        }
        assert!(last_gap < 1e-5);
    }

    #[test]
    fn conjugate_flips_argument() {
        for &(x, y) in &[(0.3, 2.0), (-4.0, 0.5), (2.0, -7.0), (-0.1, -0.1)] {
            let (_, a) = principal_log_arg(Complex64::new(x, y)).unwrap();
            let (_, b) = principal_log_arg(Complex64::new(x, -y)).unwrap();
            assert_eq!(a, -b);
        }
    }

    #[test]
    fn euler_mascheroni_matches_limit_definition() {
        // H_n − log n − 1/(2n) + 1/(12n²) converges like n⁻⁴.
        let n = 10_000u32;
        let h: f64 = (1..=n).rev().map(|k| 1.0 / k as f64).sum();
        let nf = n as f64;
        let c = h - nf.ln() - 0.5 / nf + 1.0 / (12.0 * nf * nf);
        assert!((c - EULER_MASCHERONI).abs() < 1e-13);
        assert!((EULER_MASCHERONI - 0.577216).abs() < 5e-7);
    }

    #[test]
    fn config_validation() {
        assert!(PrecisionConfig::default().validate().is_ok());
        let bad = PrecisionConfig {
            working_digits: 30,
            ..Default::default()
        };
        assert!(matches!(bad.validate(), Err(Error::InvalidConfig(_))));
        let bad = PrecisionConfig {
            target_abs_tol: 0.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn ln_sin_agrees_with_direct_formula() {
        for z in [
            Complex64::new(0.3, 29.0),
            Complex64::new(0.3, 31.0),
            Complex64::new(-1.7, -45.0),
            Complex64::new(2.2, 0.4),
        ] {
            let direct = z.sin();
            let via_log = ln_sin(z).exp();
            assert!(((via_log - direct) / direct).norm() < 1e-13, "{z}");
        }
    }
}
