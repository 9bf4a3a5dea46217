//! Critical-line zeros: location, counting, the von Mangoldt estimate and the
//! classical zero-free regions.

mod hardy;
mod search;
mod table;

use std::f64::consts::{E, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use hardy::{hardy_z, rotated_zeta, theta};
pub use search::{
    arg_zeta_critical, count_zeros, find_zeros_up_to, SCAN_STEP, ZERO_ACCURACY,
};
pub use table::{TableWriter, ZeroTable};

/// (T/2π) log(T/2π) − T/2π + 7/8, the main terms of N(T).
pub fn mangoldt_estimate(t: f64) -> f64 {
    let x = t / (2.0 * PI);
    x * x.ln() - x + 0.875
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroFreeBoundReport {
    pub t: f64,
    /// ζ(σ+it) ≠ 0 for σ ≥ this (Ford).
    pub ford_sigma: f64,
    /// ζ(σ+it) ≠ 0 for σ > this (Mossinghoff–Trudgian).
    pub mt_sigma: f64,
}

impl ZeroFreeBoundReport {
    /// Whether a zero at `sigma + i t` would contradict either bound.
    pub fn violated_by(&self, sigma: f64) -> bool {
        sigma >= self.ford_sigma || sigma > self.mt_sigma
    }
}

pub fn zero_free_bounds(t: f64) -> Result<ZeroFreeBoundReport> {
    let a = t.abs();
    if !(a > 2.0) {
        return Err(Error::Domain(format!(
            "the Mossinghoff-Trudgian region needs |t| > 2, got {t}"
        )));
    }
    if !(a > E) {
        return Err(Error::Domain(format!(
            "Ford's region needs log log |t| > 0, i.e. |t| > e, got {t}"
        )));
    }
    let l = a.ln();
    Ok(ZeroFreeBoundReport {
        t,
        ford_sigma: 1.0 - 1.0 / (57.54 * l.powf(2.0 / 3.0) * l.ln().cbrt()),
        mt_sigma: 1.0 - 1.0 / (5.573412 * l),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mangoldt_cancellation_point() {
        let t = 2.0 * PI * E;
        assert!((mangoldt_estimate(t) - 0.875).abs() < 1e-14);
        assert!((mangoldt_estimate(100.0) - 29.0).abs() < 0.1);
    }

    #[test]
    fn zero_free_examples() {
        let r = zero_free_bounds(1e6).unwrap();
        assert!((r.ford_sigma - 0.99781).abs() < 5e-6);
        let r = zero_free_bounds(100.0).unwrap();
        assert!((r.mt_sigma - 0.96104).abs() < 5e-6);
        assert!(!r.violated_by(0.5));
        assert!(matches!(zero_free_bounds(2.0), Err(Error::Domain(_))));
        assert!(zero_free_bounds(2.5).is_err());
    }
}
