//! Riemann–Siegel θ and the Hardy Z function.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::special_functions::{ln_gamma, zeta, ComplexValue, PrecisionConfig};

/// Above this height θ comes from its asymptotic series; the first omitted
/// term, 1414477/(1476034560 t¹¹), is then below 1e-20.
const THETA_SERIES_FROM: f64 = 40.0;

/// θ(t) = Im log Γ(¼ + it/2) − (t/2) log π, on the continuous branch with θ(0) = 0.
pub fn theta(t: f64, cfg: &PrecisionConfig) -> Result<ComplexValue> {
    let u = cfg.rounding_unit();
    let a = t.abs();
    if a >= THETA_SERIES_FROM {
        let l = (a / (2.0 * PI)).ln();
        let inv = 1.0 / a;
        let inv2 = inv * inv;
        let corr = inv
            * (1.0 / 48.0
                + inv2
                    * (7.0 / 5760.0
                        + inv2
                            * (31.0 / 80640.0
                                + inv2 * (127.0 / 430080.0 + inv2 * (511.0 / 1216512.0)))));
        let value = 0.5 * a * l - 0.5 * a - PI / 8.0 + corr;
        let err = 2.0 * u * 0.5 * a * (l + 2.0) + 1e-20;
        return Ok(ComplexValue::new(Complex64::new(value.copysign(t), 0.0), err));
    }
    let lg = ln_gamma(Complex64::new(0.25, 0.5 * t), cfg)?;
    let value = lg.im() - 0.5 * t * PI.ln();
    let err = lg.abs_err + u * a;
    Ok(ComplexValue::new(Complex64::new(value, 0.0), err))
}

/// e^{iθ(t)} ζ(½ + it). Real for real t up to the returned error.
pub fn rotated_zeta(t: f64, cfg: &PrecisionConfig) -> Result<ComplexValue> {
    let th = theta(t, cfg)?;
    let z = zeta(Complex64::new(0.5, t), cfg)?;
    let rot = Complex64::from_polar(1.0, th.re());
    let value = rot * z.value;
    let err = z.abs_err + z.value.norm() * th.abs_err;
    cfg.accept(value, err)
}

/// Hardy's Z(t); its sign changes bracket the critical-line zeros.
pub fn hardy_z(t: f64, cfg: &PrecisionConfig) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("hardy_z needs t >= 0, got {t}")));
    }
    Ok(rotated_zeta(t, cfg)?.re())
}
