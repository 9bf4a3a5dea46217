//! Euler–Maclaurin evaluation of ζ and ζ'.
//!
//! ζ(s) = Σ_{n<N} n^{-s} + N^{1-s}/(s-1) + N^{-s}/2
//!        + Σ_{k=1}^{m} B_{2k}/(2k)! · s(s+1)…(s+2k-2) · N^{-s-2k+1} + R_m,
//!
//! with |R_m| ≤ |T_{m+1}| · |s+2m+1| / (σ+2m+1). The derivative remainder is
//! bounded with a Cauchy estimate of R_m on a circle around s. N grows until
//! the best m (capped by the config) meets the truncation budget.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use super::{
    cot, digamma, gamma, ln_gamma, ln_sin, ComplexValue, PrecisionConfig,
    BERNOULLI_OVER_FACTORIAL,
};
use crate::error::{Error, Result, Singularity};
use crate::zero_finder::ZeroTable;

const LN_TABLE_SIZE: usize = 1 << 15;
const MAX_DIRECT_TERMS: usize = 20_000_000;

fn ln_n(n: usize) -> f64 {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        (0..LN_TABLE_SIZE)
            .map(|k| if k == 0 { 0.0 } else { (k as f64).ln() })
            .collect()
    });
    if n < LN_TABLE_SIZE {
        table[n]
    } else {
        (n as f64).ln()
    }
}

#[derive(Debug, Clone, Copy)]
struct Plan {
    n: usize,
    m: usize,
    truncation: f64,
    deriv_truncation: f64,
}

/// Best (m, remainder, derivative remainder) for a fixed N.
fn best_order(s: Complex64, n: usize, m_max: usize, with_deriv: bool) -> (usize, f64, f64) {
    let sigma = s.re;
    let ln_big_n = ln_n(n);
    let r = (1.0 / ln_big_n).min(0.5);
    let c = &BERNOULLI_OVER_FACTORIAL;

    // log|T_1|
    let mut ln_term = c[0].abs().ln() + s.norm().ln() - (sigma + 1.0) * ln_big_n;
    // Σ_{j=0}^{2k} log(|s+j| + r), for the derivative bound, starting at k=0.
    let mut ln_widened = (s.norm() + r).ln();

    let mut best = (0usize, f64::INFINITY, f64::INFINITY);
    let mut best_score = f64::INFINITY;
    for k in 1..=m_max {
        let kf = k as f64;
        let a = s + (2.0 * kf - 1.0);
        let b = s + 2.0 * kf;
        let ln_next = ln_term + (c[k] / c[k - 1]).abs().ln() + a.norm().ln() + b.norm().ln()
            - 2.0 * ln_big_n;
        ln_widened += (a.norm() + r).ln() + (b.norm() + r).ln();
        let tail_factor = sigma + 2.0 * kf + 1.0;
        let rem = if tail_factor > 0.0 {
            (ln_next + (s + (2.0 * kf + 1.0)).norm().ln() - tail_factor.ln()).exp()
        } else {
            f64::INFINITY
        };
        let drem = if with_deriv {
            let shifted = sigma - r + 2.0 * kf + 1.0;
            if shifted > 0.0 {
                let ln_prod = ln_widened + ((s + (2.0 * kf + 1.0)).norm() + r).ln();
                (c[k].abs().ln() + ln_prod - shifted * ln_big_n - shifted.ln() - r.ln()).exp()
            } else {
                f64::INFINITY
            }
        } else {
            0.0
        };
        let score = rem.max(drem);
        if score < best_score {
            best_score = score;
            best = (k, rem, drem);
        } else if k >= best.0 + 3 && score > 1e3 * best_score {
            // the terms grow monotonically once past their minimum
            break;
        }
        ln_term = ln_next;
    }
    if s.norm() == 0.0 {
        // every correction term carries the factor s
        best.1 = 0.0;
    }
    best
}

fn plan(s: Complex64, cfg: &PrecisionConfig, with_deriv: bool) -> Result<Plan> {
    let budget = cfg.truncation_budget();
    let m_max = cfg.euler_maclaurin_terms;
    let mut n = cfg.cutoff_n.max(2).max((0.15 * s.im.abs()) as usize);
    loop {
        let (m, rem, drem) = best_order(s, n, m_max, with_deriv);
        if rem.max(drem) <= budget {
            return Ok(Plan {
                n,
                m,
                truncation: rem,
                deriv_truncation: drem,
            });
        }
        if n > MAX_DIRECT_TERMS {
            return Err(Error::PrecisionExhausted {
                estimate: rem.max(drem),
                target: budget,
            });
        }
        n = n + n / 5 + 1;
    }
}

struct Raw {
    zeta: Complex64,
    zeta_err: f64,
    deriv: Complex64,
    deriv_err: f64,
}

#[derive(Debug, Clone, Copy, Default)]
struct DirectSums {
    sum: Complex64,
    dsum: Complex64,
    abs_sum: f64,
    phase_sq: f64,
    dabs_sum: f64,
    dphase_sq: f64,
}

impl DirectSums {
    #[inline]
    fn add(&mut self, mag: f64, l: f64, cos: f64, sin: f64, with_deriv: bool) {
        let term = Complex64::new(mag * cos, -mag * sin);
        self.sum += term;
        self.abs_sum += mag;
        self.phase_sq += (mag * l) * (mag * l);
        if with_deriv {
            self.dsum -= term * l;
            self.dabs_sum += mag * l;
            self.dphase_sq += (mag * l * l) * (mag * l * l);
        }
    }
}

fn euler_maclaurin(s: Complex64, cfg: &PrecisionConfig, with_deriv: bool) -> Result<Raw> {
    let p = plan(s, cfg, with_deriv)?;
    let (sigma, t) = (s.re, s.im);
    let mut d = DirectSums::default();
    for n in 1..p.n {
        let l = ln_n(n);
        let (sin, cos) = (t * l).sin_cos();
        d.add((-sigma * l).exp(), l, cos, sin, with_deriv);
    }
    Ok(finish(s, &p, &d, cfg, with_deriv))
}

/// Adds the N^{1−s}/(s−1), N^{−s}/2 and Bernoulli terms to the direct sum and
/// attaches the error estimate.
fn finish(s: Complex64, p: &Plan, d: &DirectSums, cfg: &PrecisionConfig, with_deriv: bool) -> Raw {
    let u = cfg.rounding_unit();
    let (sigma, t) = (s.re, s.im);
    let big_n = p.n as f64;
    let ln_big_n = ln_n(p.n);
    let n_pow = Complex64::new(-ln_big_n * sigma, -ln_big_n * t).exp(); // N^{-s}
    let sm1 = s - 1.0;
    let head = n_pow * big_n / sm1;
    let half = n_pow * 0.5;
    let mut zeta = d.sum + head + half;
    let mut tail_mag = head.norm() + half.norm();
    let mut deriv = d.dsum;
    if with_deriv {
        deriv += -head * ln_big_n - head / sm1 - half * ln_big_n;
    }

    // Correction terms, carried as w_k = c_k P_k(s) N^{-s-2k+1} and its
    // companion with P_k replaced by P_k'.
    let c = &BERNOULLI_OVER_FACTORIAL;
    let mut w = n_pow * s / big_n * c[0];
    let mut wd = n_pow / big_n * c[0];
    let inv_n2 = 1.0 / (big_n * big_n);
    for k in 1..=p.m {
        zeta += w;
        tail_mag += w.norm();
        if with_deriv {
            deriv += wd - w * ln_big_n;
        }
        if k == p.m {
            break;
        }
        let kf = k as f64;
        let q1 = s + (2.0 * kf - 1.0);
        let q2 = s + 2.0 * kf;
        let scale = c[k] / c[k - 1] * inv_n2;
        // (P, P') ← (P q1 q2, P' q1 q2 + P (q1 + q2))
        let next_wd = (wd * q1 * q2 + w * (q1 + q2)) * scale;
        w = w * q1 * q2 * scale;
        wd = next_wd;
    }

    let phase_scale = t.abs();
    let zeta_round = u * (4.0 * d.abs_sum + phase_scale * d.phase_sq.sqrt())
        + u * tail_mag * (4.0 + phase_scale * ln_big_n);
    let deriv_round = if with_deriv {
        u * (4.0 * d.dabs_sum + phase_scale * d.dphase_sq.sqrt())
            + u * tail_mag * (4.0 + phase_scale * ln_big_n) * (1.0 + ln_big_n)
    } else {
        0.0
    };
    Raw {
        zeta,
        zeta_err: p.truncation + zeta_round,
        deriv,
        deriv_err: p.deriv_truncation + deriv_round,
    }
}

/// χ(s) = 2^s π^{s−1} sin(πs/2) Γ(1−s) and its relative error.
fn chi_parts(s: Complex64, cfg: &PrecisionConfig) -> Result<(Complex64, f64)> {
    let (ln_g, g_err) = if s.re < 1.0 {
        let lg = ln_gamma(1.0 - s, cfg)?;
        (lg.value, lg.abs_err)
    } else {
        // Γ(1−s) = π / (sin(π(1−s)) Γ(s)); only exp of the sum is used, so
        // the branch of the logarithm does not matter
        let lg = ln_gamma(s, cfg)?;
        (PI.ln() - ln_sin(PI * (1.0 - s)) - lg.value, lg.abs_err)
    };
    let ln_chi = s * 2f64.ln() + (s - 1.0) * PI.ln() + ln_sin(0.5 * PI * s) + ln_g;
    Ok((ln_chi.exp(), g_err + 8.0 * cfg.rounding_unit() * (1.0 + ln_chi.norm())))
}

/// The factor in ζ(s) = χ(s) ζ(1−s).
pub fn chi(s: Complex64, cfg: &PrecisionConfig) -> Result<ComplexValue> {
    cfg.validate()?;
    let (value, rel) = chi_parts(s, cfg)?;
    cfg.accept(value, value.norm() * rel)
}

/// ζ(1−s) pulled back through χ(s).
fn via_functional_equation(s: Complex64, cfg: &PrecisionConfig, with_deriv: bool) -> Result<Raw> {
    let w = 1.0 - s;
    let inner = euler_maclaurin(w, cfg, with_deriv)?;
    let (chi, chi_rel) = chi_parts(s, cfg)?;
    let zeta = chi * inner.zeta;
    let zeta_err = chi.norm() * (inner.zeta_err + inner.zeta.norm() * chi_rel);
    if !with_deriv {
        return Ok(Raw {
            zeta,
            zeta_err,
            deriv: Complex64::new(0.0, 0.0),
            deriv_err: 0.0,
        });
    }
    let psi = digamma(w, cfg)?;
    let log_chi_prime = 2f64.ln() + PI.ln() + cot(0.5 * PI * s) * (0.5 * PI) - psi.value;
    let deriv = chi * (log_chi_prime * inner.zeta - inner.deriv);
    let deriv_err = chi.norm()
        * (log_chi_prime.norm() * inner.zeta_err
            + inner.deriv_err
            + psi.abs_err * inner.zeta.norm()
            + (log_chi_prime * inner.zeta - inner.deriv).norm() * chi_rel);
    Ok(Raw {
        zeta,
        zeta_err,
        deriv,
        deriv_err,
    })
}

fn evaluate(s: Complex64, cfg: &PrecisionConfig, with_deriv: bool) -> Result<Raw> {
    cfg.validate()?;
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::Domain(format!("non-finite argument {s}")));
    }
    if (s - 1.0).norm() < cfg.exclusion_radius {
        return Err(Error::PoleAtOne(s));
    }
    if s.re < -1.0 {
        via_functional_equation(s, cfg, with_deriv)
    } else {
        euler_maclaurin(s, cfg, with_deriv)
    }
}

/// Riemann zeta function.
pub fn zeta(s: Complex64, cfg: &PrecisionConfig) -> Result<ComplexValue> {
    let raw = evaluate(s, cfg, false)?;
    cfg.accept(raw.zeta, raw.zeta_err)
}

/// Derivative ζ'(s).
pub fn zeta_prime(s: Complex64, cfg: &PrecisionConfig) -> Result<ComplexValue> {
    let raw = evaluate(s, cfg, true)?;
    cfg.accept(raw.deriv, raw.deriv_err)
}

/// ζ(s) and ζ'(s) from one shared direct sum.
pub fn zeta_with_derivative(
    s: Complex64,
    cfg: &PrecisionConfig,
) -> Result<(ComplexValue, ComplexValue)> {
    let raw = evaluate(s, cfg, true)?;
    Ok((
        cfg.accept(raw.zeta, raw.zeta_err)?,
        cfg.accept(raw.deriv, raw.deriv_err)?,
    ))
}

/// Closest singularity of ζ'/ζ to `s` among the pole, the trivial zeros and
/// the tabulated critical-line zeros (and their conjugates).
pub fn nearest_singularity(s: Complex64, zeros: &ZeroTable) -> (Singularity, f64) {
    let mut best = (Singularity::Pole, (s - 1.0).norm());
    let mut consider = |which: Singularity| {
        let d = (s - which.location()).norm();
        if d < best.1 {
            best = (which, d);
        }
    };
    if s.re < -1.0 {
        let k = (-s.re / 2.0).round().max(1.0) as u32;
        consider(Singularity::TrivialZero(k));
    } else {
        consider(Singularity::TrivialZero(1));
    }
    let target = s.im.abs();
    let gammas = zeros.gammas();
    let idx = gammas.partition_point(|&g| g < target);
    for j in [idx.wrapping_sub(1), idx] {
        if let Some(&g) = gammas.get(j) {
            let gamma = if s.im < 0.0 { -g } else { g };
            consider(Singularity::Zero { index: j, gamma });
        }
    }
    best
}

/// Logarithmic derivative ζ'(s)/ζ(s), refusing points inside the exclusion
/// radius of the pole or of any tabulated zero.
pub fn log_deriv_zeta(
    s: Complex64,
    cfg: &PrecisionConfig,
    zeros: &ZeroTable,
) -> Result<ComplexValue> {
    let (which, distance) = nearest_singularity(s, zeros);
    if distance < cfg.exclusion_radius {
        return Err(Error::NearSingularity {
            which,
            point: s,
            distance,
        });
    }
    log_deriv_from_raw(evaluate(s, cfg, true)?, cfg)
}

fn log_deriv_from_raw(raw: Raw, cfg: &PrecisionConfig) -> Result<ComplexValue> {
    let z = raw.zeta;
    let q = raw.deriv / z;
    let err = (raw.deriv_err + q.norm() * raw.zeta_err) / z.norm() + q.norm() * f64::EPSILON;
    cfg.accept(q, err)
}

/// ζ'/ζ(σ_j + it) for several σ_j on one horizontal line. The direct sum is
/// shared when one Euler–Maclaurin length suits every point; each entry
/// carries its own result, exactly as [`log_deriv_zeta`] would report it.
pub fn log_deriv_zeta_line(
    sigmas: &[f64],
    t: f64,
    cfg: &PrecisionConfig,
    zeros: &ZeroTable,
) -> Vec<Result<ComplexValue>> {
    let single = |sigma: f64| log_deriv_zeta(Complex64::new(sigma, t), cfg, zeros);
    let shared = cfg.validate().is_ok()
        && t.is_finite()
        && sigmas.iter().all(|&x| x.is_finite() && x >= -1.0);
    let lowest = sigmas.iter().copied().fold(f64::INFINITY, f64::min);
    let base = if shared {
        plan(Complex64::new(lowest, t), cfg, true).ok()
    } else {
        None
    };
    let Some(base) = base else {
        return sigmas.iter().map(|&x| single(x)).collect();
    };
    let budget = cfg.truncation_budget();
    // per point: None → evaluate on its own
    let plans: Vec<Option<Plan>> = sigmas
        .iter()
        .map(|&x| {
            let s = Complex64::new(x, t);
            let (_, distance) = nearest_singularity(s, zeros);
            if distance < cfg.exclusion_radius || (s - 1.0).norm() < cfg.exclusion_radius {
                return None;
            }
            let (m, rem, drem) = best_order(s, base.n, cfg.euler_maclaurin_terms, true);
            (rem.max(drem) <= budget).then_some(Plan {
                n: base.n,
                m,
                truncation: rem,
                deriv_truncation: drem,
            })
        })
        .collect();
    let mut sums = vec![DirectSums::default(); sigmas.len()];
    for n in 1..base.n {
        let l = ln_n(n);
        let (sin, cos) = (t * l).sin_cos();
        for ((d, &x), p) in sums.iter_mut().zip(sigmas).zip(&plans) {
            if p.is_some() {
                d.add((-x * l).exp(), l, cos, sin, true);
            }
        }
    }
    sigmas
        .iter()
        .zip(&plans)
        .zip(&sums)
        .map(|((&x, p), d)| match p {
            Some(p) => log_deriv_from_raw(finish(Complex64::new(x, t), p, d, cfg, true), cfg),
            None => single(x),
        })
        .collect()
}

/// Completed zeta ξ(s) = ½ s(s−1) π^{−s/2} Γ(s/2) ζ(s), symmetric under s ↦ 1−s.
pub fn xi(s: Complex64, cfg: &PrecisionConfig) -> Result<ComplexValue> {
    cfg.validate()?;
    // ½ s Γ(s/2) = Γ(s/2 + 1) removes the pole at 0; s = 1 and the Γ poles
    // left of −1 are handled by reflecting.
    if (s - 1.0).norm() < 0.1 || s.re < -1.0 {
        return xi(1.0 - s, cfg);
    }
    let z = zeta(s, cfg)?;
    let g = gamma(0.5 * s + 1.0, cfg)?;
    let pi_pow = (-0.5 * s * PI.ln()).exp();
    let factor = (s - 1.0) * pi_pow;
    let value = factor * g.value * z.value;
    let err = factor.norm() * (g.abs_err * z.value.norm() + g.value.norm() * z.abs_err)
        + value.norm() * 4.0 * cfg.rounding_unit() * (1.0 + s.norm());
    cfg.accept(value, err)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn classical_values() {
        let cfg = PrecisionConfig::default();
        let z2 = zeta(c(2.0, 0.0), &cfg).unwrap();
        assert!((z2.value - c(PI * PI / 6.0, 0.0)).norm() < 1e-14);
        let z0 = zeta(c(0.0, 0.0), &cfg).unwrap();
        assert!((z0.value - c(-0.5, 0.0)).norm() < 1e-15);
        let zm1 = zeta(c(-1.0, 0.0), &cfg).unwrap();
        assert!((zm1.re() + 1.0 / 12.0).abs() < 1e-14);
        let zm2 = zeta(c(-2.0, 0.0), &cfg).unwrap();
        assert!(zm2.value.norm() < 1e-14);
        let zm3 = zeta(c(-3.0, 0.0), &cfg).unwrap();
        assert!((zm3.re() - 1.0 / 120.0).abs() < 1e-14);
        let z4 = zeta(c(4.0, 0.0), &cfg).unwrap();
        assert!((z4.re() - PI.powi(4) / 90.0).abs() < 1e-14);
    }

    #[test]
    fn pole_is_rejected() {
        let cfg = PrecisionConfig::default();
        assert!(matches!(zeta(c(1.0, 0.0), &cfg), Err(Error::PoleAtOne(_))));
        assert!(matches!(
            zeta_prime(c(1.0, 1e-7), &cfg),
            Err(Error::PoleAtOne(_))
        ));
        assert!(zeta(c(1.0, 1e-3), &cfg).is_ok());
    }

    #[test]
    fn derivative_special_values() {
        let cfg = PrecisionConfig::default();
        let d0 = zeta_prime(c(0.0, 0.0), &cfg).unwrap();
        assert!((d0.re() + 0.5 * (2.0 * PI).ln()).abs() < 1e-14);
        let d2 = zeta_prime(c(2.0, 0.0), &cfg).unwrap();
        assert!((d2.re() + 0.937_548_254_315_843_8).abs() < 1e-13);
    }

    #[test]
    fn derivative_matches_finite_difference_left_of_minus_one() {
        let cfg = PrecisionConfig::default();
        let s = c(-2.5, 7.0);
        let h = 1e-5;
        let fd = (zeta(s + h, &cfg).unwrap().value - zeta(s - h, &cfg).unwrap().value)
            / (2.0 * h);
        let d = zeta_prime(s, &cfg).unwrap().value;
        assert!((fd - d).norm() / d.norm() < 1e-8, "{fd} vs {d}");
    }

    #[test]
    fn functional_equation_branch_is_continuous_at_minus_one() {
        let cfg = PrecisionConfig::default();
        for t in [0.5, 5.0, 30.0] {
            let a = zeta(c(-1.0 + 1e-9, t), &cfg).unwrap().value;
            let b = zeta(c(-1.0 - 1e-9, t), &cfg).unwrap().value;
            assert!((a - b).norm() / a.norm() < 1e-8, "t={t}");
        }
    }

    #[test]
    fn error_estimate_monotone_in_working_digits() {
        let s = c(0.6, 37.0);
        let mut last = f64::INFINITY;
        for digits in 6..=16 {
            let cfg = PrecisionConfig {
                working_digits: digits,
                target_abs_tol: 1.0,
                ..Default::default()
            };
            let v = zeta(s, &cfg).unwrap();
            assert!(v.abs_err <= last, "digits={digits}");
            last = v.abs_err;
        }
    }

    #[test]
    fn target_not_met_is_reported() {
        let cfg = PrecisionConfig {
            target_abs_tol: 1e-18,
            ..Default::default()
        };
        assert!(matches!(
            zeta(c(0.5, 5000.0), &cfg),
            Err(Error::PrecisionExhausted { .. })
        ));
    }

    #[test]
    fn xi_at_two() {
        let cfg = PrecisionConfig::default();
        let v = xi(c(2.0, 0.0), &cfg).unwrap();
        assert!((v.value - c(PI / 6.0, 0.0)).norm() < 1e-14);
        let at_one = xi(c(1.0, 0.0), &cfg).unwrap();
        let at_zero = xi(c(0.0, 0.0), &cfg).unwrap();
        assert!((at_one.re() - 0.5).abs() < 1e-14);
        assert!((at_zero.re() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn log_deriv_at_two() {
        let cfg = PrecisionConfig::default();
        let empty = ZeroTable::empty(0.0);
        let q = log_deriv_zeta(c(2.0, 0.0), &cfg, &empty).unwrap();
        // ζ'(2)/ζ(2) from the two reference values above
        let expected = -0.937_548_254_315_843_8 / (PI * PI / 6.0);
        assert!((q.re() - expected).abs() < 1e-13);
        assert!((q.re() + 0.569_961).abs() < 1e-6);
    }
}
