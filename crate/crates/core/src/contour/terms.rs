//! Closed forms for the vertical-edge integrals of the four pieces of
//!
//!   ζ'/ζ(s) = 1/(1−s) + ½ log π − ½ ψ(s/2+1) + Σ_ρ 1/(s−ρ),
//!
//! and the decomposition report comparing their sum with direct quadrature.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{log_deriv_edge, Edge, Rectangle, MAX_PANEL};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_exact, integrate_segment, PathIntegral};
use crate::special_functions::{digamma, ln_gamma, ComplexValue, PrecisionConfig};
use crate::zero_finder::{mangoldt_estimate, ZeroTable};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Integrals along DA and BC (each with positive circulation) and their sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgePair {
    pub da: Complex64,
    pub bc: Complex64,
    pub combined: Complex64,
}

impl EdgePair {
    fn new(da: Complex64, bc: Complex64) -> Self {
        Self {
            da,
            bc,
            combined: da + bc,
        }
    }
}

/// ∫ 1/(1−s) ds over DA and BC. On DA, −log(s−1) gives
/// 2i·arctan(T/(1−β)) = 2i(π − arg(β−1+iT)); likewise −2i·arctan(T/(1−α)) on BC.
pub fn pole_term_integral(rect: &Rectangle) -> Result<EdgePair> {
    let (alpha, beta, t) = rect.paper_params()?;
    Ok(EdgePair::new(
        I * 2.0 * (t / (1.0 - beta)).atan(),
        -I * 2.0 * (t / (1.0 - alpha)).atan(),
    ))
}

/// The alternative combination 2i(arg(β−1+iT) − arg(α−1+iT)), kept for
/// comparison with [`pole_term_integral`].
pub fn pole_term_paper_form(rect: &Rectangle) -> Result<Complex64> {
    let (alpha, beta, t) = rect.paper_params()?;
    let arg = |x: f64| Complex64::new(x - 1.0, t).arg();
    Ok(I * 2.0 * (arg(beta) - arg(alpha)))
}

/// ∫ ½ log π ds: iT log π on DA, the negative on BC.
pub fn logpi_term_integral(rect: &Rectangle) -> Result<EdgePair> {
    let (_, _, t) = rect.paper_params()?;
    let da = I * t * PI.ln();
    Ok(EdgePair::new(da, -da))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DigammaTerm {
    /// ½[∫_DA + ∫_BC] ψ(s/2+1) ds from the exact antiderivative 2 log Γ(s/2+1).
    pub half_sum: Complex64,
    /// The term's contribution to the decomposition, −half_sum.
    pub contribution: Complex64,
    pub abs_err: f64,
    /// Same half-sum from the Stirling-type antiderivative
    /// (s+2) log(1+s/2) − (s+2) − log(s+2).
    pub asymptotic_half_sum: Complex64,
    /// Bound on |asymptotic_half_sum − half_sum|.
    pub asymptotic_bound: f64,
    /// (β−α)(π/2)i.
    pub limit: Complex64,
    /// |half_sum − limit|.
    pub gap: f64,
}

pub fn digamma_term_integral(rect: &Rectangle, cfg: &PrecisionConfig) -> Result<DigammaTerm> {
    let (alpha, beta, t) = rect.paper_params()?;
    let im_lg = |x: f64| ln_gamma(Complex64::new(0.5 * x + 1.0, 0.5 * t), cfg);
    let (lb, la) = (im_lg(beta)?, im_lg(alpha)?);
    let half_sum = I * 2.0 * (lb.im() - la.im());
    let abs_err = 2.0 * (lb.abs_err + la.abs_err);

    let f = |s: Complex64| (s + 2.0) * (1.0 + 0.5 * s).ln() - (s + 2.0) - (s + 2.0).ln();
    let vb = |x: f64| Complex64::new(x, t);
    let da = f(vb(beta)) - f(vb(beta).conj());
    let bc = f(vb(alpha).conj()) - f(vb(alpha));
    let asymptotic_half_sum = 0.5 * (da + bc);
    let limit = I * (beta - alpha) * PI / 2.0;
    Ok(DigammaTerm {
        half_sum,
        contribution: -half_sum,
        abs_err,
        asymptotic_half_sum,
        asymptotic_bound: 4.0 / (3.0 * t),
        limit,
        gap: (half_sum - limit).norm(),
    })
}

/// arctan((T−γ)/(β−½)) + arctan((T+γ)/(β−½)) − arctan((T−γ)/(α−½)) − arctan((T+γ)/(α−½)),
/// the real factor of one conjugate pair's DA+BC integral (which is 2i times
/// this). Evaluated as arctan h₁ + arctan h₂: both differences combine
/// arguments of equal sign, so no multiple of π appears.
pub fn pair_term(rect: &Rectangle, gamma: f64) -> f64 {
    let (alpha, beta, t) = (rect.x0, rect.x1, rect.y1);
    let p = (alpha - 0.5) * (beta - 0.5);
    let h = |d: f64| (alpha - beta) * d / (p + d * d);
    h(t - gamma).atan() + h(t + gamma).atan()
}

/// d/dγ of [`pair_term`].
fn pair_term_derivative(rect: &Rectangle, gamma: f64) -> f64 {
    let (alpha, beta, t) = (rect.x0, rect.x1, rect.y1);
    let part = |b: f64| -b / (b * b + (t - gamma).powi(2)) + b / (b * b + (t + gamma).powi(2));
    part(beta - 0.5) - part(alpha - 0.5)
}

/// Explicit-formula slack: |N(t) − (t/2π) log(t/2πe) − 7/8| ≤ E(t) for t ≥ e.
fn counting_error_bound(t: f64) -> f64 {
    0.112 * t.ln() + 0.278 * t.ln().ln() + 2.510 + 0.2 / t
}

/// Contribution of the zeros above the table, Σ_{γ>H} pair_term(γ), from the
/// smooth zero density plus integration by parts against the explicit error
/// bound. Returns (estimate, error of the estimate, bound on the sum).
fn beyond_table(rect: &Rectangle, zeros: &ZeroTable, cfg: &PrecisionConfig) -> Result<(f64, f64, f64)> {
    let (alpha, beta, t) = (rect.x0, rect.x1, rect.y1);
    let h = zeros.max_height();
    if h < 3.0 * t + 10.0 {
        return Err(Error::TableTooShort {
            max_height: h,
            reason: format!("the zero-sum tail needs the table to reach 3T + 10 = {}", 3.0 * t + 10.0),
        });
    }
    // γ = H e^x, x ∈ [0, X]; past G = H e^X a crude bound suffices.
    let x_max: f64 = 30.0;
    let g_far = h * x_max.exp();
    let tol = 1e-3 * cfg.quad_tol.max(1e-14);
    let smooth = integrate_exact(
        |x| {
            let g = h * x.re.exp();
            Complex64::new(pair_term(rect, g) * (g / (2.0 * PI)).ln() / (2.0 * PI) * g, 0.0)
        },
        Complex64::new(0.0, 0.0),
        Complex64::new(x_max, 0.0),
        tol,
        1.0,
    )?;
    let wobble = integrate_exact(
        |x| {
            let g = h * x.re.exp();
            Complex64::new(pair_term_derivative(rect, g).abs() * counting_error_bound(g) * g, 0.0)
        },
        Complex64::new(0.0, 0.0),
        Complex64::new(x_max, 0.0),
        tol,
        1.0,
    )?;
    let c = 4.0 * t * (beta - alpha);
    let far = c * (g_far.ln() + 1.0) / (2.0 * PI * g_far)
        + 2.0 * c * (counting_error_bound(g_far) + 1.0) / (g_far * g_far);
    let r_h = zeros.len() as f64 - (mangoldt_estimate(h));
    let f_h = pair_term(rect, h);
    let estimate = smooth.value.re - f_h * r_h;
    let model_err = wobble.value.re + far + smooth.error + wobble.error;
    let bound = smooth.value.re + (f_h * r_h).abs() + model_err;
    Ok((estimate, model_err, bound))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroSumTerm {
    /// 2i·S_N: the DA+BC integral of the first N paired zero terms.
    pub value: Complex64,
    pub s_n: f64,
    pub n_used: usize,
    /// Bound on |DA+BC integral of the omitted pairs|.
    pub tail_bound: f64,
    /// eps2 · 2T, the level tail_bound was required to meet.
    pub tail_target: f64,
    /// Estimate of the omitted part of S (so the omitted integral is 2i times it).
    pub tail_estimate: f64,
    pub tail_model_error: f64,
}

/// Truncated paired zero sum on the vertical edges, with the smallest N whose
/// certified tail bound meets eps2·2T.
pub fn zero_sum_term_integral(
    rect: &Rectangle,
    zeros: &ZeroTable,
    eps2: f64,
    cfg: &PrecisionConfig,
) -> Result<ZeroSumTerm> {
    let (_, _, t) = rect.paper_params()?;
    if !(eps2 > 0.0) {
        return Err(Error::Domain(format!("eps2 must be positive, got {eps2}")));
    }
    let (beyond_estimate, model_err, beyond_bound) = beyond_table(rect, zeros, cfg)?;
    let terms: Vec<f64> = zeros.gammas().iter().map(|&g| pair_term(rect, g)).collect();
    // suffix[n] = Σ_{k≥n} |term_k| (0-based), so suffix[N] covers zeros N+1, N+2, …
    let mut suffix = vec![0.0; terms.len() + 1];
    for k in (0..terms.len()).rev() {
        suffix[k] = suffix[k + 1] + terms[k].abs();
    }
    let target = eps2 * 2.0 * t;
    let n_used = (0..=terms.len())
        .find(|&n| 2.0 * (suffix[n] + beyond_bound) <= target)
        .ok_or_else(|| Error::TableTooShort {
            max_height: zeros.max_height(),
            reason: format!(
                "even the full table leaves a tail bound of {:e} > eps2*2T = {target:e}",
                2.0 * beyond_bound
            ),
        })?;
    let s_n: f64 = terms[..n_used].iter().sum();
    let tail_estimate = terms[n_used..].iter().sum::<f64>() + beyond_estimate;
    Ok(ZeroSumTerm {
        value: I * 2.0 * s_n,
        s_n,
        n_used,
        tail_bound: 2.0 * (suffix[n_used] + beyond_bound),
        tail_target: target,
        tail_estimate,
        tail_model_error: model_err,
    })
}

/// Quadrature of Σ_{γ∈gammas} 2(s−½)/((s−½)²+γ²) over DA plus BC.
pub fn zero_sum_quadrature(rect: &Rectangle, gammas: &[f64], cfg: &PrecisionConfig) -> Result<PathIntegral> {
    let f = |s: Complex64| {
        let w = s - 0.5;
        let w2 = w * w;
        let sum: Complex64 = gammas.iter().map(|&g| 2.0 * w / (w2 + g * g)).sum();
        Ok(ComplexValue::new(sum, 0.0))
    };
    edge_pair_quadrature(rect, f, cfg)
}

fn edge_pair_quadrature<F>(rect: &Rectangle, f: F, cfg: &PrecisionConfig) -> Result<PathIntegral>
where
    F: Fn(Complex64) -> Result<ComplexValue> + Sync,
{
    let (a0, a1) = rect.endpoints(Edge::DA);
    let (b0, b1) = rect.endpoints(Edge::BC);
    let (da, bc) = rayon::join(
        || integrate_segment(&f, a0, a1, cfg.quad_tol, MAX_PANEL),
        || integrate_segment(&f, b0, b1, cfg.quad_tol, MAX_PANEL),
    );
    let (da, bc) = (da?, bc?);
    Ok(PathIntegral {
        value: da.value + bc.value,
        error: da.error + bc.error,
        evaluations: da.evaluations + bc.evaluations,
    })
}

/// Universality model for the horizontal edges: ζ'/ζ ≈ U+iV on AB and its
/// conjugate on CD give 2i(α−β)V (U cancels).
pub fn horizontal_edges_model(rect: &Rectangle, u: f64, v: f64) -> Result<Complex64> {
    let (alpha, beta, _) = rect.paper_params()?;
    let f = Complex64::new(u, v);
    Ok((alpha - beta) * f + (beta - alpha) * f.conj())
}

/// Claimed closed form of (1/2πi)∮: (β−α)/4 + (α−β)V/π + Q.
pub fn paper_total(rect: &Rectangle, v: f64, q: i64) -> Result<f64> {
    let (alpha, beta, _) = rect.paper_params()?;
    Ok((beta - alpha) / 4.0 + (alpha - beta) * v / PI + q as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermCheck {
    pub name: String,
    pub closed_form: Complex64,
    pub quadrature: Complex64,
    pub difference: f64,
    pub quad_error: f64,
}

impl TermCheck {
    fn new(name: &str, closed_form: Complex64, q: PathIntegral) -> Self {
        Self {
            name: name.to_string(),
            closed_form,
            quadrature: q.value,
            difference: (closed_form - q.value).norm(),
            quad_error: q.error,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub rect: Rectangle,
    pub eps2: f64,
    pub pole_term: Complex64,
    pub logpi_term: Complex64,
    pub digamma_term: Complex64,
    pub zero_sum_term: Complex64,
    pub n_used: usize,
    pub tail_bound: f64,
    /// 2i × estimated omitted zero pairs.
    pub tail_estimate: Complex64,
    pub tail_model_error: f64,
    /// Sum of the four terms plus the tail estimate.
    pub termwise_total: Complex64,
    /// Quadrature of ζ'/ζ over DA + BC.
    pub direct_total: Complex64,
    pub residual: f64,
    /// Residual when the tail estimate is left out (the plain truncation).
    pub residual_truncated_only: f64,
    pub quad_error: f64,
    /// quad_error + tail model error + closed-form errors.
    pub budget: f64,
    pub term_checks: Vec<TermCheck>,
}

/// Term-by-term evaluation of the vertical-edge integrals against direct
/// quadrature of ζ'/ζ.
pub fn decompose(
    rect: &Rectangle,
    zeros: &ZeroTable,
    eps2: f64,
    cfg: &PrecisionConfig,
) -> Result<DecompositionReport> {
    let pole = pole_term_integral(rect)?;
    let logpi = logpi_term_integral(rect)?;
    let dg = digamma_term_integral(rect, cfg)?;
    let zs = zero_sum_term_integral(rect, zeros, eps2, cfg)?;

    let (da, bc) = rayon::join(
        || log_deriv_edge(rect, Edge::DA, zeros, cfg),
        || log_deriv_edge(rect, Edge::BC, zeros, cfg),
    );
    let (da, bc) = (da?, bc?);
    let direct_total = da.value + bc.value;
    let quad_error = da.error + bc.error;

    let pole_q = edge_pair_quadrature(rect, |s| Ok(ComplexValue::new(1.0 / (1.0 - s), 0.0)), cfg)?;
    let logpi_q = edge_pair_quadrature(rect, |_| Ok(ComplexValue::new(Complex64::new(0.5 * PI.ln(), 0.0), 0.0)), cfg)?;
    let dg_q = edge_pair_quadrature(
        rect,
        |s| digamma(0.5 * s + 1.0, cfg).map(|v| ComplexValue::new(-0.5 * v.value, 0.5 * v.abs_err)),
        cfg,
    )?;
    let zs_q = zero_sum_quadrature(rect, &zeros.gammas()[..zs.n_used], cfg)?;
    let term_checks = vec![
        TermCheck::new("pole", pole.combined, pole_q),
        TermCheck::new("logpi", logpi.combined, logpi_q),
        TermCheck::new("digamma", dg.contribution, dg_q),
        TermCheck::new("zerosum", zs.value, zs_q),
    ];

    let tail_estimate = I * 2.0 * zs.tail_estimate;
    let truncated = pole.combined + logpi.combined + dg.contribution + zs.value;
    let termwise_total = truncated + tail_estimate;
    let closed_err = dg.abs_err + 8.0 * f64::EPSILON * (zs.n_used as f64 + 1.0) * PI;
    Ok(DecompositionReport {
        rect: *rect,
        eps2,
        pole_term: pole.combined,
        logpi_term: logpi.combined,
        digamma_term: dg.contribution,
        zero_sum_term: zs.value,
        n_used: zs.n_used,
        tail_bound: zs.tail_bound,
        tail_estimate,
        tail_model_error: 2.0 * zs.tail_model_error,
        termwise_total,
        direct_total,
        residual: (termwise_total - direct_total).norm(),
        residual_truncated_only: (truncated - direct_total).norm(),
        quad_error,
        budget: quad_error + 2.0 * zs.tail_model_error + closed_err,
        term_checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pole_term_vanishes_slowly() {
        let r = Rectangle::paper(0.6, 0.8, 1000.0).unwrap();
        let p = pole_term_integral(&r).unwrap();
        assert!(p.combined.norm() < 4e-4);
        let paper = pole_term_paper_form(&r).unwrap();
        // same magnitude, opposite sign
        assert!((paper + p.combined).norm() < 1e-15);
    }

    #[test]
    fn horizontal_model_examples() {
        let r = Rectangle::paper(0.6, 0.8, 10.0).unwrap();
        let m = horizontal_edges_model(&r, 0.0, -PI).unwrap();
        assert!((m - Complex64::new(0.0, 0.4 * PI)).norm() < 1e-15);
        assert_eq!(horizontal_edges_model(&r, 7.0, 0.0).unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(
            horizontal_edges_model(&r, -3.0, 1.5).unwrap(),
            horizontal_edges_model(&r, 11.0, 1.5).unwrap()
        );
    }

    #[test]
    fn paper_total_examples() {
        let r = Rectangle::paper(0.6, 0.8, 10.0).unwrap();
        assert!((paper_total(&r, -PI, 0).unwrap() - 0.25).abs() < 1e-15);
        let rr = 0.37;
        assert!((paper_total(&r, (0.25 - 5.0 * rr) * PI, 2).unwrap() - (rr + 2.0)).abs() < 1e-14);
        // V solving (β−α)/4 + (α−β)V/π = 0
        assert!(paper_total(&r, PI / 4.0, 0).unwrap().abs() < 1e-15);
    }

    #[test]
    fn pair_term_matches_four_arctans() {
        let r = Rectangle::paper(0.6, 0.8, 100.0).unwrap();
        for g in [14.134725, 99.0, 100.0, 101.5, 3000.0] {
            let direct = ((100.0 - g) / 0.3f64).atan() + ((100.0 + g) / 0.3f64).atan()
                - ((100.0 - g) / 0.1f64).atan()
                - ((100.0 + g) / 0.1f64).atan();
            assert!((direct - pair_term(&r, g)).abs() < 1e-13, "{g}");
        }
    }
}
