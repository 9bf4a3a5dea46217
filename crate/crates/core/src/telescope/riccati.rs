//! f(k+1) = (a f(k) + b)/(−b f(k) + a) with a = d² + (α−½)(β−½), b = (α−β)d,
//! d = T − γ_k (for f) or T + γ_k (for g), started from f(1) = g(1) = 0.
//! Each step adds arctan(b/a) to arctan f modulo π, which is what makes the
//! recurrence telescope the zero sum.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::h_value;
use crate::contour::Rectangle;
use crate::error::{Error, Result};
use crate::zero_finder::ZeroTable;

/// |f| beyond this counts as blown up.
const BLOWUP: f64 = 1e8;
const DENOM_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RiccatiKind {
    /// d = T − γ_k, telescoping Σ arctan h₁.
    F,
    /// d = T + γ_k, telescoping Σ arctan h₂.
    G,
}

impl RiccatiKind {
    fn offset(self, t: f64, gamma: f64) -> f64 {
        match self {
            RiccatiKind::F => t - gamma,
            RiccatiKind::G => t + gamma,
        }
    }

    /// Direction of the limit claimed for the sequence (+∞ for f, −∞ for g).
    fn claimed_sign(self) -> f64 {
        match self {
            RiccatiKind::F => 1.0,
            RiccatiKind::G => -1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RiccatiTrace {
    pub kind: RiccatiKind,
    pub alpha: f64,
    pub beta: f64,
    pub t: f64,
    pub gammas: Vec<f64>,
    /// iterates[j] = f(j+1); one more entry than `gammas`.
    pub iterates: Vec<f64>,
    /// h₁(k) or h₂(k) for k = 1..=N.
    pub h: Vec<f64>,
    /// π-multiple separating arctan f(k+1) − arctan f(k) from arctan h(k).
    pub wraps: Vec<i64>,
    /// Distance of that difference from the nearest multiple of π.
    pub step_residual: Vec<f64>,
    pub max_step_residual: f64,
    pub wrap_total: i64,
    /// First k from which the sequence moves monotonically towards the
    /// claimed limit (up for f, down for g) until the end of the trace.
    pub monotone_from: Option<usize>,
    /// First k with |f(k)| > 1e8.
    pub blowup_index: Option<usize>,
    /// min over steps of |−b f + a| / (|a| + |b f|).
    pub denominator_min: f64,
    /// Steps where h has the wrong sign (g only: h₂ must be negative).
    pub h_sign_violations: usize,
    /// Monotone onset reached and final iterate beyond the blowup level in
    /// the claimed direction.
    pub claimed_limit_observed: bool,
}

impl RiccatiTrace {
    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }

    /// Offsets T ∓ γ_k for the trace's zeros.
    pub fn offsets(&self) -> Vec<f64> {
        self.gammas.iter().map(|&g| self.kind.offset(self.t, g)).collect()
    }
}

/// Runs N steps of the f- or g-recurrence over the first N tabulated zeros.
pub fn riccati_iterate(kind: RiccatiKind, n: usize, rect: &Rectangle, zeros: &ZeroTable) -> Result<RiccatiTrace> {
    let (alpha, beta, t) = rect.paper_params()?;
    if n > zeros.len() {
        return Err(Error::TableTooShort {
            max_height: zeros.max_height(),
            reason: format!("N = {n} exceeds the {} tabulated zeros", zeros.len()),
        });
    }
    let p = (alpha - 0.5) * (beta - 0.5);
    let gammas = zeros.gammas()[..n].to_vec();
    let mut iterates = Vec::with_capacity(n + 1);
    let mut h = Vec::with_capacity(n);
    let mut wraps = Vec::with_capacity(n);
    let mut step_residual = Vec::with_capacity(n);
    let mut denominator_min = f64::INFINITY;
    let mut x = 0.0f64;
    iterates.push(x);
    for (i, &g) in gammas.iter().enumerate() {
        let d = kind.offset(t, g);
        let a = d * d + p;
        let b = (alpha - beta) * d;
        let den = -b * x + a;
        let scale = a.abs() + (b * x).abs();
        if den.abs() <= DENOM_TOL * scale {
            return Err(Error::DenominatorVanished(i + 1));
        }
        denominator_min = denominator_min.min(den.abs() / scale);
        let next = (a * x + b) / den;
        let hk = h_value(alpha, beta, d);
        let r = next.atan() - x.atan() - hk.atan();
        let w = (r / PI).round();
        h.push(hk);
        wraps.push(w as i64);
        step_residual.push((r - w * PI).abs());
        iterates.push(next);
        x = next;
    }

    let sign = kind.claimed_sign();
    let mut monotone_from = None;
    for k in (1..iterates.len()).rev() {
        if sign * (iterates[k] - iterates[k - 1]) > 0.0 {
            monotone_from = Some(k);
        } else {
            break;
        }
    }
    let blowup_index = iterates.iter().position(|v| v.abs() > BLOWUP).map(|i| i + 1);
    let h_sign_violations = match kind {
        RiccatiKind::F => 0,
        RiccatiKind::G => h.iter().filter(|&&v| !(v < 0.0)).count(),
    };
    let last = *iterates.last().unwrap();
    Ok(RiccatiTrace {
        kind,
        alpha,
        beta,
        t,
        max_step_residual: step_residual.iter().copied().fold(0.0, f64::max),
        wrap_total: wraps.iter().sum(),
        claimed_limit_observed: monotone_from.is_some() && sign * last > BLOWUP,
        gammas,
        iterates,
        h,
        wraps,
        step_residual,
        monotone_from,
        blowup_index,
        denominator_min,
        h_sign_violations,
    })
}

/// (P, R) of the limiting characteristic equation λ² − Pλ − R = 0.
pub fn limit_model(c: f64) -> (f64, f64) {
    (2.0 * c, -c * c)
}

/// Roots of λ² − Pλ − R.
fn char_roots(p: f64, r: f64) -> [Complex64; 2] {
    let disc = Complex64::new(p * p + 4.0 * r, 0.0).sqrt();
    [(p + disc) / 2.0, (p - disc) / 2.0]
}

/// P(n), R(n) of the second-order linear recurrence obtained through
/// y = H f, H(n) = C/d_n², and z(n+1)/z(n) = C(n)y(n) + D(n), for n = 1..len−1.
pub fn linearization_coefficients(alpha: f64, beta: f64, offsets: &[f64], c: f64) -> (Vec<f64>, Vec<f64>) {
    let p0 = (alpha - 0.5) * (beta - 0.5);
    let a = |d: f64| d * d + p0;
    let b = |d: f64| (alpha - beta) * d;
    let hh = |d: f64| c / (d * d);
    offsets
        .windows(2)
        .map(|w| {
            let (d0, d1) = (w[0], w[1]);
            let cap_a = a(d0) * hh(d1);
            let cap_b = b(d0) * hh(d0) * hh(d1);
            let (c0, c1) = (-b(d0), -b(d1));
            let ratio = c1 / c0;
            let p = a(d1) * hh(d1) + cap_a * ratio;
            let r = (cap_b * c0 - cap_a * a(d0) * hh(d0)) * ratio;
            (p, r)
        })
        .unzip()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearizationReport {
    pub c: f64,
    pub p_seq: Vec<f64>,
    pub r_seq: Vec<f64>,
    /// |P(n) − 2C|, |R(n) + C²|.
    pub p_dev: Vec<f64>,
    pub r_dev: Vec<f64>,
    pub p_limit: f64,
    pub r_limit: f64,
    /// Roots of λ² − P_limit λ − R_limit.
    pub char_roots: [Complex64; 2],
    pub char_discriminant: f64,
    /// Roots for the last observed (P, R).
    pub observed_roots: [Complex64; 2],
    /// |x(n)| / |d_n| along the trace.
    pub perron_ratio: Vec<f64>,
    /// First n (1-based) with γ_n > 2T; decay is only examined from here on.
    pub onset: Option<usize>,
    /// Maxima of p_dev / r_dev over consecutive dyadic index blocks
    /// [m, 2m), [2m, 4m), … starting at the onset.
    pub envelope_p: Vec<f64>,
    pub envelope_r: Vec<f64>,
    /// Both envelopes have at least two blocks and strictly decrease.
    pub envelope_decreasing: bool,
}

fn dyadic_envelope(dev: &[f64], start: usize) -> Vec<f64> {
    let mut out = Vec::new();
    let (mut lo, mut hi) = (start, 2 * start);
    while hi <= dev.len() {
        out.push(dev[lo..hi].iter().copied().fold(0.0, f64::max));
        lo = hi;
        hi *= 2;
    }
    out
}

fn strictly_decreasing(v: &[f64]) -> bool {
    v.len() >= 2 && v.windows(2).all(|w| w[1] < w[0])
}

pub fn linearize_riccati(trace: &RiccatiTrace, c: f64) -> Result<LinearizationReport> {
    if !(c > 1.0) {
        return Err(Error::Domain(format!("linearization needs C > 1, got {c}")));
    }
    if trace.len() < 2 {
        return Err(Error::Domain("linearization needs at least two steps".into()));
    }
    let offsets = trace.offsets();
    let (p_seq, r_seq) = linearization_coefficients(trace.alpha, trace.beta, &offsets, c);
    let (p_limit, r_limit) = limit_model(c);
    let p_dev: Vec<f64> = p_seq.iter().map(|p| (p - p_limit).abs()).collect();
    let r_dev: Vec<f64> = r_seq.iter().map(|r| (r - r_limit).abs()).collect();
    let onset = trace.gammas.iter().position(|&g| g > 2.0 * trace.t);
    let (envelope_p, envelope_r) = match onset {
        // the 0-based slot of P(n) is n−1; start blocks at index ≥ 1
        Some(i) => (dyadic_envelope(&p_dev, i.max(1)), dyadic_envelope(&r_dev, i.max(1))),
        None => (Vec::new(), Vec::new()),
    };
    let perron_ratio = offsets
        .iter()
        .zip(&trace.iterates)
        .map(|(d, x)| x.abs() / d.abs())
        .collect();
    Ok(LinearizationReport {
        c,
        envelope_decreasing: strictly_decreasing(&envelope_p) && strictly_decreasing(&envelope_r),
        observed_roots: char_roots(*p_seq.last().unwrap(), *r_seq.last().unwrap()),
        char_roots: char_roots(p_limit, r_limit),
        char_discriminant: p_limit * p_limit + 4.0 * r_limit,
        p_seq,
        r_seq,
        p_dev,
        r_dev,
        p_limit,
        r_limit,
        perron_ratio,
        onset: onset.map(|i| i + 1),
        envelope_p,
        envelope_r,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum FixedPointVerdict {
    /// x = (ax+b)/(−bx+a) reduces to b(x² + 1) = 0, i.e. x² = −1.
    NoRealFixedPoint { discriminant: f64 },
    /// b = 0: the map is the identity and every x is fixed.
    Degenerate,
}

/// The fixed-point equation does not involve `a` once cleared of denominators.
pub fn fixed_point_check(_a: f64, b: f64) -> FixedPointVerdict {
    if b == 0.0 {
        return FixedPointVerdict::Degenerate;
    }
    // x² + 0·x + 1 = 0
    FixedPointVerdict::NoRealFixedPoint { discriminant: -4.0 }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FixedPointScan {
    pub samples: usize,
    pub min_residual: f64,
    pub max_residual: f64,
    pub sign_changes: usize,
}

/// Samples (ax+b) − x(−bx+a) = b(1+x²) on a uniform grid of [lo, hi].
pub fn fixed_point_scan(a: f64, b: f64, lo: f64, hi: f64, samples: usize) -> FixedPointScan {
    let n = samples.max(2);
    let mut min_residual = f64::INFINITY;
    let mut max_residual = f64::NEG_INFINITY;
    let mut sign_changes = 0;
    let mut prev: Option<f64> = None;
    for i in 0..n {
        let x = lo + (hi - lo) * i as f64 / (n - 1) as f64;
        let r = (a * x + b) - x * (-b * x + a);
        min_residual = min_residual.min(r);
        max_residual = max_residual.max(r);
        if let Some(q) = prev {
            if q * r < 0.0 || r == 0.0 {
                sign_changes += 1;
            }
        }
        prev = Some(r);
    }
    FixedPointScan {
        samples: n,
        min_residual,
        max_residual,
        sign_changes,
    }
}
