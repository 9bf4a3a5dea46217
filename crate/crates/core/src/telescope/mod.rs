//! Arctan addition with explicit π bookkeeping, telescoping of arctan sums,
//! the paired zero sum S_N, and the Riccati recurrences that would telescope it.

mod riccati;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::contour::Rectangle;
use crate::error::{Error, Result};
use crate::zero_finder::ZeroTable;

pub use riccati::{
    fixed_point_check, fixed_point_scan, limit_model, linearization_coefficients, linearize_riccati,
    riccati_iterate,
    FixedPointScan, FixedPointVerdict, LinearizationReport, RiccatiKind, RiccatiTrace,
};

/// Tolerance on |xy − 1| and |1 + f(k+1)f(k)| below which a step is refused.
pub const DEGENERACY_TOL: f64 = 1e-12;

/// A sum of arctangents together with the net number of π shifts needed to
/// express it through a single arctangent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArctanSum {
    pub value: f64,
    pub wrap_count: i64,
}

/// arctan x + arctan y = arctan((x+y)/(1−xy)) + π·sgn(x)·[xy > 1].
pub fn arctan_add(x: f64, y: f64) -> Result<ArctanSum> {
    let p = x * y;
    if (p - 1.0).abs() < DEGENERACY_TOL {
        return Err(Error::DegenerateProduct { product: p });
    }
    let base = ((x + y) / (1.0 - p)).atan();
    let wrap = if p > 1.0 { x.signum() as i64 } else { 0 };
    Ok(ArctanSum {
        value: base + wrap as f64 * PI,
        wrap_count: wrap,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Telescoped {
    pub sum: ArctanSum,
    /// Steps k (1-based) at which f(k+1)f(k) < −1 forced a π correction.
    pub wraps: Vec<usize>,
}

/// Σ_{k=1}^{n} arctan h(k) with h(k) = (f(k+1) − f(k))/(1 + f(k+1)f(k)),
/// evaluated as arctan f(n+1) − arctan f(1) + π Σ c_k.
pub fn telescope_sum<F: Fn(usize) -> f64>(f: F, n: usize) -> Result<Telescoped> {
    let mut wrap_count = 0i64;
    let mut wraps = Vec::new();
    let mut prev = f(1);
    let first = prev;
    for k in 1..=n {
        let next = f(k + 1);
        let q = 1.0 + next * prev;
        if q.abs() < DEGENERACY_TOL {
            return Err(Error::DegenerateStep(k));
        }
        if q < 0.0 {
            // arctan f(k+1) − arctan f(k) is off by −π·sgn f(k+1) from arctan h(k)
            wrap_count -= next.signum() as i64;
            wraps.push(k);
        }
        prev = next;
    }
    Ok(Telescoped {
        sum: ArctanSum {
            value: prev.atan() - first.atan() + wrap_count as f64 * PI,
            wrap_count,
        },
        wraps,
    })
}

/// The summand the telescoping identity produces from `f`.
pub fn telescoped_term<F: Fn(usize) -> f64>(f: &F, k: usize) -> f64 {
    let (a, b) = (f(k), f(k + 1));
    (b - a) / (1.0 + a * b)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SnDirect {
    pub value: f64,
    pub n: usize,
    /// Nearest integer to S_N/π.
    pub nearest_multiple: i64,
    /// |S_N − π·nearest_multiple|.
    pub pi_residual: f64,
}

/// S_N as the plain sum of four arctangents per zero:
/// Σ arctan((T∓γ)/(β−½)) − arctan((T∓γ)/(α−½)).
pub fn s_n_direct(rect: &Rectangle, zeros: &ZeroTable, n: usize) -> Result<SnDirect> {
    let (alpha, beta, t) = rect.paper_params()?;
    if n > zeros.len() {
        return Err(Error::TableTooShort {
            max_height: zeros.max_height(),
            reason: format!("N = {n} exceeds the {} tabulated zeros", zeros.len()),
        });
    }
    let (ua, ub) = (alpha - 0.5, beta - 0.5);
    let value: f64 = zeros.gammas()[..n]
        .iter()
        .map(|&g| {
            let (m, p) = (t - g, t + g);
            (m / ub).atan() + (p / ub).atan() - (m / ua).atan() - (p / ua).atan()
        })
        .sum();
    let q = (value / PI).round();
    Ok(SnDirect {
        value,
        n,
        nearest_multiple: q as i64,
        pi_residual: (value - q * PI).abs(),
    })
}

/// h₁(k), h₂(k) for the k-th zero (1-based).
pub fn h_functions(k: usize, rect: &Rectangle, zeros: &ZeroTable) -> Result<(f64, f64)> {
    let (alpha, beta, t) = rect.paper_params()?;
    if k == 0 || k > zeros.len() {
        return Err(Error::Domain(format!(
            "zero index {k} outside 1..={}",
            zeros.len()
        )));
    }
    let g = zeros.gammas()[k - 1];
    Ok((h_value(alpha, beta, t - g), h_value(alpha, beta, t + g)))
}

/// (α−β)d / ((α−½)(β−½) + d²).
pub(crate) fn h_value(alpha: f64, beta: f64, d: f64) -> f64 {
    (alpha - beta) * d / ((alpha - 0.5) * (beta - 0.5) + d * d)
}
