//! Shifts τ for which ζ'/ζ(s + iτ) stays close to a constant U + iV on a
//! horizontal segment K of the right half of the critical strip.
//!
//! The supremum is taken over a finite uniform grid on K, so every reported
//! distance is a lower bound for the true supremum.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special_functions::{log_deriv_zeta_line, PrecisionConfig};
use crate::zero_finder::ZeroTable;

pub const DEFAULT_SAMPLES: usize = 33;
/// Largest |τ| a scan accepts.
pub const MAX_TAU: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SegmentK {
    pub sigma_lo: f64,
    pub sigma_hi: f64,
    pub t_offset: f64,
    pub samples: usize,
}

impl SegmentK {
    pub fn new(sigma_lo: f64, sigma_hi: f64, t_offset: f64, samples: usize) -> Result<Self> {
        if !(0.5 < sigma_lo && sigma_lo < sigma_hi && sigma_hi < 1.0) {
            return Err(Error::Domain(format!(
                "K must satisfy 1/2 < sigma_lo < sigma_hi < 1, got [{sigma_lo}, {sigma_hi}]"
            )));
        }
        if samples < 2 || !t_offset.is_finite() {
            return Err(Error::Domain("K needs at least two samples and a finite offset".into()));
        }
        Ok(Self {
            sigma_lo,
            sigma_hi,
            t_offset,
            samples,
        })
    }

    /// Uniform grid including both endpoints.
    pub fn sigmas(&self) -> Vec<f64> {
        let n = self.samples - 1;
        (0..=n)
            .map(|j| self.sigma_lo + (self.sigma_hi - self.sigma_lo) * j as f64 / n as f64)
            .collect()
    }

    /// The same segment with twice the grid resolution (old points kept).
    pub fn refined(&self) -> Self {
        Self {
            samples: 2 * self.samples - 1,
            ..*self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeResult {
    pub tau: f64,
    pub sup_distance: f64,
    pub samples_used: usize,
    /// σ at which the supremum is attained.
    pub argmax_sigma: f64,
    /// Largest evaluation error over the grid.
    pub eval_error: f64,
}

/// max over the grid on K of |ζ'/ζ(σ + i(t_offset + τ)) − (U + iV)|.
pub fn sup_distance(
    tau: f64,
    k: &SegmentK,
    u: f64,
    v: f64,
    zeros: &ZeroTable,
    cfg: &PrecisionConfig,
) -> Result<ProbeResult> {
    let target = Complex64::new(u, v);
    let sigmas = k.sigmas();
    let values = log_deriv_zeta_line(&sigmas, k.t_offset + tau, cfg, zeros);
    let mut best = (f64::NEG_INFINITY, sigmas[0]);
    let mut eval_error = 0.0f64;
    for (&sigma, value) in sigmas.iter().zip(values) {
        let value = value?;
        let d = (value.value - target).norm();
        if d > best.0 {
            best = (d, sigma);
        }
        eval_error = eval_error.max(value.abs_err);
    }
    Ok(ProbeResult {
        tau,
        sup_distance: best.0,
        samples_used: sigmas.len(),
        argmax_sigma: best.1,
        eval_error,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanEntry {
    pub tau: f64,
    /// None when the shift was skipped.
    pub sup_distance: Option<f64>,
    pub skipped: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub tau_lo: f64,
    pub tau_hi: f64,
    pub step: f64,
    pub k: SegmentK,
    pub u: f64,
    pub v: f64,
    pub eps: f64,
    /// Every shift in grid order.
    pub entries: Vec<ScanEntry>,
    /// Evaluated shifts sorted by sup_distance (ties by τ).
    pub results: Vec<ProbeResult>,
    /// Shifts dropped because K came within the exclusion radius of a singularity.
    pub skipped: usize,
    /// Fraction of evaluated shifts with sup_distance < eps.
    pub good_fraction: f64,
}

impl ScanSummary {
    pub fn best(&self) -> Option<&ProbeResult> {
        self.results.first()
    }
}

/// Grid τ_i = tau_lo + i·step up to tau_hi.
pub fn tau_grid(tau_lo: f64, tau_hi: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !(tau_lo <= tau_hi) || !(tau_lo.abs() <= MAX_TAU && tau_hi.abs() <= MAX_TAU) {
        return Err(Error::Domain(format!(
            "bad scan range {tau_lo}:{tau_hi}:{step} (need step > 0, lo <= hi, |tau| <= {MAX_TAU})"
        )));
    }
    let n = ((tau_hi - tau_lo) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| tau_lo + i as f64 * step).collect())
}

#[allow(clippy::too_many_arguments)]
pub fn scan(
    tau_lo: f64,
    tau_hi: f64,
    step: f64,
    k: &SegmentK,
    u: f64,
    v: f64,
    eps: f64,
    zeros: &ZeroTable,
    cfg: &PrecisionConfig,
) -> Result<ScanSummary> {
    if eps.is_nan() {
        return Err(Error::Domain("eps must not be NaN".into()));
    }
    let taus = tau_grid(tau_lo, tau_hi, step)?;
    let outcomes: Vec<Option<ProbeResult>> = taus
        .par_iter()
        .map(|&tau| match sup_distance(tau, k, u, v, zeros, cfg) {
            Ok(r) => Ok(Some(r)),
            Err(Error::NearSingularity { .. }) | Err(Error::PoleAtOne(_)) => Ok(None),
            Err(e) => Err(e),
        })
        .collect::<Result<_>>()?;
    let entries = taus
        .iter()
        .zip(&outcomes)
        .map(|(&tau, o)| ScanEntry {
            tau,
            sup_distance: o.map(|r| r.sup_distance),
            skipped: o.is_none(),
        })
        .collect();
    let mut results: Vec<ProbeResult> = outcomes.into_iter().flatten().collect();
    let skipped = taus.len() - results.len();
    let good = results.iter().filter(|r| r.sup_distance < eps).count();
    let good_fraction = if results.is_empty() {
        0.0
    } else {
        good as f64 / results.len() as f64
    };
    results.sort_by(|a, b| a.sup_distance.total_cmp(&b.sup_distance).then(a.tau.total_cmp(&b.tau)));
    Ok(ScanSummary {
        tau_lo,
        tau_hi,
        step,
        k: *k,
        u,
        v,
        eps,
        entries,
        results,
        skipped,
        good_fraction,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GoodInterval {
    pub lo: f64,
    pub hi: f64,
    pub width: f64,
}

/// Walks outwards from `tau_star` in steps of `delta` while the sup distance
/// stays below `eps`, and reports the interval found (at most `max_steps`
/// each way).
#[allow(clippy::too_many_arguments)]
pub fn good_interval(
    tau_star: f64,
    k: &SegmentK,
    u: f64,
    v: f64,
    eps: f64,
    delta: f64,
    max_steps: usize,
    zeros: &ZeroTable,
    cfg: &PrecisionConfig,
) -> Result<Option<GoodInterval>> {
    let ok = |tau: f64| -> Result<bool> { Ok(sup_distance(tau, k, u, v, zeros, cfg)?.sup_distance < eps) };
    if !ok(tau_star)? {
        return Ok(None);
    }
    let walk = |dir: f64| -> Result<f64> {
        let mut last = tau_star;
        for i in 1..=max_steps {
            let tau = tau_star + dir * delta * i as f64;
            if !ok(tau)? {
                break;
            }
            last = tau;
        }
        Ok(last)
    };
    let (lo, hi) = (walk(-1.0)?, walk(1.0)?);
    Ok(Some(GoodInterval {
        lo,
        hi,
        width: hi - lo,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segment_grid() {
        let k = SegmentK::new(0.6, 0.8, 0.0, 33).unwrap();
        let s = k.sigmas();
        assert_eq!(s.len(), 33);
        assert_eq!((s[0], s[32]), (0.6, 0.8));
        assert!(SegmentK::new(0.5, 0.8, 0.0, 33).is_err());
        let r = k.refined().sigmas();
        assert!(s.iter().all(|x| r.iter().any(|y| (x - y).abs() < 1e-15)));
    }

    #[test]
    fn grid_counts() {
        assert_eq!(tau_grid(0.0, 500.0, 0.01).unwrap().len(), 50_001);
        assert_eq!(tau_grid(1.0, 1.0, 0.5).unwrap(), vec![1.0]);
        assert!(tau_grid(0.0, 1.0, 0.0).is_err());
    }
}
