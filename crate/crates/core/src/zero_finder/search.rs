//! Sign-change search for critical-line zeros, audited against the exact
//! zero count from the argument of ζ.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::hardy::{hardy_z, theta};
use super::table::ZeroTable;
use crate::error::{Error, Result};
use crate::special_functions::{principal_log_arg, zeta, PrecisionConfig};

/// Accuracy claimed for every ordinate produced by [`find_zeros_up_to`].
pub const ZERO_ACCURACY: f64 = 1e-9;
/// Grid step of the sign-change scan.
pub const SCAN_STEP: f64 = 0.05;

const BLOCK: f64 = 50.0;
const MAX_HALVINGS: u32 = 4;
const MIN_ARG_STEP: f64 = 1e-7;
/// Z only has to be resolved to about ZERO_ACCURACY·|Z'| near a zero, so the
/// scan tolerates a looser absolute error than a single scalar evaluation.
const SCAN_TOL_FLOOR: f64 = 1e-9;

/// Continuous arg ζ(½ + it) reached from 2 + it along the horizontal segment.
pub fn arg_zeta_critical(t: f64, cfg: &PrecisionConfig) -> Result<f64> {
    let at = |sigma: f64| zeta(Complex64::new(sigma, t), cfg).map(|v| v.value);
    let mut sigma = 2.0;
    let mut prev = at(sigma)?;
    let (_, mut arg) = principal_log_arg(prev)?;
    let mut step = 0.05;
    while sigma > 0.5 {
        let next_sigma = (sigma - step).max(0.5);
        let next = at(next_sigma)?;
        let (_, d) = principal_log_arg(next / prev)?;
        if d.abs() > PI / 4.0 && step > MIN_ARG_STEP {
            step *= 0.5;
            continue;
        }
        arg += d;
        sigma = next_sigma;
        prev = next;
        step = (step * 1.5).min(0.05);
    }
    Ok(arg)
}

/// Estimate of the zero nearest to `t` by one Newton step on Z.
fn newton_offset(t: f64, cfg: &PrecisionConfig) -> Result<f64> {
    let h = 1e-5;
    let z = hardy_z(t, cfg)?;
    let d = (hardy_z(t + h, cfg)? - hardy_z((t - h).max(0.0), cfg)?) / (2.0 * h);
    Ok(if d == 0.0 { f64::INFINITY } else { z / d })
}

/// N(T), the number of zeros with 0 < γ < T, from θ(T)/π + 1 + arg ζ(½+iT)/π.
pub fn count_zeros(t: f64, cfg: &PrecisionConfig) -> Result<usize> {
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("count_zeros needs T >= 0, got {t}")));
    }
    if t < 14.0 {
        // the argument formula needs T away from the trivial region; no zero lies below 14.13
        return Ok(0);
    }
    let delta = newton_offset(t, cfg)?;
    if delta.abs() <= 10.0 * ZERO_ACCURACY {
        return Err(Error::AmbiguousHeight {
            height: t,
            gamma: t - delta,
        });
    }
    let th = theta(t, cfg)?.re();
    let arg = match arg_zeta_critical(t, cfg) {
        Ok(a) => a,
        Err(Error::ZeroArgument) => {
            return Err(Error::AmbiguousHeight {
                height: t,
                gamma: t,
            })
        }
        Err(e) => return Err(e),
    };
    let n = th / PI + 1.0 + arg / PI;
    Ok(n.round().max(0.0) as usize)
}

/// Zeros in [lo, hi) from sign changes of Z on a uniform grid of step `h`.
fn scan_block(lo: f64, hi: f64, h: f64, cfg: &PrecisionConfig) -> Result<Vec<f64>> {
    let n = ((hi - lo) / h).ceil().max(1.0) as usize;
    let grid: Vec<f64> = (0..=n).map(|i| (lo + i as f64 * h).min(hi)).collect();
    let values = grid
        .iter()
        .map(|&t| hardy_z(t, cfg))
        .collect::<Result<Vec<f64>>>()?;
    let mut zeros = Vec::new();
    for i in 0..n {
        let (a, b) = (grid[i], grid[i + 1]);
        let (za, zb) = (values[i], values[i + 1]);
        if za == 0.0 {
            zeros.push(a);
        } else if za * zb < 0.0 {
            zeros.push(refine(a, b, za, zb, cfg)?);
        }
    }
    Ok(zeros)
}

/// Illinois-modified regula falsi on a sign-change bracket.
fn refine(mut a: f64, mut b: f64, mut za: f64, mut zb: f64, cfg: &PrecisionConfig) -> Result<f64> {
    let mut side = 0i8;
    for _ in 0..200 {
        if b - a <= 0.1 * ZERO_ACCURACY {
            break;
        }
        let mut c = (a * zb - b * za) / (zb - za);
        if !(c > a && c < b) {
            c = 0.5 * (a + b);
        }
        let zc = hardy_z(c, cfg)?;
        if zc == 0.0 {
            return Ok(c);
        }
        if zc * zb < 0.0 {
            a = b;
            za = zb;
            b = c;
            zb = zc;
            if side == -1 {
                za *= 0.5;
            }
            side = -1;
        } else {
            b = c;
            zb = zc;
            if side == 1 {
                za *= 0.5;
            }
            side = 1;
        }
        if a > b {
            std::mem::swap(&mut a, &mut b);
            std::mem::swap(&mut za, &mut zb);
        }
    }
    Ok(0.5 * (a + b))
}

/// Cumulative-count audit point near `b`, moved off any zero sitting on it.
fn audit(b: f64, cfg: &PrecisionConfig) -> Result<(f64, usize)> {
    match count_zeros(b, cfg) {
        Ok(n) => Ok((b, n)),
        Err(Error::AmbiguousHeight { gamma, .. }) => {
            let a = gamma.min(b) - 0.01;
            Ok((a, count_zeros(a, cfg)?))
        }
        Err(e) => Err(e),
    }
}

/// All critical-line zeros with 0 < γ ≤ T, to [`ZERO_ACCURACY`].
pub fn find_zeros_up_to(t: f64, cfg: &PrecisionConfig) -> Result<ZeroTable> {
    if !(t >= 10.0) || !t.is_finite() {
        return Err(Error::Domain(format!("find_zeros_up_to needs T >= 10, got {t}")));
    }
    let scan_cfg = PrecisionConfig {
        target_abs_tol: cfg.target_abs_tol.max(SCAN_TOL_FLOOR),
        ..cfg.clone()
    };
    let cfg = &scan_cfg;
    let n_blocks = (t / BLOCK).ceil() as usize;
    let bounds: Vec<(f64, f64)> = (0..n_blocks)
        .map(|j| (j as f64 * BLOCK, ((j + 1) as f64 * BLOCK).min(t)))
        .collect();
    let mut blocks: Vec<Vec<f64>> = bounds
        .par_iter()
        .map(|&(lo, hi)| scan_block(lo, hi, SCAN_STEP, cfg))
        .collect::<Result<_>>()?;

    let mut found: Vec<f64> = Vec::new();
    for (j, &(lo, hi)) in bounds.iter().enumerate() {
        let mut step = SCAN_STEP;
        let mut halvings = 0;
        loop {
            let mut candidate: Vec<f64> = found.clone();
            candidate.extend(blocks[j].iter().copied());
            // the last grid point of a block is also the first of the next
            candidate.dedup_by(|x, y| (*x - *y).abs() < ZERO_ACCURACY);
            let (at, audited) = audit(hi, cfg)?;
            let have = candidate.partition_point(|&g| g < at);
            if have == audited {
                found = candidate;
                break;
            }
            if halvings == MAX_HALVINGS {
                return Err(Error::MissedZeroSuspected {
                    height: at,
                    sign_changes: have,
                    audited: audited as i64,
                });
            }
            halvings += 1;
            step *= 0.5;
            blocks[j] = scan_block(lo, hi, step, cfg)?;
        }
    }
    found.retain(|&g| g <= t);
    ZeroTable::new(found, ZERO_ACCURACY, t)
}
