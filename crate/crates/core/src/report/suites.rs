//! The verification suites. Each returns a flat list of checks; module errors
//! are recorded as failed checks rather than aborting the suite.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::{Check, RunConfig, VerificationReport, VERSION};
use crate::contour::{
    decompose, digamma_term_integral, integrate_rectangle, paper_total, pole_term_integral,
    pole_term_paper_form, zero_sum_quadrature, Rectangle,
};
use crate::error::{Error, Result};
use crate::special_functions::{chi, xi, zeta, zeta_prime, PrecisionConfig};
use crate::telescope::{
    fixed_point_check, fixed_point_scan, limit_model, linearize_riccati, riccati_iterate,
    s_n_direct, telescope_sum, telescoped_term, FixedPointVerdict, RiccatiKind,
};
use crate::universality::{scan, SegmentK};
use crate::zero_finder::{count_zeros, find_zeros_up_to, mangoldt_estimate, ZeroTable};

pub const SUITES: [&str; 10] = [
    "zeta-values",
    "identities",
    "zeros",
    "argument-principle",
    "decomposition",
    "digamma-trend",
    "telescoping",
    "cross-module",
    "riccati",
    "paper-claims",
];

pub fn run_suite(name: &str, cfg: &RunConfig) -> Result<VerificationReport> {
    cfg.precision.validate()?;
    let p = &cfg.precision;
    let checks = match name {
        "zeta-values" => zeta_values(p),
        "identities" => identities(p),
        "zeros" => zeros(p),
        "argument-principle" => argument_principle(p, &cfg.zero_table()?),
        "decomposition" => decomposition(cfg, &cfg.zero_table()?),
        "digamma-trend" => digamma_trend(cfg),
        "telescoping" => telescoping(),
        "cross-module" => cross_module(cfg, &cfg.zero_table()?),
        "riccati" => riccati(cfg, &cfg.zero_table()?),
        "paper-claims" => paper_claims(cfg, &cfg.zero_table()?),
        other => {
            return Err(Error::Domain(format!(
                "unknown suite {other:?}; available: {}",
                SUITES.join(", ")
            )))
        }
    };
    Ok(VerificationReport {
        suite: name.to_string(),
        version: VERSION.to_string(),
        config_hash: cfg.hash()?,
        checks,
    })
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Runs `f`, turning an error into a failed check named `name`.
fn guarded(out: &mut Vec<Check>, name: &str, f: impl FnOnce() -> Result<Vec<Check>>) {
    match f() {
        Ok(checks) => out.extend(checks),
        Err(e) => out.push(Check::failed(name, &e)),
    }
}

fn zeta_values(p: &PrecisionConfig) -> Vec<Check> {
    let mut out = Vec::new();
    let cases = [
        ("zeta(2) = pi^2/6", c(2.0, 0.0), PI * PI / 6.0),
        ("zeta(0) = -1/2", c(0.0, 0.0), -0.5),
        ("zeta(-1) = -1/12", c(-1.0, 0.0), -1.0 / 12.0),
        ("zeta(4) = pi^4/90", c(4.0, 0.0), PI.powi(4) / 90.0),
        ("zeta(-3) = 1/120", c(-3.0, 0.0), 1.0 / 120.0),
    ];
    for (name, s, exact) in cases {
        guarded(&mut out, name, || Ok(vec![Check::at_most(name, (zeta(s, p)?.value - exact).norm(), 1e-12)]));
    }
    guarded(&mut out, "zeta'(0) = -log(2 pi)/2", || {
        let v = zeta_prime(c(0.0, 0.0), p)?.value;
        Ok(vec![Check::at_most("zeta'(0) = -log(2 pi)/2", (v + 0.5 * (2.0 * PI).ln()).norm(), 1e-12)])
    });
    let rejected = matches!(zeta(c(1.0, 0.0), p), Err(Error::PoleAtOne(_)));
    out.push(Check::verdict("pole at s = 1 is rejected", rejected as u8 as f64, None, rejected, ""));
    out
}

/// 100 reproducible points with −1 ≤ σ ≤ 2, |t| ≤ 30, away from s = 0 and s = 1.
pub(crate) fn identity_points() -> Vec<Complex64> {
    let mut rng = StdRng::seed_from_u64(2);
    let mut pts = Vec::new();
    while pts.len() < 100 {
        let s = c(rng.gen_range(-1.0..2.0), rng.gen_range(-30.0..30.0));
        if (s - 1.0).norm() > 0.05 && s.norm() > 0.05 {
            pts.push(s);
        }
    }
    pts
}

fn identities(p: &PrecisionConfig) -> Vec<Check> {
    let mut out = Vec::new();
    guarded(&mut out, "functional equation", || {
        let (mut fe, mut xs, mut conj) = (0.0f64, 0.0f64, 0.0f64);
        for s in identity_points() {
            let lhs = zeta(s, p)?.value;
            fe = fe.max((lhs - chi(s, p)?.value * zeta(1.0 - s, p)?.value).norm());
            xs = xs.max((xi(s, p)?.value - xi(1.0 - s, p)?.value).norm());
            conj = conj.max((zeta(s.conj(), p)?.value - lhs.conj()).norm());
        }
        Ok(vec![
            Check::at_most("zeta(s) = chi(s) zeta(1-s), max residual", fe, 1e-10),
            Check::at_most("xi(s) = xi(1-s), max residual", xs, 1e-10),
            Check::at_most("zeta(conj s) = conj zeta(s), max residual", conj, 1e-12),
        ])
    });
    out
}

const FIRST_ZEROS: [f64; 3] = [14.134725, 21.022040, 25.010858];

fn zeros(p: &PrecisionConfig) -> Vec<Check> {
    let mut out = Vec::new();
    guarded(&mut out, "first zeros", || {
        let t = find_zeros_up_to(30.0, p)?;
        let g = t.gammas();
        let mut v = vec![Check::verdict("three zeros below 30", g.len() as f64, Some(3.0), g.len() == 3, "")];
        for (i, &want) in FIRST_ZEROS.iter().enumerate() {
            let got = g.get(i).copied().unwrap_or(f64::NAN);
            v.push(Check::at_most(&format!("gamma_{} vs {want}", i + 1), (got - want).abs(), 1e-6));
        }
        Ok(v)
    });
    guarded(&mut out, "N(100)", || {
        let n = count_zeros(100.0, p)?;
        Ok(vec![Check::verdict("N(100) = 29", n as f64, Some(29.0), n == 29, "")])
    });
    for t in [30.0, 50.0, 100.0, 200.0, 500.0] {
        let name = format!("|N({t}) - mangoldt({t})| <= 3");
        guarded(&mut out, &name, || {
            let n = count_zeros(t, p)?;
            Ok(vec![Check::at_most(&name, (n as f64 - mangoldt_estimate(t)).abs(), 3.0)])
        });
    }
    out
}

/// (label, box, expected winding) for the argument-principle suite.
pub(crate) fn winding_boxes() -> Vec<(&'static str, Rectangle, i64)> {
    vec![
        ("[0.9,1.1]x[-1,1]", Rectangle::general(0.9, 1.1, -1.0, 1.0).unwrap(), -1),
        ("[0.4,0.6]x[14,14.3]", Rectangle::general(0.4, 0.6, 14.0, 14.3).unwrap(), 1),
        ("D(0.6,0.8,30)", Rectangle::paper(0.6, 0.8, 30.0).unwrap(), 0),
        ("D(0.6,0.8,50)", Rectangle::paper(0.6, 0.8, 50.0).unwrap(), 0),
        // 2N(30) − 1: three zeros and their conjugates, minus the pole
        ("[-1,2]x[-30,30]", Rectangle::general(-1.0, 2.0, -30.0, 30.0).unwrap(), 5),
    ]
}

fn argument_principle(p: &PrecisionConfig, zeros: &ZeroTable) -> Vec<Check> {
    let mut out = Vec::new();
    for (label, rect, want) in winding_boxes() {
        guarded(&mut out, label, || {
            let r = integrate_rectangle(&rect, zeros, p)?;
            Ok(vec![
                Check::verdict(
                    &format!("winding {label} = {want}"),
                    r.winding as f64,
                    Some(want as f64),
                    r.winding == want && r.expected_winding == want,
                    &format!("census {}", r.expected_winding),
                ),
                Check::at_most(&format!("winding gap {label}"), r.gap, 1e-3),
            ])
        });
    }
    out
}

fn decomposition(cfg: &RunConfig, zeros: &ZeroTable) -> Vec<Check> {
    let d = &cfg.decompose;
    let mut out = Vec::new();
    for &t in &d.heights {
        let label = format!("D({},{},{t})", d.alpha, d.beta);
        guarded(&mut out, &label, || {
            let rect = Rectangle::paper(d.alpha, d.beta, t)?;
            let eps2 = d.eps2.unwrap_or(1.0 / (t * t));
            let r = decompose(&rect, zeros, eps2, &cfg.precision)?;
            let mut v = vec![Check::verdict(
                &format!("termwise vs direct {label}"),
                r.residual,
                Some(1e-4),
                r.residual <= 1e-4,
                &format!("N_used {}, tail bound {:e}, budget {:e}", r.n_used, r.tail_bound, r.budget),
            )];
            for tc in &r.term_checks {
                v.push(Check::at_most(&format!("{} closed form vs quadrature {label}", tc.name), tc.difference, 1e-8));
            }
            v.push(Check::measured(
                &format!("residual without tail estimate {label}"),
                r.residual_truncated_only,
                "",
            ));
            Ok(v)
        });
    }
    out
}

fn digamma_trend(cfg: &RunConfig) -> Vec<Check> {
    let d = &cfg.decompose;
    let mut out = Vec::new();
    guarded(&mut out, "digamma trend", || {
        let mut gaps = Vec::new();
        let mut v = Vec::new();
        for t in [10.0, 100.0, 1000.0] {
            let g = digamma_term_integral(&Rectangle::paper(d.alpha, d.beta, t)?, &cfg.precision)?;
            v.push(Check::measured(&format!("gap to (beta-alpha)(pi/2)i at T={t}"), g.gap, ""));
            v.push(Check::at_most(
                &format!("Stirling antiderivative within bound at T={t}"),
                (g.asymptotic_half_sum - g.half_sum).norm(),
                g.asymptotic_bound,
            ));
            gaps.push(g.gap);
        }
        let monotone = gaps.windows(2).all(|w| w[1] < w[0]);
        v.push(Check::verdict("gap decreases with T", monotone as u8 as f64, None, monotone, ""));
        v.push(Check::at_most("gap at T=1000", gaps[2], 1e-2));
        Ok(v)
    });
    out
}

/// A reproducible random sequence for the telescoping identity, avoiding
/// steps with 1 + f(k+1)f(k) near zero.
pub(crate) fn random_sequence(rng: &mut StdRng) -> Vec<f64> {
    let n = rng.gen_range(2..40);
    let mut f: Vec<f64> = vec![0.0];
    while f.len() < n + 2 {
        let x = if rng.gen_bool(0.2) { rng.gen_range(-50.0..50.0) } else { rng.gen_range(-3.0..3.0) };
        if (1.0 + x * f[f.len() - 1]).abs() > 1e-6 {
            f.push(x);
        }
    }
    f
}

fn telescoping() -> Vec<Check> {
    let mut out = Vec::new();
    guarded(&mut out, "telescoping", || {
        let f = |k: usize| k as f64;
        let direct: f64 = (1..=10).map(|k| (1.0 / (1.0 + (k + k * k) as f64)).atan()).sum();
        let tel = telescope_sum(f, 10)?;
        let closed = 11f64.atan() - PI / 4.0;
        let mut v = vec![
            Check::at_most("sum arctan 1/(1+k+k^2), k<=10, vs arctan 11 - pi/4", (direct - closed).abs(), 1e-12),
            Check::at_most("telescope_sum(f(k)=k, 10) vs arctan 11 - pi/4", (tel.sum.value - closed).abs(), 1e-12),
        ];
        let mut rng = StdRng::seed_from_u64(7);
        let mut worst = 0.0f64;
        let mut wraps = 0usize;
        for _ in 0..200 {
            let seq = random_sequence(&mut rng);
            let n = seq.len() - 2;
            let g = |k: usize| seq[k];
            let t = telescope_sum(g, n)?;
            let d: f64 = (1..=n).map(|k| telescoped_term(&g, k).atan()).sum();
            worst = worst.max((t.sum.value - d).abs());
            wraps += t.wraps.len();
        }
        v.push(Check::verdict(
            "200 random telescoping identities",
            worst,
            Some(1e-10),
            worst <= 1e-10,
            &format!("{wraps} wrapped steps"),
        ));
        let w = telescope_sum(|k| [0.0, 2.0, -2.0][k], 1)?;
        let rhs = (-2f64).atan() - 2f64.atan() + PI;
        v.push(Check::verdict(
            "wrap case f(1)=2, f(2)=-2",
            (w.sum.value - (4.0f64 / 3.0).atan()).abs().max((w.sum.value - rhs).abs()),
            Some(1e-12),
            (w.sum.value - (4.0f64 / 3.0).atan()).abs() <= 1e-12 && w.wraps == vec![1],
            "",
        ));
        Ok(v)
    });
    out
}

fn cross_module(cfg: &RunConfig, zeros: &ZeroTable) -> Vec<Check> {
    let tp = &cfg.telescope;
    let mut out = Vec::new();
    for n in [1usize, 5, 29] {
        let name = format!("2i S_N vs zero-sum quadrature, N={n}");
        guarded(&mut out, &name, || {
            let rect = Rectangle::paper(tp.alpha, tp.beta, tp.t)?;
            let s = s_n_direct(&rect, zeros, n)?;
            let q = zero_sum_quadrature(&rect, &zeros.gammas()[..n], &cfg.precision)?;
            Ok(vec![Check::at_most(&name, (Complex64::new(0.0, 2.0 * s.value) - q.value).norm(), 1e-9)])
        });
    }
    out
}

fn riccati(cfg: &RunConfig, zeros: &ZeroTable) -> Vec<Check> {
    let tp = &cfg.telescope;
    let mut out = Vec::new();
    for kind in [RiccatiKind::F, RiccatiKind::G] {
        let label = format!("{kind:?}").to_lowercase();
        guarded(&mut out, &format!("{label} trace"), || {
            let rect = Rectangle::paper(tp.alpha, tp.beta, tp.t)?;
            let tr = riccati_iterate(kind, zeros.len(), &rect, zeros)?;
            let lin = linearize_riccati(&tr, tp.c)?;
            let mut v = vec![
                Check::verdict(
                    &format!("{label}: step identity over {} steps", tr.len()),
                    tr.max_step_residual,
                    Some(1e-10),
                    tr.max_step_residual <= 1e-10,
                    "",
                ),
                Check::verdict(
                    &format!("{label}: |P(n)-2C| and |R(n)+C^2| envelopes decrease"),
                    lin.envelope_p.last().copied().unwrap_or(f64::NAN),
                    None,
                    lin.envelope_decreasing,
                    &format!("dyadic blocks from n = {:?}; P envelope {:?}", lin.onset, lin.envelope_p),
                ),
                Check::measured(
                    &format!("{label}: largest observed root at n = {}", tr.len()),
                    lin.observed_roots[0].re,
                    &format!("roots {:?}", lin.observed_roots),
                ),
                Check::measured(
                    &format!("{label}: final iterate"),
                    *tr.iterates.last().unwrap(),
                    &format!(
                        "monotone from {:?}, blowup {:?}, claimed limit observed: {}",
                        tr.monotone_from, tr.blowup_index, tr.claimed_limit_observed
                    ),
                ),
            ];
            if kind == RiccatiKind::G {
                v.push(Check::verdict(
                    "g: h2 < 0 at every step",
                    tr.h_sign_violations as f64,
                    Some(0.0),
                    tr.h_sign_violations == 0,
                    "",
                ));
            }
            Ok(v)
        });
    }
    let (p, r) = limit_model(tp.c);
    let disc = p * p + 4.0 * r;
    let root_err = (0.5 * (p + disc.max(0.0).sqrt()) - tp.c)
        .abs()
        .max((0.5 * (p - disc.max(0.0).sqrt()) - tp.c).abs());
    out.push(Check::verdict(
        "limit characteristic equation has the double root C",
        root_err,
        Some(1e-9),
        root_err <= 1e-9 && disc.abs() <= 1e-9,
        &format!("discriminant {disc:e}"),
    ));
    let verdict = fixed_point_check(5.0, 1.0);
    let scan = fixed_point_scan(5.0, 1.0, -1e6, 1e6, 200_001);
    let ok = matches!(verdict, FixedPointVerdict::NoRealFixedPoint { .. })
        && scan.sign_changes == 0
        && scan.min_residual > 0.0;
    out.push(Check::verdict(
        "no real fixed point for a=5, b=1",
        scan.min_residual,
        None,
        ok,
        &format!("{verdict:?}; {} samples on [-1e6, 1e6]", scan.samples),
    ));
    out.push(Check::verdict(
        "b=0 is degenerate",
        0.0,
        None,
        fixed_point_check(5.0, 0.0) == FixedPointVerdict::Degenerate,
        "",
    ));
    out
}

fn paper_claims(cfg: &RunConfig, zeros: &ZeroTable) -> Vec<Check> {
    let (tp, p) = (&cfg.telescope, &cfg.precision);
    let mut out = Vec::new();
    guarded(&mut out, "S_N pi-residual", || {
        let rect = Rectangle::paper(tp.alpha, tp.beta, tp.t)?;
        let s = s_n_direct(&rect, zeros, tp.n)?;
        let mut v = vec![Check::measured(
            &format!("S_N distance to nearest multiple of pi, N={}, T={}", tp.n, tp.t),
            s.pi_residual,
            &format!("S_N = {}, nearest multiple {}", s.value, s.nearest_multiple),
        )];
        let d = decompose(&rect, zeros, 1.0 / (tp.t * tp.t), p)?;
        let s = s_n_direct(&rect, zeros, d.n_used)?;
        v.push(Check::measured(
            &format!("S_N distance to nearest multiple of pi, N={}, T={}", d.n_used, tp.t),
            s.pi_residual,
            &format!("S_N = {}, nearest multiple {}", s.value, s.nearest_multiple),
        ));
        Ok(v)
    });
    guarded(&mut out, "claimed total vs winding", || {
        let rect = Rectangle::paper(tp.alpha, tp.beta, 30.0)?;
        let claimed = paper_total(&rect, -PI, 0)?;
        let r = integrate_rectangle(&rect, zeros, p)?;
        let pole = pole_term_integral(&rect)?.combined;
        let pole_paper = pole_term_paper_form(&rect)?;
        Ok(vec![
            Check::measured(
                "claimed total (V=-pi, Q=0) minus measured winding, D(0.6,0.8,30)",
                claimed - r.winding_raw.re,
                &format!("claimed total {claimed}, winding {} (raw {})", r.winding, r.winding_raw.re),
            ),
            Check::measured(
                "alternative pole-term combination minus exact DA+BC integral, T=30",
                (pole_paper - pole).norm(),
                "",
            ),
        ])
    });
    guarded(&mut out, "universality scan", || {
        let pr = &cfg.probe;
        let k = SegmentK::new(pr.sigma_lo, pr.sigma_hi, 0.0, pr.samples)?;
        let s = scan(pr.tau_lo, pr.tau_hi, pr.step, &k, pr.u, pr.v, pr.eps, zeros, p)?;
        let best = s.best().copied();
        Ok(vec![Check::measured(
            &format!(
                "minimum sup distance to {}{:+}i over tau in [{}, {}]",
                pr.u, pr.v, pr.tau_lo, pr.tau_hi
            ),
            best.map_or(f64::NAN, |b| b.sup_distance),
            &format!(
                "at tau = {:?}; good fraction {} (eps {}); {} shifts, {} skipped",
                best.map(|b| b.tau),
                s.good_fraction,
                pr.eps,
                s.entries.len(),
                s.skipped
            ),
        )])
    });
    out
}
