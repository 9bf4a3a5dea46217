//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's evaluation routines.

#![allow(dead_code)]

use std::f64::consts::PI;
use std::path::PathBuf;
use std::sync::Mutex;

use num_complex::Complex64;
use zc_core::zero_finder::{find_zeros_up_to, ZeroTable};
use zc_core::PrecisionConfig;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// ζ(s) from the alternating η series with Borwein's acceleration,
/// ζ(s) = η(s) / (1 − 2^{1−s}). Good to ~1e-13 for |t| ≤ 150, σ ≥ 0.
pub fn zeta_eta(s: Complex64) -> Complex64 {
    let t = s.im.abs();
    let n = ((PI * t / 2.0 + (1.0 + 2.0 * t).ln() + 40.0) / (3.0 + 8f64.sqrt()).ln()) as usize + 10;
    assert!(n < 380, "oracle out of range at t = {t}");
    let nf = n as f64;
    // d_k = n Σ_{i≤k} (n+i−1)! 4^i / ((n−i)! (2i)!)
    let mut d = Vec::with_capacity(n + 1);
    let mut a = 1.0 / nf;
    let mut acc = 0.0;
    for i in 0..=n {
        if i > 0 {
            let fi = i as f64;
            a *= 4.0 * (nf + fi - 1.0) * (nf - fi + 1.0) / ((2.0 * fi) * (2.0 * fi - 1.0));
        }
        acc += a;
        d.push(nf * acc);
    }
    let dn = d[n];
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let w = sign * (d[k] - dn) / dn;
        sum += (-s * ((k + 1) as f64).ln()).exp() * w;
    }
    let eta = -sum;
    eta / (1.0 - ((1.0 - s) * 2f64.ln()).exp())
}

/// −Σ log n / n² with an integral tail bound; ζ'(2) to ~1e-15.
pub fn zeta_prime_two() -> f64 {
    let n_max = 2_000_000u64;
    let mut s = 0.0;
    for n in (2..=n_max).rev() {
        let x = n as f64;
        s += x.ln() / (x * x);
    }
    // ∫_N^∞ log x / x² dx = (log N + 1)/N, minus half the first term
    let x = n_max as f64;
    let tail = (x.ln() + 1.0) / x - 0.5 * x.ln() / (x * x);
    -(s + tail)
}

/// Riemann–Siegel θ from its asymptotic series (valid for t ≥ 10).
pub fn theta_asymptotic(t: f64) -> f64 {
    assert!(t >= 10.0);
    t / 2.0 * (t / (2.0 * PI)).ln() - t / 2.0 - PI / 8.0
        + 1.0 / (48.0 * t)
        + 7.0 / (5760.0 * t.powi(3))
        + 31.0 / (80640.0 * t.powi(5))
        + 127.0 / (430080.0 * t.powi(7))
        + 511.0 / (1216512.0 * t.powi(9))
}

/// Z(t) built only from the oracle pieces above.
pub fn hardy_z_oracle(t: f64) -> f64 {
    (Complex64::from_polar(1.0, theta_asymptotic(t)) * zeta_eta(c(0.5, t))).re
}

/// Bisection on the oracle Z over a sign-change bracket.
pub fn bisect_zero(mut a: f64, mut b: f64) -> f64 {
    let mut za = hardy_z_oracle(a);
    assert!(za * hardy_z_oracle(b) < 0.0, "[{a}, {b}] is not a bracket");
    while b - a > 1e-11 {
        let m = 0.5 * (a + b);
        let zm = hardy_z_oracle(m);
        if zm * za > 0.0 {
            a = m;
            za = zm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Zero table complete to `height`, computed once and cached on disk under
/// the cargo target directory (which also exercises save/load).
pub fn zero_table(height: f64) -> ZeroTable {
    static LOCK: Mutex<()> = Mutex::new(());
    let _guard = LOCK.lock().unwrap_or_else(|e| e.into_inner());
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join(format!("zeros_{height}.zctab"));
    if let Ok(t) = ZeroTable::load(&path) {
        return t;
    }
    let table = find_zeros_up_to(height, &PrecisionConfig::default()).expect("zero search");
    // write to a private name first so concurrent test binaries never see a partial file
    let tmp = dir.join(format!("zeros_{height}.{}.tmp", std::process::id()));
    table.save(&tmp).expect("save table");
    std::fs::rename(&tmp, &path).expect("publish table");
    table
}

/// Seeded generator so every randomized check is reproducible.
pub fn rng(seed: u64) -> rand::rngs::StdRng {
    use rand::SeedableRng;
    rand::rngs::StdRng::seed_from_u64(seed)
}
