use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use zc_core::contour::{decompose, integrate_rectangle, Rectangle};
use zc_core::report::{
    contour_json, export_report, load_report, report_json, run_suite, write_scan_csv,
    write_trace_csv, Format, RunConfig, SUITES,
};
use zc_core::telescope::{riccati_iterate, RiccatiKind};
use zc_core::universality::{scan, SegmentK};
use zc_core::zero_finder::find_zeros_up_to;

#[derive(Parser)]
#[command(name = "zc", version, about = "Contour integrals of zeta'/zeta over rectangles in the critical strip")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Working precision in decimal digits (at most 16)
    #[arg(long, global = true)]
    precision_digits: Option<u32>,
    /// Absolute tolerance for quadrature and scalar evaluations
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Zero table file
    #[arg(long, global = true, env = "ZC_ZERO_TABLE")]
    zeros: Option<PathBuf>,
    /// Output file (or directory for `suite all`)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// RunConfig JSON; command-line flags override it
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Build the zero table when the file is missing (saved to --zeros)
    #[arg(long, global = true)]
    build_missing: bool,
    /// Height to build a missing table to
    #[arg(long, global = true)]
    table_height: Option<f64>,
}

#[derive(Args, Clone)]
struct RectArgs {
    #[arg(long, default_value_t = 0.6, allow_negative_numbers = true)]
    alpha: f64,
    #[arg(long, default_value_t = 0.8, allow_negative_numbers = true)]
    beta: f64,
    #[arg(long = "T", default_value_t = 30.0)]
    t: f64,
    /// Arbitrary box [x0, x1] x [y0, y1] instead of D(alpha, beta, T)
    #[arg(long, num_args = 4, value_names = ["X0", "X1", "Y0", "Y1"], allow_negative_numbers = true)]
    general: Option<Vec<f64>>,
}

impl RectArgs {
    fn rect(&self) -> zc_core::Result<Rectangle> {
        match &self.general {
            Some(v) => Rectangle::general(v[0], v[1], v[2], v[3]),
            None => Rectangle::paper(self.alpha, self.beta, self.t),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Locate critical-line zeros up to a height and write a zero table
    Zeros {
        #[arg(long)]
        up_to: f64,
    },
    /// Argument-principle integral of zeta'/zeta around a rectangle
    Integrate(RectArgs),
    /// Term-by-term split of the vertical-edge integrals
    Decompose {
        #[command(flatten)]
        rect: RectArgs,
        /// Tail tolerance; defaults to 1/T^2
        #[arg(long)]
        eps2: Option<f64>,
    },
    /// Riccati traces f and g telescoping the zero sum
    Telescope {
        #[arg(long, default_value_t = 0.6)]
        alpha: f64,
        #[arg(long, default_value_t = 0.8)]
        beta: f64,
        #[arg(long = "T", default_value_t = 100.0)]
        t: f64,
        #[arg(long = "N", default_value_t = 29)]
        n: usize,
    },
    /// Scan shifts tau for closeness of zeta'/zeta to U + iV on a segment
    Probe {
        /// lo:hi:step
        #[arg(long, default_value = "0:500:0.01", allow_hyphen_values = true)]
        tau: String,
        /// sigma_lo:sigma_hi
        #[arg(long = "K", default_value = "0.6:0.8")]
        k: String,
        #[arg(long, default_value_t = 33)]
        samples: usize,
        #[arg(long = "U", default_value_t = 0.0, allow_negative_numbers = true)]
        u: f64,
        #[arg(long = "V", default_value_t = -std::f64::consts::PI, allow_negative_numbers = true)]
        v: f64,
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
    },
    /// Run a verification suite (or `all`)
    Suite { name: String },
    /// Re-export a JSON verification report
    Export {
        /// Report produced by `suite`
        #[arg(long)]
        report: PathBuf,
        #[arg(long, default_value = "json")]
        format: String,
    },
}

fn parse_floats(s: &str, n: usize, what: &str) -> Result<Vec<f64>> {
    let v: Vec<f64> = s
        .split(':')
        .map(|x| x.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .with_context(|| format!("cannot parse {what} {s:?}"))?;
    if v.len() != n {
        bail!("{what} needs {n} colon-separated numbers, got {s:?}");
    }
    Ok(v)
}

fn run_config(g: &Global) -> Result<RunConfig> {
    let mut cfg = match &g.config {
        Some(p) => RunConfig::from_json(&fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?)?,
        None => RunConfig {
            build_missing_table: false,
            ..RunConfig::default()
        },
    };
    if let Some(d) = g.precision_digits {
        cfg.precision.working_digits = d;
    }
    if let Some(t) = g.tol {
        cfg.precision.target_abs_tol = t;
        cfg.precision.quad_tol = t;
    }
    if g.zeros.is_some() {
        cfg.zero_table_path = g.zeros.clone();
    }
    if g.build_missing {
        cfg.build_missing_table = true;
    }
    if let Some(h) = g.table_height {
        cfg.table_height = h;
    }
    cfg.precision.validate()?;
    Ok(cfg)
}

/// Writes `text` to `out`, or prints it.
fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn require_out<'a>(out: Option<&'a Path>, what: &str) -> Result<&'a Path> {
    out.with_context(|| format!("{what} needs --out FILE"))
}

fn run(cli: Cli) -> Result<ExitCode> {
    let g = &cli.global;
    if let Some(n) = g.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    let cfg = run_config(g)?;
    let out = g.out.as_deref();
    match cli.command {
        Command::Zeros { up_to } => {
            let path = require_out(out.or(g.zeros.as_deref()), "zeros")?;
            let table = find_zeros_up_to(up_to, &cfg.precision)?;
            table.save(path)?;
            eprintln!("{} zeros up to {up_to} written to {}", table.len(), path.display());
        }
        Command::Integrate(r) => {
            let table = cfg.zero_table()?;
            let report = integrate_rectangle(&r.rect()?, &table, &cfg.precision)?;
            emit(out, &serde_json::to_string_pretty(&contour_json(Some(&report), None))?)?;
        }
        Command::Decompose { rect, eps2 } => {
            let table = cfg.zero_table()?;
            let rect = rect.rect()?;
            let t = rect.height();
            let contour = integrate_rectangle(&rect, &table, &cfg.precision)?;
            let d = decompose(&rect, &table, eps2.unwrap_or(1.0 / (t * t)), &cfg.precision)?;
            emit(out, &serde_json::to_string_pretty(&contour_json(Some(&contour), Some(&d)))?)?;
        }
        Command::Telescope { alpha, beta, t, n } => {
            let table = cfg.zero_table()?;
            let rect = Rectangle::paper(alpha, beta, t)?;
            let (f, gt) = rayon::join(
                || riccati_iterate(RiccatiKind::F, n, &rect, &table),
                || riccati_iterate(RiccatiKind::G, n, &rect, &table),
            );
            let (f, gt) = (f?, gt?);
            write_trace_csv(&f, &gt, require_out(out, "telescope")?)?;
            eprintln!(
                "f({}) = {}, g({}) = {}, max step residual {:e}",
                n + 1,
                f.iterates[n],
                n + 1,
                gt.iterates[n],
                f.max_step_residual.max(gt.max_step_residual)
            );
        }
        Command::Probe { tau, k, samples, u, v, eps } => {
            let tv = parse_floats(&tau, 3, "--tau")?;
            let kv = parse_floats(&k, 2, "--K")?;
            let table = cfg.zero_table()?;
            let seg = SegmentK::new(kv[0], kv[1], 0.0, samples)?;
            let summary = scan(tv[0], tv[1], tv[2], &seg, u, v, eps, &table, &cfg.precision)?;
            write_scan_csv(&summary, require_out(out, "probe")?)?;
            if let Some(b) = summary.best() {
                eprintln!(
                    "best tau {} with sup distance {}; good fraction {}; {} skipped",
                    b.tau, b.sup_distance, summary.good_fraction, summary.skipped
                );
            }
        }
        Command::Suite { name } => {
            let names: Vec<&str> = if name == "all" { SUITES.to_vec() } else { vec![name.as_str()] };
            let mut ok = true;
            for n in names {
                let report = run_suite(n, &cfg)?;
                for c in &report.checks {
                    eprintln!("[{}] {}: {}", c.status.as_str(), n, c.name);
                }
                ok &= report.passed();
                match out {
                    Some(dir) if name == "all" => {
                        fs::create_dir_all(dir)?;
                        export_report(&report, Format::Json, dir.join(format!("{n}.json")))?;
                    }
                    _ => emit(out, &report_json(&report)?)?,
                }
            }
            if !ok {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Export { report, format } => {
            let r = load_report(&report)?;
            export_report(&r, format.parse()?, require_out(out, "export")?)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
