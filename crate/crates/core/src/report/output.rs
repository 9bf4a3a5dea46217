//! JSON and CSV emitted by the individual commands.

use std::path::Path;

use num_complex::Complex64;
use serde_json::{json, Value};

use super::csv_error;
use crate::contour::{ContourReport, DecompositionReport, Edge};
use crate::error::{Error, Result};
use crate::telescope::RiccatiTrace;
use crate::universality::ScanSummary;

fn complex(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

/// Report for `integrate` / `decompose`: edges{da,ab,bc,cd}{re,im,err}, total,
/// winding_raw, winding, and optionally the decomposition block.
pub fn contour_json(contour: Option<&ContourReport>, decomposition: Option<&DecompositionReport>) -> Value {
    let mut out = serde_json::Map::new();
    if let Some(c) = contour {
        let mut edges = serde_json::Map::new();
        for edge in Edge::ALL {
            let e = c.edge(edge);
            edges.insert(
                edge.name().to_lowercase(),
                json!({ "re": e.value.re, "im": e.value.im, "err": e.error }),
            );
        }
        out.insert("edges".into(), Value::Object(edges));
        out.insert("total".into(), complex(c.total));
        out.insert("winding_raw".into(), complex(c.winding_raw));
        out.insert("winding".into(), json!(c.winding));
        out.insert("expected_winding".into(), json!(c.expected_winding));
        out.insert("quad_error".into(), json!(c.quad_error));
        out.insert("nearest_singularity".into(), json!(c.nearest_singularity.to_string()));
        out.insert("nearest_distance".into(), json!(c.nearest_distance));
    }
    if let Some(d) = decomposition {
        out.insert(
            "decomposition".into(),
            json!({
                "pole": complex(d.pole_term),
                "logpi": complex(d.logpi_term),
                "digamma": complex(d.digamma_term),
                "zerosum": complex(d.zero_sum_term),
                "n_used": d.n_used,
                "tail_bound": d.tail_bound,
                "tail_estimate": complex(d.tail_estimate),
                "termwise_total": complex(d.termwise_total),
                "direct_total": complex(d.direct_total),
                "residual": d.residual,
                "residual_truncated_only": d.residual_truncated_only,
                "budget": d.budget,
            }),
        );
    }
    Value::Object(out)
}

/// Columns k, gamma_k, h1, h2, f, g, wrap_f, wrap_g, step_residual; row k
/// carries f(k), g(k) and the step k → k+1.
pub fn write_trace_csv(f: &RiccatiTrace, g: &RiccatiTrace, path: impl AsRef<Path>) -> Result<()> {
    if f.gammas != g.gammas {
        return Err(Error::Domain("f and g traces use different zeros".into()));
    }
    let mut w = csv::Writer::from_path(path).map_err(csv_error)?;
    w.write_record(["k", "gamma_k", "h1", "h2", "f", "g", "wrap_f", "wrap_g", "step_residual"])
        .map_err(csv_error)?;
    for i in 0..f.len() {
        w.write_record([
            (i + 1).to_string(),
            f.gammas[i].to_string(),
            f.h[i].to_string(),
            g.h[i].to_string(),
            f.iterates[i].to_string(),
            g.iterates[i].to_string(),
            f.wraps[i].to_string(),
            g.wraps[i].to_string(),
            f.step_residual[i].max(g.step_residual[i]).to_string(),
        ])
        .map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

/// Columns tau, sup_distance, skipped_flag in τ order.
pub fn write_scan_csv(summary: &ScanSummary, path: impl AsRef<Path>) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(csv_error)?;
    w.write_record(["tau", "sup_distance", "skipped_flag"]).map_err(csv_error)?;
    for e in &summary.entries {
        w.write_record([
            e.tau.to_string(),
            e.sup_distance.map(|d| d.to_string()).unwrap_or_default(),
            (e.skipped as u8).to_string(),
        ])
        .map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}
