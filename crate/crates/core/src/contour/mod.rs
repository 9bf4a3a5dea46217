//! Rectangle contours, the argument principle for ζ'/ζ, and the term-by-term
//! split of the vertical-edge integrals.
//!
//! Vertex labels follow the usual picture of D(α, β, T):
//!
//! ```text
//!   B = α+iT ──── A = β+iT
//!      │              │
//!   C = α−iT ──── D = β−iT
//! ```
//!
//! and the edges are traversed DA, AB, BC, CD (counter-clockwise).

mod terms;

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Singularity};
use crate::quadrature::{distance_to_segment, integrate_segment, PathIntegral};
use crate::special_functions::{log_deriv_zeta, ComplexValue, PrecisionConfig};
use crate::zero_finder::ZeroTable;

pub use terms::{
    decompose, digamma_term_integral, horizontal_edges_model, logpi_term_integral, pair_term,
    paper_total, pole_term_integral, pole_term_paper_form, zero_sum_quadrature, zero_sum_term_integral,
    DecompositionReport, DigammaTerm, EdgePair, TermCheck, ZeroSumTerm,
};

/// Longest initial quadrature panel along an edge.
pub(crate) const MAX_PANEL: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Edge {
    DA,
    AB,
    BC,
    CD,
}

impl Edge {
    pub const ALL: [Edge; 4] = [Edge::DA, Edge::AB, Edge::BC, Edge::CD];

    pub fn name(self) -> &'static str {
        match self {
            Edge::DA => "DA",
            Edge::AB => "AB",
            Edge::BC => "BC",
            Edge::CD => "CD",
        }
    }
}

/// Axis-aligned box [x0, x1] × [y0, y1]. Paper-mode rectangles are
/// D(α, β, T) = [α, β] × [−T, T] with ½ < α < β < 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rectangle {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
    pub paper_mode: bool,
}

impl Rectangle {
    pub fn paper(alpha: f64, beta: f64, t: f64) -> Result<Self> {
        if !(0.5 < alpha && alpha < beta && beta < 1.0) {
            return Err(Error::Domain(format!(
                "paper-mode rectangle needs 1/2 < alpha < beta < 1, got alpha={alpha}, beta={beta}"
            )));
        }
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::Domain(format!("T must be positive, got {t}")));
        }
        Ok(Self {
            x0: alpha,
            x1: beta,
            y0: -t,
            y1: t,
            paper_mode: true,
        })
    }

    pub fn general(x0: f64, x1: f64, y0: f64, y1: f64) -> Result<Self> {
        if !(x0 < x1 && y0 < y1) || ![x0, x1, y0, y1].iter().all(|v| v.is_finite()) {
            return Err(Error::Domain(format!(
                "degenerate box [{x0}, {x1}] x [{y0}, {y1}]"
            )));
        }
        Ok(Self {
            x0,
            x1,
            y0,
            y1,
            paper_mode: false,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.x0
    }

    pub fn beta(&self) -> f64 {
        self.x1
    }

    /// Half-height T (paper mode) or the top ordinate (general mode).
    pub fn height(&self) -> f64 {
        self.y1
    }

    /// (α, β, T), or an error for general-mode boxes.
    pub fn paper_params(&self) -> Result<(f64, f64, f64)> {
        if !self.paper_mode {
            return Err(Error::Domain("operation needs a paper-mode rectangle".into()));
        }
        Ok((self.x0, self.x1, self.y1))
    }

    pub fn vertex(&self, name: char) -> Complex64 {
        match name {
            'A' => Complex64::new(self.x1, self.y1),
            'B' => Complex64::new(self.x0, self.y1),
            'C' => Complex64::new(self.x0, self.y0),
            _ => Complex64::new(self.x1, self.y0),
        }
    }

    /// Start and end point of an edge under positive circulation.
    pub fn endpoints(&self, edge: Edge) -> (Complex64, Complex64) {
        let v = |c| self.vertex(c);
        match edge {
            Edge::DA => (v('D'), v('A')),
            Edge::AB => (v('A'), v('B')),
            Edge::BC => (v('B'), v('C')),
            Edge::CD => (v('C'), v('D')),
        }
    }

    pub fn contains(&self, p: Complex64) -> bool {
        self.x0 < p.re && p.re < self.x1 && self.y0 < p.im && p.im < self.y1
    }

    /// Poles of ζ'/ζ that could lie inside or near the box: s = 1, trivial
    /// zeros and tabulated critical-line zeros with either sign of γ.
    pub fn nearby_singularities(&self, zeros: &ZeroTable, margin: f64) -> Vec<Singularity> {
        let mut out = vec![Singularity::Pole];
        if self.y0 - margin < 0.0 && self.y1 + margin > 0.0 {
            let kmin = ((-self.x1 - margin) / 2.0).ceil().max(1.0) as i64;
            let kmax = ((-self.x0 + margin) / 2.0).floor() as i64;
            for k in kmin..=kmax {
                out.push(Singularity::TrivialZero(k as u32));
            }
        }
        if self.x0 - margin < 0.5 && self.x1 + margin > 0.5 {
            for (index, &g) in zeros.gammas().iter().enumerate() {
                for gamma in [g, -g] {
                    if gamma > self.y0 - margin && gamma < self.y1 + margin {
                        out.push(Singularity::Zero { index, gamma });
                    }
                }
            }
        }
        out
    }

    /// Checks that the zero table certifies every critical-line zero the box
    /// could enclose.
    fn require_coverage(&self, zeros: &ZeroTable) -> Result<()> {
        let reach = self.y0.abs().max(self.y1.abs());
        let touches_strip = self.x0 < 1.0 && self.x1 > 0.0;
        if touches_strip && zeros.max_height() < reach {
            return Err(Error::TableTooShort {
                max_height: zeros.max_height(),
                reason: format!("the box reaches height {reach}"),
            });
        }
        Ok(())
    }
}

/// Fails with `SingularityOnPath` when `f` reports a nearby singularity.
fn path_error(e: Error) -> Error {
    match e {
        Error::NearSingularity {
            which, distance, ..
        } => Error::SingularityOnPath { which, distance },
        other => other,
    }
}

/// ∫_a^b f(s) ds along a straight edge with the configured quadrature tolerance.
pub fn integrate_edge<F>(f: F, a: Complex64, b: Complex64, cfg: &PrecisionConfig) -> Result<PathIntegral>
where
    F: Fn(Complex64) -> Result<ComplexValue>,
{
    integrate_segment(|s| f(s).map_err(path_error), a, b, cfg.quad_tol, MAX_PANEL)
}

/// ∫ ζ'/ζ along one edge of `rect`.
pub fn log_deriv_edge(
    rect: &Rectangle,
    edge: Edge,
    zeros: &ZeroTable,
    cfg: &PrecisionConfig,
) -> Result<PathIntegral> {
    let (a, b) = rect.endpoints(edge);
    integrate_edge(|s| log_deriv_zeta(s, cfg, zeros), a, b, cfg)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeIntegral {
    pub edge: Edge,
    pub value: Complex64,
    pub error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContourReport {
    pub rect: Rectangle,
    /// In circulation order DA, AB, BC, CD.
    pub edges: Vec<EdgeIntegral>,
    pub total: Complex64,
    /// total / 2πi.
    pub winding_raw: Complex64,
    pub winding: i64,
    /// |winding_raw − winding|.
    pub gap: f64,
    pub quad_error: f64,
    /// (tabulated and trivial zeros inside) − (1 if s = 1 inside).
    pub expected_winding: i64,
    pub nearest_singularity: Singularity,
    pub nearest_distance: f64,
}

impl ContourReport {
    pub fn edge(&self, edge: Edge) -> &EdgeIntegral {
        &self.edges[Edge::ALL.iter().position(|&e| e == edge).unwrap()]
    }
}

/// Audits the boundary against every known singularity and returns the
/// closest one.
pub fn audit_boundary(
    rect: &Rectangle,
    zeros: &ZeroTable,
    cfg: &PrecisionConfig,
) -> Result<(Singularity, f64)> {
    rect.require_coverage(zeros)?;
    let mut nearest = (Singularity::Pole, f64::INFINITY);
    for which in rect.nearby_singularities(zeros, 1.0) {
        for edge in Edge::ALL {
            let (a, b) = rect.endpoints(edge);
            let d = distance_to_segment(which.location(), a, b);
            if d < cfg.exclusion_radius {
                return Err(Error::BoundarySingularity {
                    edge: edge.name(),
                    which,
                    distance: d,
                });
            }
            if d < nearest.1 {
                nearest = (which, d);
            }
        }
    }
    Ok(nearest)
}

/// Argument-principle integral of ζ'/ζ around `rect` (positive circulation).
pub fn integrate_rectangle(
    rect: &Rectangle,
    zeros: &ZeroTable,
    cfg: &PrecisionConfig,
) -> Result<ContourReport> {
    let (nearest_singularity, nearest_distance) = audit_boundary(rect, zeros, cfg)?;
    let edges: Vec<EdgeIntegral> = Edge::ALL
        .par_iter()
        .map(|&edge| {
            let r = log_deriv_edge(rect, edge, zeros, cfg).map_err(|e| match e {
                Error::SingularityOnPath { which, distance } => Error::BoundarySingularity {
                    edge: edge.name(),
                    which,
                    distance,
                },
                other => other,
            })?;
            Ok(EdgeIntegral {
                edge,
                value: r.value,
                error: r.error,
                evaluations: r.evaluations,
            })
        })
        .collect::<Result<_>>()?;
    let total: Complex64 = edges.iter().map(|e| e.value).sum();
    let quad_error: f64 = edges.iter().map(|e| e.error).sum();
    let winding_raw = total / Complex64::new(0.0, 2.0 * PI);
    let winding = winding_raw.re.round() as i64;
    let gap = (winding_raw - winding as f64).norm();
    let expected_winding = rect
        .nearby_singularities(zeros, 0.0)
        .into_iter()
        .filter(|w| rect.contains(w.location()))
        .map(|w| if w == Singularity::Pole { -1 } else { 1 })
        .sum();
    Ok(ContourReport {
        rect: *rect,
        edges,
        total,
        winding_raw,
        winding,
        gap,
        quad_error,
        expected_winding,
        nearest_singularity,
        nearest_distance,
    })
}

/// Same integral with the circulation reversed (edges traversed backwards
/// in the order DC, CB, BA, AD).
pub fn integrate_rectangle_reversed(
    rect: &Rectangle,
    zeros: &ZeroTable,
    cfg: &PrecisionConfig,
) -> Result<Complex64> {
    audit_boundary(rect, zeros, cfg)?;
    let mut total = Complex64::new(0.0, 0.0);
    for edge in Edge::ALL.iter().rev() {
        let (a, b) = rect.endpoints(*edge);
        total += integrate_edge(|s| log_deriv_zeta(s, cfg, zeros), b, a, cfg)?.value;
    }
    Ok(total)
}
