//! The thin isosceles triangle family that makes the gap bound sharp, random
//! convex polygons for corpora, and a hill-climbing search for large gap
//! ratios.

mod random;
mod search;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{make_polygon, ConvexPolygon, Point2, UnitVector};

pub use random::{corpus, corpus_item, derive_seed, random_convex_polygon, CorpusItem};
pub use search::{
    max_ratio_over_directions, maximize_ratio, maximize_with, SearchConfig, SearchState,
};

/// The triangle `(0,0), (1,ε), (1,−ε)`: two sides `√(1+ε²)` and a base `2ε`.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleFamily {
    pub eps: f64,
    pub polygon: ConvexPolygon,
}

impl TriangleFamily {
    /// Axis of symmetry of the family.
    pub const AXIS: UnitVector = UnitVector::E1;

    pub fn new(eps: f64) -> Result<TriangleFamily> {
        if !(eps > 0.0 && eps <= 1.0) {
            return Err(Error::Domain(format!("ε must lie in (0, 1], got {eps}")));
        }
        let polygon = make_polygon(&[
            Point2::new(0.0, 0.0),
            Point2::new(1.0, eps),
            Point2::new(1.0, -eps),
        ])?;
        Ok(TriangleFamily { eps, polygon })
    }
}

/// `T(ε)`; see [`TriangleFamily`].
pub fn triangle(eps: f64) -> Result<TriangleFamily> {
    TriangleFamily::new(eps)
}

/// `1/6 + ε²/2 − (ε/2)√(1+ε²)`: the signed gap `⟨c(∂T) − c(T), −e₁⟩`,
/// positive for `ε < 1/√3`.
pub fn closed_form_gap(eps: f64) -> f64 {
    1.0 / 6.0 + 0.5 * eps * eps - 0.5 * eps * (1.0 + eps * eps).sqrt()
}

/// Gap ratio of `T(ε)` in a direction making cosine `cos_e` with the axis:
/// `g·|cos| / (|cos| + ε√(1 − cos²))`, valid while `|cos| ≥ ε·|sin|`.
pub fn closed_form_ratio(eps: f64, cos_e: f64) -> Result<f64> {
    let c = cos_e.abs();
    if !(eps > 0.0) {
        return Err(Error::Domain(format!("ε must be positive, got {eps}")));
    }
    if !(c <= 1.0) {
        return Err(Error::Domain(format!(
            "|cos| must be at most 1, got {cos_e}"
        )));
    }
    if c < 0.1 {
        return Err(Error::Domain(format!(
            "|cos| = {c} is too close to 0 for the width formula"
        )));
    }
    Ok(closed_form_gap(eps) * c / (c + eps * (1.0 - c * c).sqrt()))
}

/// One row of the sharpness table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub eps: f64,
    /// Gap ratio along the axis, from the geometry.
    pub ratio: f64,
    /// Same, from the closed form.
    pub closed_form_ratio: f64,
    /// `|c(∂T) − c(T)| / diameter`
    pub gap_over_diameter: f64,
    /// `|c(∂T) − c(T)| / perimeter`
    pub gap_over_perimeter: f64,
}

/// Geometric and closed-form quantities of `T(ε)` for each `ε`.
pub fn convergence_table(eps_list: &[f64]) -> Result<Vec<ConvergenceRow>> {
    eps_list
        .iter()
        .map(|&eps| {
            let t = triangle(eps)?;
            let gap = t.polygon.gap_vector().norm();
            Ok(ConvergenceRow {
                eps,
                ratio: t.polygon.gap_ratio(TriangleFamily::AXIS),
                closed_form_ratio: closed_form_ratio(eps, 1.0)?,
                gap_over_diameter: gap / t.polygon.diameter(),
                gap_over_perimeter: gap / t.polygon.perimeter(),
            })
        })
        .collect()
}
