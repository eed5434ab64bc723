//! The canonical placement of a polygon relative to a direction.
//!
//! The direction is rotated onto `(1, 0)`, the polygon is cut at the abscissa
//! of its longest vertical chord, and the result is translated and scaled so
//! that the chord sits on `x = 0` and the projection onto the x-axis is
//! `[−1, ω]` with `ω ≥ 0`. The scalars used throughout the lemma checks are
//! computed once here.

use serde::Serialize;

use crate::check::{CheckBuilder, CheckReport};
use crate::error::{Error, Result};
use crate::geom::{chord_length, slice_measures, ConvexPolygon, Point2, Side, UnitVector};

/// Relative tolerance (times the polygon scale) for ties in the chord
/// maximum and for snapping `ω` to zero.
const TIE_REL: f64 = 1e-12;

/// Scalars of a normalized frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrameScalars {
    /// Angle of the direction that was rotated onto `(1, 0)`.
    pub theta: f64,
    /// Whether the polygon was mirrored (`x ↦ −x`) before scaling.
    pub reflected: bool,
    pub omega: f64,
    /// Maximal chord `ℓ = ℓ(0)`.
    pub ell: f64,
    /// Common slope of the two support lines through the ends of the chord.
    pub slope: f64,
    /// `√(1 + slope²)`.
    pub alpha: f64,
    /// `ℓ / (2α)`, half the width of the strip between the support lines.
    pub half_strip: f64,
    /// `A(0) / ℓ`.
    #[serde(rename = "B")]
    pub big_b: f64,
    /// `ℓ / P̃(0)`.
    pub lambda5: f64,
    /// `2ℓ / P(0)`.
    pub lambda6: f64,
    /// `2α / P(0)`.
    pub s: f64,
    /// `2·Area(Ω ∩ {x ≥ 0}) / (ℓω)`; absent when `ω = 0`.
    pub u: Option<f64>,
    /// `−c_a(0)`.
    pub c: f64,
    /// `s·B`.
    pub b: f64,
    /// `s·ω`.
    pub rho: f64,
    /// `A(0)`.
    pub area0: f64,
    /// `P(0)`, chord included.
    pub perimeter0: f64,
    /// `c_p(0)`.
    pub c_p0: f64,
}

/// A polygon in canonical position plus its scalars.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedFrame {
    pub polygon: ConvexPolygon,
    pub scalars: FrameScalars,
}

/// Support lines `y = top + slope·x` and `y = bottom + slope·x` through the
/// ends of the chord at `x = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupportParallelogram {
    pub slope: f64,
    pub alpha: f64,
    pub top: f64,
    pub bottom: f64,
}

/// Places `poly` in the canonical frame for direction `theta`.
pub fn normalize(poly: &ConvexPolygon, theta: UnitVector) -> Result<NormalizedFrame> {
    let mut q = poly.rotate_to_e1(theta);
    let tol = TIE_REL * q.scale();
    let (mut lo, mut hi) = argmax_chord_interval(&q, tol);
    let (mut xmin, mut xmax) = q.x_range();
    let mut reflected = false;
    if 0.5 * (lo + hi) - xmin <= tol {
        q = q.reflected_x();
        (lo, hi) = (-hi, -lo);
        (xmin, xmax) = q.x_range();
        reflected = true;
    }
    let mut x0 = 0.5 * (lo + hi);
    if xmax - x0 <= tol {
        x0 = xmax;
    }
    let factor = 1.0 / (x0 - xmin);
    if !(factor.is_finite() && factor > 0.0) {
        return Err(Error::DegenerateInput("projection has zero length".into()));
    }
    let moved = q.translated_scaled(Point2::new(-x0, 0.0), factor);
    // Pin the left end at exactly −1 so grids and guards are exact.
    let v: Vec<Point2> = moved
        .vertices()
        .iter()
        .zip(q.vertices())
        .map(|(&p, orig)| {
            if orig.x - xmin <= tol {
                Point2::new(-1.0, p.y)
            } else {
                p
            }
        })
        .collect();
    let polygon = ConvexPolygon::from_ccw_unchecked(v);
    let omega = (polygon.x_range().1).max(0.0);

    let sp = support_lines(&polygon)?;
    let m0 = slice_measures(&polygon, 0.0, Side::Below);
    let ell = sp.top - sp.bottom;
    let (a0, p0) = (m0.area, m0.perimeter);
    if !(ell > 0.0 && a0 > 0.0) {
        return Err(Error::DegenerateInput(
            "chord at the cut has no length".into(),
        ));
    }
    let s = 2.0 * sp.alpha / p0;
    let big_b = a0 / ell;
    let u = (omega > 0.0).then(|| {
        let psi = slice_measures(&polygon, 0.0, Side::Above).area;
        2.0 * psi / (ell * omega)
    });
    let scalars = FrameScalars {
        theta: theta.angle(),
        reflected,
        omega,
        ell,
        slope: sp.slope,
        alpha: sp.alpha,
        half_strip: ell / (2.0 * sp.alpha),
        big_b,
        lambda5: ell / (p0 - ell),
        lambda6: 2.0 * ell / p0,
        s,
        u,
        c: -m0.area_centroid_x(),
        b: s * big_b,
        rho: s * omega,
        area0: a0,
        perimeter0: p0,
        c_p0: m0.boundary_centroid_x(),
    };
    Ok(NormalizedFrame { polygon, scalars })
}

/// `[lo, hi]`: the abscissae where the chord function is within `tol` of its
/// maximum. The chord function is concave and linear between vertex
/// abscissae, so the maximum is attained at a vertex abscissa.
fn argmax_chord_interval(poly: &ConvexPolygon, tol: f64) -> (f64, f64) {
    let chords: Vec<(f64, f64)> = poly
        .vertices()
        .iter()
        .map(|v| {
            (
                v.x,
                chord_length(poly, v.x).expect("vertex abscissa is in range"),
            )
        })
        .collect();
    let best = chords.iter().map(|c| c.1).fold(f64::NEG_INFINITY, f64::max);
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &(x, l) in &chords {
        if l >= best - tol {
            lo = lo.min(x);
            hi = hi.max(x);
        }
    }
    (lo, hi)
}

/// Support slopes at the ends of the chord on `x = 0` of a polygon whose
/// projection contains `[−1, 0]`.
///
/// At the top end the admissible slopes are `[U'(0+), U'(0−)]` for the upper
/// boundary `U`; at the bottom end `[L'(0−), L'(0+)]` for the lower boundary
/// `L`. A missing right side (`ω = 0`) leaves that end unbounded.
fn support_lines(poly: &ConvexPolygon) -> Result<SupportParallelogram> {
    let mut upper_left = None;
    let mut upper_right = None;
    let mut lower_left = None;
    let mut lower_right = None;
    let (mut top, mut bottom) = (f64::NEG_INFINITY, f64::INFINITY);
    for (a, b) in poly.edges() {
        let dx = b.x - a.x;
        let (x0, x1) = (a.x.min(b.x), a.x.max(b.x));
        if x0 <= 0.0 && 0.0 <= x1 {
            let y = if dx == 0.0 {
                top = top.max(a.y.max(b.y));
                bottom = bottom.min(a.y.min(b.y));
                continue;
            } else {
                a.y + (0.0 - a.x) * (b.y - a.y) / dx
            };
            top = top.max(y);
            bottom = bottom.min(y);
        }
        if dx == 0.0 {
            continue;
        }
        let m = (b.y - a.y) / dx;
        let covers_left = x0 < 0.0 && 0.0 <= x1;
        let covers_right = x0 <= 0.0 && 0.0 < x1;
        // Counterclockwise: the upper chain runs right to left.
        let (left, right) = if dx < 0.0 {
            (&mut upper_left, &mut upper_right)
        } else {
            (&mut lower_left, &mut lower_right)
        };
        if covers_left {
            *left = Some(m);
        }
        if covers_right {
            *right = Some(m);
        }
    }
    let (Some(ul), Some(ll)) = (upper_left, lower_left) else {
        return Err(Error::InternalInvariantViolation(
            "no boundary edge to the left of the cut".into(),
        ));
    };
    let ur = upper_right.unwrap_or(f64::NEG_INFINITY);
    let lr = lower_right.unwrap_or(f64::INFINITY);
    let lo = ur.max(ll);
    let hi = ul.min(lr);
    if lo > hi + 1e-6 * (1.0 + lo.abs() + hi.abs()) {
        return Err(Error::InternalInvariantViolation(format!(
            "support slope intervals are disjoint: [{ur}, {ul}] and [{ll}, {lr}]"
        )));
    }
    let slope = 0.5 * (lo + hi);
    Ok(SupportParallelogram {
        slope,
        alpha: slope.hypot(1.0),
        top,
        bottom,
    })
}

/// Common support slope through the ends of the chord at `x = 0`, and `α`.
pub fn support_parallelogram(frame: &NormalizedFrame) -> Result<SupportParallelogram> {
    support_lines(&frame.polygon)
}

impl NormalizedFrame {
    pub fn omega(&self) -> f64 {
        self.scalars.omega
    }

    /// Scale for length tolerances.
    pub fn scale(&self) -> f64 {
        self.polygon.scale()
    }

    /// Whether `ω > 0`, i.e. the part right of the cut has interior.
    pub fn has_right_part(&self) -> bool {
        self.scalars.omega > 0.0
    }
}

/// Every invariant of the frame scalars, plus containment of the polygon in
/// the strip and parallelogram built from the support lines.
pub fn frame_scalars_valid(frame: &NormalizedFrame, rel_tol: f64) -> CheckReport {
    let f = &frame.scalars;
    let poly = &frame.polygon;
    let scale = poly.scale();
    let mut b = CheckBuilder::new("frame_scalars", rel_tol);
    b.le(1.0, f.alpha, 1.0, || "α ≥ 1".into());
    b.le(0.0, f.s, 1.0, || format!("s={} > 0", f.s));
    b.le(f.s, 1.0, 1.0, || format!("s={} < 1", f.s));
    b.le(0.0, f.lambda6, 1.0, || format!("λ6={} > 0", f.lambda6));
    b.le(f.lambda6, 1.0, 1.0, || format!("λ6={} < 1", f.lambda6));
    b.le(0.0, f.lambda5, 1.0, || format!("λ5={} > 0", f.lambda5));
    b.le(f.lambda5, 1.0, 1.0, || format!("λ5={} ≤ 1", f.lambda5));
    if let Some(u) = f.u {
        b.le(1.0, u, 1.0, || format!("u={u} ≥ 1"));
        b.le(u, 2.0, 1.0, || format!("u={u} ≤ 2"));
    }
    b.le(0.5, f.big_b, 1.0, || format!("B={} ≥ 1/2", f.big_b));
    b.le(f.big_b, 1.0, 1.0, || format!("B={} ≤ 1", f.big_b));
    b.le(f.big_b, (1.0 - f.lambda6 / 2.0) / f.s, 1.0, || {
        format!("B={} ≤ (1−λ6/2)/s", f.big_b)
    });
    b.le(f.big_b / 2.0, f.c, 1.0, || format!("c={} ≥ B/2", f.c));
    b.le(f.c, 0.5, 1.0, || format!("c={} ≤ 1/2", f.c));

    let (xmin, xmax) = poly.x_range();
    b.le((xmin + 1.0).abs(), 0.0, 1.0, || format!("min x = {xmin}"));
    b.le((xmax - f.omega).abs(), 0.0, scale, || {
        format!("max x = {xmax}, ω = {}", f.omega)
    });
    for v in poly.vertices() {
        let l = chord_length(poly, v.x).unwrap_or(f64::NAN);
        b.le(l, f.ell, scale, || format!("ℓ({}) ≤ ℓ(0)", v.x));
    }

    match support_parallelogram(frame) {
        Ok(sp) => {
            for v in poly.vertices() {
                let upper = sp.top + sp.slope * v.x;
                let lower = sp.bottom + sp.slope * v.x;
                let reach = scale * (1.0 + sp.slope.abs());
                b.le(v.y, upper, reach, || {
                    format!("vertex ({}, {}) below upper support line", v.x, v.y)
                });
                b.le(lower, v.y, reach, || {
                    format!("vertex ({}, {}) above lower support line", v.x, v.y)
                });
            }
        }
        Err(e) => b.le(1.0, 0.0, 0.0, || e.to_string()),
    }
    b.finish()
}
