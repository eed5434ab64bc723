//! Vertical slicing: half-plane clips, chords and per-slice measures.

use super::{make_polygon, ConvexPolygon, Point2};
use crate::error::{Error, Result};

/// Which half-plane of the vertical line `x = t` to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `x ≤ t`
    Below,
    /// `x ≥ t`
    Above,
}

/// Result of clipping a polygon against a vertical half-plane.
#[derive(Debug, Clone, PartialEq)]
pub enum Clip {
    /// The half-plane misses the polygon.
    Empty,
    /// The intersection has no interior (a point or a vertical segment).
    Degenerate,
    Polygon(ConvexPolygon),
}

impl Clip {
    pub fn area(&self) -> f64 {
        match self {
            Clip::Polygon(p) => p.area(),
            _ => 0.0,
        }
    }
}

/// `P ∩ {x ≤ t}`.
pub fn clip_below(poly: &ConvexPolygon, t: f64) -> Clip {
    let (xmin, xmax) = poly.x_range();
    if t < xmin {
        return Clip::Empty;
    }
    if t >= xmax {
        return Clip::Polygon(poly.clone());
    }
    match make_polygon(&clip_vertices(poly.vertices(), t, Side::Below)) {
        Ok(p) => Clip::Polygon(p),
        Err(_) => Clip::Degenerate,
    }
}

/// Vertices of the clipped region, in order. May contain repeated points
/// where the cut passes through a vertex; zero-length edges are harmless for
/// every measure computed from this sequence.
pub(crate) fn clip_vertices(v: &[Point2], t: f64, side: Side) -> Vec<Point2> {
    let inside = |p: Point2| match side {
        Side::Below => p.x <= t,
        Side::Above => p.x >= t,
    };
    let n = v.len();
    let mut out = Vec::with_capacity(n + 2);
    for i in 0..n {
        let a = v[i];
        let b = v[(i + 1) % n];
        let (ia, ib) = (inside(a), inside(b));
        if ia {
            out.push(a);
        }
        if ia != ib {
            let s = (t - a.x) / (b.x - a.x);
            out.push(Point2::new(t, a.y + s * (b.y - a.y)));
        }
    }
    out
}

/// Length of the vertical cross-section `{y : (t, y) ∈ P}`. A vertical edge
/// at `x = t` yields its full length.
pub fn chord_length(poly: &ConvexPolygon, t: f64) -> Result<f64> {
    let (xmin, xmax) = poly.x_range();
    let tol = 1e-12 * poly.scale();
    if !(t >= xmin - tol && t <= xmax + tol) {
        return Err(Error::OutOfRange {
            t,
            lo: xmin,
            hi: xmax,
        });
    }
    Ok(chord_unchecked(poly.vertices(), t.clamp(xmin, xmax)))
}

pub(crate) fn chord_unchecked(v: &[Point2], t: f64) -> f64 {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    let n = v.len();
    for i in 0..n {
        let a = v[i];
        let b = v[(i + 1) % n];
        let (x0, x1) = if a.x <= b.x { (a.x, b.x) } else { (b.x, a.x) };
        if t < x0 || t > x1 {
            continue;
        }
        if a.x == b.x {
            lo = lo.min(a.y.min(b.y));
            hi = hi.max(a.y.max(b.y));
        } else {
            let y = a.y + (t - a.x) * (b.y - a.y) / (b.x - a.x);
            lo = lo.min(y);
            hi = hi.max(y);
        }
    }
    if hi >= lo {
        hi - lo
    } else {
        0.0
    }
}

/// Measures of one side of a vertical cut.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SliceMeasures {
    pub t: f64,
    pub area: f64,
    /// `∫ x dA`
    pub area_moment_x: f64,
    /// Perimeter including the chord on `x = t`.
    pub perimeter: f64,
    /// `∫ x ds` over the boundary, chord included.
    pub boundary_moment_x: f64,
    pub chord: f64,
    degenerate: bool,
}

impl SliceMeasures {
    /// x-coordinate of the area centroid; `t` itself when the slice has no interior.
    pub fn area_centroid_x(&self) -> f64 {
        if self.degenerate {
            self.t
        } else {
            self.area_moment_x / self.area
        }
    }

    /// x-coordinate of the boundary centroid; `t` itself when the slice has no interior.
    pub fn boundary_centroid_x(&self) -> f64 {
        if self.degenerate {
            self.t
        } else {
            self.boundary_moment_x / self.perimeter
        }
    }

    /// Perimeter without the chord on `x = t`.
    pub fn open_perimeter(&self) -> f64 {
        self.perimeter - self.chord
    }
}

/// Area, perimeter, chord and first moments of `P ∩ {x ≤ t}` (or `x ≥ t`).
///
/// `t` is clamped to the projection of `P`; at the extreme abscissae the
/// slice is a point or a vertical segment (whose perimeter counts the
/// segment twice, matching the limit from inside).
pub fn slice_measures(poly: &ConvexPolygon, t: f64, side: Side) -> SliceMeasures {
    let (xmin, xmax) = poly.x_range();
    let t = t.clamp(xmin, xmax);
    let scale = poly.scale();
    let v = clip_vertices(poly.vertices(), t, side);
    let chord = chord_unchecked(poly.vertices(), t);
    if v.is_empty() {
        return SliceMeasures {
            t,
            area: 0.0,
            area_moment_x: 0.0,
            perimeter: 0.0,
            boundary_moment_x: 0.0,
            chord,
            degenerate: true,
        };
    }

    let o = v[0];
    let n = v.len();
    let (mut twice, mut mx) = (0.0, 0.0);
    for i in 1..n.saturating_sub(1) {
        let a = v[i] - o;
        let b = v[i + 1] - o;
        let w = a.cross(b);
        twice += w;
        mx += w * (a.x + b.x);
    }
    let (mut len, mut bx) = (0.0, 0.0);
    for i in 0..n {
        let a = v[i] - o;
        let b = v[(i + 1) % n] - o;
        let l = a.dist(b);
        len += l;
        bx += l * 0.5 * (a.x + b.x);
    }
    let area = 0.5 * twice;
    SliceMeasures {
        t,
        area,
        area_moment_x: area * o.x + mx / 6.0,
        perimeter: len,
        boundary_moment_x: len * o.x + bx,
        chord,
        degenerate: area <= 1e-12 * scale * scale,
    }
}
