//! Exact-formula primitives for planar convex polygons.

mod hull;
mod oracle;
mod slice;

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use hull::make_polygon;
pub use oracle::{oracle_centroid_mc, OracleEstimate};
pub use slice::{chord_length, clip_below, slice_measures, Clip, Side, SliceMeasures};

/// A point (or vector) of the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn dot(self, o: Point2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3-D cross product.
    pub fn cross(self, o: Point2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point2) -> f64 {
        (self - o).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn lerp(self, o: Point2, s: f64) -> Point2 {
        Point2::new(self.x + (o.x - self.x) * s, self.y + (o.y - self.y) * s)
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, s: f64) -> Point2 {
        Point2::new(self.x * s, self.y * s)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

impl From<(f64, f64)> for Point2 {
    fn from((x, y): (f64, f64)) -> Self {
        Point2::new(x, y)
    }
}

/// A direction of the plane; `x² + y² = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitVector {
    x: f64,
    y: f64,
}

impl UnitVector {
    pub const E1: UnitVector = UnitVector { x: 1.0, y: 0.0 };
    pub const E2: UnitVector = UnitVector { x: 0.0, y: 1.0 };

    /// Normalizes `(x, y)`; fails on a zero or non-finite vector.
    pub fn new(x: f64, y: f64) -> Result<Self> {
        let n = x.hypot(y);
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::Domain(format!("cannot normalize ({x}, {y})")));
        }
        Ok(UnitVector { x: x / n, y: y / n })
    }

    pub fn from_angle(phi: f64) -> Self {
        let (s, c) = phi.sin_cos();
        UnitVector { x: c, y: s }
    }

    pub fn x(self) -> f64 {
        self.x
    }

    pub fn y(self) -> f64 {
        self.y
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn as_point(self) -> Point2 {
        Point2::new(self.x, self.y)
    }

    pub fn dot(self, p: Point2) -> f64 {
        self.x * p.x + self.y * p.y
    }
}

impl Neg for UnitVector {
    type Output = UnitVector;
    fn neg(self) -> UnitVector {
        UnitVector {
            x: -self.x,
            y: -self.y,
        }
    }
}

/// `n` directions evenly spaced on the full circle, starting at `(1, 0)`.
pub fn direction_grid(n: usize) -> Vec<UnitVector> {
    (0..n)
        .map(|k| UnitVector::from_angle(std::f64::consts::TAU * k as f64 / n as f64))
        .collect()
}

/// Area and boundary centroids of one body.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CentroidPair {
    pub c_area: Point2,
    pub c_boundary: Point2,
}

/// A strictly convex polygon with counterclockwise vertices.
///
/// Built only through [`make_polygon`] (or transformations of an existing
/// polygon), so every instance satisfies the convexity, distinctness and
/// minimum-area invariants.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Point2>,
}

impl ConvexPolygon {
    /// Caller guarantees the invariants (e.g. a similarity image of a valid polygon).
    pub(crate) fn from_ccw_unchecked(vertices: Vec<Point2>) -> Self {
        debug_assert!(vertices.len() >= 3);
        ConvexPolygon { vertices }
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edges `(v_i, v_{i+1})`, closing back to the first vertex.
    pub fn edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// `(min, max)` corner of the bounding box.
    pub fn bounding_box(&self) -> (Point2, Point2) {
        bounding_box(&self.vertices)
    }

    /// Diagonal of the bounding box; the length scale for all relative tolerances.
    pub fn scale(&self) -> f64 {
        let (lo, hi) = self.bounding_box();
        lo.dist(hi)
    }

    /// `[min x, max x]`.
    pub fn x_range(&self) -> (f64, f64) {
        let (lo, hi) = self.bounding_box();
        (lo.x, hi.x)
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    pub fn perimeter(&self) -> f64 {
        self.edges().map(|(a, b)| a.dist(b)).sum()
    }

    /// `(area, perimeter)`.
    pub fn measures(&self) -> (f64, f64) {
        (self.area(), self.perimeter())
    }

    /// Centroid of the uniform area density.
    pub fn area_centroid(&self) -> Point2 {
        area_centroid_of(&self.vertices)
    }

    /// Centroid of the uniform arclength density on the boundary.
    pub fn boundary_centroid(&self) -> Point2 {
        boundary_centroid_of(&self.vertices)
    }

    pub fn centroids(&self) -> CentroidPair {
        CentroidPair {
            c_area: self.area_centroid(),
            c_boundary: self.boundary_centroid(),
        }
    }

    /// `max_v ⟨v, d⟩`.
    pub fn support_value(&self, d: UnitVector) -> f64 {
        self.vertices
            .iter()
            .map(|&v| d.dot(v))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Distance between the two support lines orthogonal to `theta`.
    pub fn width(&self, theta: UnitVector) -> f64 {
        self.support_value(theta) + self.support_value(-theta)
    }

    /// Largest vertex-to-vertex distance, via rotating calipers.
    pub fn diameter(&self) -> f64 {
        let d = diameter_calipers(&self.vertices);
        debug_assert!(
            (d - self.diameter_brute_force()).abs() <= 1e-12 * self.scale(),
            "calipers and quadratic scan disagree"
        );
        d
    }

    /// Quadratic scan over all vertex pairs.
    pub fn diameter_brute_force(&self) -> f64 {
        let v = &self.vertices;
        let mut best = 0.0f64;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                best = best.max(v[i].dist(v[j]));
            }
        }
        best
    }

    /// `⟨c(∂P) − c(P), θ⟩`, signed.
    pub fn gap_projection(&self, theta: UnitVector) -> f64 {
        theta.dot(self.gap_vector())
    }

    /// `c(∂P) − c(P)`.
    pub fn gap_vector(&self) -> Point2 {
        self.boundary_centroid() - self.area_centroid()
    }

    /// `|⟨c(∂P) − c(P), θ⟩| / w(θ)`; never exceeds 1/6.
    pub fn gap_ratio(&self, theta: UnitVector) -> f64 {
        self.gap_projection(theta).abs() / self.width(theta)
    }

    /// Closed point-in-polygon test with a tolerance relative to the scale.
    pub fn contains(&self, p: Point2, rel_tol: f64) -> bool {
        let tol = rel_tol * self.scale();
        self.edges().all(|(a, b)| {
            let e = b - a;
            let len = e.norm();
            e.cross(p - a) >= -tol * len
        })
    }

    /// Rotate by `-angle(θ)`, so that `θ` maps to `(1, 0)`.
    pub fn rotate_to_e1(&self, theta: UnitVector) -> ConvexPolygon {
        let (c, s) = (theta.x(), theta.y());
        let v = self
            .vertices
            .iter()
            .map(|p| Point2::new(p.x * c + p.y * s, -p.x * s + p.y * c))
            .collect();
        ConvexPolygon::from_ccw_unchecked(v)
    }

    /// Rotate by `angle` about the origin.
    pub fn rotated(&self, angle: f64) -> ConvexPolygon {
        let (s, c) = angle.sin_cos();
        let v = self
            .vertices
            .iter()
            .map(|p| Point2::new(p.x * c - p.y * s, p.x * s + p.y * c))
            .collect();
        ConvexPolygon::from_ccw_unchecked(v)
    }

    /// `p ↦ (p + shift) · factor` with `factor > 0`.
    pub fn translated_scaled(&self, shift: Point2, factor: f64) -> ConvexPolygon {
        assert!(
            factor > 0.0 && factor.is_finite(),
            "scale factor must be positive"
        );
        let v = self
            .vertices
            .iter()
            .map(|&p| (p + shift) * factor)
            .collect();
        ConvexPolygon::from_ccw_unchecked(v)
    }

    /// Mirror image under `x ↦ −x`, re-oriented counterclockwise.
    pub fn reflected_x(&self) -> ConvexPolygon {
        let v = self
            .vertices
            .iter()
            .rev()
            .map(|p| Point2::new(-p.x, p.y))
            .collect();
        ConvexPolygon::from_ccw_unchecked(v)
    }
}

pub(crate) fn bounding_box(points: &[Point2]) -> (Point2, Point2) {
    let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in points {
        lo.x = lo.x.min(p.x);
        lo.y = lo.y.min(p.y);
        hi.x = hi.x.max(p.x);
        hi.y = hi.y.max(p.y);
    }
    (lo, hi)
}

/// Shoelace area, accumulated relative to the first vertex.
pub(crate) fn signed_area(v: &[Point2]) -> f64 {
    if v.len() < 3 {
        return 0.0;
    }
    let o = v[0];
    let mut twice = 0.0;
    for i in 1..v.len() - 1 {
        twice += (v[i] - o).cross(v[i + 1] - o);
    }
    0.5 * twice
}

pub(crate) fn area_centroid_of(v: &[Point2]) -> Point2 {
    let o = v[0];
    let (mut twice, mut mx, mut my) = (0.0, 0.0, 0.0);
    for i in 1..v.len() - 1 {
        let a = v[i] - o;
        let b = v[i + 1] - o;
        let w = a.cross(b);
        twice += w;
        mx += w * (a.x + b.x);
        my += w * (a.y + b.y);
    }
    o + Point2::new(mx, my) * (1.0 / (3.0 * twice))
}

pub(crate) fn boundary_centroid_of(v: &[Point2]) -> Point2 {
    let o = v[0];
    let n = v.len();
    let (mut len, mut mx, mut my) = (0.0, 0.0, 0.0);
    for i in 0..n {
        let a = v[i] - o;
        let b = v[(i + 1) % n] - o;
        let l = a.dist(b);
        len += l;
        mx += l * 0.5 * (a.x + b.x);
        my += l * 0.5 * (a.y + b.y);
    }
    o + Point2::new(mx / len, my / len)
}

fn diameter_calipers(v: &[Point2]) -> f64 {
    let n = v.len();
    if n == 3 {
        return v[0].dist(v[1]).max(v[1].dist(v[2])).max(v[2].dist(v[0]));
    }
    // Twice the area of triangle (a, b, c); antipodal vertex search per edge.
    let tri = |a: Point2, b: Point2, c: Point2| (b - a).cross(c - a);
    let mut best = 0.0f64;
    let mut j = 1;
    for i in 0..n {
        let a = v[i];
        let b = v[(i + 1) % n];
        while tri(a, b, v[(j + 1) % n]) > tri(a, b, v[j]) {
            j = (j + 1) % n;
        }
        best = best.max(a.dist(v[j])).max(b.dist(v[j]));
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(pts: &[(f64, f64)]) -> ConvexPolygon {
        make_polygon(&pts.iter().map(|&p| p.into()).collect::<Vec<_>>()).unwrap()
    }

    fn unit_square() -> ConvexPolygon {
        poly(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])
    }

    fn t_eps(eps: f64) -> ConvexPolygon {
        poly(&[(0.0, 0.0), (1.0, eps), (1.0, -eps)])
    }

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn measures_of_basic_shapes() {
        let (a, p) = unit_square().measures();
        close(a, 1.0, 1e-15);
        close(p, 4.0, 1e-15);

        let (a, p) = poly(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]).measures();
        close(a, 0.5, 1e-15);
        close(p, 2.0 + 2f64.sqrt(), 1e-15);

        for eps in [0.1, 0.01, 1e-4] {
            let (a, p) = t_eps(eps).measures();
            close(a, eps, 1e-15);
            close(p, 2.0 * (1.0 + eps * eps).sqrt() + 2.0 * eps, 1e-14);
        }
    }

    #[test]
    fn centroids_of_basic_shapes() {
        let tri = poly(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]);
        let c = tri.area_centroid();
        close(c.x, 1.0 / 3.0, 1e-15);
        close(c.y, 1.0 / 3.0, 1e-15);
        let b = tri.boundary_centroid();
        close(b.x, 2f64.sqrt() / 4.0, 1e-15);
        close(b.y, 2f64.sqrt() / 4.0, 1e-15);

        let sq = unit_square().centroids();
        assert_eq!(sq.c_area, Point2::new(0.5, 0.5));
        assert_eq!(sq.c_boundary, Point2::new(0.5, 0.5));
    }

    #[test]
    fn thin_triangle_boundary_centroid_distance_to_base() {
        // √(1+ε²)/(2ε+2√(1+ε²)) at ε = 0.1
        let b = t_eps(0.1).boundary_centroid();
        let r = 1.01f64.sqrt();
        close(1.0 - b.x, r / (0.2 + 2.0 * r), 1e-15);
        close(1.0 - b.x, 0.454_750_621_894_395_5, 1e-15);
        close(b.y, 0.0, 1e-16);
    }

    #[test]
    fn support_and_width() {
        let sq = unit_square();
        assert_eq!(sq.support_value(UnitVector::E1), 1.0);
        assert_eq!(sq.support_value(-UnitVector::E1), 0.0);
        assert_eq!(sq.width(UnitVector::E1), 1.0);
        let tri = poly(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]);
        let d = UnitVector::new(1.0, 1.0).unwrap();
        close(tri.support_value(d), 1.0 / 2f64.sqrt(), 1e-15);

        let t = t_eps(0.05);
        close(t.width(UnitVector::E1), 1.0, 1e-15);
        close(t.width(UnitVector::E2), 0.1, 1e-15);
    }

    #[test]
    fn diameters() {
        close(unit_square().diameter(), 2f64.sqrt(), 1e-15);
        close(t_eps(0.1).diameter(), 1.01f64.sqrt(), 1e-15);
        let thin = poly(&[(0.0, 0.0), (10.0, 0.0), (10.0, 0.1), (0.0, 0.1)]);
        close(thin.diameter(), 100.01f64.sqrt(), 1e-13);
    }

    #[test]
    fn gap_projection_signs() {
        let sq = unit_square();
        for k in 0..8 {
            let th = UnitVector::from_angle(k as f64);
            assert!(sq.gap_projection(th).abs() < 1e-15);
        }
        // The boundary centroid of T(ε) sits on the apex side of the area
        // centroid, so the gap points along −x for this placement.
        let t = t_eps(0.1);
        let expected = 1.0 / 6.0 + 0.005 - 0.05 * 1.01f64.sqrt();
        close(t.gap_projection(-UnitVector::E1), expected, 1e-15);
        close(t.gap_projection(UnitVector::E1), -expected, 1e-15);
        close(
            t.gap_projection(UnitVector::E1),
            -0.121_417_288_561_062_2,
            1e-15,
        );
    }

    #[test]
    fn gap_ratio_of_thin_triangle() {
        close(
            t_eps(0.001).gap_ratio(UnitVector::E1),
            0.166_167_166_416_666_7,
            1e-12,
        );
        assert_eq!(unit_square().gap_ratio(UnitVector::E1), 0.0);
    }

    #[test]
    fn reflection_keeps_ccw() {
        let p = poly(&[(0.0, 0.0), (3.0, 0.2), (3.0, 1.4), (0.0, 1.0)]);
        let r = p.reflected_x();
        assert!(r.area() > 0.0);
        close(r.area(), p.area(), 1e-14);
        close(r.area_centroid().x, -p.area_centroid().x, 1e-14);
    }
}
