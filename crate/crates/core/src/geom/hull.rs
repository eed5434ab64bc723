use super::{bounding_box, signed_area, ConvexPolygon, Point2};
use crate::error::{Error, Result};

/// Relative size below which two points count as the same vertex.
const DUPLICATE_REL: f64 = 1e-12;
/// Minimum area, relative to the squared bounding-box diagonal.
const MIN_AREA_REL: f64 = 1e-12;

/// Convex hull of `points`, counterclockwise, with duplicate and collinear
/// vertices removed.
pub fn make_polygon(points: &[Point2]) -> Result<ConvexPolygon> {
    if points.len() < 3 {
        return Err(Error::DegenerateInput(format!(
            "need at least 3 points, got {}",
            points.len()
        )));
    }
    if let Some(i) = points.iter().position(|p| !p.is_finite()) {
        return Err(Error::DegenerateInput(format!("point {i} is not finite")));
    }

    let (lo, hi) = bounding_box(points);
    let diag = lo.dist(hi);
    if !(diag > 0.0) || !diag.is_finite() {
        return Err(Error::DegenerateInput("all points coincide".into()));
    }

    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    let dup = DUPLICATE_REL * diag;
    pts.dedup_by(|b, a| a.dist(*b) <= dup);

    let hull = monotone_chain(&pts);
    let hull = drop_near_duplicates(hull, dup);
    if hull.len() < 3 {
        return Err(Error::DegenerateInput(format!(
            "convex hull has {} vertices",
            hull.len()
        )));
    }
    let area = signed_area(&hull);
    if !(area > MIN_AREA_REL * diag * diag) {
        return Err(Error::DegenerateInput(format!(
            "hull area {area:e} is below the threshold for scale {diag:e}"
        )));
    }
    Ok(ConvexPolygon::from_ccw_unchecked(hull))
}

/// Andrew's monotone chain; `pts` sorted lexicographically. Collinear points
/// are discarded (a non-left turn pops).
fn monotone_chain(pts: &[Point2]) -> Vec<Point2> {
    let turn = |o: Point2, a: Point2, b: Point2| (a - o).cross(b - o);
    let mut hull: Vec<Point2> = Vec::with_capacity(pts.len() + 1);
    for &p in pts {
        while hull.len() >= 2 && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0
        {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

fn drop_near_duplicates(mut hull: Vec<Point2>, dup: f64) -> Vec<Point2> {
    let mut i = 0;
    while hull.len() > 1 && i < hull.len() {
        let j = (i + 1) % hull.len();
        if hull[i].dist(hull[j]) <= dup {
            hull.remove(j);
        } else {
            i += 1;
        }
    }
    hull
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(f64, f64)]) -> Vec<Point2> {
        v.iter().map(|&p| p.into()).collect()
    }

    #[test]
    fn square_stays_square() {
        let p = make_polygon(&pts(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])).unwrap();
        assert_eq!(
            p.vertices(),
            pts(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]).as_slice()
        );
    }

    #[test]
    fn collinear_vertex_dropped() {
        let p = make_polygon(&pts(&[(0.0, 0.0), (2.0, 0.0), (1.0, 0.0), (1.0, 1.0)])).unwrap();
        assert_eq!(
            p.vertices(),
            pts(&[(0.0, 0.0), (2.0, 0.0), (1.0, 1.0)]).as_slice()
        );
    }

    #[test]
    fn too_few_points() {
        let e = make_polygon(&pts(&[(0.0, 0.0), (1.0, 0.0)])).unwrap_err();
        assert!(matches!(e, Error::DegenerateInput(_)));
    }

    #[test]
    fn collinear_input_rejected() {
        let e = make_polygon(&pts(&[(0.0, 0.0), (1.0, 1.0), (2.0, 2.0), (3.0, 3.0)])).unwrap_err();
        assert!(matches!(e, Error::DegenerateInput(_)));
    }

    #[test]
    fn non_finite_rejected() {
        let e = make_polygon(&pts(&[(0.0, 0.0), (1.0, f64::NAN), (0.0, 1.0)])).unwrap_err();
        assert!(matches!(e, Error::DegenerateInput(_)));
    }

    #[test]
    fn duplicates_and_interior_points_removed() {
        let p = make_polygon(&pts(&[
            (0.0, 0.0),
            (1.0, 0.0),
            (1.0, 0.0),
            (0.5, 0.2),
            (0.0, 1.0),
            (1e-14, 1.0),
        ]))
        .unwrap();
        assert_eq!(p.len(), 3);
    }

    #[test]
    fn clockwise_input_is_reoriented() {
        let p = make_polygon(&pts(&[(0.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, 0.0)])).unwrap();
        assert!(p.area() > 0.0);
        let v = p.vertices();
        for i in 0..v.len() {
            let a = v[i];
            let b = v[(i + 1) % v.len()];
            let c = v[(i + 2) % v.len()];
            assert!((b - a).cross(c - b) > 0.0);
        }
    }
}
