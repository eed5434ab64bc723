//! Monte-Carlo centroid oracle, independent of the closed-form centroid code.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CentroidPair, ConvexPolygon, Point2};
use crate::error::{Error, Result};

/// Sampled centroids with per-coordinate standard errors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleEstimate {
    pub centroids: CentroidPair,
    pub area_std_err: Point2,
    pub boundary_std_err: Point2,
    /// Number of bounding-box samples that landed inside the polygon.
    pub area_hits: usize,
}

const MIN_SAMPLES: usize = 10_000;

/// Rejection sampling over the bounding box for the area centroid and
/// uniform-arclength sampling for the boundary centroid, `n_samples` each.
pub fn oracle_centroid_mc(
    poly: &ConvexPolygon,
    n_samples: usize,
    seed: u64,
) -> Result<OracleEstimate> {
    if n_samples < MIN_SAMPLES {
        return Err(Error::Domain(format!(
            "oracle needs at least {MIN_SAMPLES} samples, got {n_samples}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = poly.bounding_box();
    let edges: Vec<(Point2, Point2)> = poly.edges().collect();

    let mut area = Moments::default();
    for _ in 0..n_samples {
        let p = Point2::new(rng.random_range(lo.x..=hi.x), rng.random_range(lo.y..=hi.y));
        if edges.iter().all(|&(a, b)| (b - a).cross(p - a) >= 0.0) {
            area.push(p);
        }
    }

    let mut cumulative = Vec::with_capacity(edges.len());
    let mut total = 0.0;
    for &(a, b) in &edges {
        total += a.dist(b);
        cumulative.push(total);
    }
    let mut boundary = Moments::default();
    for _ in 0..n_samples {
        let s = rng.random_range(0.0..total);
        let i = cumulative.partition_point(|&c| c <= s).min(edges.len() - 1);
        let start = if i == 0 { 0.0 } else { cumulative[i - 1] };
        let (a, b) = edges[i];
        let frac = ((s - start) / (cumulative[i] - start)).clamp(0.0, 1.0);
        boundary.push(a.lerp(b, frac));
    }

    if area.n < 2 {
        return Err(Error::DegenerateInput(
            "no rejection samples landed inside the polygon".into(),
        ));
    }
    Ok(OracleEstimate {
        centroids: CentroidPair {
            c_area: area.mean(),
            c_boundary: boundary.mean(),
        },
        area_std_err: area.std_err(),
        boundary_std_err: boundary.std_err(),
        area_hits: area.n,
    })
}

/// Running mean/variance (Welford) of a planar sample.
#[derive(Debug, Default)]
struct Moments {
    n: usize,
    mean: Point2,
    m2: Point2,
}

impl Moments {
    fn push(&mut self, p: Point2) {
        self.n += 1;
        let k = self.n as f64;
        let dx = p.x - self.mean.x;
        let dy = p.y - self.mean.y;
        self.mean.x += dx / k;
        self.mean.y += dy / k;
        self.m2.x += dx * (p.x - self.mean.x);
        self.m2.y += dy * (p.y - self.mean.y);
    }

    fn mean(&self) -> Point2 {
        self.mean
    }

    fn std_err(&self) -> Point2 {
        let k = self.n as f64;
        Point2::new(
            (self.m2.x / (k - 1.0) / k).sqrt(),
            (self.m2.y / (k - 1.0) / k).sqrt(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::make_polygon;

    #[test]
    fn square_within_three_standard_errors() {
        let sq = make_polygon(&[
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ])
        .unwrap();
        let est = oracle_centroid_mc(&sq, 1_000_000, 42).unwrap();
        let c = est.centroids;
        assert!((c.c_area.x - 0.5).abs() <= 3.0 * est.area_std_err.x);
        assert!((c.c_area.y - 0.5).abs() <= 3.0 * est.area_std_err.y);
        assert!((c.c_boundary.x - 0.5).abs() <= 3.0 * est.boundary_std_err.x);
        assert!((c.c_boundary.y - 0.5).abs() <= 3.0 * est.boundary_std_err.y);
        // every bounding-box sample lands inside the square
        assert_eq!(est.area_hits, 1_000_000);
    }

    #[test]
    fn too_few_samples_rejected() {
        let tri = make_polygon(&[
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(0.0, 1.0),
        ])
        .unwrap();
        assert!(matches!(
            oracle_centroid_mc(&tri, 100, 1),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn deterministic_per_seed() {
        let tri = make_polygon(&[
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(0.0, 1.0),
        ])
        .unwrap();
        let a = oracle_centroid_mc(&tri, 20_000, 9).unwrap();
        let b = oracle_centroid_mc(&tri, 20_000, 9).unwrap();
        assert_eq!(a, b);
    }
}
