use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::Serialize;

use super::random::{derive_seed, unit_disk_point};
use super::triangle;
use crate::error::{Error, Result};
use crate::geom::{make_polygon, ConvexPolygon, Point2, UnitVector};

/// Epsilons of the triangle seeds injected into the first restarts.
const TRIANGLE_SEEDS: [f64; 3] = [0.1, 0.01, 0.001];
/// Consecutive rejections before the step size is halved.
const PATIENCE: usize = 20;
/// Angular resolution of the direction refinement.
const ANGLE_TOL: f64 = 1e-6;

/// Parameters of [`maximize_with`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SearchConfig {
    pub n_vertices: usize,
    /// Total ratio evaluations over all restarts.
    pub budget: usize,
    pub restarts: usize,
    pub seed: u64,
    /// Coarse direction grid over the half circle.
    pub directions: usize,
}

impl SearchConfig {
    pub fn new(n_vertices: usize, budget: usize, seed: u64) -> SearchConfig {
        SearchConfig {
            n_vertices,
            budget,
            restarts: 8,
            seed,
            directions: 64,
        }
    }
}

/// Best polygon found by a search.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchState {
    #[serde(serialize_with = "serialize_vertices")]
    pub best_polygon: ConvexPolygon,
    pub best_ratio: f64,
    /// Angle of the direction attaining `best_ratio`.
    pub best_direction: f64,
    pub evaluations: usize,
    pub seed: u64,
    pub n_vertices: usize,
    /// Restart that produced the best polygon.
    pub best_restart: usize,
}

fn serialize_vertices<S: serde::Serializer>(
    p: &ConvexPolygon,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(p.len()))?;
    for v in p.vertices() {
        seq.serialize_element(&[v.x, v.y])?;
    }
    seq.end()
}

/// `max_θ |⟨c(∂P) − c(P), θ⟩| / w(θ)` over a grid of `directions` angles on
/// `[0, π)`, refined by golden-section search around the best grid angle.
/// Returns `(ratio, angle)`.
pub fn max_ratio_over_directions(poly: &ConvexPolygon, directions: usize) -> (f64, f64) {
    let gap = poly.gap_vector();
    let ratio = |phi: f64| {
        let th = UnitVector::from_angle(phi);
        th.dot(gap).abs() / poly.width(th)
    };
    let n = directions.max(1);
    let step = PI / n as f64;
    let (mut best_phi, mut best) = (0.0, f64::NEG_INFINITY);
    for k in 0..n {
        let phi = step * k as f64;
        let r = ratio(phi);
        if r > best {
            (best_phi, best) = (phi, r);
        }
    }

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (best_phi - step / 2.0, best_phi + step / 2.0);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let (mut f1, mut f2) = (ratio(x1), ratio(x2));
    while b - a > ANGLE_TOL {
        if f1 < f2 {
            a = x1;
            (x1, f1) = (x2, f2);
            x2 = a + inv_phi * (b - a);
            f2 = ratio(x2);
        } else {
            b = x2;
            (x2, f2) = (x1, f1);
            x1 = b - inv_phi * (b - a);
            f1 = ratio(x1);
        }
    }
    for (phi, r) in [(x1, f1), (x2, f2)] {
        if r > best {
            (best_phi, best) = (phi, r);
        }
    }
    (best, best_phi.rem_euclid(PI))
}

struct RestartResult {
    polygon: ConvexPolygon,
    ratio: f64,
    direction: f64,
    evaluations: usize,
}

fn initial_points(restart: usize, n: usize, rng: &mut ChaCha8Rng) -> Vec<Point2> {
    if let Some(&eps) = TRIANGLE_SEEDS.get(restart) {
        let t = triangle(eps).expect("seed epsilons are valid");
        let mut pts = t.polygon.vertices().to_vec();
        let c = t.polygon.area_centroid();
        pts.resize(n, c);
        return pts;
    }
    let anisotropy = (rng.random::<f64>() * 100f64.ln()).exp();
    (0..n)
        .map(|_| {
            let p = unit_disk_point(rng);
            Point2::new(p.x * anisotropy, p.y)
        })
        .collect()
}

fn run_restart(cfg: &SearchConfig, restart: usize, budget: usize) -> Option<RestartResult> {
    if budget == 0 {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, restart as u64));
    let mut points = initial_points(restart, cfg.n_vertices, &mut rng);
    let mut polygon = loop {
        match make_polygon(&points) {
            Ok(p) => break p,
            Err(_) => points = initial_points(usize::MAX, cfg.n_vertices, &mut rng),
        }
    };
    let (mut ratio, mut direction) = max_ratio_over_directions(&polygon, cfg.directions);
    let mut evaluations = 1;

    let sigma0 = 0.1 * polygon.scale();
    let mut sigma = sigma0;
    let mut failures = 0;
    while evaluations < budget {
        let i = rng.random_range(0..points.len());
        let noise = Normal::new(0.0, sigma).expect("σ is positive and finite");
        let mut trial = points.clone();
        trial[i] = Point2::new(
            trial[i].x + noise.sample(&mut rng),
            trial[i].y + noise.sample(&mut rng),
        );
        evaluations += 1;
        let accepted = match make_polygon(&trial) {
            Ok(p) => {
                let (r, phi) = max_ratio_over_directions(&p, cfg.directions);
                if r > ratio {
                    (points, polygon, ratio, direction) = (trial, p, r, phi);
                    true
                } else {
                    false
                }
            }
            Err(_) => false,
        };
        if accepted {
            failures = 0;
        } else {
            failures += 1;
            if failures >= PATIENCE {
                failures = 0;
                sigma /= 2.0;
                if sigma < 1e-9 * polygon.scale() {
                    sigma = sigma0;
                }
            }
        }
    }
    Some(RestartResult {
        polygon,
        ratio,
        direction,
        evaluations,
    })
}

/// Random-restart hill climbing on the gap ratio of `n`-point hulls.
pub fn maximize_ratio(n: usize, budget: usize, seed: u64) -> Result<SearchState> {
    maximize_with(&SearchConfig::new(n, budget, seed))
}

/// Restarts run in parallel; the result depends only on the configuration.
pub fn maximize_with(cfg: &SearchConfig) -> Result<SearchState> {
    if cfg.n_vertices < 3 {
        return Err(Error::Domain(format!(
            "need at least 3 vertices, got {}",
            cfg.n_vertices
        )));
    }
    if cfg.budget == 0 {
        return Err(Error::Domain("budget must be at least 1".into()));
    }
    if cfg.restarts == 0 || cfg.directions == 0 {
        return Err(Error::Domain(
            "restarts and directions must be at least 1".into(),
        ));
    }
    let per = cfg.budget / cfg.restarts;
    let extra = cfg.budget % cfg.restarts;
    let results: Vec<Option<RestartResult>> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| run_restart(cfg, r, per + usize::from(r < extra)))
        .collect();

    let evaluations = results.iter().flatten().map(|r| r.evaluations).sum();
    let (best_restart, best) = results
        .into_iter()
        .enumerate()
        .filter_map(|(i, r)| r.map(|r| (i, r)))
        .reduce(|acc, cur| if cur.1.ratio > acc.1.ratio { cur } else { acc })
        .expect("budget ≥ 1 runs at least one restart");
    Ok(SearchState {
        best_polygon: best.polygon,
        best_ratio: best.ratio,
        best_direction: best.direction,
        evaluations,
        seed: cfg.seed,
        n_vertices: cfg.n_vertices,
        best_restart,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::GAP_BOUND;

    #[test]
    fn direction_search_finds_triangle_axis() {
        let t = triangle(0.01).unwrap();
        let (r, phi) = max_ratio_over_directions(&t.polygon, 64);
        assert!((r - t.polygon.gap_ratio(UnitVector::E1)).abs() < 1e-9);
        assert!(phi < 1e-5 || PI - phi < 1e-5, "φ={phi}");
    }

    #[test]
    fn refinement_beats_grid() {
        let p = crate::extremal::random_convex_polygon(9, 3, 3.0).unwrap();
        let (fine, phi) = max_ratio_over_directions(&p, 64);
        let coarse = (0..64)
            .map(|k| p.gap_ratio(UnitVector::from_angle(PI * k as f64 / 64.0)))
            .fold(0.0, f64::max);
        assert!(fine >= coarse);
        assert!((p.gap_ratio(UnitVector::from_angle(phi)) - fine).abs() < 1e-15);
    }

    #[test]
    fn triangle_seeds_give_the_floor() {
        let s = maximize_ratio(3, 2_000, 1).unwrap();
        assert!(
            s.best_ratio >= 0.16 && s.best_ratio <= GAP_BOUND + 1e-9,
            "{}",
            s.best_ratio
        );
        assert_eq!(s.evaluations, 2_000);
        assert_eq!(s.n_vertices, 3);
    }

    #[test]
    fn reproducible() {
        let a = maximize_ratio(5, 800, 9).unwrap();
        let b = maximize_ratio(5, 800, 9).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn bad_configs() {
        assert!(maximize_ratio(2, 100, 0).is_err());
        assert!(maximize_ratio(4, 0, 0).is_err());
    }

    #[test]
    fn tiny_budget_uses_first_restart() {
        let s = maximize_ratio(4, 1, 0).unwrap();
        assert_eq!(s.evaluations, 1);
        assert_eq!(s.best_restart, 0);
    }
}
