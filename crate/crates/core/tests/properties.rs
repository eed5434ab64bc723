use proptest::prelude::*;

use centroid_gap::extremal::random_convex_polygon;
use centroid_gap::frame::normalize;
use centroid_gap::geom::{chord_length, make_polygon, slice_measures, Side};
use centroid_gap::lemmas::run_lemma_suite;
use centroid_gap::report::{parse_polygon, polygon_to_csv, polygon_to_json};
use centroid_gap::{ConvexPolygon, Point2, UnitVector, GAP_BOUND};

fn polygon() -> impl Strategy<Value = ConvexPolygon> {
    (3usize..=30, any::<u64>(), 1.0f64..100.0)
        .prop_map(|(n, seed, aniso)| random_convex_polygon(n, seed, aniso).unwrap())
}

fn angle() -> impl Strategy<Value = f64> {
    -std::f64::consts::PI..std::f64::consts::PI
}

proptest! {
    #[test]
    fn ratio_never_exceeds_a_sixth(p in polygon(), phi in angle()) {
        prop_assert!(p.gap_ratio(UnitVector::from_angle(phi)) <= GAP_BOUND + 1e-9);
    }

    #[test]
    fn similarity_invariance(
        p in polygon(),
        phi in angle(),
        rot in angle(),
        dx in -1e3f64..1e3,
        dy in -1e3f64..1e3,
        k in 1e-3f64..1e3,
    ) {
        let q = p.rotated(rot).translated_scaled(Point2::new(dx, dy), k);
        let r0 = p.gap_ratio(UnitVector::from_angle(phi));
        let r1 = q.gap_ratio(UnitVector::from_angle(phi + rot));
        prop_assert!((r0 - r1).abs() <= 1e-9, "{} vs {}", r0, r1);
    }

    #[test]
    fn central_symmetry_has_no_gap(p in polygon()) {
        let mut pts: Vec<Point2> = p.vertices().to_vec();
        pts.extend(p.vertices().iter().map(|&v| -v));
        let s = make_polygon(&pts).unwrap();
        prop_assert!(s.gap_vector().norm() <= 1e-12 * s.scale());
    }

    #[test]
    fn centroids_lie_inside(p in polygon()) {
        let c = p.centroids();
        prop_assert!(p.contains(c.c_area, 1e-12));
        prop_assert!(p.contains(c.c_boundary, 1e-12));
    }

    #[test]
    fn width_and_gap_under_reversal(p in polygon(), phi in angle()) {
        let th = UnitVector::from_angle(phi);
        prop_assert!((p.width(th) - p.width(-th)).abs() <= 1e-12 * p.scale());
        prop_assert!((p.gap_projection(th) + p.gap_projection(-th)).abs() <= 1e-12 * p.scale());
        prop_assert!(p.width(th) <= p.diameter() * (1.0 + 1e-12));
    }

    #[test]
    fn clipped_area_is_monotone(p in polygon(), s in 0.0f64..1.0, ds in 0.0f64..1.0) {
        let (lo, hi) = p.x_range();
        let t0 = lo + s * (hi - lo);
        let t1 = t0 + ds * (hi - t0);
        let a0 = slice_measures(&p, t0, Side::Below);
        let a1 = slice_measures(&p, t1, Side::Below);
        let tol = 1e-12 * p.scale() * p.scale();
        prop_assert!(a0.area <= a1.area + tol);
        prop_assert!(a0.perimeter <= a1.perimeter + 1e-12 * p.scale());
        let above = slice_measures(&p, t0, Side::Above);
        prop_assert!((a0.area + above.area - p.area()).abs() <= 1e-9 * p.area());
    }

    #[test]
    fn chord_is_concave(p in polygon(), s in 0.0f64..1.0, r in 0.0f64..1.0) {
        let (lo, hi) = p.x_range();
        let a = lo + s * (hi - lo);
        let b = lo + r * (hi - lo);
        let mid = chord_length(&p, 0.5 * (a + b)).unwrap();
        let avg = 0.5 * (chord_length(&p, a).unwrap() + chord_length(&p, b).unwrap());
        prop_assert!(mid >= avg - 1e-9 * p.scale());
    }

    #[test]
    fn generator_is_deterministic(n in 3usize..=30, seed in any::<u64>(), aniso in 1.0f64..100.0) {
        prop_assert_eq!(
            random_convex_polygon(n, seed, aniso).unwrap(),
            random_convex_polygon(n, seed, aniso).unwrap()
        );
    }

    #[test]
    fn files_round_trip(p in polygon()) {
        prop_assert_eq!(&parse_polygon(&polygon_to_json(&p)).unwrap(), &p);
        prop_assert_eq!(&parse_polygon(&polygon_to_csv(&p)).unwrap(), &p);
    }

    #[test]
    fn normalization_preserves_ratio(p in polygon(), phi in angle()) {
        let th = UnitVector::from_angle(phi);
        let f = normalize(&p, th).unwrap();
        let (lo, hi) = f.polygon.x_range();
        prop_assert_eq!(lo, -1.0);
        prop_assert!((hi - f.scalars.omega).abs() <= 1e-12 * (1.0 + hi));
        let r = f.polygon.gap_ratio(UnitVector::E1);
        prop_assert!((r - p.gap_ratio(th)).abs() <= 1e-9, "{} vs {}", r, p.gap_ratio(th));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lemma_suite_passes(p in polygon(), phi in angle()) {
        let r = run_lemma_suite(&p, UnitVector::from_angle(phi), 128, 1e-9).unwrap();
        for c in &r.checks {
            prop_assert!(c.pass, "{:?}", c);
        }
    }
}
