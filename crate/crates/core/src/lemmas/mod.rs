//! Numeric verifiers for the auxiliary inequalities behind the centroid-gap
//! bound.
//!
//! Geometric checks run on a polygon in its normalized frame (see
//! [`crate::frame`]) together with a slicing profile sampled on `[−1, ω]`.
//! Scalar and region checks need no geometry.

mod geometric;
mod pointwise;
mod region;
mod scalar;

use serde::Serialize;

use crate::check::CheckReport;
use crate::error::{Error, Result};
use crate::frame::{frame_scalars_valid, normalize, FrameScalars, NormalizedFrame};
use crate::geom::{ConvexPolygon, UnitVector};
use crate::sweep::{sample_abscissae, uniform_grid, Profile, ProfileSample, DEFAULT_GRID_POINTS};

pub use geometric::{
    ca_omega_check, combined_bound_check, cp_omega_check, frame_region_check, integral_bound_check,
    lemma1_check, lemma2_check, lemma3_check, lemma3_sign_check, lemma4_check, lemma5_check,
    perimeter_right_check, star_star_check, star_star_star_check,
};
pub use pointwise::{pointwise_bounds_check, PointwiseReport};
pub use region::{
    closing_factorizations_check, region_inequalities_check, RegionReport, RegionSample,
};
pub use scalar::{
    quintic, quintic_check, tan_equality_check, tan_inequality_check, tan_iterated_check,
    tan_sampled_check, IntPoly,
};

/// Uniform points on `[−1, 0]` used by the lemma checks (vertex abscissae are
/// always added).
pub const LEMMA_GRID_POINTS: usize = 512;

/// Abscissae with `|t + 1|` below this are left out of pointwise checks.
pub const LEFT_GUARD: f64 = 1e-6;

/// Abscissae with `|t|` below this are left out of checks on the open
/// interval `(−1, 0)`.
pub const ZERO_GUARD: f64 = 1e-12;

/// A normalized frame with its slicing profile.
#[derive(Debug, Clone)]
pub struct FrameProfile {
    pub frame: NormalizedFrame,
    pub profile: Profile,
}

impl FrameProfile {
    /// Profile on vertex abscissae plus `grid_points` uniform points on each
    /// of `[−1, 0]` and `[0, ω]`.
    pub fn new(frame: NormalizedFrame, grid_points: usize) -> Result<FrameProfile> {
        FrameProfile::with_abscissae(frame, grid_points, &[])
    }

    /// Like [`FrameProfile::new`], with extra sample abscissae.
    pub fn with_abscissae(
        frame: NormalizedFrame,
        grid_points: usize,
        extra: &[f64],
    ) -> Result<FrameProfile> {
        if grid_points < 2 {
            return Err(Error::Domain(format!(
                "grid_points must be ≥ 2, got {grid_points}"
            )));
        }
        let omega = frame.omega();
        let mut grid = uniform_grid(-1.0, 0.0, grid_points);
        if omega > 0.0 {
            grid.extend(uniform_grid(0.0, omega, grid_points).into_iter().skip(1));
        }
        let mut required = vec![0.0];
        required.extend_from_slice(extra);
        let ts = sample_abscissae(&frame.polygon, &grid, &required);
        let profile = Profile::at_abscissae(&frame.polygon, &ts, 0.0)?;
        Ok(FrameProfile { frame, profile })
    }

    pub fn scalars(&self) -> &FrameScalars {
        &self.frame.scalars
    }

    /// The sample at `t = 0`.
    pub fn at_zero(&self) -> &ProfileSample {
        self.profile.at_reference()
    }

    /// Samples with `−1 < t ≤ 0`, excluding `|t + 1| < LEFT_GUARD` and, if
    /// `open`, also `|t| < ZERO_GUARD`.
    pub fn left_samples(&self, open: bool) -> impl Iterator<Item = &ProfileSample> {
        self.profile.samples().iter().filter(move |s| {
            s.t <= 0.0 && (s.t + 1.0).abs() >= LEFT_GUARD && !(open && s.t.abs() < ZERO_GUARD)
        })
    }
}

/// A check that could not run, with the reason.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SkippedCheck {
    pub name: String,
    pub reason: String,
}

/// All geometric checks for one polygon and direction.
#[derive(Debug, Clone, Serialize)]
pub struct LemmaSuiteReport {
    pub frame: FrameScalars,
    pub grid_points: usize,
    pub checks: Vec<CheckReport>,
    pub skipped: Vec<SkippedCheck>,
    /// Grid points evaluated / skipped by the pointwise fractional bound.
    pub pointwise_evaluated: usize,
    pub pointwise_skipped: usize,
}

impl LemmaSuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Fraction of pointwise grid points where the fractional bound was skipped.
    pub fn pointwise_skip_fraction(&self) -> f64 {
        let total = self.pointwise_evaluated + self.pointwise_skipped;
        if total == 0 {
            0.0
        } else {
            self.pointwise_skipped as f64 / total as f64
        }
    }
}

/// Normalize `poly` for `theta` and run every geometric check.
pub fn run_lemma_suite(
    poly: &ConvexPolygon,
    theta: UnitVector,
    grid_points: usize,
    rel_tol: f64,
) -> Result<LemmaSuiteReport> {
    let frame = normalize(poly, theta)?;
    let fp = FrameProfile::new(frame, grid_points)?;
    Ok(suite_for(&fp, grid_points, rel_tol))
}

/// Every geometric check on an already built frame profile.
pub fn suite_for(fp: &FrameProfile, grid_points: usize, rel_tol: f64) -> LemmaSuiteReport {
    let poly = &fp.frame.polygon;
    let prof = &fp.profile;
    let mut checks = vec![
        frame_scalars_valid(&fp.frame, rel_tol),
        lemma1_check(fp, rel_tol),
        lemma2_check(fp, rel_tol),
        lemma3_check(fp, rel_tol),
        lemma3_sign_check(fp, rel_tol),
    ];
    let mut skipped = Vec::new();
    let mut record = |name: &str, r: Result<CheckReport>, checks: &mut Vec<CheckReport>| match r {
        Ok(c) => checks.push(c),
        Err(e) => skipped.push(SkippedCheck {
            name: name.to_string(),
            reason: e.to_string(),
        }),
    };
    record("lemma4", lemma4_check(fp, rel_tol), &mut checks);
    checks.push(lemma5_check(fp, rel_tol));
    checks.push(star_star_check(fp, rel_tol));
    checks.push(star_star_star_check(fp, rel_tol));
    checks.push(prof.concavity_check(rel_tol));
    checks.push(prof.invariants_check(rel_tol));
    // the quadrature identities need a finer grid than the lemma checks
    match FrameProfile::new(fp.frame.clone(), DEFAULT_GRID_POINTS.max(grid_points)) {
        Ok(fine) => {
            checks.push(fine.profile.verify_cp_identity());
            checks.push(fine.profile.integral_identity_check());
        }
        Err(e) => record("integral_identity", Err(e), &mut checks),
    }
    checks.push(prof.endpoint_consistency_check(poly, rel_tol));
    let pw = pointwise_bounds_check(fp, rel_tol);
    checks.extend(pw.checks.iter().cloned());
    checks.push(integral_bound_check(fp, rel_tol));
    record(
        "perimeter_right_bound",
        perimeter_right_check(fp, rel_tol),
        &mut checks,
    );
    record("cp_omega_bound", cp_omega_check(fp, rel_tol), &mut checks);
    record("ca_omega_bound", ca_omega_check(fp, rel_tol), &mut checks);
    record(
        "combined_bound",
        combined_bound_check(fp, rel_tol),
        &mut checks,
    );
    record("frame_region", frame_region_check(fp, rel_tol), &mut checks);
    LemmaSuiteReport {
        frame: fp.frame.scalars,
        grid_points,
        checks,
        skipped,
        pointwise_evaluated: pw.evaluated,
        pointwise_skipped: pw.skipped,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{make_polygon, Point2};

    fn poly(pts: &[(f64, f64)]) -> ConvexPolygon {
        make_polygon(&pts.iter().map(|&p| p.into()).collect::<Vec<_>>()).unwrap()
    }

    fn assert_all_pass(r: &LemmaSuiteReport) {
        for c in &r.checks {
            assert!(c.pass, "{c:?}");
        }
    }

    #[test]
    fn unit_square_suite() {
        let sq = poly(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
        let r = run_lemma_suite(&sq, UnitVector::E1, LEMMA_GRID_POINTS, 1e-9).unwrap();
        assert_all_pass(&r);
        assert!(r.skipped.is_empty());
        assert_eq!(r.pointwise_skipped, 0);
    }

    #[test]
    fn thin_triangle_suite() {
        let t = poly(&[(0.0, 0.0), (1.0, 0.01), (1.0, -0.01)]);
        let r = run_lemma_suite(&t, UnitVector::E1, LEMMA_GRID_POINTS, 1e-9).unwrap();
        assert_all_pass(&r);
        assert_eq!(r.frame.omega, 0.0);
        let names: Vec<_> = r.skipped.iter().map(|s| s.name.as_str()).collect();
        assert_eq!(
            names,
            [
                "lemma4",
                "perimeter_right_bound",
                "cp_omega_bound",
                "ca_omega_bound",
                "combined_bound",
                "frame_region"
            ]
        );
    }

    #[test]
    fn many_directions_on_a_pentagon() {
        let p = poly(&[(0.0, 0.0), (4.0, 0.0), (5.0, 2.0), (2.0, 4.0), (0.0, 3.0)]);
        for k in 0..24 {
            let th = UnitVector::from_angle(std::f64::consts::TAU * k as f64 / 24.0);
            let r = run_lemma_suite(&p, th, 256, 1e-9).unwrap();
            assert_all_pass(&r);
        }
    }

    #[test]
    fn circle_like_polygon() {
        let pts: Vec<Point2> = (0..40)
            .map(|k| {
                let a = std::f64::consts::TAU * (k as f64 + 0.3) / 40.0;
                Point2::new(2.0 * a.cos(), a.sin())
            })
            .collect();
        let p = make_polygon(&pts).unwrap();
        let r = run_lemma_suite(&p, UnitVector::from_angle(0.7), 256, 1e-9).unwrap();
        assert_all_pass(&r);
    }

    #[test]
    fn grid_too_small() {
        let sq = poly(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
        assert!(matches!(
            run_lemma_suite(&sq, UnitVector::E1, 1, 1e-9),
            Err(Error::Domain(_))
        ));
    }
}
