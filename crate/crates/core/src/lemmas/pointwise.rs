//! Three pointwise upper bounds on `a(t) − p(t)` over `(−1, 0]`, their
//! combined form, and the split bound they integrate to.

use super::FrameProfile;
use crate::check::{CheckBuilder, CheckReport};

/// Reports of the pointwise checks plus the evaluation counts of the
/// fractional bound, which is skipped where its denominator vanishes.
#[derive(Debug, Clone)]
pub struct PointwiseReport {
    pub checks: Vec<CheckReport>,
    pub evaluated: usize,
    pub skipped: usize,
}

/// At every `t ∈ (−1, 0]` of the profile, with `P̃ = P̃(t)`, `P̃₀ = P̃(0)`:
///
/// - `a − p ≤ P̃ℓ / ((P̃₀ + ℓ)P̃₀)`
/// - `a − p ≤ (1+t)(2P̃ − (1+t)(P̃ + ℓ)) / (ℓ + P̃ − 2(1+t)ℓ) − P̃/(P̃₀ + ℓ)`
/// - `a − p ≤ 1 + t − P̃/(P̃₀ + ℓ)`
/// - the minimum form in `λ = ℓ/P̃₀`, `μ = P̃/P̃₀`, with `μ ∈ [0, 1]`
/// - `a − p ≤ 1 − t² + 2t√(2λ(1+t)/(1+λ)) − λ(1+2t)/(1+λ)` for `t ≤ λ − 1`
///   and `a − p ≤ λ(1+t)/(1+λ)` for `t ≥ λ − 1`.
pub fn pointwise_bounds_check(fp: &FrameProfile, rel_tol: f64) -> PointwiseReport {
    let ell = fp.scalars().ell;
    let pt0 = fp.at_zero().open_perimeter;
    let p0 = pt0 + ell;
    let lam = ell / pt0;
    let den_tol = 1e-9 * fp.frame.scale();

    let mut first = CheckBuilder::new("pointwise_3ineq1", rel_tol);
    let mut second = CheckBuilder::new("pointwise_3ineq2", rel_tol);
    let mut third = CheckBuilder::new("pointwise_3ineq3", rel_tol);
    let mut combined = CheckBuilder::new("pointwise_fed1", rel_tol);
    let mut mu_range = CheckBuilder::new("pointwise_mu_range", rel_tol);
    let mut split = CheckBuilder::new("pointwise_split", rel_tol);
    let (mut evaluated, mut skipped) = (0, 0);

    for s in fp.left_samples(false) {
        let t = s.t;
        let pt = s.open_perimeter;
        let gap = s.a - pt / p0;
        let ctx = || format!("t={t}");

        first.le(gap, pt * ell / (p0 * pt0), 1.0, ctx);

        let den = ell + pt - 2.0 * (1.0 + t) * ell;
        if den.abs() > den_tol {
            evaluated += 1;
            let rhs = (1.0 + t) * (2.0 * pt - (1.0 + t) * (pt + ell)) / den - pt / p0;
            second.le(gap, rhs, 1.0, ctx);
        } else {
            skipped += 1;
        }

        third.le(gap, 1.0 + t - pt / p0, 1.0, ctx);

        let mu = pt / pt0;
        mu_range.le(0.0, mu, 1.0, ctx);
        mu_range.le(mu, 1.0, 1.0, ctx);
        let frac_den = lam + mu - 2.0 * (1.0 + t) * lam;
        let frac = if frac_den.abs() > den_tol / pt0 {
            (2.0 * mu - (1.0 + t) * (mu + lam)) / frac_den
        } else {
            f64::INFINITY
        };
        let rhs = ((1.0 + t) * frac.min(1.0) - mu / (1.0 + lam)).min(lam * mu / (1.0 + lam));
        combined.le(gap, rhs, 1.0, ctx);

        let rhs = if t <= lam - 1.0 {
            1.0 - t * t + 2.0 * t * (2.0 * lam * (1.0 + t) / (1.0 + lam)).sqrt()
                - lam * (1.0 + 2.0 * t) / (1.0 + lam)
        } else {
            lam * (1.0 + t) / (1.0 + lam)
        };
        split.le(gap, rhs, 1.0, ctx);
    }

    PointwiseReport {
        checks: vec![
            first.finish(),
            second.finish(),
            third.finish(),
            combined.finish(),
            mu_range.finish(),
            split.finish(),
        ],
        evaluated,
        skipped,
    }
}
