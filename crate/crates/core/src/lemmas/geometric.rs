//! Checks that need the polygon: the five lemmas, the two gap inequalities
//! in the frame, and the chain of bounds on `c_p(ω)` and `c_a(ω)`.

use super::region::{fedsm3, fedsm4, rho_form, RegionSample};
use super::FrameProfile;
use crate::check::{CheckBuilder, CheckReport};
use crate::error::{Error, Result};
use crate::geom::{slice_measures, Side};
use crate::GAP_BOUND;

fn need_right_part(fp: &FrameProfile) -> Result<(f64, f64)> {
    match (fp.frame.has_right_part(), fp.scalars().u) {
        (true, Some(u)) => Ok((fp.scalars().omega, u)),
        _ => Err(Error::SkippedDegenerate(
            "ω = 0: the polygon has no part right of the maximal chord".into(),
        )),
    }
}

/// `−1/2 ≤ c_a(0) ≤ −B/2`.
pub fn lemma1_check(fp: &FrameProfile, rel_tol: f64) -> CheckReport {
    let ca0 = fp.at_zero().c_a;
    let big_b = fp.scalars().big_b;
    let mut b = CheckBuilder::new("lemma1", rel_tol);
    b.le(-0.5, ca0, 1.0, || format!("c_a(0)={ca0} ≥ −1/2"));
    b.le(ca0, -big_b / 2.0, 1.0, || {
        format!("c_a(0)={ca0} ≤ −B/2={}", -big_b / 2.0)
    });
    b.finish()
}

/// `a(t) ≤ P̃(t)/P̃(0)` on `(−1, 0]`.
pub fn lemma2_check(fp: &FrameProfile, rel_tol: f64) -> CheckReport {
    let pt0 = fp.at_zero().open_perimeter;
    let mut b = CheckBuilder::new("lemma2", rel_tol);
    for s in fp.left_samples(false) {
        let rhs = s.open_perimeter / pt0;
        b.le(s.a, rhs, 1.0, || format!("t={}", s.t));
    }
    b.finish()
}

/// The trapezoid bound `(1+t)·((1+t)ℓ − (1−t)ℓ′) / ((1+2t)ℓ − ℓ′)` with
/// `ℓ′ = ℓ(t)`, as `(numerator, denominator, bound)`.
pub(crate) fn trapezoid_bound(t: f64, ell: f64, ell_t: f64) -> (f64, f64, f64) {
    let num = (1.0 + t) * ell - (1.0 - t) * ell_t;
    let den = (1.0 + 2.0 * t) * ell - ell_t;
    (num, den, (1.0 + t) * num / den)
}

/// `a(t) ≤ (1+t)·((1+t)ℓ − (1−t)ℓ(t)) / ((1+2t)ℓ − ℓ(t))` on `(−1, 0)`.
pub fn lemma3_check(fp: &FrameProfile, rel_tol: f64) -> CheckReport {
    let ell = fp.scalars().ell;
    let mut b = CheckBuilder::new("lemma3", rel_tol);
    for s in fp.left_samples(true) {
        let (_, _, bound) = trapezoid_bound(s.t, ell, s.ell);
        b.le(s.a, bound, 1.0, || format!("t={}", s.t));
    }
    b.finish()
}

/// Both the numerator and the denominator of the trapezoid bound are
/// negative on `(−1, 0)`.
pub fn lemma3_sign_check(fp: &FrameProfile, rel_tol: f64) -> CheckReport {
    let ell = fp.scalars().ell;
    let mut b = CheckBuilder::new("lemma3_signs", rel_tol);
    for s in fp.left_samples(true) {
        let (num, den, _) = trapezoid_bound(s.t, ell, s.ell);
        b.le(num, 0.0, ell, || format!("numerator at t={}", s.t));
        b.le(den, 0.0, ell, || format!("denominator at t={}", s.t));
    }
    b.finish()
}

/// `c_Ψ ≥ ω(u² − u + 1)/(3u)` for `Ψ = Ω ∩ {x ≥ 0}`.
pub fn lemma4_check(fp: &FrameProfile, rel_tol: f64) -> Result<CheckReport> {
    let (omega, u) = need_right_part(fp)?;
    let c_psi = slice_measures(&fp.frame.polygon, 0.0, Side::Above).area_centroid_x();
    let rhs = omega * (u * u - u + 1.0) / (3.0 * u);
    let mut b = CheckBuilder::new("lemma4", rel_tol);
    b.ge(c_psi, rhs, 1.0 + omega, || format!("u={u}, ω={omega}"));
    Ok(b.finish())
}

/// `A(0) ≤ (P(0) − ℓ)·ℓ/(2α)`.
pub fn lemma5_check(fp: &FrameProfile, rel_tol: f64) -> CheckReport {
    let f = fp.scalars();
    let rhs = (f.perimeter0 - f.ell) * f.ell / (2.0 * f.alpha);
    let mut b = CheckBuilder::new("lemma5", rel_tol);
    b.le(f.area0, rhs, f.perimeter0 * f.ell, || {
        format!("α={}", f.alpha)
    });
    b.finish()
}

/// `c_p(0) − c_a(0) ≤ 1/6`; `lhs` records the observed value.
pub fn star_star_check(fp: &FrameProfile, rel_tol: f64) -> CheckReport {
    let z = fp.at_zero();
    let gap = z.c_p - z.c_a;
    let mut b = CheckBuilder::new("star_star", rel_tol);
    b.le(gap, GAP_BOUND, 1.0, || {
        format!("c_p(0)={}, c_a(0)={}", z.c_p, z.c_a)
    });
    b.finish()
}

/// `c_p(ω) − c_a(ω) ≤ (1 + ω)/6`, the gap bound itself in this frame.
pub fn star_star_star_check(fp: &FrameProfile, rel_tol: f64) -> CheckReport {
    let omega = fp.scalars().omega;
    let c = fp.frame.polygon.centroids();
    let gap = c.c_boundary.x - c.c_area.x;
    let mut b = CheckBuilder::new("star_star_star", rel_tol);
    b.le(gap, (1.0 + omega) * GAP_BOUND, 1.0 + omega, || {
        format!("ω={omega}")
    });
    b.finish()
}

/// `c_p(0) − c_a(0) ≤ J(λ)` with `λ = ℓ/P̃(0)` and
/// `J(λ) = 2λ²/(1+λ) − λ³/3 + 4√(2/(1+λ))(λ³/5 − λ²/3) + λ(1−λ)/2`,
/// the value of the integrated pointwise bound.
pub fn integral_bound_check(fp: &FrameProfile, rel_tol: f64) -> CheckReport {
    let z = fp.at_zero();
    let lam = fp.scalars().lambda5;
    let j = integrated_pointwise_bound(lam);
    let mut b = CheckBuilder::new("integral_bound", rel_tol);
    b.le(z.c_p - z.c_a, j, 1.0, || format!("λ={lam}, J(λ)={j}"));
    b.finish()
}

pub(crate) fn integrated_pointwise_bound(lam: f64) -> f64 {
    2.0 * lam * lam / (1.0 + lam) - lam.powi(3) / 3.0
        + 4.0 * (2.0 / (1.0 + lam)).sqrt() * (lam.powi(3) / 5.0 - lam * lam / 3.0)
        + 0.5 * lam * (1.0 - lam)
}

/// `P(ω) ≤ P(0) + 2ωα`.
pub fn perimeter_right_check(fp: &FrameProfile, rel_tol: f64) -> Result<CheckReport> {
    let (omega, _) = need_right_part(fp)?;
    let f = fp.scalars();
    let p_omega = fp.frame.polygon.perimeter();
    let mut b = CheckBuilder::new("perimeter_right_bound", rel_tol);
    b.le(
        p_omega,
        f.perimeter0 + 2.0 * omega * f.alpha,
        p_omega,
        || format!("ω={omega}, α={}", f.alpha),
    );
    Ok(b.finish())
}

fn cp_omega_bound(fp: &FrameProfile, omega: f64, u: f64) -> f64 {
    let f = fp.scalars();
    let p = f.perimeter0;
    let denom = p + 2.0 * omega * f.alpha;
    omega / 2.0 + p / denom * (GAP_BOUND - f.c) - (p * omega - u * f.ell * omega) / (2.0 * denom)
}

fn ca_omega_bound(fp: &FrameProfile, omega: f64, u: f64) -> f64 {
    let f = fp.scalars();
    (-f.area0 * f.c + f.ell * omega * omega * (u * u - u + 1.0) / 6.0)
        / (f.area0 + u * f.ell * omega / 2.0)
}

/// `c_p(ω) ≤ ω/2 + P(0)/(P(0)+2ωα)·(1/6 − c) − (P(0)ω − uℓω)/(2(P(0)+2ωα))`.
pub fn cp_omega_check(fp: &FrameProfile, rel_tol: f64) -> Result<CheckReport> {
    let (omega, u) = need_right_part(fp)?;
    let cp = fp.frame.polygon.boundary_centroid().x;
    let mut b = CheckBuilder::new("cp_omega_bound", rel_tol);
    b.le(cp, cp_omega_bound(fp, omega, u), 1.0 + omega, || {
        format!("ω={omega}, u={u}")
    });
    Ok(b.finish())
}

/// `c_a(ω) ≥ (−A(0)c + ℓω²(u² − u + 1)/6) / (A(0) + uℓω/2)`.
pub fn ca_omega_check(fp: &FrameProfile, rel_tol: f64) -> Result<CheckReport> {
    let (omega, u) = need_right_part(fp)?;
    let ca = fp.frame.polygon.area_centroid().x;
    let mut b = CheckBuilder::new("ca_omega_bound", rel_tol);
    b.ge(ca, ca_omega_bound(fp, omega, u), 1.0 + omega, || {
        format!("ω={omega}, u={u}")
    });
    Ok(b.finish())
}

/// The difference of the two bounds above is at most `(1 + ω)/6`.
pub fn combined_bound_check(fp: &FrameProfile, rel_tol: f64) -> Result<CheckReport> {
    let (omega, u) = need_right_part(fp)?;
    let lhs = cp_omega_bound(fp, omega, u) - ca_omega_bound(fp, omega, u);
    let mut b = CheckBuilder::new("combined_bound", rel_tol);
    b.le(lhs, (1.0 + omega) * GAP_BOUND, 1.0 + omega, || {
        format!("ω={omega}, u={u}")
    });
    Ok(b.finish())
}

/// The two coefficient inequalities and the linear-in-`ρ` form, evaluated
/// at the frame's own scalars.
pub fn frame_region_check(fp: &FrameProfile, rel_tol: f64) -> Result<CheckReport> {
    let (_, u) = need_right_part(fp)?;
    let f = fp.scalars();
    let r = RegionSample {
        u,
        s: f.s,
        lam: f.lambda6,
        big_b: f.big_b,
        c: f.c,
        b: f.b,
    };
    let ctx = || format!("{r:?}, ρ={}", f.rho);
    let mut b = CheckBuilder::new("frame_region", rel_tol);
    b.ge(fedsm3(&r), 0.0, 1.0, ctx);
    b.ge(fedsm4(&r), 0.0, 1.0, ctx);
    b.ge(rho_form(&r, f.rho), 0.0, 1.0, ctx);
    Ok(b.finish())
}
