//! Inequalities in the free variables `u, s, λ, B, c, b` over the box
//! `u ∈ [1, 2]`, `s, λ ∈ (0, 1]`, `B ∈ [1/2, min(1, (1 − λ/2)/s)]`,
//! `c ∈ [B/2, 1/2]`, `b = sB`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::check::{CheckBuilder, CheckReport};
use crate::error::{Error, Result};
use crate::SCALAR_ABS_TOL;

/// One point of the box.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegionSample {
    pub u: f64,
    pub s: f64,
    pub lam: f64,
    #[serde(rename = "B")]
    pub big_b: f64,
    pub c: f64,
    pub b: f64,
}

impl RegionSample {
    /// Upper end of the `B` range for given `s`, `λ`; the box is empty when
    /// it falls below `1/2`.
    pub fn b_upper(s: f64, lam: f64) -> f64 {
        1.0f64.min((1.0 - lam / 2.0) / s)
    }

    /// Uniform draw from the box, or `None` when the `(s, λ)` slice is empty.
    pub fn draw(rng: &mut impl Rng) -> Option<RegionSample> {
        let u = rng.random_range(1.0..=2.0);
        let s = 1.0 - rng.random::<f64>();
        let lam = 1.0 - rng.random::<f64>();
        let hi = RegionSample::b_upper(s, lam);
        if hi < 0.5 {
            return None;
        }
        let big_b = rng.random_range(0.5..=hi);
        let c = rng.random_range(big_b / 2.0..=0.5);
        Some(RegionSample {
            u,
            s,
            lam,
            big_b,
            c,
            b: s * big_b,
        })
    }
}

fn quad(u: f64) -> f64 {
    u * u - u + 1.0
}

/// `(u − 2 + 1/u)/3 + (suc/2 − b(u² − u + 1)/(3u))/b − s(c − 1/6) + 1/2 − uλ/4`
pub fn fedsm3(r: &RegionSample) -> f64 {
    let RegionSample {
        u, s, lam, c, b, ..
    } = *r;
    (u - 2.0 + 1.0 / u) / 3.0 + (s * u * c / 2.0 - b * quad(u) / (3.0 * u)) / b
        - s * (c - 1.0 / 6.0)
        + 0.5
        - u * lam / 4.0
}

/// `(u − 2 + 1/u)/3 + sc − 2b(u² − u + 1)/(3u²) − s(c − 1/6) + 1/2 − uλ/4`
pub fn fedsm4(r: &RegionSample) -> f64 {
    let RegionSample {
        u, s, lam, c, b, ..
    } = *r;
    (u - 2.0 + 1.0 / u) / 3.0 + s * c - 2.0 * b * quad(u) / (3.0 * u * u) - s * (c - 1.0 / 6.0)
        + 0.5
        - u * lam / 4.0
}

/// `1/6 + uc/(2B) − s(c − 1/6) − uλ/4`
pub fn fedsm5(r: &RegionSample) -> f64 {
    let RegionSample {
        u,
        s,
        lam,
        big_b,
        c,
        ..
    } = *r;
    1.0 / 6.0 + u * c / (2.0 * big_b) - s * (c - 1.0 / 6.0) - u * lam / 4.0
}

/// `1/6 + uc/(2B) − s(c − 1/6) − u/2 + (u/2)·max(sB, 1/2)`
pub fn fedsm333(u: f64, s: f64, big_b: f64, c: f64) -> f64 {
    1.0 / 6.0 + u * c / (2.0 * big_b) - s * (c - 1.0 / 6.0) - u / 2.0
        + u / 2.0 * (s * big_b).max(0.5)
}

/// `1/6 + u/(4B) − s/3 − u/2 + (u/2)·max(sB, 1/2)`
pub fn fedsm111(u: f64, s: f64, big_b: f64) -> f64 {
    1.0 / 6.0 + u / (4.0 * big_b) - s / 3.0 - u / 2.0 + u / 2.0 * (s * big_b).max(0.5)
}

/// `1/6 + u/(4B) − s/3 − u/2 + (u/2)·sB`
pub fn fedsm1111(u: f64, s: f64, big_b: f64) -> f64 {
    1.0 / 6.0 + u / (4.0 * big_b) - s / 3.0 - u / 2.0 + u / 2.0 * s * big_b
}

/// `(u − 2 + 1/u)/3 − 2b(u² − u + 1)/(3u²) + s/6 + 1/2 − uλ/4`
pub fn eeq(r: &RegionSample) -> f64 {
    let RegionSample { u, s, lam, b, .. } = *r;
    (u - 2.0 + 1.0 / u) / 3.0 - 2.0 * b * quad(u) / (3.0 * u * u) + s / 6.0 + 0.5 - u * lam / 4.0
}

/// `(u − 2 + 1/u)/(3(1+ρ)) + (suc/2 − b(u² − u + 1)/(3u))/(b + uρ/2)
///  + (−s(c − 1/6) + 1/2 − uλ/4)/(1+ρ)`, whose non-negativity for all
/// `ρ ≥ 0` follows from the two coefficient inequalities.
pub fn rho_form(r: &RegionSample, rho: f64) -> f64 {
    let RegionSample {
        u, s, lam, c, b, ..
    } = *r;
    (u - 2.0 + 1.0 / u) / (3.0 * (1.0 + rho))
        + (s * u * c / 2.0 - b * quad(u) / (3.0 * u)) / (b + u * rho / 2.0)
        + (-s * (c - 1.0 / 6.0) + 0.5 - u * lam / 4.0) / (1.0 + rho)
}

/// Outcome of a region sweep.
#[derive(Debug, Clone, Serialize)]
pub struct RegionReport {
    pub checks: Vec<CheckReport>,
    /// Draws rejected because their `(s, λ)` slice of the box was empty.
    pub empty_boxes: usize,
    /// Smallest value of any region inequality seen.
    pub min_value: f64,
}

/// Draws `n_samples` points of the box (empty slices are redrawn and
/// counted) and checks every region inequality at each, plus the closing
/// factorizations.
pub fn region_inequalities_check(n_samples: usize, seed: u64) -> Result<RegionReport> {
    if n_samples < 10_000 {
        return Err(Error::Domain(format!(
            "region sweep needs at least 10000 samples, got {n_samples}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names = [
        "fedsm3",
        "fedsm4",
        "fedsm5",
        "fedsm333",
        "fedsm111",
        "fedsm1111",
        "EEq",
        "rho_form",
    ];
    let mut builders: Vec<CheckBuilder> = names
        .iter()
        .map(|n| CheckBuilder::new(format!("region_{n}"), SCALAR_ABS_TOL))
        .collect();
    let mut same = CheckBuilder::new("region_fedsm3_equals_fedsm5", SCALAR_ABS_TOL);
    let mut empty_boxes = 0;
    let mut min_value = f64::INFINITY;
    let mut drawn = 0;
    while drawn < n_samples {
        let Some(r) = RegionSample::draw(&mut rng) else {
            empty_boxes += 1;
            continue;
        };
        drawn += 1;
        // fedsm1111 lives on s ∈ [1/(2B), 1]
        let s_hi = rng.random_range(1.0 / (2.0 * r.big_b)..=1.0);
        let rho = {
            let q: f64 = rng.random();
            q / (1.0 - q)
        };
        let values = [
            fedsm3(&r),
            fedsm4(&r),
            fedsm5(&r),
            fedsm333(r.u, r.s, r.big_b, r.c),
            fedsm111(r.u, r.s, r.big_b),
            fedsm1111(r.u, s_hi, r.big_b),
            eeq(&r),
            rho_form(&r, rho),
        ];
        for (bld, &v) in builders.iter_mut().zip(&values) {
            min_value = min_value.min(v);
            bld.le_abs(0.0, v, SCALAR_ABS_TOL, || {
                format!("{r:?}, s'={s_hi}, ρ={rho}")
            });
        }
        same.le_abs((values[0] - values[2]).abs(), 0.0, SCALAR_ABS_TOL, || {
            format!("{r:?}")
        });
    }
    let mut checks: Vec<CheckReport> = builders.into_iter().map(CheckBuilder::finish).collect();
    checks.push(same.finish());
    checks.extend(closing_factorizations_check(
        n_samples,
        seed ^ 0x9e37_79b9_7f4a_7c15,
    ));
    Ok(RegionReport {
        checks,
        empty_boxes,
        min_value,
    })
}

/// `(1/B − 1)(u/4 − 1/6) ≥ 0` on `B ∈ [1/2, 1]`, `u ∈ [1, 2]`;
/// `(u − 1)(u − 2)²/(12u²) ≥ 0` on `u ∈ [1, 2]`; and the identities
/// that reduce the endpoint cases to them.
pub fn closing_factorizations_check(n_samples: usize, seed: u64) -> Vec<CheckReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut first = CheckBuilder::new("closing_B_factor", SCALAR_ABS_TOL);
    let mut second = CheckBuilder::new("closing_u_factor", SCALAR_ABS_TOL);
    let mut ident_b = CheckBuilder::new("closing_B_identity", SCALAR_ABS_TOL);
    let mut ident_u = CheckBuilder::new("closing_u_identity", SCALAR_ABS_TOL);
    let mut ident_c = CheckBuilder::new("closing_c_half_b_identity", SCALAR_ABS_TOL);
    for _ in 0..n_samples {
        let u: f64 = rng.random_range(1.0..=2.0);
        let big_b: f64 = rng.random_range(0.5..=1.0);
        let ctx = || format!("u={u}, B={big_b}");
        let fb = (1.0 / big_b - 1.0) * (u / 4.0 - 1.0 / 6.0);
        first.le_abs(0.0, fb, SCALAR_ABS_TOL, ctx);
        let fu = (u - 1.0) * (u - 2.0).powi(2) / (12.0 * u * u);
        second.le_abs(0.0, fu, SCALAR_ABS_TOL, ctx);
        let s = 1.0 / (2.0 * big_b);
        ident_b.le_abs(
            (fedsm1111(u, s, big_b) - fb).abs(),
            0.0,
            SCALAR_ABS_TOL,
            ctx,
        );
        let lhs_u = -1.0 / (3.0 * u * u) + 2.0 / (3.0 * u) - 5.0 / 12.0 + u / 12.0;
        ident_u.le_abs((lhs_u - fu).abs(), 0.0, SCALAR_ABS_TOL, ctx);
        let at_c = fedsm333(u, s, big_b, big_b / 2.0);
        ident_c.le_abs(
            (at_c - (1.0 / (12.0 * big_b) - 1.0 / 12.0)).abs(),
            0.0,
            SCALAR_ABS_TOL,
            ctx,
        );
    }
    vec![
        first.finish(),
        second.finish(),
        ident_b.finish(),
        ident_u.finish(),
        ident_c.finish(),
    ]
}
