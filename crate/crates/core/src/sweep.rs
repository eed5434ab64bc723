//! Slicing profiles `t ↦ ℓ(t), A(t), P(t), P̃(t), a(t), p(t), c_a(t), c_p(t)`
//! of the sub-bodies `Ω_t = Ω ∩ {x ≤ t}` and the identities they satisfy.
//!
//! Samples always include every vertex abscissa, so every profile column is
//! smooth between consecutive samples: `ℓ`, `P` and `P̃` are linear there and
//! `A` is quadratic. Trapezoid quadrature is therefore exact for `∫P` and has
//! an `O(h²)` error for `∫A`.

use serde::Serialize;

use crate::check::{CheckBuilder, CheckReport};
use crate::error::{Error, Result};
use crate::geom::{slice_measures, ConvexPolygon, Side};

/// Default number of uniform grid points for verification runs.
pub const DEFAULT_GRID_POINTS: usize = 2048;

/// Budget for quadrature-limited identities.
pub const QUADRATURE_TOL: f64 = 1e-6;

/// One sampled abscissa of a profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileSample {
    pub t: f64,
    /// `ℓ(t)`, chord length at `x = t`.
    pub ell: f64,
    /// `A(t)`
    #[serde(rename = "A")]
    pub area: f64,
    /// `P(t)`, chord included.
    #[serde(rename = "P")]
    pub perimeter: f64,
    /// `P̃(t) = P(t) − ℓ(t)`.
    #[serde(rename = "Ptilde")]
    pub open_perimeter: f64,
    /// `A(t) / A(r)` for the reference abscissa `r`.
    pub a: f64,
    /// `P̃(t) / P(r)` for the reference abscissa `r`.
    pub p: f64,
    pub c_a: f64,
    pub c_p: f64,
}

/// Sampled slicing profile of one polygon.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    samples: Vec<ProfileSample>,
    reference: f64,
    x_range: (f64, f64),
    scale: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Knot {
    Grid,
    Vertex,
    Required,
}

/// `n` evenly spaced points from `lo` to `hi`, both ends exact.
pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let step = (hi - lo) / (n - 1) as f64;
            (0..n)
                .map(|i| if i + 1 == n { hi } else { lo + step * i as f64 })
                .collect()
        }
    }
}

/// Sorted sample abscissae: every vertex abscissa, the `grid` points and the
/// `required` points, restricted to the projection. Points closer than
/// `1e-12 · scale` merge, keeping required over vertex over grid abscissae.
pub fn sample_abscissae(poly: &ConvexPolygon, grid: &[f64], required: &[f64]) -> Vec<f64> {
    let (xmin, xmax) = poly.x_range();
    let tol = 1e-12 * poly.scale();
    let mut knots: Vec<(f64, Knot)> = Vec::new();
    knots.extend(poly.vertices().iter().map(|v| (v.x, Knot::Vertex)));
    knots.extend(grid.iter().map(|&t| (t, Knot::Grid)));
    knots.extend(required.iter().map(|&t| (t, Knot::Required)));
    knots.retain(|&(t, _)| t >= xmin && t <= xmax);
    knots.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut out: Vec<(f64, Knot)> = Vec::with_capacity(knots.len());
    for k in knots {
        match out.last_mut() {
            Some(last) if k.0 - last.0 <= tol => {
                if k.1 > last.1 {
                    *last = k;
                }
            }
            _ => out.push(k),
        }
    }
    out.into_iter().map(|(t, _)| t).collect()
}

impl Profile {
    /// Profile on vertex abscissae plus `grid_points` uniform points over the
    /// projection. `a` and `p` are normalized at `x = 0` when `0` lies in
    /// `(min x, max x]`, otherwise at `max x`.
    pub fn compute(poly: &ConvexPolygon, grid_points: usize) -> Result<Profile> {
        if grid_points < 2 {
            return Err(Error::Domain(format!(
                "grid_points must be ≥ 2, got {grid_points}"
            )));
        }
        let (xmin, xmax) = poly.x_range();
        let reference = if xmin < 0.0 && 0.0 <= xmax { 0.0 } else { xmax };
        let ts = sample_abscissae(poly, &uniform_grid(xmin, xmax, grid_points), &[reference]);
        Profile::at_abscissae(poly, &ts, reference)
    }

    /// Profile at explicit sorted abscissae; `reference` must be one of them
    /// and have a non-degenerate slice.
    pub fn at_abscissae(poly: &ConvexPolygon, ts: &[f64], reference: f64) -> Result<Profile> {
        let scale = poly.scale();
        let slices: Vec<_> = ts
            .iter()
            .map(|&t| slice_measures(poly, t, Side::Below))
            .collect();
        let r = slices.iter().find(|m| m.t == reference).ok_or_else(|| {
            Error::Domain(format!("reference abscissa {reference} is not sampled"))
        })?;
        if !(r.area > 1e-12 * scale * scale) {
            return Err(Error::DegenerateInput(format!(
                "slice at reference abscissa {reference} has no interior"
            )));
        }
        let (a_ref, p_ref) = (r.area, r.perimeter);
        let samples = slices
            .iter()
            .map(|m| ProfileSample {
                t: m.t,
                ell: m.chord,
                area: m.area,
                perimeter: m.perimeter,
                open_perimeter: m.open_perimeter(),
                a: m.area / a_ref,
                p: m.open_perimeter() / p_ref,
                c_a: m.area_centroid_x(),
                c_p: m.boundary_centroid_x(),
            })
            .collect();
        Ok(Profile {
            samples,
            reference,
            x_range: poly.x_range(),
            scale,
        })
    }

    pub fn samples(&self) -> &[ProfileSample] {
        &self.samples
    }

    pub fn reference(&self) -> f64 {
        self.reference
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// The sample at the reference abscissa.
    pub fn at_reference(&self) -> &ProfileSample {
        self.sample_at(self.reference)
            .expect("reference is always sampled")
    }

    /// The sample at exactly `t`, if present.
    pub fn sample_at(&self, t: f64) -> Option<&ProfileSample> {
        self.samples.iter().find(|s| s.t == t)
    }

    /// The sample at the right end of the projection.
    pub fn last(&self) -> &ProfileSample {
        self.samples.last().expect("profiles are never empty")
    }

    /// Cumulative trapezoid integrals `∫_{min x}^{t_i} f`.
    pub fn cumulative_integral(&self, f: impl Fn(&ProfileSample) -> f64) -> Vec<f64> {
        let mut acc = 0.0;
        let mut out = Vec::with_capacity(self.samples.len());
        out.push(0.0);
        for w in self.samples.windows(2) {
            acc += 0.5 * (w[1].t - w[0].t) * (f(&w[0]) + f(&w[1]));
            out.push(acc);
        }
        out
    }

    /// `∫ f` over samples with `t ≤ upto`.
    pub fn integral_upto(&self, upto: f64, f: impl Fn(&ProfileSample) -> f64) -> f64 {
        let cum = self.cumulative_integral(f);
        let idx = self.samples.iter().rposition(|s| s.t <= upto).unwrap_or(0);
        cum[idx]
    }

    fn x_scale(&self) -> f64 {
        let (lo, hi) = self.x_range;
        lo.abs().max(hi.abs()).max(hi - lo)
    }

    /// `P(t)·c_p(t) = t·P(t) − ∫_{min x}^t P(s) ds + A(t)` at every sample,
    /// as a maximum relative discrepancy against [`QUADRATURE_TOL`].
    pub fn verify_cp_identity(&self) -> CheckReport {
        let (xmin, _) = self.x_range;
        let cum = self.cumulative_integral(|s| s.perimeter);
        let xs = self.x_scale();
        let mut worst = (0.0f64, xmin);
        for (s, int_p) in self.samples.iter().zip(&cum) {
            if s.perimeter <= 1e-12 * self.scale {
                continue;
            }
            let lhs = s.perimeter * s.c_p;
            let rhs = s.t * s.perimeter - int_p + s.area;
            let denom = s.perimeter * xs + s.area;
            let rel = (lhs - rhs).abs() / denom;
            if !(rel <= worst.0) {
                worst = (rel, s.t);
            }
        }
        CheckReport::single(
            "cp_identity",
            worst.0,
            QUADRATURE_TOL,
            0.0,
            format!("max relative discrepancy at t={}", worst.1),
        )
    }

    /// `∫_{min x}^{r} (a − p) dt = c_p(r) − c_a(r)` at the reference abscissa.
    pub fn integral_identity_check(&self) -> CheckReport {
        let r = self.at_reference();
        let integral = self.integral_upto(self.reference, |s| s.a - s.p);
        let gap = r.c_p - r.c_a;
        let rel = (integral - gap).abs() / (1.0 + gap.abs());
        CheckReport::single(
            "integral_identity",
            rel,
            QUADRATURE_TOL,
            0.0,
            format!("∫(a−p)={integral}, c_p−c_a={gap} at t={}", self.reference),
        )
    }

    /// `P(t)` is concave: every sample lies on or above the chord through its
    /// two neighbours (tolerance `rel_tol · max P`).
    pub fn concavity_check(&self, rel_tol: f64) -> CheckReport {
        let pmax = self.last().perimeter.max(f64::MIN_POSITIVE);
        let mut b = CheckBuilder::new("concavity_P", rel_tol);
        for w in self.samples.windows(3) {
            let (l, m, r) = (&w[0], &w[1], &w[2]);
            let s = (m.t - l.t) / (r.t - l.t);
            let chord = l.perimeter + s * (r.perimeter - l.perimeter);
            b.le(chord, m.perimeter, pmax, || format!("t={}", m.t));
        }
        b.finish()
    }

    /// `c_a`, `c_p` at the right end agree with the whole-polygon centroids.
    pub fn endpoint_consistency_check(&self, poly: &ConvexPolygon, rel_tol: f64) -> CheckReport {
        let last = self.last();
        let c = poly.centroids();
        let mut b = CheckBuilder::new("endpoint_consistency", rel_tol);
        b.le((last.c_a - c.c_area.x).abs(), 0.0, self.scale, || {
            "c_a(max x)".into()
        });
        b.le((last.c_p - c.c_boundary.x).abs(), 0.0, self.scale, || {
            "c_p(max x)".into()
        });
        b.finish()
    }

    /// Monotonicity of `A`, `P`, `P̃` and `P̃ ≥ ℓ`.
    pub fn invariants_check(&self, rel_tol: f64) -> CheckReport {
        let pmax = self.last().perimeter;
        let amax = self.last().area;
        let mut b = CheckBuilder::new("profile_invariants", rel_tol);
        for w in self.samples.windows(2) {
            let (l, r) = (&w[0], &w[1]);
            b.le(l.area, r.area, amax, || {
                format!("A nondecreasing at t={}", r.t)
            });
            b.le(l.perimeter, r.perimeter, pmax, || {
                format!("P nondecreasing at t={}", r.t)
            });
            b.le(l.open_perimeter, r.open_perimeter, pmax, || {
                format!("P̃ nondecreasing at t={}", r.t)
            });
        }
        for s in &self.samples {
            b.le(s.ell, s.open_perimeter, self.scale, || {
                format!("P̃ ≥ ℓ at t={}", s.t)
            });
        }
        b.finish()
    }
}
