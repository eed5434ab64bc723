//! Centroid-gap verification for planar convex polygons.
//!
//! For a convex body `Ω` and a direction `θ`, the projection of the vector
//! joining the area centroid `c(Ω)` and the boundary centroid `c(∂Ω)` onto
//! `θ` never exceeds one sixth of the width of `Ω` in that direction. This
//! crate computes both centroids exactly for polygons, checks the bound and
//! its diameter/perimeter corollaries, and numerically verifies every
//! auxiliary inequality the bound rests on:
//!
//! - [`geom`]: polygon construction, measures, centroids, widths, slicing and
//!   a Monte-Carlo centroid oracle.
//! - [`sweep`]: slicing profiles `t ↦ ℓ(t), A(t), P(t), …` and the identities
//!   they satisfy.
//! - [`frame`]: the canonical placement (maximal chord at `x = 0`, projection
//!   `[-1, ω]`) and its scalar bundle.
//! - [`lemmas`]: verifiers for the auxiliary lemmas, pointwise bounds and the
//!   scalar/region inequalities.
//! - [`extremal`]: the thin isosceles triangle family, random convex polygons
//!   and a hill-climbing maximizer of the gap ratio.
//! - [`report`]: polygon file formats, run reports and the CLI commands.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod check;
pub mod error;
pub mod extremal;
pub mod frame;
pub mod geom;
pub mod lemmas;
pub mod report;
pub mod sweep;

pub use check::{CheckBuilder, CheckReport};
pub use error::{Error, Result};
pub use geom::{CentroidPair, ConvexPolygon, Point2, UnitVector};

/// Default relative tolerance for geometry-derived checks.
pub const DEFAULT_REL_TOL: f64 = 1e-9;

/// Absolute tolerance for pure scalar inequalities.
pub const SCALAR_ABS_TOL: f64 = 1e-12;

/// The sharp constant of the centroid-gap bound.
pub const GAP_BOUND: f64 = 1.0 / 6.0;
