use rayon::prelude::*;

use super::RunReport;
use crate::check::{CheckBuilder, CheckReport};
use crate::error::{Error, Result};
use crate::extremal::{convergence_table, corpus_item, maximize_with, SearchConfig};
use crate::frame::{normalize, FrameScalars};
use crate::geom::{direction_grid, ConvexPolygon, UnitVector};
use crate::lemmas::{
    quintic_check, region_inequalities_check, run_lemma_suite, tan_equality_check,
    tan_sampled_check, LemmaSuiteReport, SkippedCheck, LEMMA_GRID_POINTS,
};
use crate::sweep::Profile;
use crate::GAP_BOUND;

/// Largest admissible fraction of skipped pointwise grid points per frame.
const MAX_POINTWISE_SKIP: f64 = 0.01;

/// Equality points of the tangent inequality.
const TAN_EQUALITY_POINTS: usize = 10;

/// `|⟨c(∂P) − c(P), θ⟩| ≤ w(θ)/6` on `directions` evenly spaced directions,
/// and the diameter/6 and perimeter/12 corollaries.
pub fn directional_checks(
    poly: &ConvexPolygon,
    directions: usize,
    rel_tol: f64,
) -> Result<Vec<CheckReport>> {
    if directions == 0 {
        return Err(Error::Domain("need at least one direction".into()));
    }
    let mut theorem = CheckBuilder::new("theorem", rel_tol);
    for th in direction_grid(directions) {
        theorem.le(poly.gap_ratio(th), GAP_BOUND, 1.0, || {
            format!("θ={}", th.angle())
        });
    }
    let gap = poly.gap_vector().norm();
    let scale = poly.scale();
    let mut diam = CheckBuilder::new("corollary_diameter", rel_tol);
    diam.le(gap, poly.diameter() / 6.0, scale, || format!("|gap|={gap}"));
    let mut per = CheckBuilder::new("corollary_perimeter", rel_tol);
    per.le(gap, poly.perimeter() / 12.0, scale, || {
        format!("|gap|={gap}")
    });
    Ok(vec![theorem.finish(), diam.finish(), per.finish()])
}

pub fn run_verify(
    poly: &ConvexPolygon,
    directions: usize,
    rel_tol: f64,
    seed: u64,
) -> Result<RunReport> {
    Ok(RunReport::new(
        "verify",
        seed,
        rel_tol,
        directional_checks(poly, directions, rel_tol)?,
    ))
}

/// Knobs of the `lemmas` command.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LemmaOptions {
    /// Directions per polygon, evenly spaced on the full circle.
    pub directions: usize,
    pub grid_points: usize,
    pub tan_samples: usize,
    pub region_samples: usize,
    /// Run the scalar and region suites as well.
    pub scalars: bool,
}

impl Default for LemmaOptions {
    fn default() -> Self {
        LemmaOptions {
            directions: 16,
            grid_points: LEMMA_GRID_POINTS,
            tan_samples: 1_000_000,
            region_samples: 1_000_000,
            scalars: true,
        }
    }
}

/// Geometry fed to the `lemmas` command.
#[derive(Debug, Clone)]
pub enum LemmaInput {
    Polygon(ConvexPolygon),
    /// The first `count` items of the seeded corpus.
    Corpus {
        count: usize,
        seed: u64,
    },
}

struct SuiteBatch {
    checks: Vec<CheckReport>,
    frames: Vec<FrameScalars>,
    skipped: Vec<(String, String)>,
    suites: usize,
}

fn skip_fraction_check(r: &LemmaSuiteReport) -> CheckReport {
    CheckReport::single(
        "pointwise_skip_fraction",
        r.pointwise_skip_fraction(),
        MAX_POINTWISE_SKIP,
        0.0,
        format!(
            "{} of {}",
            r.pointwise_skipped,
            r.pointwise_evaluated + r.pointwise_skipped
        ),
    )
}

fn suites_for(
    poly: &ConvexPolygon,
    opts: &LemmaOptions,
    rel_tol: f64,
    label: &str,
) -> Result<SuiteBatch> {
    if opts.directions == 0 {
        return Err(Error::Domain("need at least one direction".into()));
    }
    let mut batch = SuiteBatch {
        checks: Vec::new(),
        frames: Vec::new(),
        skipped: Vec::new(),
        suites: 0,
    };
    for th in direction_grid(opts.directions) {
        let r = run_lemma_suite(poly, th, opts.grid_points, rel_tol)?;
        let prefix = format!("{label}θ={}", th.angle());
        batch.checks.extend(
            r.checks
                .iter()
                .map(|c| c.clone().with_context_prefix(&prefix)),
        );
        batch
            .checks
            .push(skip_fraction_check(&r).with_context_prefix(&prefix));
        batch.skipped.extend(
            r.skipped
                .iter()
                .map(|s| (s.name.clone(), format!("{prefix}: {}", s.reason))),
        );
        batch.frames.push(r.frame);
        batch.suites += 1;
    }
    Ok(batch)
}

/// One entry per skipped check name with the number of frames it was
/// skipped in and the first reason.
fn summarize_skips(skips: &[(String, String)], suites: usize) -> Vec<SkippedCheck> {
    let mut out: Vec<(String, usize, String)> = Vec::new();
    for (name, reason) in skips {
        match out.iter_mut().find(|e| &e.0 == name) {
            Some(e) => e.1 += 1,
            None => out.push((name.clone(), 1, reason.clone())),
        }
    }
    out.into_iter()
        .map(|(name, k, first)| SkippedCheck {
            name,
            reason: format!("skipped in {k} of {suites} frames; first: {first}"),
        })
        .collect()
}

/// All geometric checks for one polygon, merged by name, with the frame
/// scalars of every direction.
pub fn lemma_polygon_checks(
    poly: &ConvexPolygon,
    opts: &LemmaOptions,
    rel_tol: f64,
) -> Result<(Vec<CheckReport>, Vec<FrameScalars>, Vec<SkippedCheck>)> {
    let b = suites_for(poly, opts, rel_tol, "")?;
    Ok((
        CheckReport::merge_by_name(&b.checks),
        b.frames,
        summarize_skips(&b.skipped, b.suites),
    ))
}

/// All geometric checks over a seeded corpus, run in parallel and merged in
/// item order.
pub fn lemma_corpus_checks(
    count: usize,
    seed: u64,
    opts: &LemmaOptions,
    rel_tol: f64,
) -> Result<(Vec<CheckReport>, Vec<SkippedCheck>)> {
    if count == 0 {
        return Err(Error::Domain("corpus size must be at least 1".into()));
    }
    let batches: Vec<SuiteBatch> = (0..count)
        .into_par_iter()
        .map(|i| {
            let item = corpus_item(seed, i);
            let b = suites_for(&item.polygon, opts, rel_tol, &format!("item {i}, "))?;
            Ok(SuiteBatch {
                checks: CheckReport::merge_by_name(&b.checks),
                ..b
            })
        })
        .collect::<Result<_>>()?;
    let checks = CheckReport::merge_by_name(batches.iter().flat_map(|b| &b.checks));
    let skips: Vec<(String, String)> = batches
        .iter()
        .flat_map(|b| b.skipped.iter().cloned())
        .collect();
    let suites = batches.iter().map(|b| b.suites).sum();
    Ok((checks, summarize_skips(&skips, suites)))
}

/// Tangent, quintic and region suites; no geometry.
pub fn scalar_checks(opts: &LemmaOptions, seed: u64) -> Result<Vec<CheckReport>> {
    if opts.tan_samples == 0 {
        return Err(Error::Domain("tan sample count must be at least 1".into()));
    }
    let mut checks: Vec<CheckReport> = tan_sampled_check(opts.tan_samples, seed).into();
    checks.push(tan_equality_check(TAN_EQUALITY_POINTS));
    checks.extend(quintic_check());
    checks.extend(region_inequalities_check(opts.region_samples, seed)?.checks);
    Ok(checks)
}

/// The `lemmas` command. Without geometry only the scalar suites run.
pub fn run_lemmas(
    input: Option<&LemmaInput>,
    opts: &LemmaOptions,
    rel_tol: f64,
    seed: u64,
) -> Result<RunReport> {
    let (mut checks, frames, skipped) = match input {
        Some(LemmaInput::Polygon(p)) => lemma_polygon_checks(p, opts, rel_tol)?,
        Some(&LemmaInput::Corpus { count, seed }) => {
            let (c, s) = lemma_corpus_checks(count, seed, opts, rel_tol)?;
            (c, Vec::new(), s)
        }
        None => (Vec::new(), Vec::new(), Vec::new()),
    };
    if opts.scalars || input.is_none() {
        checks.extend(scalar_checks(opts, seed)?);
    }
    let mut report = RunReport::new("lemmas", seed, rel_tol, checks);
    report.frames = frames;
    report.skipped = skipped;
    Ok(report)
}

/// Normalized-frame profile as CSV with header `t,ell,A,P,Ptilde,a,p,c_a,c_p`.
pub fn sweep_csv(poly: &ConvexPolygon, theta: f64, grid_points: usize) -> Result<String> {
    if grid_points < 2 {
        return Err(Error::Domain(format!(
            "grid must be at least 2, got {grid_points}"
        )));
    }
    if !theta.is_finite() {
        return Err(Error::Domain(format!("θ must be finite, got {theta}")));
    }
    let frame = normalize(poly, UnitVector::from_angle(theta))?;
    let prof = Profile::compute(&frame.polygon, grid_points)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    for s in prof.samples() {
        w.serialize(s).expect("in-memory write");
    }
    Ok(String::from_utf8(w.into_inner().expect("in-memory write")).expect("CSV output is UTF-8"))
}

/// Sharpness table for the thin triangles `T(ε)`.
pub fn run_extremal(eps: &[f64], rel_tol: f64, seed: u64) -> Result<RunReport> {
    if eps.is_empty() {
        return Err(Error::Domain("need at least one ε".into()));
    }
    let table = convergence_table(eps)?;
    let mut closed = CheckBuilder::new("sharpness_closed_form", rel_tol);
    let mut theorem = CheckBuilder::new("theorem", rel_tol);
    let mut diam = CheckBuilder::new("corollary_diameter", rel_tol);
    let mut per = CheckBuilder::new("corollary_perimeter", rel_tol);
    for row in &table {
        let ctx = || format!("ε={}", row.eps);
        closed.le_abs((row.ratio - row.closed_form_ratio).abs(), 1e-9, 0.0, ctx);
        theorem.le(row.ratio, GAP_BOUND, 1.0, ctx);
        diam.le(row.gap_over_diameter, GAP_BOUND, 1.0, ctx);
        per.le(row.gap_over_perimeter, GAP_BOUND / 2.0, 1.0, ctx);
    }
    let checks = vec![
        closed.finish(),
        theorem.finish(),
        diam.finish(),
        per.finish(),
    ];
    let mut report = RunReport::new("extremal", seed, rel_tol, checks);
    report.table = Some(table);
    Ok(report)
}

/// Hill-climbing search plus a full directional verification of the winner.
pub fn run_search(cfg: &SearchConfig, rel_tol: f64) -> Result<RunReport> {
    let state = maximize_with(cfg)?;
    let mut checks = Vec::new();
    let mut bound = CheckBuilder::new("search_bound", rel_tol);
    bound.le(state.best_ratio, GAP_BOUND, 1.0, || {
        format!("restart {}, φ={}", state.best_restart, state.best_direction)
    });
    checks.push(bound.finish());
    let again = state
        .best_polygon
        .gap_ratio(UnitVector::from_angle(state.best_direction));
    checks.push(CheckReport::single(
        "search_recheck",
        (again - state.best_ratio).abs(),
        0.0,
        rel_tol,
        format!("recomputed ratio {again}"),
    ));
    checks.extend(directional_checks(&state.best_polygon, 256, rel_tol)?);
    let mut report = RunReport::new("search", cfg.seed, rel_tol, checks);
    report.search = Some(state);
    Ok(report)
}
