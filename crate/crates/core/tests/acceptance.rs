//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::cell::OnceCell;
use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use rayon::prelude::*;

use centroid_gap::check::CheckReport;
use centroid_gap::extremal::{convergence_table, corpus, corpus_item, SearchConfig};
use centroid_gap::frame::normalize;
use centroid_gap::geom::{make_polygon, oracle_centroid_mc, Point2, UnitVector};
use centroid_gap::lemmas::{
    lemma1_check, lemma3_check, quintic_check, region_inequalities_check, tan_equality_check,
    tan_sampled_check, FrameProfile, LEMMA_GRID_POINTS,
};
use centroid_gap::report::{lemma_corpus_checks, run_search, LemmaOptions};
use centroid_gap::sweep::{Profile, DEFAULT_GRID_POINTS};
use centroid_gap::{GAP_BOUND, SCALAR_ABS_TOL};

const SEED: u64 = 20_240_601;
const TOL: f64 = 1e-9;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn all_pass(checks: &[CheckReport]) -> std::result::Result<(), String> {
    match checks.iter().find(|c| !c.pass) {
        None => Ok(()),
        Some(c) => Err(format!(
            "{} failed: margin {} at {}",
            c.name, c.margin, c.context
        )),
    }
}

fn half_circle(n: usize) -> Vec<UnitVector> {
    (0..n)
        .map(|k| UnitVector::from_angle(PI * k as f64 / n as f64))
        .collect()
}

fn theorem_fuzz() -> Outcome {
    let start = Instant::now();
    let dirs = half_circle(64);
    let worst = (0..10_000)
        .into_par_iter()
        .map(|i| {
            let p = corpus_item(SEED, i).polygon;
            let g = p.gap_vector();
            dirs.iter()
                .map(|&th| (th.dot(g).abs() / p.width(th), i))
                .fold((0.0, i), |a, b| if b.0 > a.0 { b } else { a })
        })
        .reduce(|| (0.0, 0), |a, b| if b.0 > a.0 { b } else { a });
    let secs = start.elapsed().as_secs_f64();
    ensure(
        worst.0 <= GAP_BOUND + 1e-9,
        format!("ratio {} on item {}", worst.0, worst.1),
    )?;
    ensure(secs <= 60.0, format!("took {secs:.1} s"))?;
    Ok(format!(
        "max ratio {:.12} (item {}), {secs:.1} s",
        worst.0, worst.1
    ))
}

fn corollaries() -> Outcome {
    let (mut worst_d, mut worst_p) = (f64::INFINITY, f64::INFINITY);
    for item in corpus(SEED, 10_000) {
        let p = &item.polygon;
        let gap = p.gap_vector().norm();
        let slack = 1e-9 * p.scale();
        let md = p.diameter() / 6.0 + slack - gap;
        let mp = p.perimeter() / 12.0 + slack - gap;
        ensure(
            md >= 0.0,
            format!("diameter bound fails on item {}", item.index),
        )?;
        ensure(
            mp >= 0.0,
            format!("perimeter bound fails on item {}", item.index),
        )?;
        worst_d = worst_d.min(md / p.scale());
        worst_p = worst_p.min(mp / p.scale());
    }
    Ok(format!(
        "min relative slack: diameter {worst_d:.3e}, perimeter {worst_p:.3e}"
    ))
}

fn sharpness() -> Outcome {
    let rows = convergence_table(&[0.1, 0.01, 0.001, 0.0001]).map_err(|e| e.to_string())?;
    for r in &rows {
        ensure(
            (r.ratio - r.closed_form_ratio).abs() <= 1e-9,
            format!(
                "ε={}: {} vs closed form {}",
                r.eps, r.ratio, r.closed_form_ratio
            ),
        )?;
        ensure(
            r.gap_over_diameter < 1.0 / 6.0 && r.gap_over_perimeter < 1.0 / 12.0,
            "limit exceeded",
        )?;
    }
    ensure(
        rows[3].ratio >= 0.16661,
        format!("ratio at 1e-4 is {}", rows[3].ratio),
    )?;
    for w in rows.windows(2) {
        ensure(
            w[1].gap_over_diameter > w[0].gap_over_diameter
                && w[1].gap_over_perimeter > w[0].gap_over_perimeter,
            format!("not monotone between ε={} and ε={}", w[0].eps, w[1].eps),
        )?;
    }
    Ok(format!(
        "ratio(1e-4)={:.9}, gap/diam={:.9}, gap/perim={:.9}",
        rows[3].ratio, rows[3].gap_over_diameter, rows[3].gap_over_perimeter
    ))
}

fn lemma_corpus() -> Result<Vec<CheckReport>, String> {
    let opts = LemmaOptions {
        directions: 16,
        grid_points: LEMMA_GRID_POINTS,
        scalars: false,
        ..LemmaOptions::default()
    };
    lemma_corpus_checks(1_000, SEED, &opts, TOL)
        .map(|(checks, _)| checks)
        .map_err(|e| e.to_string())
}

fn lemma_suite(checks: &[CheckReport]) -> Outcome {
    all_pass(checks)?;
    let named = [
        "lemma1",
        "lemma2",
        "lemma3",
        "lemma4",
        "lemma5",
        "concavity_P",
        "star_star",
        "star_star_star",
    ];
    for n in named {
        ensure(
            checks.iter().any(|c| c.name == n),
            format!("{n} did not run"),
        )?;
    }

    // the square is the rectangle witness
    let sq =
        make_polygon(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)].map(Point2::from)).unwrap();
    let frame = normalize(&sq, UnitVector::E1).map_err(|e| e.to_string())?;
    let fp = FrameProfile::with_abscissae(frame, 2, &[-0.5]).map_err(|e| e.to_string())?;
    let (ca0, big_b) = (fp.at_zero().c_a, fp.scalars().big_b);
    ensure(
        (ca0 + 0.5).abs() <= 1e-9 && (ca0 + big_b / 2.0).abs() <= 1e-9,
        format!("lemma 1 not tight: c_a(0)={ca0}, B={big_b}"),
    )?;
    ensure(
        lemma1_check(&fp, TOL).margin.abs() <= 1e-9,
        "lemma 1 margin not zero",
    )?;
    let l3 = lemma3_check(&fp, TOL);
    ensure(
        l3.evaluations == 1 && l3.context == "t=-0.5" && l3.margin.abs() <= 1e-9,
        format!("lemma 3 not tight at −1/2: {l3:?}"),
    )?;
    let worst = checks
        .iter()
        .filter(|c| named.contains(&c.name.as_str()))
        .min_by(|a, b| a.margin.total_cmp(&b.margin))
        .unwrap();
    Ok(format!(
        "{} checks over 16000 frames; worst named margin {:.3e} ({})",
        checks.len(),
        worst.margin,
        worst.name
    ))
}

fn pointwise(checks: &[CheckReport]) -> Outcome {
    let pw: Vec<&CheckReport> = checks
        .iter()
        .filter(|c| c.name.starts_with("pointwise_"))
        .collect();
    for name in [
        "pointwise_3ineq1",
        "pointwise_3ineq2",
        "pointwise_3ineq3",
        "pointwise_fed1",
    ] {
        let c = pw
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| format!("{name} did not run"))?;
        ensure(
            c.pass,
            format!("{name} failed: margin {} at {}", c.margin, c.context),
        )?;
    }
    let skip = pw
        .iter()
        .find(|c| c.name == "pointwise_skip_fraction")
        .ok_or("skip fraction missing")?;
    ensure(
        skip.lhs < 0.01,
        format!("skip fraction {} at {}", skip.lhs, skip.context),
    )?;
    Ok(format!("largest per-frame skip fraction {:.4}", skip.lhs))
}

fn scalars() -> Outcome {
    let [single, iterated] = tan_sampled_check(1_000_000, SEED);
    ensure(single.evaluations == 1_000_000, "wrong tan sample count")?;
    ensure(
        single.margin >= -SCALAR_ABS_TOL,
        format!("tan margin {} at {}", single.margin, single.context),
    )?;
    let eq = tan_equality_check(10);
    ensure(eq.evaluations == 10, "wrong equality point count")?;
    let q = quintic_check();
    all_pass(&[single.clone(), iterated, eq.clone()])?;
    all_pass(&q)?;
    for n in ["quintic_grid", "quintic_endpoints", "quintic_decomposition"] {
        ensure(q.iter().any(|c| c.name == n), format!("{n} did not run"))?;
    }
    Ok(format!(
        "tan worst margin {:.3e}, equality worst |margin| {:.3e}, {} quintic checks",
        single.margin,
        eq.lhs,
        q.len()
    ))
}

fn region() -> Outcome {
    let r = region_inequalities_check(1_000_000, SEED).map_err(|e| e.to_string())?;
    all_pass(&r.checks)?;
    for n in [
        "region_fedsm3",
        "region_fedsm4",
        "closing_B_factor",
        "closing_u_factor",
    ] {
        ensure(
            r.checks.iter().any(|c| c.name == n),
            format!("{n} did not run"),
        )?;
    }
    Ok(format!(
        "{} checks, min value {:.3e}, {} empty boxes redrawn",
        r.checks.len(),
        r.min_value,
        r.empty_boxes
    ))
}

fn oracle() -> Outcome {
    let results: Vec<Result<f64, String>> = (0..100)
        .into_par_iter()
        .map(|i| {
            let item = corpus_item(SEED ^ 0x0ac1e, i);
            let p = &item.polygon;
            let est = oracle_centroid_mc(p, 1_000_000, item.seed).map_err(|e| e.to_string())?;
            let exact = p.centroids();
            let pairs = [
                (exact.c_area.x, est.centroids.c_area.x, est.area_std_err.x),
                (exact.c_area.y, est.centroids.c_area.y, est.area_std_err.y),
                (
                    exact.c_boundary.x,
                    est.centroids.c_boundary.x,
                    est.boundary_std_err.x,
                ),
                (
                    exact.c_boundary.y,
                    est.centroids.c_boundary.y,
                    est.boundary_std_err.y,
                ),
            ];
            let mut worst = 0.0f64;
            for (a, m, se) in pairs {
                let z = (a - m).abs() / se;
                if z.is_nan() || z > 4.0 {
                    return Err(format!("item {i}: {z:.2} standard errors"));
                }
                worst = worst.max(z);
            }
            Ok(worst)
        })
        .collect();
    let mut worst_z = 0.0f64;
    for r in results {
        worst_z = worst_z.max(r?);
    }

    let tri = make_polygon(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)].map(Point2::from)).unwrap();
    let want = 2f64.sqrt() / 4.0;
    let cb = tri.boundary_centroid();
    ensure(
        (cb.x - want).abs() <= 1e-9 && (cb.y - want).abs() <= 1e-9,
        format!("analytic boundary centroid {cb:?}"),
    )?;
    let est = oracle_centroid_mc(&tri, 1_000_000, SEED).map_err(|e| e.to_string())?;
    let mc = est.centroids.c_boundary;
    ensure(
        (mc.x - want).abs() <= 1e-3 && (mc.y - want).abs() <= 1e-3,
        format!("oracle boundary centroid {mc:?}"),
    )?;
    Ok(format!(
        "worst deviation {worst_z:.2} standard errors over 400 coordinates"
    ))
}

fn sweep_identities() -> Outcome {
    let dirs = half_circle(4);
    let per_item: Vec<Result<Vec<CheckReport>, String>> = (0..1_000)
        .into_par_iter()
        .map(|i| {
            let p = corpus_item(SEED, i).polygon;
            let prof = Profile::compute(&p, DEFAULT_GRID_POINTS).map_err(|e| e.to_string())?;
            let mut checks = vec![prof.endpoint_consistency_check(&p, 1e-9)];
            for &th in &dirs {
                let frame = normalize(&p, th).map_err(|e| e.to_string())?;
                let fp =
                    FrameProfile::new(frame, DEFAULT_GRID_POINTS).map_err(|e| e.to_string())?;
                checks.push(fp.profile.integral_identity_check());
                checks.push(fp.profile.verify_cp_identity());
            }
            Ok(checks
                .into_iter()
                .map(|c| c.with_context_prefix(&format!("item {i}")))
                .collect())
        })
        .collect();
    let mut all = Vec::new();
    for r in per_item {
        all.extend(r?);
    }
    let merged = CheckReport::merge_by_name(&all);
    all_pass(&merged)?;
    Ok(merged
        .iter()
        .map(|c| format!("{} worst {:.3e}", c.name, c.lhs))
        .collect::<Vec<_>>()
        .join(", "))
}

fn search_safety() -> Outcome {
    let mut lines = Vec::new();
    for n in 3..=8 {
        let cfg = SearchConfig {
            n_vertices: n,
            budget: 10_000,
            restarts: 8,
            seed: SEED,
            directions: 64,
        };
        let a = run_search(&cfg, TOL).map_err(|e| e.to_string())?;
        let b = run_search(&cfg, TOL).map_err(|e| e.to_string())?;
        ensure(
            a.to_json() == b.to_json(),
            format!("n={n}: reports differ between runs"),
        )?;
        all_pass(&a.checks)?;
        let best = a.search.as_ref().unwrap().best_ratio;
        ensure(best <= GAP_BOUND + 1e-9, format!("n={n}: ratio {best}"))?;
        ensure(best >= 0.16, format!("n={n}: only reached {best}"))?;
        lines.push(format!("n={n}: {best:.9}"));
    }
    Ok(lines.join(", "))
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut report = |k: usize, name: &str, f: &dyn Fn() -> Outcome| {
        let start = Instant::now();
        let r = f();
        let secs = start.elapsed().as_secs_f64();
        match r {
            Ok(msg) => println!("criterion {k:>2} {name}: PASS ({msg}) [{secs:.1} s]"),
            Err(msg) => {
                failed += 1;
                println!("criterion {k:>2} {name}: FAIL ({msg}) [{secs:.1} s]");
            }
        }
    };
    report(1, "theorem fuzz", &theorem_fuzz);
    report(2, "corollaries", &corollaries);
    report(3, "sharpness", &sharpness);
    // criteria 4 and 5 share one corpus run
    let lemma_checks = OnceCell::new();
    let shared = || {
        lemma_checks
            .get_or_init(lemma_corpus)
            .as_ref()
            .map_err(Clone::clone)
    };
    report(4, "lemma suite", &|| lemma_suite(shared()?));
    report(5, "pointwise bounds", &|| pointwise(shared()?));
    report(6, "scalar suites", &scalars);
    report(7, "region inequalities", &region);
    report(8, "oracle equivalence", &oracle);
    report(9, "sweep identities", &sweep_identities);
    report(10, "search safety", &search_safety);
    if failed == 0 {
        println!("acceptance: all 10 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 10 criteria failed");
        ExitCode::FAILURE
    }
}
