use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use centroid_gap::extremal::SearchConfig;
use centroid_gap::report::{
    polygon_to_json, read_polygon, run_extremal, run_lemmas, run_search, run_verify, sweep_csv,
    LemmaInput, LemmaOptions, RunReport,
};
use centroid_gap::{Error, DEFAULT_REL_TOL};

/// Checks the centroid-gap bound and its supporting inequalities on convex
/// polygons.
#[derive(Parser)]
#[command(name = "centroid-gap", version, about)]
struct Cli {
    /// Relative tolerance of geometric checks.
    #[arg(long, global = true, default_value_t = DEFAULT_REL_TOL)]
    tol: f64,
    /// Master seed for every random stream.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write the report or CSV here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Gap ratio over a direction grid plus the diameter and perimeter bounds.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 256)]
        directions: usize,
    },
    /// Every auxiliary inequality on a polygon or a seeded corpus.
    Lemmas {
        file: Option<PathBuf>,
        /// Corpus size and seed.
        #[arg(long, num_args = 2, value_names = ["N", "SEED"], conflicts_with = "file")]
        corpus: Option<Vec<u64>>,
        #[arg(long, default_value_t = 16)]
        directions: usize,
        #[arg(long, default_value_t = 512)]
        grid: usize,
        /// Only the tangent, quintic and region suites.
        #[arg(long, conflicts_with_all = ["file", "corpus"])]
        scalars_only: bool,
        /// Skip the scalar suites when geometry is given.
        #[arg(long, conflicts_with = "scalars_only")]
        no_scalars: bool,
        #[arg(long, default_value_t = 1_000_000)]
        tan_samples: usize,
        #[arg(long, default_value_t = 1_000_000)]
        region_samples: usize,
    },
    /// Normalized-frame slicing profile as CSV.
    Sweep {
        file: PathBuf,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        theta: f64,
        #[arg(long, default_value_t = 2048)]
        grid: usize,
    },
    /// Gap ratios of the thin triangles T(ε) against their closed form.
    Extremal {
        #[arg(required = true, num_args = 1..)]
        eps: Vec<f64>,
    },
    /// Random-restart search for polygons with a large gap ratio.
    Search {
        n: usize,
        budget: usize,
        /// Overrides --seed.
        search_seed: Option<u64>,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
        #[arg(long, default_value_t = 64)]
        directions: usize,
        /// Write the best polygon as JSON.
        #[arg(long)]
        polygon_out: Option<PathBuf>,
    },
}

enum Failure {
    Input(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InternalInvariantViolation(_) => Failure::Check(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::Input(format!("stdout: {e}")))
        }
    }
}

fn finish(report: &RunReport, out: Option<&Path>) -> Result<u8, Failure> {
    emit(out, &report.to_json())?;
    if !report.passed() {
        eprintln!(
            "{} of {} checks failed; worst: {}",
            report.summary.total - report.summary.passed,
            report.summary.total,
            report.summary.worst_context.as_deref().unwrap_or("")
        );
    }
    Ok(report.exit_code() as u8)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    if !(cli.tol.is_finite() && cli.tol >= 0.0) {
        return Err(Failure::Input(format!(
            "--tol must be finite and ≥ 0, got {}",
            cli.tol
        )));
    }
    if let Some(j) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .map_err(|e| Failure::Input(format!("--jobs: {e}")))?;
    }
    let out = cli.out.as_deref();
    match cli.command {
        Command::Verify { file, directions } => {
            let poly = read_polygon(&file)?;
            finish(&run_verify(&poly, directions, cli.tol, cli.seed)?, out)
        }
        Command::Lemmas {
            file,
            corpus,
            directions,
            grid,
            scalars_only,
            no_scalars,
            tan_samples,
            region_samples,
        } => {
            let input = match (file, corpus) {
                (Some(f), _) => Some(LemmaInput::Polygon(read_polygon(&f)?)),
                (None, Some(c)) => Some(LemmaInput::Corpus {
                    count: c[0] as usize,
                    seed: c[1],
                }),
                (None, None) if scalars_only => None,
                (None, None) => {
                    return Err(Failure::Input(
                        "give a polygon file, --corpus N SEED or --scalars-only".into(),
                    ));
                }
            };
            let opts = LemmaOptions {
                directions,
                grid_points: grid,
                tan_samples,
                region_samples,
                scalars: !no_scalars,
            };
            let seed = match &input {
                Some(LemmaInput::Corpus { seed, .. }) => *seed,
                _ => cli.seed,
            };
            finish(&run_lemmas(input.as_ref(), &opts, cli.tol, seed)?, out)
        }
        Command::Sweep { file, theta, grid } => {
            let poly = read_polygon(&file)?;
            emit(out, &sweep_csv(&poly, theta, grid)?)?;
            Ok(0)
        }
        Command::Extremal { eps } => finish(&run_extremal(&eps, cli.tol, cli.seed)?, out),
        Command::Search {
            n,
            budget,
            search_seed,
            restarts,
            directions,
            polygon_out,
        } => {
            let cfg = SearchConfig {
                n_vertices: n,
                budget,
                restarts,
                seed: search_seed.unwrap_or(cli.seed),
                directions,
            };
            let report = run_search(&cfg, cli.tol)?;
            let best = &report
                .search
                .as_ref()
                .expect("search report carries its state")
                .best_polygon;
            if let Some(p) = polygon_out.as_deref() {
                emit(Some(p), &polygon_to_json(best))?;
            } else if !report.passed() {
                eprint!("counterexample candidate: {}", polygon_to_json(best));
            }
            finish(&report, out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
    }
}
