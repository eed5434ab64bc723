//! Polygon files, run reports and the commands behind the CLI.
//!
//! Every command returns a [`RunReport`] (or CSV text for the sweep). Reports
//! are deterministic functions of their inputs, seed and flags, so two runs
//! serialize to the same bytes.

mod commands;
mod polygon_file;

use serde::Serialize;

use crate::check::CheckReport;
use crate::extremal::{ConvergenceRow, SearchState};
use crate::frame::FrameScalars;
use crate::lemmas::SkippedCheck;

pub use commands::{
    directional_checks, lemma_corpus_checks, lemma_polygon_checks, run_extremal, run_lemmas,
    run_search, run_verify, scalar_checks, sweep_csv, LemmaInput, LemmaOptions,
};
pub use polygon_file::{
    parse_points, parse_polygon, polygon_to_csv, polygon_to_json, read_polygon,
};

/// Counts and the worst margin over a report's checks.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    /// Smallest margin over checks that evaluated at least one point.
    pub worst_margin: Option<f64>,
    pub worst_context: Option<String>,
}

impl Summary {
    pub fn of(checks: &[CheckReport]) -> Summary {
        let worst = checks
            .iter()
            .filter(|c| c.evaluations > 0)
            .min_by(|a, b| a.margin.total_cmp(&b.margin));
        Summary {
            total: checks.len(),
            passed: checks.iter().filter(|c| c.pass).count(),
            worst_margin: worst.map(|c| c.margin),
            worst_context: worst.map(|c| format!("{}: {}", c.name, c.context)),
        }
    }
}

/// The JSON document written by every command except `sweep`.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub seed: u64,
    pub tolerance: f64,
    pub checks: Vec<CheckReport>,
    pub frames: Vec<FrameScalars>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<SkippedCheck>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<ConvergenceRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchState>,
}

impl RunReport {
    pub fn new(command: &str, seed: u64, tolerance: f64, checks: Vec<CheckReport>) -> RunReport {
        RunReport {
            command: command.to_string(),
            seed,
            tolerance,
            summary: Summary::of(&checks),
            checks,
            frames: Vec::new(),
            skipped: Vec::new(),
            table: None,
            search: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.passed == self.summary.total
    }

    /// 0 when every check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
