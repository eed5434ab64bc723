//! Verified-inequality records.
//!
//! Every check is stated in the canonical form `lhs ≤ rhs`; the margin is
//! `rhs − lhs` and a check passes when `margin ≥ −tolerance`. Checks that
//! sweep many evaluation points keep only the worst point, measured by
//! `margin / tolerance`.

use serde::{Deserialize, Serialize};

/// One verified inequality, reduced to its worst evaluation point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub evaluations: usize,
    pub context: String,
}

impl CheckReport {
    /// Single-point report.
    pub fn single(
        name: impl Into<String>,
        lhs: f64,
        rhs: f64,
        tolerance: f64,
        context: impl Into<String>,
    ) -> Self {
        let margin = rhs - lhs;
        CheckReport {
            name: name.into(),
            lhs,
            rhs,
            margin,
            tolerance,
            pass: passes(margin, tolerance),
            evaluations: 1,
            context: context.into(),
        }
    }

    fn score(&self) -> f64 {
        score(self.margin, self.tolerance)
    }

    /// Fold another report of the same check into this one, keeping the
    /// worst point and summing evaluation counts.
    pub fn absorb(&mut self, other: &CheckReport) {
        let evaluations = self.evaluations + other.evaluations;
        let pass = self.pass && other.pass;
        if other.evaluations > 0 && (self.evaluations == 0 || other.score() < self.score()) {
            *self = other.clone();
        }
        self.evaluations = evaluations;
        self.pass = pass;
    }

    /// Merge a list of reports by name, preserving first-appearance order.
    pub fn merge_by_name<'a>(
        reports: impl IntoIterator<Item = &'a CheckReport>,
    ) -> Vec<CheckReport> {
        let mut merged: Vec<CheckReport> = Vec::new();
        for r in reports {
            match merged.iter_mut().find(|m| m.name == r.name) {
                Some(m) => m.absorb(r),
                None => merged.push(r.clone()),
            }
        }
        merged
    }

    /// Prefix the context, e.g. with a corpus item and direction.
    pub fn with_context_prefix(mut self, prefix: &str) -> Self {
        self.context = if self.context.is_empty() {
            prefix.to_string()
        } else {
            format!("{prefix}; {}", self.context)
        };
        self
    }
}

fn passes(margin: f64, tolerance: f64) -> bool {
    margin >= -tolerance
}

fn score(margin: f64, tolerance: f64) -> f64 {
    if margin.is_nan() {
        f64::NEG_INFINITY
    } else {
        margin / tolerance.max(f64::MIN_POSITIVE)
    }
}

/// Accumulates evaluations of one inequality over many points.
#[derive(Debug, Clone)]
pub struct CheckBuilder {
    name: String,
    rel_tol: f64,
    worst: Option<Worst>,
    evaluations: usize,
    failures: usize,
}

#[derive(Debug, Clone)]
struct Worst {
    score: f64,
    lhs: f64,
    rhs: f64,
    tolerance: f64,
    context: String,
}

impl CheckBuilder {
    pub fn new(name: impl Into<String>, rel_tol: f64) -> Self {
        CheckBuilder {
            name: name.into(),
            rel_tol,
            worst: None,
            evaluations: 0,
            failures: 0,
        }
    }

    /// Record `lhs ≤ rhs` with tolerance `rel_tol · scale`.
    pub fn le(&mut self, lhs: f64, rhs: f64, scale: f64, context: impl FnOnce() -> String) {
        let tol = self.rel_tol * scale.abs();
        self.le_abs(lhs, rhs, tol, context);
    }

    /// Record `lhs ≥ rhs` with tolerance `rel_tol · scale`.
    pub fn ge(&mut self, lhs: f64, rhs: f64, scale: f64, context: impl FnOnce() -> String) {
        self.le(rhs, lhs, scale, context);
    }

    /// Record `lhs ≤ rhs` with an absolute tolerance.
    pub fn le_abs(&mut self, lhs: f64, rhs: f64, tolerance: f64, context: impl FnOnce() -> String) {
        let margin = rhs - lhs;
        self.evaluations += 1;
        if !passes(margin, tolerance) || margin.is_nan() {
            self.failures += 1;
        }
        let s = score(margin, tolerance);
        let replace = match &self.worst {
            None => true,
            Some(w) => s < w.score,
        };
        if replace {
            self.worst = Some(Worst {
                score: s,
                lhs,
                rhs,
                tolerance,
                context: context(),
            });
        }
    }

    pub fn evaluations(&self) -> usize {
        self.evaluations
    }

    pub fn failures(&self) -> usize {
        self.failures
    }

    pub fn finish(self) -> CheckReport {
        match self.worst {
            Some(w) => {
                let margin = w.rhs - w.lhs;
                CheckReport {
                    name: self.name,
                    lhs: w.lhs,
                    rhs: w.rhs,
                    margin,
                    tolerance: w.tolerance,
                    pass: self.failures == 0,
                    evaluations: self.evaluations,
                    context: w.context,
                }
            }
            None => CheckReport {
                name: self.name,
                lhs: 0.0,
                rhs: 0.0,
                margin: 0.0,
                tolerance: 0.0,
                pass: true,
                evaluations: 0,
                context: "no points evaluated".into(),
            },
        }
    }
}
