//! The acceptance suite: one check per criterion, each exact and seeded.

mod cells;
mod hn;
mod homology;
mod sample;
mod symbols;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::Instant;

use serde::Serialize;

pub use symbols::{scan_alpha, scan_levels, GOLDEN_CSV, GOLDEN_NAME};

/// Inputs a criterion may read besides its own fixed configurations.
#[derive(Clone, Debug, Default)]
pub struct SuiteContext {
    /// Directory holding golden files; the built-in copies are used when absent.
    pub golden_dir: Option<PathBuf>,
}

/// A failed check carries its message; a passing one a short summary.
pub type Outcome = Result<String, String>;

pub(crate) fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Turns any error into a failure message.
pub(crate) fn ok<T, E: std::fmt::Display>(r: Result<T, E>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

pub struct Criterion {
    pub id: usize,
    pub name: &'static str,
    run: fn(&SuiteContext) -> Outcome,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    #[serde(skip)]
    pub seconds: f64,
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { id: 1, name: "sign calculus", run: cells::sign_calculus },
        Criterion { id: 2, name: "beta is a cycle", run: cells::beta_is_a_cycle },
        Criterion { id: 3, name: "lift independence", run: cells::lift_independence },
        Criterion { id: 4, name: "d=2 tree oracle", run: hn::tree_oracle },
        Criterion { id: 5, name: "gamma invariance", run: hn::gamma_invariance },
        Criterion { id: 6, name: "HN machinery", run: hn::hn_machinery },
        Criterion { id: 7, name: "truncation and stabilization", run: homology::stabilization },
        Criterion { id: 8, name: "duality", run: homology::duality },
        Criterion { id: 9, name: "modular symbols", run: symbols::symbols },
        Criterion { id: 10, name: "span containment scan", run: symbols::span_scan },
        Criterion { id: 11, name: "ramified pullback", run: homology::ramified_pullback },
    ]
}

impl Criterion {
    pub fn run(&self, ctx: &SuiteContext) -> CriterionResult {
        let start = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(|| (self.run)(ctx)))
            .unwrap_or_else(|p| {
                let msg = p
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "panic".into());
                Err(format!("panicked: {msg}"))
            });
        let (passed, detail) = match out {
            Ok(s) => (true, s),
            Err(s) => (false, s),
        };
        CriterionResult { id: self.id, name: self.name.into(), passed, detail, seconds: start.elapsed().as_secs_f64() }
    }
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!("[{}] criterion {:>2} {}: {}", if self.passed { "PASS" } else { "FAIL" }, self.id, self.name, self.detail)
    }
}
