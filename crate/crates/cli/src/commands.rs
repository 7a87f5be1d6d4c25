use std::collections::BTreeSet;
use std::fs;
use std::time::Instant;

use ffield::{Poly, RatFunc};
use homology::{
    bm_homology, closed_core_cells, cohomology_on, compact_support_cohomology, core_cells, homology_on, LimitResult,
};
use modsym::{automorphic_csv, automorphic_export, modular_symbol, span_test, GeneratorPolicy, SpanStatus};
use quotient::quotient_complex;
use scomplex::{Complex, ExhaustedComplex};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::acceptance::{criteria, SuiteContext};
use crate::config::{Format, RunConfig};
use crate::parse::parse_ratfunc;
use crate::report::{write_atomic, Report, VERSION};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Quotient,
    Homology,
    Modsym,
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Quotient => "quotient",
            Command::Homology => "homology",
            Command::Modsym => "modsym",
            Command::Verify => "verify",
        }
    }
}

struct Payload {
    results: Value,
    files: Vec<(String, String)>,
    failed: bool,
    timing: Option<Value>,
}

impl Payload {
    fn new(results: Value) -> Payload {
        Payload { results, files: Vec::new(), failed: false, timing: None }
    }
}

/// A finished command: the report, the artifact files, and the exit code.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Report,
    pub files: Vec<(String, String)>,
    pub exit_code: i32,
}

impl Outcome {
    pub fn error(cmd: Command, cfg: &RunConfig, e: &CliError) -> Outcome {
        let report = Report {
            command: cmd.name().into(),
            config: cfg.clone(),
            status: "error".into(),
            results: json!({ "error": { "kind": e.kind(), "message": e.to_string() } }),
            timing: None,
            version: VERSION.into(),
        };
        Outcome { report, files: Vec::new(), exit_code: e.exit_code() }
    }

    pub fn rendered(&self) -> String {
        match self.report.config.format {
            Format::Json => self.report.to_json(),
            Format::Csv => self.report.to_csv(),
        }
    }

    /// Writes the artifacts, then the report, into the output directory.
    pub fn write(&self) -> Result<(), CliError> {
        let Some(dir) = &self.report.config.out_dir else { return Ok(()) };
        for (name, text) in &self.files {
            write_atomic(dir, name, text)?;
        }
        let name = match self.report.config.format {
            Format::Json => "report.json",
            Format::Csv => "report.csv",
        };
        write_atomic(dir, name, &self.rendered())
    }
}

fn finish(cmd: Command, cfg: &RunConfig, start: Instant, r: Result<Payload, CliError>) -> Outcome {
    match r {
        Err(e) => Outcome::error(cmd, cfg, &e),
        Ok(p) => {
            let timing = cfg.timing.then(|| {
                let mut t = json!({ "seconds": start.elapsed().as_secs_f64() });
                if let Some(extra) = p.timing {
                    t["detail"] = extra;
                }
                t
            });
            let report = Report {
                command: cmd.name().into(),
                config: cfg.clone(),
                status: if p.failed { "failed" } else { "ok" }.into(),
                results: p.results,
                timing,
                version: VERSION.into(),
            };
            Outcome { report, files: p.files, exit_code: if p.failed { 2 } else { 0 } }
        }
    }
}

pub fn run(cmd: Command, cfg: &RunConfig) -> Outcome {
    match cmd {
        Command::Quotient => cmd_quotient(cfg),
        Command::Homology => cmd_homology(cfg),
        Command::Modsym => cmd_modsym(cfg),
        Command::Verify => cmd_verify(cfg),
    }
}

fn level_label(cfg: &RunConfig) -> Result<String, CliError> {
    let c = cfg.level_coeffs()?;
    Ok(Poly::from_coeffs(c.iter().map(|&x| x as u8).collect()).to_string_t())
}

/// Assembles the quotient and reports core sizes for α = 1..=alpha_max.
pub fn cmd_quotient(cfg: &RunConfig) -> Outcome {
    let start = Instant::now();
    finish(Command::Quotient, cfg, start, quotient_payload(cfg))
}

fn quotient_payload(cfg: &RunConfig) -> Result<Payload, CliError> {
    cfg.validate()?;
    // the window must reach past d - 1 even when only small cores are asked for
    let assembled_alpha = cfg.alpha_max.max(cfg.d as i64);
    let qt = quotient_complex(&cfg.params(assembled_alpha)?)?;
    let d = cfg.d;
    let cores: Vec<Value> = (1..=cfg.alpha_max)
        .map(|a| json!({ "alpha": a, "counts": (0..d).map(|i| qt.core(i, a).len()).collect::<Vec<_>>() }))
        .collect();
    let results = json!({
        "q": cfg.q,
        "d": d,
        "level": level_label(cfg)?,
        "assembled_alpha": assembled_alpha,
        "assembled": (0..d).map(|i| qt.complex().count(i)).collect::<Vec<_>>(),
        "self_identifications": qt.self_identifications,
        "cores": cores,
        "files": ["complex.txt", "vertices.json"],
    });
    let mut p = Payload::new(results);
    p.files.push(("complex.txt".into(), qt.complex().to_text()));
    p.files.push(("vertices.json".into(), serde_json::to_string_pretty(&qt.sidecar()).unwrap() + "\n"));
    Ok(p)
}

/// H_{d-1} and H^{d-1} of (core, frontier), compact support and Borel-Moore
/// limits, and the duality checks between them.
pub fn cmd_homology(cfg: &RunConfig) -> Outcome {
    let start = Instant::now();
    finish(Command::Homology, cfg, start, homology_payload(cfg))
}

fn limit_json(l: &LimitResult) -> Value {
    json!({ "grid": l.grid, "dims": l.dims, "transition_ranks": l.transition_ranks, "dimension": l.dimension })
}

fn homology_payload(cfg: &RunConfig) -> Result<Payload, CliError> {
    cfg.validate()?;
    let (e, alpha, source) = match &cfg.complex_file {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
            let c = Complex::from_text(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
            let e = ExhaustedComplex::finite(c);
            let a = e.alpha_max();
            (e, a, json!({ "complex_file": path }))
        }
        None => {
            let qt = quotient_complex(&cfg.params(cfg.alpha_max)?)?;
            (qt.exhausted, cfg.alpha_max, json!({ "level": level_label(cfg)? }))
        }
    };
    let i = cfg.d - 1;
    let stable_from = cfg.d as i64 - 1;
    let c = &e.complex;
    let rel_h = homology_on(c, core_cells(&e, alpha), i);
    let rel_co = cohomology_on(c, core_cells(&e, alpha), i);
    let bm = bm_homology(&e, i, alpha, stable_from)?;
    let hc = compact_support_cohomology(&e, i, alpha, stable_from)?;
    let (Some(bm_dim), Some(hc_dim)) = (bm.dimension, hc.dimension) else {
        let what = if bm.dimension.is_none() { "Borel-Moore homology" } else { "compact support cohomology" };
        return Err(CliError::NotStabilized { what: what.into(), alpha_max: alpha });
    };
    let mut uct = Vec::new();
    let top = c.dim().unwrap_or(0).max(i);
    for j in 0..=top {
        for (pair, cells) in [("relative", core_cells(&e, alpha)), ("closed", closed_core_cells(&e, alpha))] {
            let h = homology_on(c, cells.clone(), j).dimension;
            let co = cohomology_on(c, cells, j).dimension;
            uct.push(json!({ "degree": j, "pair": pair, "homology": h, "cohomology": co, "holds": h == co }));
        }
    }
    uct.push(json!({ "degree": i, "pair": "limits", "homology": bm_dim, "cohomology": hc_dim, "holds": bm_dim == hc_dim }));
    let all = uct.iter().all(|u| u["holds"] == true);
    let results = json!({
        "source": source,
        "degree": i,
        "alpha": alpha,
        "dims": {
            "homology": rel_h.dimension,
            "cohomology": rel_co.dimension,
            "compact_support": hc_dim,
            "borel_moore": bm_dim,
        },
        "borel_moore": limit_json(&bm),
        "compact_support": limit_json(&hc),
        "duality": uct,
        "duality_holds": all,
    });
    if !all {
        return Err(CliError::Check(format!("duality fails: {results}")));
    }
    Ok(Payload::new(results))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BasisFile {
    bases: Vec<Vec<Vec<String>>>,
}

fn read_bases(cfg: &RunConfig) -> Result<Vec<Vec<Vec<RatFunc>>>, CliError> {
    let path = cfg.basis_file.as_ref().ok_or_else(|| CliError::Config("modsym needs basis_file".into()))?;
    let bad = |e: String| CliError::Config(format!("{}: {e}", path.display()));
    let text = fs::read_to_string(path).map_err(|e| bad(e.to_string()))?;
    let file: BasisFile = serde_json::from_str(&text).map_err(|e| bad(e.to_string()))?;
    if file.bases.is_empty() {
        return Err(bad("no bases".into()));
    }
    let f = cfg.field()?;
    file.bases
        .iter()
        .map(|m| m.iter().map(|row| row.iter().map(|s| parse_ratfunc(s, &f).map_err(&bad)).collect()).collect())
        .collect()
}

/// Symbols of the given bases at α = alpha_max, their export tables, and the
/// span test.
pub fn cmd_modsym(cfg: &RunConfig) -> Outcome {
    let start = Instant::now();
    finish(Command::Modsym, cfg, start, modsym_payload(cfg))
}

fn modsym_payload(cfg: &RunConfig) -> Result<Payload, CliError> {
    cfg.validate()?;
    let bases = read_bases(cfg)?;
    let qt = quotient_complex(&cfg.params(cfg.alpha_max)?)?;
    let alpha = cfg.alpha_max;
    let mut files = Vec::new();
    let mut symbols = Vec::new();
    for (k, v) in bases.iter().enumerate() {
        let s = modular_symbol(&qt, v, alpha, None)?;
        let name = format!("symbol_{k}.csv");
        files.push((name.clone(), automorphic_csv(&automorphic_export(&qt, &s.chain, alpha))?));
        let mut j = s.to_json(&qt);
        j["export"] = json!(name);
        symbols.push(j);
    }
    let span = if cfg.span {
        let bm = bm_homology(&qt.exhausted, cfg.d - 1, alpha, cfg.d as i64 - 1)?;
        if !bm.stabilized {
            return Err(CliError::NotStabilized { what: "Borel-Moore homology".into(), alpha_max: alpha });
        }
        let policy = GeneratorPolicy { max_d_gen: cfg.d_gen, max_generators: cfg.generator_ceiling, ..GeneratorPolicy::default() };
        let cert = span_test(&qt, &bm, alpha, policy)?;
        let mut j = cert.to_json(&qt);
        j["verified"] = json!(cert.status == SpanStatus::Contained && cert.verify());
        j
    } else {
        Value::Null
    };
    let mut p = Payload::new(json!({ "level": level_label(cfg)?, "alpha": alpha, "symbols": symbols, "span_test": span }));
    p.files = files;
    Ok(p)
}

/// Runs the selected acceptance criteria; any failure marks the report failed.
pub fn cmd_verify(cfg: &RunConfig) -> Outcome {
    let start = Instant::now();
    finish(Command::Verify, cfg, start, verify_payload(cfg))
}

fn verify_payload(cfg: &RunConfig) -> Result<Payload, CliError> {
    let all = criteria();
    let ids: BTreeSet<usize> = all.iter().map(|c| c.id).collect();
    let selected: BTreeSet<usize> = match &cfg.criteria {
        None => ids.clone(),
        Some(v) => v.iter().copied().collect(),
    };
    if selected.is_empty() {
        return Err(CliError::Config("empty criteria selection".into()));
    }
    if let Some(bad) = selected.iter().find(|k| !ids.contains(k)) {
        return Err(CliError::Config(format!("no criterion {bad}")));
    }
    let ctx = SuiteContext { golden_dir: cfg.golden_dir.clone() };
    let results: Vec<_> = all.iter().filter(|c| selected.contains(&c.id)).map(|c| c.run(&ctx)).collect();
    let failed = results.iter().filter(|r| !r.passed).count();
    let mut p = Payload::new(json!({ "criteria": results, "passed": results.len() - failed, "failed": failed }));
    p.failed = failed > 0;
    p.timing = Some(json!(results.iter().map(|r| json!({ "id": r.id, "seconds": r.seconds })).collect::<Vec<_>>()));
    Ok(p)
}
