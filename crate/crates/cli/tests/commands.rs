use std::collections::BTreeSet;
use std::fs;
use std::path::Path;
use std::process::Command as Proc;

use building::{neighbors, vertex_canonical};
use cli::{cmd_homology, cmd_modsym, cmd_quotient, cmd_verify, Format, RunConfig};
use ffield::{Fq, InfinityLattice, DEFAULT_SERIES_CEILING};
use scomplex::Complex;
use serde_json::Value;

fn cfg(q: u32, level: &str, alpha_max: i64) -> RunConfig {
    RunConfig { q, level: level.into(), alpha_max, ..RunConfig::default() }
}

fn results(o: &cli::Outcome) -> &Value {
    &o.report.results
}

/// Vertices of the d = 2 full-level quotient with gap below alpha, found by
/// walking the tree and collecting normalized splitting types.
fn tree_vertices(q: u32, alpha: i64) -> usize {
    let f = Fq::standard(q).unwrap();
    let gap = |v: &building::VertexKey| {
        let n = v.to_lattice(2, &f).unwrap().bundle_type(&f, DEFAULT_SERIES_CEILING).unwrap();
        n[0] - n[1]
    };
    let start = vertex_canonical(&InfinityLattice::standard(2), &f);
    let mut seen = BTreeSet::from([0]);
    let mut queue = vec![start];
    while let Some(v) = queue.pop() {
        for (w, _) in neighbors(&v, 2, &f).unwrap() {
            let g = gap(&w);
            if g < alpha && seen.insert(g) {
                queue.push(w);
            }
        }
    }
    seen.len()
}

#[test]
fn quotient_counts_files_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let c = RunConfig { out_dir: Some(dir.path().to_path_buf()), ..cfg(2, "1", 5) };
    let o = cmd_quotient(&c);
    assert_eq!(o.exit_code, 0);
    let r = results(&o);
    assert_eq!(r["cores"][4]["alpha"], 5);
    assert_eq!(r["cores"][4]["counts"][0], tree_vertices(2, 5));
    assert_eq!(tree_vertices(2, 5), 5);
    o.write().unwrap();
    let text = fs::read_to_string(dir.path().join("complex.txt")).unwrap();
    let back = Complex::from_text(&text).unwrap();
    assert_eq!(back.to_text(), text);
    let side: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("vertices.json")).unwrap()).unwrap();
    assert_eq!(side["vertices"].as_array().unwrap().len(), back.count(0));
    let first = fs::read(dir.path().join("report.json")).unwrap();
    cmd_quotient(&c).write().unwrap();
    assert_eq!(fs::read(dir.path().join("report.json")).unwrap(), first);
    let v: Value = serde_json::from_slice(&first).unwrap();
    assert!(v.get("timing").is_none());
}

#[test]
fn small_alpha_is_a_valid_report_and_bad_levels_are_config_errors() {
    let o = cmd_quotient(&cfg(2, "1", 1));
    assert_eq!(o.exit_code, 0);
    assert_eq!(results(&o)["cores"].as_array().unwrap().len(), 1);
    for bad in [cfg(3, "2t+1", 4), cfg(2, "0", 4), cfg(2, "t^4+1", 4), cfg(6, "1", 4), cfg(2, "t+", 4)] {
        let o = cmd_quotient(&bad);
        assert_eq!(o.exit_code, 2, "{:?}", bad.level);
        assert_eq!(o.report.status, "error");
        assert_eq!(results(&o)["error"]["kind"], "config");
    }
}

fn dims(o: &cli::Outcome) -> [u64; 4] {
    let d = &results(o)["dims"];
    ["homology", "cohomology", "compact_support", "borel_moore"].map(|k| d[k].as_u64().unwrap())
}

#[test]
fn homology_examples() {
    let ray = cmd_homology(&cfg(2, "1", 5));
    assert_eq!(ray.exit_code, 0, "{}", ray.report.to_json());
    assert_eq!(dims(&ray), [0, 0, 0, 0]);
    assert_eq!(results(&ray)["duality_holds"], true);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("triangle.txt");
    let mut b = scomplex::ComplexBuilder::new();
    for (x, y) in [("a", "b"), ("b", "c"), ("a", "c")] {
        b.strict(&[x, y]);
    }
    fs::write(&path, b.build().unwrap().to_text()).unwrap();
    let tri = cmd_homology(&RunConfig { complex_file: Some(path), ..RunConfig::default() });
    assert_eq!(dims(&tri), [1, 1, 1, 1]);

    let short = cmd_homology(&cfg(2, "t^2+t+1", 2));
    assert_eq!(short.exit_code, 2);
    assert_eq!(results(&short)["error"]["kind"], "not_stabilized");

    let level = cmd_homology(&cfg(2, "t^2+t+1", 5));
    assert_eq!(dims(&level)[3], 20);
}

fn basis_file(dir: &Path, bases: &str) -> std::path::PathBuf {
    let p = dir.join("bases.json");
    fs::write(&p, format!("{{\"bases\": {bases}}}")).unwrap();
    p
}

#[test]
fn modsym_golden_vacuous_and_singular() {
    let dir = tempfile::tempdir().unwrap();
    let c = RunConfig {
        basis_file: Some(basis_file(dir.path(), r#"[[["1","0"],["0","1"]]]"#)),
        out_dir: Some(dir.path().join("out")),
        ..cfg(2, "1", 5)
    };
    let o = cmd_modsym(&c);
    assert_eq!(o.exit_code, 0, "{}", o.report.to_json());
    assert_eq!(results(&o)["span_test"]["status"], "vacuous");
    assert_eq!(results(&o)["symbols"][0]["certificate"]["valid"], true);
    o.write().unwrap();
    let csv = fs::read_to_string(dir.path().join("out/symbol_0.csv")).unwrap();
    assert_eq!(csv, include_str!("golden/d2_q2_full_standard.csv"));

    let sing = RunConfig { basis_file: Some(basis_file(dir.path(), r#"[[["t","1"],["t^2","t"]]]"#)), ..c.clone() };
    let o = cmd_modsym(&sing);
    assert_eq!(o.exit_code, 2);
    assert_eq!(results(&o)["error"]["kind"], "computation");

    let missing = RunConfig { basis_file: None, ..c };
    assert_eq!(results(&cmd_modsym(&missing))["error"]["kind"], "config");
}

#[test]
fn modsym_span_is_contained_at_a_proper_level() {
    let dir = tempfile::tempdir().unwrap();
    let c = RunConfig {
        basis_file: Some(basis_file(dir.path(), r#"[[["1","0"],["0","1"]], [["1","t^2+t+1"],["0","1"]]]"#)),
        d_gen: 1,
        ..cfg(2, "t^2+t+1", 5)
    };
    let o = cmd_modsym(&c);
    assert_eq!(o.exit_code, 0);
    let span = &results(&o)["span_test"];
    assert_eq!(span["status"], "contained");
    assert_eq!(span["verified"], true);
    // γ ≡ 1 mod the level moves the basis but not the class
    let s = &results(&o)["symbols"];
    assert_eq!(s[0]["chain"], s[1]["chain"]);
}

#[test]
fn verify_selection_and_corrupted_golden() {
    let o = cmd_verify(&RunConfig { criteria: Some(vec![1, 3]), ..RunConfig::default() });
    assert_eq!(o.exit_code, 0);
    assert_eq!(results(&o)["passed"], 2);

    let empty = cmd_verify(&RunConfig { criteria: Some(vec![]), ..RunConfig::default() });
    assert_eq!(empty.exit_code, 2);
    assert_eq!(results(&empty)["error"]["kind"], "config");
    let unknown = cmd_verify(&RunConfig { criteria: Some(vec![12]), ..RunConfig::default() });
    assert_eq!(results(&unknown)["error"]["kind"], "config");

    let dir = tempfile::tempdir().unwrap();
    let golden = cli::acceptance::GOLDEN_CSV.replacen(",0,1\n", ",1,1\n", 1);
    fs::write(dir.path().join(cli::acceptance::GOLDEN_NAME), golden).unwrap();
    let bad = cmd_verify(&RunConfig { criteria: Some(vec![9]), golden_dir: Some(dir.path().to_path_buf()), ..RunConfig::default() });
    assert_eq!(bad.exit_code, 2);
    assert_eq!(bad.report.status, "failed");
    assert_eq!(results(&bad)["criteria"][0]["passed"], false);
}

#[test]
fn binary_exit_codes_and_formats() {
    let bin = env!("CARGO_BIN_EXE_cli");
    let run = |args: &[&str]| {
        let out = Proc::new(bin).args(args).output().unwrap();
        (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
    };
    let (code, out) = run(&["quotient", "--alpha-max", "5", "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(out.contains("results.cores.4.counts.0,5\n"));
    let (code, out) = run(&["quotient", "--q", "6"]);
    assert_eq!(code, 2);
    assert!(out.contains("\"kind\": \"config\""));
    let (code, out) = run(&["quotient", "--level", "t", "--enum-ceiling", "1"]);
    assert_eq!(code, 3, "{out}");
    assert!(out.contains("\"kind\": \"ceiling\""));

    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("run.json");
    fs::write(&conf, r#"{"q": 3, "level": "t", "alpha_max": 4}"#).unwrap();
    let (code, out) = run(&["quotient", "--config", conf.to_str().unwrap(), "--alpha-max", "3"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["config"]["q"], 3);
    assert_eq!(v["config"]["alpha_max"], 3);
    fs::write(&conf, r#"{"q": 3, "unknown": 1}"#).unwrap();
    assert_eq!(run(&["quotient", "--config", conf.to_str().unwrap()]).0, 2);
    let c: RunConfig = serde_json::from_str(r#"{"format": "csv"}"#).unwrap();
    assert_eq!(c.format, Format::Csv);
}
