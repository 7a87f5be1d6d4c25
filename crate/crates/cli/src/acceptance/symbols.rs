//! Criteria 9 and 10: apartment classes as relative cycles, and the span scan.

use std::fs;

use ffield::{Fq, Poly};
use homology::{bm_homology, boundary, restrict};
use modsym::{automorphic_csv, automorphic_export, modular_symbol, span_test, GeneratorPolicy, SpanStatus};
use quotient::{level_group, quotient_complex, Quotient, QuotientParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::sample::{random_basis, standard_basis};
use super::{ensure, ok, Outcome, SuiteContext};

pub const GOLDEN_NAME: &str = "d2_q2_full_standard.csv";
/// Export of the standard apartment at q = 2, full level, alpha = 5.
pub const GOLDEN_CSV: &str = include_str!("../../tests/golden/d2_q2_full_standard.csv");

fn build(q: u32, d: usize, level: &[u32], alpha: i64) -> Result<Quotient, String> {
    let p = ok(QuotientParams::new(q, d, level, alpha), "params")?;
    ok(quotient_complex(&p), "quotient")
}

fn golden(ctx: &SuiteContext) -> Result<String, String> {
    match &ctx.golden_dir {
        Some(dir) => ok(fs::read_to_string(dir.join(GOLDEN_NAME)), "golden file"),
        None => Ok(GOLDEN_CSV.to_string()),
    }
}

pub fn symbols(ctx: &SuiteContext) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut count = 0;
    let mut max_fiber = 0;
    for (q, d, level, alpha) in [(2u32, 2usize, vec![1u32], 5i64), (2, 2, vec![1, 1, 1], 5), (3, 2, vec![0, 1], 4), (2, 3, vec![0, 1], 3)] {
        let what = format!("q={q} d={d} level {level:?}");
        let qt = build(q, d, &level, alpha)?;
        let f = qt.canon.fq.clone();
        let group = ok(level_group(d, &qt.canon.ring, qt.canon.params.enum_ceiling), "level group")?;
        for trial in 0..if d == 2 { 8 } else { 2 } {
            let v = if trial == 0 { standard_basis(d) } else { random_basis(&mut rng, d, 1, &f) };
            let h = group[rng.gen_range(0..group.len())].clone();
            let top = ok(modular_symbol(&qt, &v, alpha, Some(&h)), "symbol")?;
            for a in (d as i64..=alpha).rev() {
                let s = ok(modular_symbol(&qt, &v, a, Some(&h)), "symbol")?;
                let c = &s.certificate;
                ensure(c.valid && c.relative_cycle, || format!("{what}: invalid certificate at alpha {a}"))?;
                ensure(c.shell_min_theta >= a + d as i64 && c.shell_core_hits == 0, || format!("{what}: collar too thin at alpha {a}"))?;
                ensure(c.core_simplices <= c.window_simplices, || format!("{what}: fiber count exceeds the window"))?;
                max_fiber = max_fiber.max(c.core_simplices);
                let r = restrict(&top.chain, |k| qt.exhausted.in_core(d - 1, k, a));
                ensure(r == s.chain, || format!("{what}: restriction from {alpha} to {a} disagrees"))?;
                let b = ok(boundary(qt.complex(), &s.chain), "boundary")?;
                ensure(b.coeffs.keys().all(|&k| !qt.exhausted.in_core(d - 2, k, a)), || {
                    format!("{what}: boundary meets core({a})")
                })?;
                count += 1;
            }
        }
    }
    let qt = build(2, 2, &[1], 6)?;
    let s = ok(modular_symbol(&qt, &standard_basis(2), 5, None), "symbol")?;
    let csv = ok(automorphic_csv(&automorphic_export(&qt, &s.chain, 5)), "export")?;
    ensure(csv == golden(ctx)?, || "pinned d=2 export differs from the golden file".to_string())?;
    Ok(format!("{count} symbols, largest core fiber {max_fiber}, golden export matches"))
}

/// Every monic level of degree at most 3; the constant 1 is full level.
pub fn scan_levels(q: u32) -> Vec<Vec<u32>> {
    let f = Fq::standard(q).expect("scan fields are prime");
    let mut out = vec![vec![1]];
    for k in 1..=3 {
        out.extend(Poly::monics_of_degree(k, &f).into_iter().map(|p| p.coeffs().iter().map(|&c| c as u32).collect()));
    }
    out
}

/// Truncation used by the scan: the first α whose grid gives a stable window.
pub fn scan_alpha(d: usize) -> i64 {
    d as i64 + 2
}

pub fn span_scan(_: &SuiteContext) -> Outcome {
    let (mut contained, mut worst) = (0, 0);
    let mut vacuous = Vec::new();
    let mut findings = Vec::new();
    for q in [2u32, 3] {
        for level in scan_levels(q) {
            let what = format!("q={q} level {level:?}");
            let alpha = scan_alpha(2);
            let qt = build(q, 2, &level, alpha)?;
            let bm = ok(bm_homology(&qt.exhausted, 1, alpha, 1), "BM homology")?;
            let policy = GeneratorPolicy { max_d_gen: 3, ..GeneratorPolicy::default() };
            let cert = match span_test(&qt, &bm, alpha, policy) {
                Ok(c) => c,
                Err(e) => {
                    findings.push(format!("{what}: inconclusive ({e})"));
                    continue;
                }
            };
            match cert.status {
                SpanStatus::Vacuous => vacuous.push(format!("{q}:{level:?}")),
                SpanStatus::Contained if cert.verify() => {
                    contained += 1;
                    worst = worst.max(cert.d_gen);
                }
                SpanStatus::Contained => findings.push(format!("{what}: certificate fails the exact check")),
                SpanStatus::NotContainedWithGenerators => {
                    findings.push(format!("{what}: inconclusive, {} image classes outside the span at D_gen 3", cert.residual))
                }
            }
            if level == [1] && cert.status != SpanStatus::Vacuous {
                findings.push(format!("{what}: full level should be vacuous"));
            }
        }
    }
    ensure(findings.is_empty(), || findings.join("; "))?;
    Ok(format!("{contained} contained (largest D_gen {worst}), vacuous: {}", vacuous.join(" ")))
}
