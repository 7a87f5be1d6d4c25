//! Criteria 7, 8 and 11: stabilization of the truncations, duality, and the
//! pullback between principal levels.

use std::collections::BTreeSet;

use building::{ball, vertex_canonical, ApartmentWindow};
use ffield::{Fq, InfinityLattice};
use homology::{
    act, average, bm_homology, boundary, closed_core_cells, cohomology_on, compact_support_cohomology, core_cells,
    homology_on, pullback_ramified, pushforward, Echelon, OrientedChain, SVec, Q,
};
use quotient::{level_action, level_group, level_identity, level_map, quotient_complex, Quotient, QuotientParams};
use scomplex::{Complex, ComplexBuilder, ExhaustedComplex};

use super::{ensure, ok, Outcome, SuiteContext};

fn build(q: u32, d: usize, level: &[u32], alpha: i64) -> Result<Quotient, String> {
    let p = ok(QuotientParams::new(q, d, level, alpha), "params")?;
    ok(quotient_complex(&p), "quotient")
}

/// The quotients the truncation and duality checks run on.
fn configs() -> Vec<(u32, usize, Vec<u32>, i64)> {
    vec![
        (2, 2, vec![1], 7),
        (3, 2, vec![1], 6),
        (2, 2, vec![0, 1], 6),
        (2, 2, vec![1, 1, 1], 6),
        (3, 2, vec![0, 1], 6),
        (3, 2, vec![1, 0, 1], 5),
        (2, 3, vec![1], 5),
        (2, 3, vec![0, 1], 5),
    ]
}

pub fn stabilization(_: &SuiteContext) -> Outcome {
    let mut out = Vec::new();
    for (q, d, level, alpha_max) in configs() {
        let what = format!("q={q} d={d} level {level:?}");
        let qt = build(q, d, &level, alpha_max)?;
        let e = &qt.exhausted;
        for i in 0..d {
            let mut prev: BTreeSet<usize> = BTreeSet::new();
            for a in 1..=alpha_max {
                let core: BTreeSet<usize> = qt.core(i, a).into_iter().collect();
                ensure(prev.is_subset(&core), || format!("{what}: core({a}) does not contain core({})", a - 1))?;
                prev = core;
            }
            ensure(prev.len() <= qt.complex().count(i), || format!("{what}: core exceeds the assembled window"))?;
        }
        let top = d - 1;
        let stable_from = d as i64 - 1;
        let bm = ok(bm_homology(e, top, alpha_max, stable_from), "BM homology")?;
        let hc = ok(compact_support_cohomology(e, top, alpha_max, stable_from), "compact support")?;
        // grid points beyond (d-1)
        let ks: Vec<usize> = (0..bm.grid.len()).filter(|&k| bm.grid[k] > stable_from).collect();
        let rel: Vec<usize> = ks.iter().map(|&k| hc.dims[k]).collect();
        let ranks: Vec<usize> = ks.iter().filter(|&&k| k + 1 < bm.grid.len()).map(|&k| bm.transition_ranks[k]).collect();
        ensure(rel.iter().all(|&x| x == rel[0]), || format!("{what}: relative H^{top} dims {rel:?} vary above {stable_from}"))?;
        ensure(ranks.iter().all(|&x| x == ranks[0]), || format!("{what}: BM transition ranks {ranks:?} vary"))?;
        ensure(bm.stabilized && hc.stabilized, || format!("{what}: no stabilization reported"))?;
        out.push(format!("{q}/{d}/{level:?}:{}", rel[0]));
    }
    Ok(format!("stable dims {}", out.join(" ")))
}

/// dim H_i = dim H^i in every degree, on the closed core and on the pair
/// (core, frontier) at every grid point, and dim BM = dim H_c once stable.
fn duality_on(e: &ExhaustedComplex, top: usize, alpha_max: i64, stable_from: i64, what: &str) -> Result<usize, String> {
    let c = &e.complex;
    let mut checks = 0;
    for &a in e.grid.iter().filter(|&&a| a <= alpha_max) {
        for i in 0..=top {
            let (h, co) = (homology_on(c, core_cells(e, a), i), cohomology_on(c, core_cells(e, a), i));
            ensure(h.dimension == co.dimension, || format!("{what}: relative degree {i} at alpha {a}: {} vs {}", h.dimension, co.dimension))?;
            let (h, co) = (homology_on(c, closed_core_cells(e, a), i), cohomology_on(c, closed_core_cells(e, a), i));
            ensure(h.dimension == co.dimension, || format!("{what}: closed degree {i} at alpha {a}: {} vs {}", h.dimension, co.dimension))?;
            checks += 2;
        }
    }
    let bm = ok(bm_homology(e, top, alpha_max, stable_from), "BM homology")?;
    let hc = ok(compact_support_cohomology(e, top, alpha_max, stable_from), "compact support")?;
    ensure(bm.dimension.is_some() && bm.dimension == hc.dimension, || {
        format!("{what}: BM {:?} vs compact support {:?}", bm.dimension, hc.dimension)
    })?;
    Ok(checks + 1)
}

fn hollow_triangle() -> Result<Complex, String> {
    let mut b = ComplexBuilder::new();
    for (x, y) in [("a", "b"), ("b", "c"), ("a", "c")] {
        b.strict(&[x, y]);
    }
    ok(b.build(), "triangle")
}

pub fn duality(_: &SuiteContext) -> Outcome {
    let mut checks = 0;
    for (q, d, level, alpha_max) in configs() {
        let qt = build(q, d, &level, alpha_max)?;
        checks += duality_on(&qt.exhausted, d - 1, alpha_max, d as i64 - 1, &format!("q={q} d={d} level {level:?}"))?;
    }
    let mut finite = vec![("triangle".to_string(), hollow_triangle()?)];
    for (q, d, r) in [(2u32, 2usize, 2usize), (3, 2, 2), (2, 3, 1)] {
        let f = ok(Fq::standard(q), "field")?;
        let o = vertex_canonical(&InfinityLattice::standard(d), &f);
        finite.push((format!("ball q={q} d={d} r={r}"), ok(ball(&o, r, d, &f), "ball")?));
    }
    for d in 2..=3 {
        finite.push((format!("window d={d}"), ApartmentWindow::new(d, 2).complex));
    }
    for (what, c) in finite {
        let top = c.dim().unwrap_or(0);
        let e = ExhaustedComplex::finite(c);
        checks += duality_on(&e, top, e.alpha_max(), 0, &what)?;
    }
    Ok(format!("{checks} dimension comparisons"))
}

fn rank(chains: &[OrientedChain]) -> usize {
    let mut e = Echelon::new();
    chains.iter().filter(|z| e.insert(SVec::from_entries(z.coeffs.iter().map(|(k, v)| (*k, v.clone())).collect())).is_some()).count()
}

fn unit(degree: usize, idx: usize) -> OrientedChain {
    OrientedChain { degree, coeffs: [(idx, Q::from_integer(1.into()))].into_iter().collect() }
}

/// Pullback along X_{K'} -> X_K for K' ⊂ K principal: it commutes with the
/// boundary, lands in the K/K'-invariants, and at every stable truncation its
/// image is exactly the invariant part of the relative cycles.
fn pullback_pair(q: u32, coarse_level: &[u32], fine_level: &[u32], alpha_max: i64) -> Result<String, String> {
    let what = format!("q={q} {coarse_level:?} -> {fine_level:?}");
    let coarse = build(q, 2, coarse_level, alpha_max)?;
    let fine = build(q, 2, fine_level, alpha_max)?;
    let lm = ok(level_map(&fine, &coarse), "level map")?;
    let (fc, cc) = (fine.complex(), coarse.complex());
    let f = &fine.canon.fq;
    // K/K': level data of the fine ring that reduce to the identity
    let id = level_identity(2, &coarse.canon.ring);
    let kernel: Vec<Vec<u16>> = ok(level_group(2, &fine.canon.ring, fine.canon.params.enum_ceiling), "level group")?
        .into_iter()
        .filter(|h| h.iter().map(|&c| coarse.canon.ring.encode(&fine.canon.ring.decode(c), f)).collect::<Vec<_>>() == id)
        .collect();
    let actions = |i: usize| -> Result<Vec<_>, String> {
        kernel.iter().map(|k| ok(level_action(&fine, k, i), "level action")).collect()
    };
    let (g0, g1) = (actions(0)?, actions(1)?);
    let pull = |z: &OrientedChain| ok(pullback_ramified(&lm.map, fc, &lm.ram, z), "pullback");
    let degree = Q::from_integer((lm.degree as i64).into());
    for i in 0..2 {
        let g = if i == 0 { &g0 } else { &g1 };
        for idx in 0..cc.count(i) {
            let z = unit(i, idx);
            let p = pull(&z)?;
            if i == 1 {
                let lhs = ok(boundary(fc, &p), "boundary")?;
                let rhs = pull(&ok(boundary(cc, &z), "boundary")?)?;
                ensure(lhs == rhs, || format!("{what}: boundary does not commute with the pullback on edge {idx}"))?;
            }
            ensure(g.iter().all(|a| act(a, &p) == p), || format!("{what}: pullback of cell {idx} is not invariant"))?;
            let back = ok(pushforward(&lm.map, fc, &p, usize::MAX), "pushforward")?;
            ensure(back == z.scale(&degree), || format!("{what}: pushforward after pullback is not multiplication by the degree"))?;
        }
    }
    let mut dims = Vec::new();
    for a in 2..=alpha_max {
        let zc = homology_on(cc, core_cells(&coarse.exhausted, a), 1);
        let zf = homology_on(fc, core_cells(&fine.exhausted, a), 1);
        let inv: Vec<OrientedChain> = zf.basis.iter().map(|b| average(&g1, b)).collect();
        ensure(inv.iter().all(|z| zf.coordinates(z).is_some()), || format!("{what}: averaging left the relative cycles"))?;
        let img = zc.basis.iter().map(pull).collect::<Result<Vec<_>, _>>()?;
        ensure(img.iter().all(|z| zf.coordinates(z).is_some()), || format!("{what}: pullback is not a relative cycle at alpha {a}"))?;
        let (ri, rm) = (rank(&inv), rank(&img));
        let both: Vec<OrientedChain> = inv.iter().chain(&img).cloned().collect();
        ensure(ri == rm && rank(&both) == ri && rm == zc.dimension, || {
            format!("{what}: alpha {a}: invariants {ri}, image {rm}, coarse {}", zc.dimension)
        })?;
        dims.push(rm);
    }
    let bm = ok(bm_homology(&coarse.exhausted, 1, alpha_max, 1), "BM homology")?;
    ensure(bm.dimension == dims.last().copied(), || format!("{what}: stable BM {:?} vs invariants {dims:?}", bm.dimension))?;
    Ok(format!("{what}: |K/K'| = {}, invariant dims {dims:?}", kernel.len()))
}

pub fn ramified_pullback(_: &SuiteContext) -> Outcome {
    let main = pullback_pair(2, &[1], &[0, 1], 6)?;
    let extra = pullback_pair(2, &[0, 1], &[0, 1, 1], 5)?;
    Ok(format!("{main}; {extra}"))
}
