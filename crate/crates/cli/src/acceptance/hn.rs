//! Criteria 4 to 6: the tree oracle, Γ-invariance of canonical keys, and the
//! HN polygon checks.

use std::collections::BTreeSet;

use building::{neighbors, vertex_canonical};
use ffield::{Fq, InfinityLattice, Poly};
use quotient::{
    hn_flag, level_group, level_mul, level_reduce, quotient_complex, same_span, HnPolygon, Quotient, QuotientParams,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::sample::{dual, random_chain, random_gamma, random_lattice, random_sublattice, typed_lattice};
use super::{ensure, ok, Outcome, SuiteContext};

const CEIL: i64 = 512;

fn build(q: u32, d: usize, level: &[u32], alpha: i64) -> Result<Quotient, String> {
    let p = ok(QuotientParams::new(q, d, level, alpha), "params")?;
    ok(quotient_complex(&p), "quotient")
}

fn normalized(n: Vec<i64>) -> Vec<i64> {
    let last = *n.last().unwrap();
    n.into_iter().map(|x| x - last).collect()
}

type Graph = (BTreeSet<Vec<i64>>, BTreeSet<(Vec<i64>, Vec<i64>)>);

/// Breadth-first search on the tree from the standard vertex, labelling each
/// vertex by its normalized splitting type and stopping at gap > alpha.
fn bfs_oracle(q: u32, alpha: i64) -> Result<Graph, String> {
    let f = ok(Fq::standard(q), "field")?;
    let class = |l: &InfinityLattice| -> Result<Vec<i64>, String> { Ok(normalized(ok(l.bundle_type(&f, CEIL), "type")?)) };
    let start = vertex_canonical(&InfinityLattice::standard(2), &f);
    let mut seen = BTreeSet::from([vec![0, 0]]);
    let mut edges = BTreeSet::new();
    let mut queue = vec![start];
    while let Some(v) = queue.pop() {
        let cv = class(&ok(v.to_lattice(2, &f), "lattice")?)?;
        for (w, _) in ok(neighbors(&v, 2, &f), "neighbors")? {
            let cw = class(&ok(w.to_lattice(2, &f), "lattice")?)?;
            if cw[0] > alpha {
                continue;
            }
            edges.insert((cv.clone().min(cw.clone()), cv.clone().max(cw.clone())));
            if seen.insert(cw) {
                queue.push(w);
            }
        }
    }
    Ok((seen, edges))
}

pub fn tree_oracle(_: &SuiteContext) -> Outcome {
    let mut checked = 0;
    for q in [2, 3] {
        for alpha in 2..=8 {
            let qt = build(q, 2, &[1], alpha)?;
            let f = &qt.canon.fq;
            let (ov, oe) = bfs_oracle(q, alpha)?;
            let classes = qt.simplices[0]
                .iter()
                .map(|s| Ok(normalized(ok(s.witness[0].bundle_type(f, CEIL), "type")?)))
                .collect::<Result<Vec<Vec<i64>>, String>>()?;
            // the labels give the vertex bijection; edges must then agree
            let labels: BTreeSet<_> = classes.iter().cloned().collect();
            ensure(labels == ov && classes.len() == ov.len(), || format!("q={q} alpha={alpha}: vertex sets differ"))?;
            let edges: Vec<(Vec<i64>, Vec<i64>)> = qt
                .complex()
                .simplices(1)
                .iter()
                .map(|s| {
                    let (a, b) = (classes[s.vertices[0]].clone(), classes[s.vertices[1]].clone());
                    (a.clone().min(b.clone()), a.max(b))
                })
                .collect();
            let set: BTreeSet<_> = edges.iter().cloned().collect();
            ensure(set == oe && edges.len() == oe.len(), || format!("q={q} alpha={alpha}: edge sets differ"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} quotients isomorphic to the oracle graph"))
}

pub fn gamma_invariance(_: &SuiteContext) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut configs = 0;
    for q in [2u32, 3] {
        for d in [2usize, 3] {
            for level in [vec![1u32], vec![0, 1]] {
                let qt = build(q, d, &level, d as i64 + 2)?;
                let c = &qt.canon;
                let f = &c.fq;
                let group = ok(level_group(d, &c.ring, c.params.enum_ceiling), "level group")?;
                let modulus = c.params.level_poly();
                for trial in 0..200 {
                    let chain = random_chain(&mut rng, d, f);
                    let h = group[rng.gen_range(0..group.len())].clone();
                    let k = ok(c.canon_simplex(&chain, &h), "canon")?;
                    let g = random_gamma(&mut rng, d, &Poly::one(), true, f);
                    let moved: Vec<InfinityLattice> = chain.iter().map(|l| l.act(&g, f)).collect();
                    let hg = level_mul(&h, &level_reduce(&g, &c.ring, f), d, &c.ring);
                    let k2 = ok(c.canon_simplex(&moved, &hg), "canon")?;
                    ensure(k.key == k2.key && k.canonical_order() == k2.canonical_order(), || {
                        format!("q={q} d={d} level {level:?} trial {trial}: key moved under gamma")
                    })?;
                    if !c.params.is_full_level() {
                        let g = random_gamma(&mut rng, d, &modulus, false, f);
                        let moved: Vec<InfinityLattice> = chain.iter().map(|l| l.act(&g, f)).collect();
                        let k3 = ok(c.canon_simplex(&moved, &h), "canon")?;
                        ensure(k3.key == k.key, || format!("q={q} d={d} level {level:?} trial {trial}: congruence element moved the key"))?;
                    }
                }
                configs += 1;
            }
        }
    }
    Ok(format!("{configs} configurations x 200 elements"))
}

/// max{m : h0(L(-m)) > 0}, the largest degree of a line subbundle.
fn max_line_degree(l: &InfinityLattice, f: &Fq) -> Result<i64, String> {
    let h0 = |m: i64| ok(l.h0_dimension(-m, f, CEIL), "h0");
    let mut m = 0;
    while h0(m)? > 0 {
        m += 1;
    }
    while h0(m)? == 0 {
        m -= 1;
    }
    Ok(m)
}

/// p(1), p(d-1) and p(d) by h0 searches on L and its dual; enough for d <= 3.
fn brute_polygon(l: &InfinityLattice, f: &Fq) -> Result<Vec<i64>, String> {
    let d = l.dim();
    let deg = l.degree(f);
    let mut p = vec![0; d + 1];
    p[d] = deg;
    if d >= 2 {
        p[1] = max_line_degree(l, f)?;
        p[d - 1] = deg + max_line_degree(&dual(l, f), f)?;
    }
    Ok(p)
}

fn polygon_of(l: &InfinityLattice, f: &Fq) -> Result<HnPolygon, String> {
    Ok(HnPolygon::of_type(&ok(l.splitting(f), "splitting")?.n))
}

pub fn hn_machinery(_: &SuiteContext) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut types = 0;
    for q in [2, 3] {
        let f = ok(Fq::standard(q), "field")?;
        for d in 1..=3usize {
            let mut all = vec![vec![]];
            for _ in 0..d {
                all = all.into_iter().flat_map(|t: Vec<i64>| (0..=5).map(move |x| [t.clone(), vec![x]].concat())).collect();
            }
            for n in all {
                let l = typed_lattice(&mut rng, &n, &f);
                let poly = polygon_of(&l, &f)?;
                let b = brute_polygon(&l, &f)?;
                let brute_deltas: Vec<i64> = (1..d).map(|i| 2 * b[i] - b[i - 1] - b[i + 1]).collect();
                ensure(poly.p[1.min(d)] == b[1.min(d)] && poly.p[d - 1] == b[d - 1] && poly.p[d] == b[d], || {
                    format!("q={q} n={n:?}: polygon {:?} vs h0 search {b:?}", poly.p)
                })?;
                ensure(poly.deltas() == brute_deltas, || format!("q={q} n={n:?}: convexity gaps differ"))?;
                types += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut modifications = 0;
    for trial in 0..500 {
        let q = [2, 3][trial % 2];
        let d = 2 + trial % 3;
        let f = ok(Fq::standard(q), "field")?;
        let tight = trial % 4 < 2;
        let l = if tight {
            let n: Vec<i64> = (0..d).map(|_| rng.gen_range(0..=8)).collect();
            typed_lattice(&mut rng, &n, &f)
        } else {
            random_lattice(&mut rng, d, &f)
        };
        let s = random_sublattice(&mut rng, &l, tight, &f);
        ensure(s.is_sublattice_of(&l, &f), || format!("pair {trial}: not a sublattice"))?;
        let (pl, ps) = (polygon_of(&l, &f)?, polygon_of(&s, &f)?);
        let gap = l.degree(&f) - s.degree(&f);
        for i in 0..=d {
            let diff = pl.p[i] - ps.p[i];
            ensure((0..=gap).contains(&diff), || format!("pair {trial}: i={i} difference {diff} outside [0, {gap}]"))?;
        }
        for i in 1..d {
            if pl.delta(i) > gap {
                // the i-th HN pieces agree up to saturation: F'_(i) = F_(i) ∩ F'
                let a = ok(hn_flag(&l, i, &f), "hn flag")?;
                let b = ok(hn_flag(&s, i, &f), "hn flag")?;
                ensure(same_span(&a.rows, &b.rows, &f), || format!("pair {trial}: i={i} HN pieces differ"))?;
                modifications += 1;
            }
        }
    }
    ensure(modifications >= 50, || format!("only {modifications} pairs met the hypothesis of the intersection identity"))?;
    Ok(format!("{types} types, 500 pairs, {modifications} intersection cases"))
}
