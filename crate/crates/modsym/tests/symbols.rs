mod common;

use std::collections::BTreeMap;

use building::point_lattice;
use common::*;
use ffield::{Fq, Poly, RatFunc, DEFAULT_SERIES_CEILING};
use homology::{restrict, OrientedChain, Q};
use modsym::*;
use num_traits::Zero;
use quotient::{level_group, level_identity, level_mul, level_reduce, Quotient};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Independent preimage count for d = 2 at full level: walk the line of the
/// apartment, read each point's type from h0 jumps, and add up the oriented
/// edges [gap g+1 -> gap g] on each quotient edge {m, m+1}, oriented m -> m+1.
fn line_oracle(basis: &[Vec<RatFunc>], radius: i64, alpha: i64, f: &Fq) -> BTreeMap<i64, i64> {
    let gap = |g: i64| {
        let x = if g >= 0 { vec![g, 0] } else { vec![0, -g] };
        let n = point_lattice(basis, &x, f).unwrap().bundle_type(f, DEFAULT_SERIES_CEILING).unwrap();
        n[0] - n[1]
    };
    let mut out = BTreeMap::new();
    for g in -radius..radius {
        let (a, b) = (gap(g + 1), gap(g));
        assert_eq!((a - b).abs(), 1);
        let m = a.min(b);
        if m < alpha {
            *out.entry(m).or_insert(0) += if a == m { 1 } else { -1 };
        }
    }
    out
}

/// The coefficient of [m -> m+1] on each core edge of a full-level d = 2 quotient.
fn by_type(q: &Quotient, z: &OrientedChain, alpha: i64) -> BTreeMap<i64, i64> {
    let c = q.complex();
    let mut out = BTreeMap::new();
    for idx in q.core(1, alpha) {
        let vs = &c.simplex(1, idx).vertices;
        let n: Vec<i64> = vs.iter().map(|&v| q.vertices[v].class.n[0]).collect();
        let v: i64 = z.get(idx).to_integer().try_into().unwrap();
        let (m, s) = if n[0] < n[1] { (n[0], v) } else { (n[1], -v) };
        assert!(out.insert(m, s).is_none());
    }
    out
}

#[test]
fn d2_full_level_matches_preimage_oracle() {
    for (qq, alpha) in [(2u32, 5i64), (3, 4)] {
        let q = build(qq, 2, &[1], alpha + 1);
        let f = &q.canon.fq;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut bases = vec![standard(2)];
        bases.extend((0..6).map(|_| random_basis(&mut rng, 2, 2, f)));
        for (k, v) in bases.iter().enumerate() {
            let s = modular_symbol(&q, v, alpha, None).unwrap();
            let oracle = line_oracle(v, s.certificate.radius + 4, alpha, f);
            if k == 0 {
                // frozen: the two halves of the standard line fold onto the ray and cancel
                let frozen: BTreeMap<i64, i64> = (0..alpha).map(|m| (m, 0)).collect();
                assert_eq!(oracle, frozen);
            }
            assert_eq!(by_type(&q, &s.chain, alpha), oracle, "q={qq} basis {k}");
            assert!(s.chain.is_zero());
        }
    }
}

#[test]
fn export_matches_golden_table() {
    let q = build(2, 2, &[1], 6);
    let s = modular_symbol(&q, &standard(2), 5, None).unwrap();
    let rows = automorphic_export(&q, &s.chain, 5);
    assert_eq!(rows.len(), q.core(1, 5).len() * 2);
    let csv = automorphic_csv(&rows).unwrap();
    let golden = include_str!("golden/d2_q2_full_standard.csv");
    assert_eq!(csv, golden);
}

#[test]
fn repeated_row_is_singular() {
    let q = build(2, 2, &[1], 4);
    let v = vec![vec![RatFunc::one(), RatFunc::zero()], vec![RatFunc::one(), RatFunc::zero()]];
    assert!(matches!(modular_symbol(&q, &v, 3, None), Err(ModsymError::SingularBasis)));
    let bad = vec![vec![RatFunc::one()]];
    assert!(matches!(modular_symbol(&q, &bad, 3, None), Err(ModsymError::Shape(_))));
    assert!(matches!(modular_symbol(&q, &standard(2), 9, None), Err(ModsymError::AlphaOutOfRange(9))));
}

fn level_configs() -> Vec<(u32, usize, Vec<u32>, i64)> {
    vec![(2, 2, vec![1, 1, 1], 5), (3, 2, vec![0, 1], 4), (2, 3, vec![0, 1], 3)]
}

#[test]
fn gamma_translates_give_the_same_symbol() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (qq, d, level, alpha) in level_configs() {
        let q = build(qq, d, &level, alpha);
        let f = q.canon.fq.clone();
        let ring = &q.canon.ring;
        let group = level_group(d, ring, 1 << 20).unwrap();
        let mut nonzero = 0;
        let trials = if d == 2 { 12 } else { 3 };
        for _ in 0..trials {
            let v = random_basis(&mut rng, d, 1, &f);
            let h = group[rng.gen_range(0..group.len())].clone();
            let s = modular_symbol(&q, &v, alpha, Some(&h)).unwrap();
            assert!(s.certificate.valid);
            nonzero += usize::from(!s.chain.is_zero());
            // an arbitrary γ moves the level datum along
            let g = random_gamma(&mut rng, d, &Poly::one(), true, &f);
            let hg = level_mul(&h, &level_reduce(&g, ring, &f), d, ring);
            let t = modular_symbol(&q, &times(&v, &g, &f), alpha, Some(&hg)).unwrap();
            assert_eq!(s.chain, t.chain, "q={qq} d={d}");
            // γ in Γ_I leaves it alone
            let g = random_gamma(&mut rng, d, &q.canon.params.level_poly(), false, &f);
            let t = modular_symbol(&q, &times(&v, &g, &f), alpha, Some(&h)).unwrap();
            assert_eq!(s.chain, t.chain, "q={qq} d={d} congruence");
        }
        if d == 2 {
            assert!(nonzero > 0, "q={qq}: all symbols vanished");
        }
    }
}

#[test]
fn row_scaling_and_order() {
    let q = build(2, 2, &[1, 1, 1], 5);
    let f = q.canon.fq.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let id = level_identity(2, &q.canon.ring);
    for _ in 0..6 {
        let v = random_basis(&mut rng, 2, 1, &f);
        let s = modular_symbol(&q, &v, 5, None).unwrap();
        // scaling a row by an element of F^x keeps the apartment and its orientation
        let lam = RatFunc::new(Poly::from_coeffs(vec![1, 1]), Poly::from_coeffs(vec![0, 1, 1]), &f);
        let mut w = v.clone();
        w[0] = w[0].iter().map(|e| e.mul(&lam, &f)).collect();
        assert_eq!(modular_symbol(&q, &w, 5, Some(&id)).unwrap().chain, s.chain);
        // swapping the rows reverses it
        let sw = vec![v[1].clone(), v[0].clone()];
        assert_eq!(modular_symbol(&q, &sw, 5, None).unwrap().chain, s.chain.scale(&Q::from_integer((-1).into())));
    }
}

#[test]
fn symbols_are_restriction_compatible_relative_cycles() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (qq, d, level, alpha) in level_configs() {
        let q = build(qq, d, &level, alpha);
        let f = q.canon.fq.clone();
        let group = level_group(d, &q.canon.ring, 1 << 20).unwrap();
        for _ in 0..if d == 2 { 8 } else { 2 } {
            let v = random_basis(&mut rng, d, 1, &f);
            let h = group[rng.gen_range(0..group.len())].clone();
            let top = modular_symbol(&q, &v, alpha, Some(&h)).unwrap();
            for a in (d as i64..alpha).rev() {
                let s = modular_symbol(&q, &v, a, Some(&h)).unwrap();
                let c = s.certificate.clone();
                assert!(c.valid && c.relative_cycle && c.shell_min_theta >= a + d as i64 && c.shell_core_hits == 0);
                assert!(c.core_simplices <= c.window_simplices);
                let r = restrict(&top.chain, |k| q.exhausted.in_core(d - 1, k, a));
                assert_eq!(r, s.chain, "q={qq} d={d} alpha {a}");
                // the boundary only meets the frontier
                let b = homology::boundary(q.complex(), &s.chain).unwrap();
                assert!(b.coeffs.keys().all(|&k| !q.exhausted.in_core(d - 2, k, a)));
            }
        }
    }
}

#[test]
fn symbol_json_carries_the_certificate() {
    let q = build(2, 2, &[1, 1, 1], 4);
    let s = modular_symbol(&q, &standard(2), 4, None).unwrap();
    let j = s.to_json(&q);
    assert_eq!(j["alpha"], 4);
    assert_eq!(j["certificate"]["valid"], true);
    assert_eq!(j["basis"][1][1], "1");
    assert!(j["chain"].as_array().unwrap().iter().all(|e| e[2] == "1"));
    let rows = automorphic_export(&q, &OrientedChain::zero(1), 4);
    assert!(rows.iter().all(|r| r.value.is_zero()));
}
