mod common;

use common::*;
use ffield::{Fq, InfinityLattice, RatFunc};
use num_traits::Zero;
use quotient::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CEIL: i64 = 512;

/// max{m : h0(L(-m)) > 0}: the largest degree of a line subbundle.
fn max_line_degree(l: &InfinityLattice, f: &Fq) -> i64 {
    let mut m = 0;
    while l.h0_dimension(-m, f, CEIL).unwrap() > 0 {
        m += 1;
    }
    while l.h0_dimension(-m, f, CEIL).unwrap() == 0 {
        m -= 1;
    }
    m
}

/// p(1), p(d-1) and p(d) by h0 searches on L and its dual (d <= 3).
fn brute_polygon(l: &InfinityLattice, f: &Fq) -> Vec<i64> {
    let d = l.dim();
    let deg = l.degree(f);
    let mut p = vec![0; d + 1];
    p[d] = deg;
    if d >= 2 {
        p[1] = max_line_degree(l, f);
        p[d - 1] = deg + max_line_degree(&dual(l, f), f);
    }
    p
}

fn typed_lattice(rng: &mut ChaCha8Rng, n: &[i64], f: &Fq) -> InfinityLattice {
    let g = random_gamma(rng, n.len(), &ffield::Poly::one(), true, f);
    InfinityLattice::diagonal(n).act(&g, f)
}

fn polygon_of(l: &InfinityLattice, f: &Fq) -> HnPolygon {
    HnPolygon::of_type(&l.splitting(f).unwrap().n)
}

#[test]
fn polygon_matches_h0_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for q in [2, 3] {
        let f = Fq::standard(q).unwrap();
        for d in 1..=3usize {
            let mut types = vec![vec![]];
            for _ in 0..d {
                types = types.into_iter().flat_map(|t: Vec<i64>| (0..=5).map(move |x| [t.clone(), vec![x]].concat())).collect();
            }
            for n in types {
                let l = typed_lattice(&mut rng, &n, &f);
                let poly = polygon_of(&l, &f);
                assert_eq!(poly.p, {
                    let mut s = n.clone();
                    s.sort_by(|a, b| b.cmp(a));
                    (0..=d).map(|i| s[..i].iter().sum::<i64>()).collect::<Vec<_>>()
                });
                let b = brute_polygon(&l, &f);
                assert_eq!(poly.p[1], b[1], "q={q} n={n:?}");
                assert_eq!(poly.p[d - 1], b[d - 1], "q={q} n={n:?}");
                assert_eq!(poly.p[d], b[d]);
                let brute_deltas: Vec<i64> = (1..d).map(|i| 2 * b[i] - b[i - 1] - b[i + 1]).collect();
                assert_eq!(poly.deltas(), brute_deltas, "q={q} n={n:?}");
            }
        }
    }
}

#[test]
fn d2_line_subbundle() {
    let f = Fq::standard(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for k in 1..=5 {
        let l = typed_lattice(&mut rng, &[k, 0], &f);
        let fl = hn_flag(&l, 1, &f).unwrap();
        assert_eq!(fl.degree, k);
        assert_eq!(max_line_degree(&l, &f), k);
        assert_eq!(l.h0_dimension(-k, &f, CEIL).unwrap(), 1);
        let poly = hn_polygon(&BundleClass::new(&[k, 0], ""));
        assert_eq!((poly.p[1], poly.delta(1)), (k, k));
    }
    assert!(HnPolygon::of_type(&[0, 0, 0, 0]).deltas().iter().all(|&x| x == 0));
}

fn mat_mul(a: &[Vec<RatFunc>], b: &[Vec<RatFunc>], f: &Fq) -> Vec<Vec<RatFunc>> {
    let d = a.len();
    (0..d)
        .map(|i| (0..d).map(|j| (0..d).fold(RatFunc::zero(), |s, k| s.add(&a[i][k].mul(&b[k][j], f), f))).collect())
        .collect()
}

/// A sublattice M·L with M over O_∞; small index when `tight`.
fn random_sublattice(rng: &mut ChaCha8Rng, l: &InfinityLattice, tight: bool, f: &Fq) -> InfinityLattice {
    let d = l.dim();
    loop {
        let m: Vec<Vec<RatFunc>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        if tight {
                            let x = pi_poly(rng, f).mul(&RatFunc::t_pow(-1), f);
                            if i == j {
                                let e = rng.gen_range(0..=1);
                                x.add(&RatFunc::t_pow(-e), f)
                            } else {
                                x
                            }
                        } else {
                            pi_poly(rng, f)
                        }
                    })
                    .collect()
            })
            .collect();
        if let Ok(s) = InfinityLattice::new(mat_mul(&m, l.rows(), f), f) {
            return s;
        }
    }
}

#[test]
fn sandwich_and_modification() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut modification_cases = 0;
    for trial in 0..500 {
        let q = [2, 3][trial % 2];
        let d = 2 + trial % 3;
        let f = Fq::standard(q).unwrap();
        let tight = trial % 4 < 2;
        let l = if tight {
            let n: Vec<i64> = (0..d).map(|_| rng.gen_range(0..=8)).collect();
            typed_lattice(&mut rng, &n, &f)
        } else {
            random_lattice(&mut rng, d, &f)
        };
        let s = random_sublattice(&mut rng, &l, tight, &f);
        assert!(s.is_sublattice_of(&l, &f));
        let (pl, ps) = (polygon_of(&l, &f), polygon_of(&s, &f));
        let gap = l.degree(&f) - s.degree(&f);
        assert!(gap >= 0);
        for i in 0..=d {
            let diff = pl.p[i] - ps.p[i];
            assert!((0..=gap).contains(&diff), "trial {trial}: i={i} diff={diff} gap={gap}");
        }
        for i in 1..d {
            if pl.delta(i) > gap {
                let a = hn_flag(&l, i, &f).unwrap();
                let b = hn_flag(&s, i, &f).unwrap();
                assert!(same_span(&a.rows, &b.rows, &f), "trial {trial}: i={i}");
                modification_cases += 1;
            }
        }
    }
    assert!(modification_cases >= 50, "only {modification_cases} cases met the hypothesis");
}

#[test]
fn hn_flags_are_nested() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let f = Fq::standard(2).unwrap();
    for _ in 0..100 {
        let n: Vec<i64> = (0..4).map(|_| rng.gen_range(0..=6)).collect();
        let l = typed_lattice(&mut rng, &n, &f);
        let support = polygon_of(&l, &f).support();
        for &i in &support {
            for &j in &support {
                if i < j {
                    let (a, b) = (hn_flag(&l, i, &f).unwrap(), hn_flag(&l, j, &f).unwrap());
                    let both: Vec<_> = a.rows.iter().chain(&b.rows).cloned().collect();
                    assert_eq!(rank_over_ratfunc(&both, &f), j);
                }
            }
        }
        for i in 1..4 {
            if !support.contains(&i) {
                assert!(matches!(hn_flag(&l, i, &f), Err(QuotientError::NotInSupport(_))));
            }
        }
    }
}
