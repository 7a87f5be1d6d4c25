use homology::*;
use num_traits::Zero;
use proptest::prelude::*;
use scomplex::{Complex, ComplexBuilder, ExhaustedComplex, SimplicialMap};

fn strict(cells: &[Vec<String>]) -> Complex {
    let mut b = ComplexBuilder::new();
    for c in cells {
        let r: Vec<&str> = c.iter().map(|s| s.as_str()).collect();
        b.strict(&r);
    }
    b.build().unwrap()
}

/// Rank of a dense integer matrix by fraction-free elimination.
fn dense_rank(mut m: Vec<Vec<i128>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let (a, b) = (m[r][c], m[i][c]);
                for k in 0..cols {
                    m[i][k] = m[i][k] * a - m[r][k] * b;
                }
                let g = m[i].iter().fold(0i128, |g, &x| gcd(g, x.abs()));
                if g > 1 {
                    m[i].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        r += 1;
    }
    r
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Vertices x_k for k in [lo, hi], edges between consecutive ones; the level of
/// a simplex is the smallest |k| over its vertices.
fn line(lo: i64, hi: i64, top: i64) -> ExhaustedComplex {
    let name = |k: i64| format!("x{k}");
    let cells: Vec<Vec<String>> = (lo..hi).map(|k| vec![name(k), name(k + 1)]).collect();
    let c = strict(&cells);
    let level = |key: &str| key.split('~').map(|v| v[1..].parse::<i64>().unwrap().abs()).min().unwrap();
    let theta = (0..2).map(|i| c.simplices(i).iter().map(|s| level(&s.key)).collect()).collect();
    ExhaustedComplex::new(c, theta, (1..=top).collect()).unwrap()
}

#[test]
fn ray_relative_groups_match_dense_oracle_and_vanish() {
    let e = line(0, 12, 11);
    for alpha in 1..=10 {
        // oracle: the relative complex is alpha edges over alpha vertices
        let n = alpha as usize;
        let mut m = vec![vec![0i128; n]; n];
        for k in 0..n {
            m[k][k] = 1;
            if k + 1 < n {
                m[k + 1][k] = -1;
            }
        }
        let rk = dense_rank(m);
        let oracle_h1 = n - rk;
        let h = homology_on(&e.complex, core_cells(&e, alpha), 1);
        assert_eq!(h.dimension, oracle_h1);
        assert_eq!(oracle_h1, 0);
    }
    let bm = bm_homology(&e, 1, 10, 1).unwrap();
    assert!(bm.stabilized);
    assert_eq!(bm.dimension, Some(0));
    let hc = compact_support_cohomology(&e, 1, 10, 1).unwrap();
    assert_eq!(hc.dimension, Some(0));
}

#[test]
fn line_has_one_dimensional_bm_homology_spanned_by_the_fundamental_chain() {
    let e = line(-12, 12, 11);
    let bm = bm_homology(&e, 1, 10, 1).unwrap();
    assert!(bm.stabilized);
    assert_eq!(bm.dimension, Some(1));
    let hc = compact_support_cohomology(&e, 1, 10, 1).unwrap();
    assert_eq!(hc.dimension, Some(1));
    // the sum of all core edges, each oriented upward, represents the generator
    let c = &e.complex;
    let mut z = OrientedChain::zero(1);
    for idx in e.core_indices(1, 10) {
        let s = c.simplex(1, idx);
        let a: i64 = c.vertex_key(s.vertices[0])[1..].parse().unwrap();
        let b: i64 = c.vertex_key(s.vertices[1])[1..].parse().unwrap();
        z.coeffs.insert(idx, q(if a < b { 1 } else { -1 }));
    }
    let coords = bm.top().coordinates(&z).unwrap();
    assert!(coords.iter().any(|x| !x.is_zero()));
    // finite cycles have nothing to map here
    assert!(canonical_map(&bm, &e, &OrientedChain::zero(1), 10).unwrap().iter().all(|(_, v)| v.iter().all(|x| x.is_zero())));
}

#[test]
fn finite_complex_bm_equals_homology() {
    let c = strict(&[vec!["a".into(), "b".into()], vec!["b".into(), "c".into()], vec!["a".into(), "c".into()]]);
    let e = ExhaustedComplex::finite(c.clone());
    let bm = bm_homology(&e, 1, e.alpha_max(), 1).unwrap();
    assert_eq!(bm.dimension, Some(homology(&c, 1).dimension));
    let hc = compact_support_cohomology(&e, 1, e.alpha_max(), 1).unwrap();
    assert_eq!(hc.dimension, Some(1));
}

#[test]
fn pushforward_is_functorial_and_pullback_of_identity_is_identity() {
    let c = strict(&[vec!["a".into(), "b".into()], vec!["b".into(), "c".into()], vec!["a".into(), "c".into()]]);
    let id = SimplicialMap::identity(&c);
    let z = homology(&c, 1).basis[0].clone();
    assert_eq!(pushforward(&id, &c, &z, 1).unwrap(), z);
    assert_eq!(pushforward(&id.then(&id), &c, &z, 1).unwrap(), pushforward(&id, &c, &pushforward(&id, &c, &z, 1).unwrap(), 1).unwrap());
    let ones: Vec<Vec<u64>> = (0..2).map(|i| vec![1; c.count(i)]).collect();
    assert_eq!(pullback_ramified(&id, &c, &ones, &z).unwrap(), z);
    assert_eq!(pullback_ramified(&id, &c, &[], &z), Err(HomError::MissingRamificationData(1)));
}

#[test]
fn fold_of_a_path_sums_signed_preimages() {
    // x0 - x1 - x2 folded onto y0 - y1 with x0, x2 -> y0
    let src = strict(&[vec!["x0".into(), "x1".into()], vec!["x1".into(), "x2".into()]]);
    let f = SimplicialMap { maps: vec![vec![0, 1, 0], vec![0, 0]] };
    let mut z = OrientedChain::zero(1);
    z.coeffs.insert(0, q(1));
    z.coeffs.insert(1, q(1));
    // [x0,x1] -> [y0,y1] and [x1,x2] -> [y1,y0] = -[y0,y1]
    assert!(pushforward(&f, &src, &z, 2).unwrap().is_zero());
    assert_eq!(pushforward(&f, &src, &z, 1), Err(HomError::NonFiniteFiber(0)));
}

proptest! {
    #[test]
    fn boundary_squares_to_zero_and_duality_holds(
        cells in prop::collection::vec(prop::collection::btree_set(0u8..7, 1..5), 1..9)
    ) {
        let cells: Vec<Vec<String>> = cells.into_iter().map(|s| s.into_iter().map(|v| format!("v{v}")).collect()).collect();
        let c = strict(&cells);
        let all = Cells::all(&c);
        let top = c.dim().unwrap();
        for i in 2..=top {
            let d = boundary_matrix(&c, &all, i - 1).mul(&boundary_matrix(&c, &all, i));
            prop_assert!(d.cols.iter().all(|x| x.is_zero()));
        }
        let mut euler_cells = 0i64;
        let mut euler_h = 0i64;
        for i in 0..=top {
            let h = homology(&c, i);
            let hc = cohomology(&c, i);
            prop_assert_eq!(h.dimension, hc.dimension);
            for z in &h.basis {
                prop_assert!(boundary(&c, z).unwrap().is_zero());
            }
            let sign = if i % 2 == 0 { 1 } else { -1 };
            euler_cells += sign * c.count(i) as i64;
            euler_h += sign * h.dimension as i64;
        }
        prop_assert_eq!(euler_cells, euler_h);
    }
}
