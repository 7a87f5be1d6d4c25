//! Criteria 1 to 3: orientation signs, the apartment cycle, and lifts.

use std::collections::BTreeSet;

use building::{apartment_orientation, apartment_simplex, ball, fundamental_chain, vertex_canonical, ApartmentWindow};
use ffield::{Fq, InfinityLattice};
use homology::{boundary, boundary_matrix, Cells};
use num_traits::Zero;
use quotient::{quotient_complex, QuotientParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use scomplex::{check_anticommutation, validate_complex, Complex};

use super::sample::{random_basis, standard_basis};
use super::{ensure, ok, Outcome};

/// Valid face tables, the anticommutation identity, and ∂∘∂ = 0.
fn check_signs(c: &Complex, what: &str) -> Result<(), String> {
    let v = validate_complex(c);
    ensure(v.is_empty(), || format!("{what}: {} face-table violations", v.len()))?;
    let a = check_anticommutation(c);
    ensure(a.is_empty(), || format!("{what}: {} anticommutation violations", a.len()))?;
    let all = Cells::all(c);
    for i in 2..=c.dim().unwrap_or(0) {
        let dd = boundary_matrix(c, &all, i - 1).mul(&boundary_matrix(c, &all, i));
        ensure(dd.cols.iter().all(|x| x.is_zero()), || format!("{what}: boundary squares to a nonzero map in degree {i}"))?;
    }
    Ok(())
}

pub fn sign_calculus(_: &super::SuiteContext) -> Outcome {
    let mut n = 0;
    for (q, d, r) in [(2u32, 2usize, 3usize), (3, 2, 3), (2, 3, 2), (3, 3, 1), (2, 4, 1), (3, 4, 1)] {
        let f = ok(Fq::standard(q), "field")?;
        let o = vertex_canonical(&InfinityLattice::standard(d), &f);
        let c = ok(ball(&o, r, d, &f), "ball")?;
        check_signs(&c, &format!("ball q={q} d={d} r={r}"))?;
        n += 1;
    }
    for (q, d, level, alpha) in [(2u32, 2usize, vec![1u32], 5i64), (2, 2, vec![1, 1, 1], 4), (3, 2, vec![0, 1], 4), (2, 3, vec![1], 3), (2, 3, vec![0, 1], 3)] {
        let p = ok(QuotientParams::new(q, d, &level, alpha), "params")?;
        let qt = ok(quotient_complex(&p), "quotient")?;
        let what = format!("quotient q={q} d={d} level {level:?}");
        check_signs(qt.complex(), &what)?;
        let fr = qt.exhausted.check_frontier_closed();
        ensure(fr.is_empty(), || format!("{what}: frontier is not closed"))?;
        n += 1;
    }
    let f = ok(Fq::standard(2), "field")?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for d in 2..=4usize {
        for r in 1..=3i64 {
            let w = ApartmentWindow::new(d, r);
            check_signs(&w.complex, &format!("window d={d} r={r}"))?;
            n += 1;
            if r <= 2 {
                let (image, _) = ok(w.image(&random_basis(&mut rng, d, 2, &f), &f), "apartment image")?;
                check_signs(&image, &format!("apartment d={d} r={r}"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} complexes"))
}

pub fn beta_is_a_cycle(_: &super::SuiteContext) -> Outcome {
    let f = ok(Fq::standard(2), "field")?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut ridges = 0;
    for d in 2..=4usize {
        for r in 1..=6i64 {
            let w = ApartmentWindow::new(d, r);
            let beta = w.beta();
            ensure(beta.coeffs.len() == w.complex.count(d - 1), || format!("d={d} r={r}: beta misses top simplices"))?;
            let db = ok(boundary(&w.complex, &beta), "boundary")?;
            let interior = w.interior_ridges();
            ensure(interior.iter().all(|&k| db.get(k).is_zero()), || format!("d={d} r={r}: nonzero interior boundary"))?;
            ridges += interior.len();
            if r <= 2 {
                let basis = if r == 1 { standard_basis(d) } else { random_basis(&mut rng, d, 2, &f) };
                let (image, map) = ok(w.image(&basis, &f), "apartment image")?;
                let (_, z) = ok(fundamental_chain(&basis, &w, &f), "fundamental chain")?;
                let dz = ok(boundary(&image, &z), "boundary")?;
                ensure(interior.iter().all(|&k| dz.get(map.maps[d - 2][k]).is_zero()), || {
                    format!("d={d} r={r}: the image in the building has interior boundary")
                })?;
            }
        }
    }
    Ok(format!("{ridges} interior ridges checked"))
}

pub fn lift_independence(_: &super::SuiteContext) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let f = ok(Fq::standard(3), "field")?;
    let mut lifts = 0;
    for trial in 0..200 {
        let d = 2 + trial % 3;
        let basis = if trial % 4 == 0 { standard_basis(d) } else { random_basis(&mut rng, d, 2, &f) };
        // a face of a top simplex from a random base point and step order
        let mut x: Vec<i64> = (0..d).map(|_| rng.gen_range(-3..=3)).collect();
        let mut order: Vec<usize> = (0..d).collect();
        for i in (1..d).rev() {
            order.swap(i, rng.gen_range(0..=i));
        }
        let mut top = vec![x.clone()];
        for &c in &order[..d - 1] {
            x[c] += 1;
            top.push(x.clone());
        }
        let keep: Vec<Vec<i64>> = top.iter().filter(|_| rng.gen_bool(0.7)).cloned().collect();
        let sigma = if keep.is_empty() { vec![top[0].clone()] } else { keep };
        let reference = ok(apartment_simplex(&basis, &sigma, &f), "apartment simplex")?;
        let orient = if sigma.len() == d { Some(ok(apartment_orientation(&sigma), "orientation")?) } else { None };
        for start in 0..sigma.len() {
            // rotate the starting point and shift each point along (1,...,1)
            let other: Vec<Vec<i64>> = (0..sigma.len())
                .map(|k| {
                    let s = rng.gen_range(-2i64..=2);
                    sigma[(start + k) % sigma.len()].iter().map(|v| v + s).collect()
                })
                .collect();
            let b = ok(apartment_simplex(&basis, &other, &f), "apartment simplex")?;
            let same: BTreeSet<_> = b.keys.iter().collect();
            ensure(b.key == reference.key && b.keys == reference.keys && same.len() == b.keys.len(), || {
                format!("trial {trial}: lift {start} gives another simplex")
            })?;
            if let Some(o) = &orient {
                ensure(ok(apartment_orientation(&other), "orientation")? == *o, || format!("trial {trial}: orientation moved"))?;
            }
            lifts += 1;
        }
    }
    Ok(format!("200 simplices, {lifts} lifts"))
}
