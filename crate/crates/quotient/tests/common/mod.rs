#![allow(dead_code)]

use ffield::{Fq, InfinityLattice, Poly, PolyMatrix, RatFunc};
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// A random element of F_q[π] of degree < 3, π = 1/t.
pub fn pi_poly(rng: &mut ChaCha8Rng, f: &Fq) -> RatFunc {
    let mut x = RatFunc::zero();
    for k in 0..3 {
        let c = rng.gen_range(0..f.q());
        x = x.add(&RatFunc::t_pow(-k).scale(c, f), f);
    }
    x
}

pub fn random_lattice(rng: &mut ChaCha8Rng, d: usize, f: &Fq) -> InfinityLattice {
    loop {
        let rows = (0..d)
            .map(|_| {
                (0..d)
                    .map(|_| {
                        let k = rng.gen_range(-2i64..=2);
                        RatFunc::t_pow(k).mul(&pi_poly(rng, f), f)
                    })
                    .collect()
            })
            .collect();
        if let Ok(l) = InfinityLattice::new(rows, f) {
            return l;
        }
    }
}

pub fn random_poly(rng: &mut ChaCha8Rng, max_deg: usize, f: &Fq) -> Poly {
    Poly::from_coeffs((0..=max_deg).map(|_| rng.gen_range(0..f.q())).collect())
}

/// Random element of GL_d(F_q[t]) as a product of elementary and unit diagonal
/// matrices; entries of degree <= 2. Off-diagonal parts are multiplied by `m`,
/// so with a unit diagonal of ones the result is congruent to 1 mod m.
pub fn random_gamma(rng: &mut ChaCha8Rng, d: usize, m: &Poly, units: bool, f: &Fq) -> PolyMatrix {
    let budget = 2 - m.deg_i();
    loop {
        let mut g = PolyMatrix::identity(d);
        if units {
            let u: Vec<u8> = f.units().collect();
            let diag: Vec<u8> = (0..d).map(|_| u[rng.gen_range(0..u.len())]).collect();
            g = PolyMatrix::from_fn(d, |i, j| if i == j { Poly::constant(diag[i]) } else { Poly::zero() });
        }
        for _ in 0..rng.gen_range(1..=4) {
            let (i, j) = (rng.gen_range(0..d), rng.gen_range(0..d));
            if i == j {
                continue;
            }
            let c = random_poly(rng, budget as usize, f).mul(m, f);
            let e = PolyMatrix::from_fn(d, |a, b| {
                if a == b {
                    Poly::one()
                } else if (a, b) == (i, j) {
                    c.clone()
                } else {
                    Poly::zero()
                }
            });
            g = g.mul(&e, f);
        }
        if g.max_degree() <= 2 {
            return g;
        }
    }
}

/// Inverse of a square matrix over F_q(t) by Gauss-Jordan elimination.
pub fn invert(m: &[Vec<RatFunc>], f: &Fq) -> Vec<Vec<RatFunc>> {
    let d = m.len();
    let mut a: Vec<Vec<RatFunc>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            r.extend((0..d).map(|j| if i == j { RatFunc::one() } else { RatFunc::zero() }));
            r
        })
        .collect();
    for c in 0..d {
        let p = (c..d).find(|&r| !a[r][c].is_zero()).expect("singular");
        a.swap(c, p);
        let inv = a[c][c].inv(f);
        a[c] = a[c].iter().map(|x| x.mul(&inv, f)).collect();
        for r in 0..d {
            if r != c && !a[r][c].is_zero() {
                let x = a[r][c].clone();
                let piv = a[c].clone();
                a[r] = a[r].iter().zip(&piv).map(|(y, z)| y.sub(&x.mul(z, f), f)).collect();
            }
        }
    }
    a.into_iter().map(|r| r[d..].to_vec()).collect()
}

/// The dual lattice: rows of the inverse transpose.
pub fn dual(l: &InfinityLattice, f: &Fq) -> InfinityLattice {
    let inv = invert(l.rows(), f);
    let d = inv.len();
    let t: Vec<Vec<RatFunc>> = (0..d).map(|i| (0..d).map(|j| inv[j][i].clone()).collect()).collect();
    InfinityLattice::new(t, f).unwrap()
}
