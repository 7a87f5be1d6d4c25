#![allow(dead_code)]

use ffield::{Fq, Poly, PolyMatrix, RatFunc};
use quotient::{quotient_complex, Quotient, QuotientParams};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn build(q: u32, d: usize, level: &[u32], alpha: i64) -> Quotient {
    quotient_complex(&QuotientParams::new(q, d, level, alpha).unwrap()).unwrap()
}

pub fn random_poly(rng: &mut ChaCha8Rng, max_deg: usize, f: &Fq) -> Poly {
    Poly::from_coeffs((0..=max_deg).map(|_| rng.gen_range(0..f.q())).collect())
}

pub fn rf(p: &Poly) -> RatFunc {
    RatFunc::from_poly(p.clone())
}

/// A random nonsingular basis with polynomial entries of degree <= max_deg.
pub fn random_basis(rng: &mut ChaCha8Rng, d: usize, max_deg: usize, f: &Fq) -> Vec<Vec<RatFunc>> {
    loop {
        let m = PolyMatrix::from_fn(d, |_, _| random_poly(rng, max_deg, f));
        if !m.det(f).is_zero() {
            return m.rows.iter().map(|r| r.iter().map(rf).collect()).collect();
        }
    }
}

/// Random element of GL_d(F_q[t]) with entries of degree <= 2; off-diagonal
/// parts are multiples of `m`, and without units it is 1 mod m.
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

/// Rows of V·γ.
pub fn times(v: &[Vec<RatFunc>], g: &PolyMatrix, f: &Fq) -> Vec<Vec<RatFunc>> {
    let d = v.len();
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| (0..d).fold(RatFunc::zero(), |acc, k| acc.add(&v[i][k].mul_poly(g.get(k, j), f), f)))
                .collect()
        })
        .collect()
}

pub fn standard(d: usize) -> Vec<Vec<RatFunc>> {
    (0..d).map(|i| (0..d).map(|j| if i == j { RatFunc::one() } else { RatFunc::zero() }).collect()).collect()
}
