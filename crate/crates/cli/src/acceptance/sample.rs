//! Seeded random objects for the property checks.

use building::{star_flags, sublattice};
use ffield::{Fq, InfinityLattice, Poly, PolyMatrix, RatFunc};
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

/// Random element of GL_d(F_q[t]) with entries of degree <= 2, built from
/// elementary matrices whose off-diagonal entries are multiples of `m`.
/// Without `units` it is congruent to 1 mod m.
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

/// A random pointed simplex of the building: a lattice and a flag in its star.
pub fn random_chain(rng: &mut ChaCha8Rng, d: usize, f: &Fq) -> Vec<InfinityLattice> {
    let flags = star_flags(d, f);
    let l = random_lattice(rng, d, f);
    let flag = &flags[rng.gen_range(0..flags.len())];
    let mut chain = vec![l.clone()];
    chain.extend(flag.iter().map(|w| sublattice(&l, w, f)));
    chain
}

/// Nonsingular polynomial basis with entries of degree <= `deg`.
pub fn random_basis(rng: &mut ChaCha8Rng, d: usize, deg: usize, f: &Fq) -> Vec<Vec<RatFunc>> {
    loop {
        let g = PolyMatrix::from_fn(d, |_, _| random_poly(rng, deg, f));
        if !g.det(f).is_zero() {
            return g.rows.iter().map(|r| r.iter().map(|p| RatFunc::from_poly(p.clone())).collect()).collect();
        }
    }
}

pub fn standard_basis(d: usize) -> Vec<Vec<RatFunc>> {
    InfinityLattice::standard(d).rows().to_vec()
}

pub fn mat_mul(a: &[Vec<RatFunc>], b: &[Vec<RatFunc>], f: &Fq) -> Vec<Vec<RatFunc>> {
    let d = a.len();
    (0..d)
        .map(|i| (0..d).map(|j| (0..d).fold(RatFunc::zero(), |s, k| s.add(&a[i][k].mul(&b[k][j], f), f))).collect())
        .collect()
}

/// Gauss-Jordan inverse over F_q(t); `None` when singular.
pub fn invert(m: &[Vec<RatFunc>], f: &Fq) -> Option<Vec<Vec<RatFunc>>> {
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
        let p = (c..d).find(|&r| !a[r][c].is_zero())?;
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
    Some(a.into_iter().map(|r| r[d..].to_vec()).collect())
}

/// The dual lattice: rows of the inverse transpose.
pub fn dual(l: &InfinityLattice, f: &Fq) -> InfinityLattice {
    let inv = invert(l.rows(), f).expect("lattice bases are nonsingular");
    let d = inv.len();
    let t: Vec<Vec<RatFunc>> = (0..d).map(|i| (0..d).map(|j| inv[j][i].clone()).collect()).collect();
    InfinityLattice::new(t, f).unwrap()
}

/// A lattice of splitting type `n` in general position.
pub fn typed_lattice(rng: &mut ChaCha8Rng, n: &[i64], f: &Fq) -> InfinityLattice {
    let g = random_gamma(rng, n.len(), &Poly::one(), true, f);
    InfinityLattice::diagonal(n).act(&g, f)
}

/// A sublattice M·L with M over O_∞; small index when `tight`.
pub fn random_sublattice(rng: &mut ChaCha8Rng, l: &InfinityLattice, tight: bool, f: &Fq) -> InfinityLattice {
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
