use std::fmt;

use ffield::{Fq, InfinityLattice, Poly, RatFunc};

use crate::BuildingError;

/// Canonical key of a homothety class of lattices: the π-adic Hermite form
/// (upper triangular rows, diagonal π^a_i with min a_i = 0, off-diagonal
/// entries reduced below the exponent of their column's diagonal).
///
/// Text form: `a_0.a_1...|e_01/e_02/...` with each above-diagonal entry
/// written as `c@k` terms (meaning c·π^k) joined by `+`, or `0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexKey(pub String);

impl fmt::Display for VertexKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// `x * t^k`
fn shift(x: &RatFunc, k: i64, f: &Fq) -> RatFunc {
    x.mul(&RatFunc::t_pow(k), f)
}

/// Hermite form rows and diagonal exponents, scaled so that min a_i = 0.
pub fn hermite_form(l: &InfinityLattice, f: &Fq) -> (Vec<Vec<RatFunc>>, Vec<i64>) {
    let d = l.dim();
    let mut m: Vec<Vec<RatFunc>> = l.rows().to_vec();
    let mut a = vec![0i64; d];
    for j in 0..d {
        let p = (j..d).min_by_key(|&r| m[r][j].val()).unwrap();
        m.swap(j, p);
        let x = m[j][j].clone();
        assert!(!x.is_zero(), "singular lattice");
        for k in j + 1..d {
            if m[k][j].is_zero() {
                continue;
            }
            let c = m[k][j].div(&x, f);
            let pivot = m[j].clone();
            for (e, pe) in m[k].iter_mut().zip(&pivot) {
                *e = e.sub(&c.mul(pe, f), f);
            }
        }
        a[j] = x.val();
        // x = π^a u with u a unit; divide the row by u
        let u_inv = shift(&x, a[j], f).inv(f);
        for e in m[j].iter_mut() {
            *e = e.mul(&u_inv, f);
        }
    }
    for j in 1..d {
        for i in 0..j {
            let y = m[i][j].clone();
            if y.is_zero() {
                continue;
            }
            let r = y.truncate_below(a[j], f);
            let c = shift(&y.sub(&r, f), a[j], f);
            if c.is_zero() {
                continue;
            }
            let pivot = m[j].clone();
            for (e, pe) in m[i].iter_mut().zip(&pivot) {
                *e = e.sub(&c.mul(pe, f), f);
            }
        }
    }
    let lo = *a.iter().min().unwrap();
    for row in m.iter_mut() {
        for e in row.iter_mut() {
            *e = shift(e, lo, f);
        }
    }
    for x in a.iter_mut() {
        *x -= lo;
    }
    (m, a)
}

pub fn vertex_canonical(l: &InfinityLattice, f: &Fq) -> VertexKey {
    let (m, a) = hermite_form(l, f);
    let d = l.dim();
    let diag: Vec<String> = a.iter().map(|x| x.to_string()).collect();
    let mut entries = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            let y = &m[i][j];
            if y.is_zero() {
                entries.push("0".to_string());
                continue;
            }
            let v = y.val();
            let (_, s) = y.pi_expansion((a[j] - v) as usize, f);
            let terms: Vec<String> = s
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != 0)
                .map(|(k, c)| format!("{c}@{}", v + k as i64))
                .collect();
            entries.push(if terms.is_empty() { "0".into() } else { terms.join("+") });
        }
    }
    VertexKey(format!("{}|{}", diag.join("."), entries.join("/")))
}

impl VertexKey {
    /// The Hermite representative encoded by the key.
    pub fn to_lattice(&self, d: usize, f: &Fq) -> Result<InfinityLattice, BuildingError> {
        let bad = || BuildingError::BadKey(self.0.clone());
        let (diag, rest) = self.0.split_once('|').ok_or_else(bad)?;
        let a: Vec<i64> = diag.split('.').map(|x| x.parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
        if a.len() != d {
            return Err(bad());
        }
        let entries: Vec<&str> = if d == 1 { Vec::new() } else { rest.split('/').collect() };
        if entries.len() != d * (d - 1) / 2 {
            return Err(bad());
        }
        let mut rows = vec![vec![RatFunc::zero(); d]; d];
        let mut it = entries.into_iter();
        for i in 0..d {
            rows[i][i] = RatFunc::t_pow(-a[i]);
            for j in i + 1..d {
                let e = it.next().unwrap();
                if e == "0" {
                    continue;
                }
                let mut x = RatFunc::zero();
                for term in e.split('+') {
                    let (c, k) = term.split_once('@').ok_or_else(bad)?;
                    let c: u8 = c.parse().map_err(|_| bad())?;
                    let k: i64 = k.parse().map_err(|_| bad())?;
                    x = x.add(&RatFunc::t_pow(-k).mul(&RatFunc::from_poly(Poly::constant(c)), f), f);
                }
                rows[i][j] = x;
            }
        }
        Ok(InfinityLattice::new(rows, f)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_and_homothetic() {
        let f = Fq::standard(2).unwrap();
        let o = InfinityLattice::standard(3);
        let k = vertex_canonical(&o, &f);
        assert_eq!(k.0, "0.0.0|0/0/0");
        assert_eq!(vertex_canonical(&o.scale_t(-1, &f), &f), k);
        assert_eq!(vertex_canonical(&o.scale_t(5, &f), &f), k);
    }

    #[test]
    fn key_round_trip() {
        let f = Fq::standard(3).unwrap();
        // rows (t^2, 1/t + 2), (0, 1)
        let rows = vec![
            vec![RatFunc::t_pow(2), RatFunc::t_pow(-1).add(&RatFunc::constant(2), &f)],
            vec![RatFunc::zero(), RatFunc::one()],
        ];
        let l = InfinityLattice::new(rows, &f).unwrap();
        let k = vertex_canonical(&l, &f);
        let back = k.to_lattice(2, &f).unwrap();
        assert_eq!(vertex_canonical(&back, &f), k);
        assert!((-4..=4).any(|s| back.scale_t(s, &f).same_lattice(&l, &f)));
    }
}
