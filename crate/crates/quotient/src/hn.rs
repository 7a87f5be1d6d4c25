use ffield::{Fq, InfinityLattice, Poly, RatFunc};
use serde::Serialize;

use crate::QuotientError;

/// A quotient vertex: splitting type normalized to n_d = 0 and the canonical
/// key of the level orbit (empty at full level).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BundleClass {
    pub n: Vec<i64>,
    pub level_orbit: String,
}

impl BundleClass {
    pub fn new(n: &[i64], level_orbit: &str) -> BundleClass {
        let last = *n.last().unwrap_or(&0);
        BundleClass { n: n.iter().map(|x| x - last).collect(), level_orbit: level_orbit.to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HnPolygon {
    pub p: Vec<i64>,
}

impl HnPolygon {
    /// Polygon of a split bundle of type n (any order).
    pub fn of_type(n: &[i64]) -> HnPolygon {
        let mut s = n.to_vec();
        s.sort_unstable_by(|a, b| b.cmp(a));
        let mut p = vec![0];
        for x in s {
            p.push(p.last().unwrap() + x);
        }
        HnPolygon { p }
    }

    pub fn rank(&self) -> usize {
        self.p.len() - 1
    }

    /// Δp(i) = 2p(i) - p(i-1) - p(i+1) for 0 < i < d.
    pub fn delta(&self, i: usize) -> i64 {
        2 * self.p[i] - self.p[i - 1] - self.p[i + 1]
    }

    /// (Δp(1), ..., Δp(d-1))
    pub fn deltas(&self) -> Vec<i64> {
        (1..self.rank()).map(|i| self.delta(i)).collect()
    }

    /// {i : Δp(i) > 0}
    pub fn support(&self) -> Vec<usize> {
        (1..self.rank()).filter(|&i| self.delta(i) > 0).collect()
    }
}

pub fn hn_polygon(c: &BundleClass) -> HnPolygon {
    HnPolygon::of_type(&c.n)
}

pub fn delta_p(c: &BundleClass, i: usize) -> i64 {
    hn_polygon(c).delta(i)
}

/// θ-value of a vertex: the largest gap of its polygon.
pub fn vertex_level(n: &[i64]) -> i64 {
    HnPolygon::of_type(n).deltas().into_iter().max().unwrap_or(0)
}

/// The destabilizing subsheaf F_(i): polynomial rows spanning its generic
/// fiber (saturated in F_q[t]^d), with rank and degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnFlag {
    pub rank: usize,
    pub degree: i64,
    pub rows: Vec<Vec<Poly>>,
}

pub fn hn_flag(l: &InfinityLattice, i: usize, f: &Fq) -> Result<HnFlag, QuotientError> {
    let sp = l.splitting(f)?;
    let poly = HnPolygon::of_type(&sp.n);
    if i == 0 || i >= l.dim() || poly.delta(i) <= 0 {
        return Err(QuotientError::NotInSupport(i));
    }
    // L γ has rows t^{n_k} e_k, so the rows of γ^{-1} are the split summands
    let rows: Vec<Vec<Poly>> = sp.gamma_inv.rows[..i].to_vec();
    let degree = rows
        .iter()
        .map(|r| {
            let v: Vec<RatFunc> = r.iter().map(|p| RatFunc::from_poly(p.clone())).collect();
            -l.norm(&v, f)
        })
        .sum::<i64>();
    let flag = HnFlag { rank: i, degree, rows };
    if rank_over_ratfunc(&flag.rows, f) != i || degree != poly.p[i] {
        return Err(QuotientError::Internal(format!("HN flag check failed at i = {i}")));
    }
    Ok(flag)
}

/// Rank over F_q(t) of polynomial rows.
pub fn rank_over_ratfunc(rows: &[Vec<Poly>], f: &Fq) -> usize {
    let mut m: Vec<Vec<RatFunc>> = rows.iter().map(|r| r.iter().map(|p| RatFunc::from_poly(p.clone())).collect()).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let piv = m[rank].clone();
        for r in rank + 1..m.len() {
            if m[r][c].is_zero() {
                continue;
            }
            let x = m[r][c].div(&piv[c], f);
            for k in 0..cols {
                m[r][k] = m[r][k].sub(&x.mul(&piv[k], f), f);
            }
        }
        rank += 1;
    }
    rank
}

/// Whether the generic fibers spanned by two row sets coincide.
pub fn same_span(a: &[Vec<Poly>], b: &[Vec<Poly>], f: &Fq) -> bool {
    let both: Vec<Vec<Poly>> = a.iter().chain(b).cloned().collect();
    let r = rank_over_ratfunc(&both, f);
    r == rank_over_ratfunc(a, f) && r == rank_over_ratfunc(b, f)
}
