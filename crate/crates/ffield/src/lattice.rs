use serde::{Deserialize, Serialize};

use crate::matrix::weak_popov;
use crate::{FfError, Fq, Poly, PolyMatrix, RatFunc, MAX_DIM};

pub const DEFAULT_SERIES_CEILING: i64 = 1024;

/// An O_inf-lattice in K^d, K = F_q((1/t)), spanned by rational rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InfinityLattice {
    rows: Vec<Vec<RatFunc>>,
}

/// `lattice * gamma` is the lattice with rows `t^n[i] e_i`; `n` descending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Splitting {
    pub n: Vec<i64>,
    pub gamma: PolyMatrix,
    pub gamma_inv: PolyMatrix,
}

/// `t^s * L` is spanned over O_inf by the rows of `b`, and `p = adj(b)`,
/// `h = det(b)`.
struct PolyPresentation {
    b: PolyMatrix,
    s: i64,
    p: PolyMatrix,
    h: Poly,
}

impl InfinityLattice {
    pub fn new(rows: Vec<Vec<RatFunc>>, f: &Fq) -> Result<InfinityLattice, FfError> {
        let d = rows.len();
        if d == 0 || d > MAX_DIM {
            return Err(FfError::BadDimension(d));
        }
        if rows.iter().any(|r| r.len() != d) {
            return Err(FfError::Shape(format!("expected {d}x{d}")));
        }
        let l = InfinityLattice { rows };
        if l.presentation(f).h.is_zero() {
            return Err(FfError::SingularMatrix);
        }
        Ok(l)
    }

    pub fn standard(d: usize) -> InfinityLattice {
        let rows = (0..d)
            .map(|i| (0..d).map(|j| if i == j { RatFunc::one() } else { RatFunc::zero() }).collect())
            .collect();
        InfinityLattice { rows }
    }

    /// Rows t^a[i] e_i.
    pub fn diagonal(a: &[i64]) -> InfinityLattice {
        let d = a.len();
        let rows = (0..d)
            .map(|i| (0..d).map(|j| if i == j { RatFunc::t_pow(a[i]) } else { RatFunc::zero() }).collect())
            .collect();
        InfinityLattice { rows }
    }

    pub fn from_poly_matrix(m: &PolyMatrix, f: &Fq) -> Result<InfinityLattice, FfError> {
        let rows = m.rows.iter().map(|r| r.iter().map(|p| RatFunc::from_poly(p.clone())).collect()).collect();
        InfinityLattice::new(rows, f)
    }

    pub fn rows(&self) -> &[Vec<RatFunc>] {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// `L * g` for g in GL_d(F_q[t]) acting on row vectors.
    pub fn act(&self, g: &PolyMatrix, f: &Fq) -> InfinityLattice {
        let d = self.dim();
        let rows = self
            .rows
            .iter()
            .map(|r| {
                (0..d)
                    .map(|j| {
                        (0..d).fold(RatFunc::zero(), |acc, k| acc.add(&r[k].mul_poly(&g.rows[k][j], f), f))
                    })
                    .collect()
            })
            .collect();
        InfinityLattice { rows }
    }

    /// `t^k * L`; `pi * L` is `scale_t(-1)`.
    pub fn scale_t(&self, k: i64, f: &Fq) -> InfinityLattice {
        let s = RatFunc::t_pow(k);
        InfinityLattice { rows: self.rows.iter().map(|r| r.iter().map(|x| x.mul(&s, f)).collect()).collect() }
    }

    fn presentation(&self, f: &Fq) -> PolyPresentation {
        let dens: Vec<Poly> = self
            .rows
            .iter()
            .map(|r| {
                r.iter().fold(Poly::one(), |acc, x| {
                    let g = acc.gcd(x.den(), f);
                    acc.mul(x.den(), f).div_exact(&g, f)
                })
            })
            .collect();
        let s = dens.iter().map(|g| g.deg_i()).max().unwrap_or(0);
        let rows = self
            .rows
            .iter()
            .zip(&dens)
            .map(|(r, g)| {
                let k = (s - g.deg_i()) as usize;
                r.iter()
                    .map(|x| {
                        let y = x.mul_poly(g, f);
                        debug_assert!(y.is_poly());
                        y.num().shift(k)
                    })
                    .collect()
            })
            .collect();
        let b = PolyMatrix { rows };
        let h = b.det(f);
        let p = if h.is_zero() { PolyMatrix::identity(self.dim()) } else { b.adjugate(f) };
        PolyPresentation { b, s, p, h }
    }

    /// deg of the bundle (F_q[t]^d, L), i.e. -val_inf(det of the rows).
    pub fn degree(&self, f: &Fq) -> i64 {
        let pr = self.presentation(f);
        pr.h.deg_i() - pr.s * self.dim() as i64
    }

    /// Smallest m with v in t^m L (v nonzero).
    pub fn norm(&self, v: &[RatFunc], f: &Fq) -> i64 {
        let pr = self.presentation(f);
        let d = self.dim();
        (0..d)
            .map(|j| {
                let c = (0..d).fold(RatFunc::zero(), |acc, k| acc.add(&v[k].mul_poly(&pr.p.rows[k][j], f), f));
                if c.is_zero() {
                    i64::MIN
                } else {
                    -c.val()
                }
            })
            .max()
            .unwrap()
            + pr.s
            - pr.h.deg_i()
    }

    pub fn contains(&self, v: &[RatFunc], f: &Fq) -> bool {
        v.iter().all(|x| x.is_zero()) || self.norm(v, f) <= 0
    }

    /// Whether `self` is contained in `other`.
    pub fn is_sublattice_of(&self, other: &InfinityLattice, f: &Fq) -> bool {
        self.rows.iter().all(|r| other.contains(r, f))
    }

    pub fn same_lattice(&self, other: &InfinityLattice, f: &Fq) -> bool {
        self.is_sublattice_of(other, f) && other.is_sublattice_of(self, f)
    }

    /// dim over F_q of { v in F_q[t]^d : v in t^m L }.
    pub fn h0_dimension(&self, m: i64, f: &Fq, ceiling: i64) -> Result<usize, FfError> {
        let pr = self.presentation(f);
        let d = self.dim();
        let cut = m - pr.s + pr.h.deg_i();
        let bounds: Vec<i64> = (0..d)
            .map(|k| m - pr.s + (0..d).map(|r| pr.b.rows[r][k].deg_i()).max().unwrap())
            .collect();
        let pdeg = pr.p.max_degree();
        let needed = bounds.iter().copied().max().unwrap() + pdeg.max(0) + 1;
        if needed > ceiling || bounds.iter().any(|&n| n > ceiling) {
            return Err(FfError::PrecisionExceeded { needed, ceiling });
        }
        let mut vars = Vec::new();
        for (k, &n) in bounds.iter().enumerate() {
            for e in 0..=n.max(-1) {
                vars.push((k, e as usize));
            }
        }
        if vars.is_empty() {
            return Ok(0);
        }
        let mut rows = Vec::new();
        for j in 0..d {
            let top = (0..d)
                .filter(|&k| bounds[k] >= 0 && !pr.p.rows[k][j].is_zero())
                .map(|k| bounds[k] + pr.p.rows[k][j].deg_i())
                .max();
            let Some(top) = top else { continue };
            for e in (cut + 1).max(0)..=top {
                let row: Vec<u8> = vars
                    .iter()
                    .map(|&(k, c)| {
                        let idx = e - c as i64;
                        if idx < 0 {
                            0
                        } else {
                            pr.p.rows[k][j].coeff(idx as usize)
                        }
                    })
                    .collect();
                rows.push(row);
            }
        }
        Ok(vars.len() - f.rank(&rows))
    }

    /// Splitting type n_1 >= ... >= n_d recovered from jumps of h0.
    pub fn bundle_type(&self, f: &Fq, ceiling: i64) -> Result<Vec<i64>, FfError> {
        let d = self.dim();
        let h = |m: i64| self.h0_dimension(m, f, ceiling);
        // all n_i <= -lo - 1 once h0(lo) = 0
        let mut lo = 0i64;
        let mut step = 1;
        while h(lo)? > 0 {
            lo -= step;
            step *= 2;
        }
        // all n_i >= -hi - 1 once h0(hi + 1) - h0(hi) = d
        let mut hi = lo;
        let mut prev = 0usize;
        let mut values = vec![(lo, 0usize)];
        loop {
            let next = h(hi + 1)?;
            values.push((hi + 1, next));
            if next - prev == d {
                break;
            }
            prev = next;
            hi += 1;
        }
        // c(m) = h0(m+1) - h0(m) = #{ i : n_i >= -(m+1) }
        let c: Vec<(i64, usize)> = values.windows(2).map(|w| (w[0].0, w[1].1 - w[0].1)).collect();
        let mut n = Vec::with_capacity(d);
        let mut last = 0usize;
        for &(m, cm) in &c {
            for _ in last..cm {
                n.push(-(m + 1));
            }
            last = cm;
        }
        debug_assert_eq!(n.len(), d);
        Ok(n)
    }

    /// Birkhoff-type splitting through weak Popov reduction of adj(b).
    pub fn splitting(&self, f: &Fq) -> Result<Splitting, FfError> {
        let pr = self.presentation(f);
        if pr.h.is_zero() {
            return Err(FfError::SingularMatrix);
        }
        let wp = weak_popov(&pr.p, f)?;
        let d = self.dim();
        let mut n: Vec<i64> = wp.degs.iter().map(|&delta| pr.h.deg_i() - pr.s - delta).collect();
        let mut rows = wp.u.rows;
        n.reverse();
        rows.reverse();
        let gamma_inv = PolyMatrix { rows };
        let gamma = gamma_inv.inverse_unimodular(f)?;
        debug_assert_eq!(n.len(), d);
        Ok(Splitting { n, gamma, gamma_inv })
    }
}
