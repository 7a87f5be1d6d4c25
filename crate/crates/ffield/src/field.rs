use serde::{Deserialize, Serialize};

use crate::FfError;

pub const MAX_Q: u32 = 16;

/// F_q = F_p[x]/(modulus). The modulus is monic, lowest degree first, and
/// empty for prime fields.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub e: u32,
    #[serde(default)]
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn standard(q: u32) -> Result<FieldSpec, FfError> {
        let (p, e, modulus) = match q {
            2 | 3 | 5 | 7 | 11 | 13 => (q, 1, vec![]),
            4 => (2, 2, vec![1, 1, 1]),
            8 => (2, 3, vec![1, 1, 0, 1]),
            9 => (3, 2, vec![1, 0, 1]),
            16 => (2, 4, vec![1, 1, 0, 0, 1]),
            _ => return Err(FfError::BadField(format!("no table entry for q = {q}"))),
        };
        Ok(FieldSpec { p, e, modulus })
    }

    pub fn q(&self) -> u32 {
        self.p.pow(self.e)
    }

    pub fn validate(&self) -> Result<(), FfError> {
        if self.p < 2 || !is_prime(self.p) {
            return Err(FfError::BadField(format!("{} is not prime", self.p)));
        }
        if self.e == 0 {
            return Err(FfError::BadField("extension degree must be >= 1".into()));
        }
        if self.p.checked_pow(self.e).map_or(true, |q| q > MAX_Q) {
            return Err(FfError::BadField(format!("q = {}^{} exceeds {MAX_Q}", self.p, self.e)));
        }
        if self.e == 1 {
            if !self.modulus.is_empty() {
                return Err(FfError::BadField("prime field takes an empty modulus".into()));
            }
            return Ok(());
        }
        let m = &self.modulus;
        if m.len() != self.e as usize + 1 || m.iter().any(|&c| c >= self.p) {
            return Err(FfError::BadField("modulus must have e+1 coefficients in [0, p)".into()));
        }
        if m[self.e as usize] != 1 {
            return Err(FfError::BadField("modulus must be monic".into()));
        }
        if !irreducible_mod_p(m, self.p) {
            return Err(FfError::BadField(format!("modulus {m:?} is reducible mod {}", self.p)));
        }
        Ok(())
    }
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|k| k * k <= n).all(|k| n % k != 0)
}

fn rem_mod_p(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    // b monic
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - c * bi % p) % p;
        }
        r.pop();
        while r.last() == Some(&0) {
            r.pop();
        }
    }
    r
}

fn irreducible_mod_p(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    for k in 1..=deg / 2 {
        // all monic polynomials of degree k
        let count = p.pow(k as u32);
        for idx in 0..count {
            let mut f = Vec::with_capacity(k + 1);
            let mut x = idx;
            for _ in 0..k {
                f.push(x % p);
                x /= p;
            }
            f.push(1);
            if rem_mod_p(m, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Table-driven arithmetic on F_q. Elements are `u8` in `0..q`; the base-p
/// digits of an element are its coefficients in F_p[x]/(modulus).
#[derive(Clone, Debug)]
pub struct Fq {
    spec: FieldSpec,
    q: u8,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Fq {
    pub fn new(spec: FieldSpec) -> Result<Fq, FfError> {
        spec.validate()?;
        let p = spec.p as usize;
        let e = spec.e as usize;
        let q = spec.q() as usize;
        let digits = |x: usize| -> Vec<usize> {
            let mut v = vec![0; e];
            let mut y = x;
            for d in v.iter_mut() {
                *d = y % p;
                y /= p;
            }
            v
        };
        let undigits = |v: &[usize]| v.iter().rev().fold(0, |acc, &d| acc * p + d);
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = undigits(&s) as u8;
                let mut prod = vec![0usize; 2 * e];
                for i in 0..e {
                    for j in 0..e {
                        prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
                    }
                }
                // reduce by the monic modulus
                for k in (e..2 * e).rev() {
                    let c = prod[k];
                    if c == 0 {
                        continue;
                    }
                    prod[k] = 0;
                    for i in 0..e {
                        let m = spec.modulus.get(i).copied().unwrap_or(0) as usize;
                        prod[k - e + i] = (prod[k - e + i] + p * p - c * m % p) % p;
                    }
                }
                mul[a * q + b] = undigits(&prod[..e]) as u8;
            }
        }
        let mut neg = vec![0u8; q];
        let mut inv = vec![0u8; q];
        for a in 0..q {
            for b in 0..q {
                if add[a * q + b] == 0 {
                    neg[a] = b as u8;
                }
                if mul[a * q + b] == 1 {
                    inv[a] = b as u8;
                }
            }
        }
        Ok(Fq { spec, q: q as u8, add, mul, neg, inv })
    }

    pub fn standard(q: u32) -> Result<Fq, FfError> {
        Fq::new(FieldSpec::standard(q)?)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn p(&self) -> u32 {
        self.spec.p
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        0..self.q
    }

    pub fn units(&self) -> impl Iterator<Item = u8> {
        1..self.q
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    /// Panics on zero.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        assert!(a != 0, "inverse of zero in F_q");
        self.inv[a as usize]
    }

    #[inline]
    pub fn div(&self, a: u8, b: u8) -> u8 {
        self.mul(a, self.inv(b))
    }

    /// Rank of a dense matrix over F_q (rows may have any common length).
    pub fn rank(&self, rows: &[Vec<u8>]) -> usize {
        let mut m: Vec<Vec<u8>> = rows.to_vec();
        self.row_reduce(&mut m)
    }

    /// In-place reduced row echelon form; returns the rank. Zero rows are
    /// moved to the bottom.
    pub fn row_reduce(&self, m: &mut [Vec<u8>]) -> usize {
        let ncols = m.first().map_or(0, |r| r.len());
        let mut r = 0;
        for c in 0..ncols {
            let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
            m.swap(r, piv);
            let s = self.inv(m[r][c]);
            for x in m[r].iter_mut() {
                *x = self.mul(*x, s);
            }
            for i in 0..m.len() {
                if i != r && m[i][c] != 0 {
                    let f = m[i][c];
                    for j in 0..ncols {
                        let v = self.mul(f, m[r][j]);
                        m[i][j] = self.sub(m[i][j], v);
                    }
                }
            }
            r += 1;
            if r == m.len() {
                break;
            }
        }
        r
    }

    /// Canonical basis (RREF rows, zero rows dropped) of the row span.
    pub fn rref_basis(&self, rows: &[Vec<u8>]) -> Vec<Vec<u8>> {
        let mut m = rows.to_vec();
        let r = self.row_reduce(&mut m);
        m.truncate(r);
        m
    }

    /// All subspaces of F_q^d of dimension k, as RREF bases, in a fixed order.
    pub fn subspaces(&self, d: usize, k: usize) -> Vec<Vec<Vec<u8>>> {
        let mut out = Vec::new();
        if k > d {
            return out;
        }
        // choose pivot columns, then free entries
        for pivots in combinations(d, k) {
            let mut free = Vec::new();
            for (row, &pc) in pivots.iter().enumerate() {
                for c in pc + 1..d {
                    if !pivots.contains(&c) {
                        free.push((row, c));
                    }
                }
            }
            let total = (self.q as usize).pow(free.len() as u32);
            for idx in 0..total {
                let mut b = vec![vec![0u8; d]; k];
                for (row, &pc) in pivots.iter().enumerate() {
                    b[row][pc] = 1;
                }
                let mut x = idx;
                for &(row, c) in &free {
                    b[row][c] = (x % self.q as usize) as u8;
                    x /= self.q as usize;
                }
                out.push(b);
            }
        }
        out
    }

    /// Gaussian binomial [d choose k]_q.
    pub fn gaussian_binomial(&self, d: usize, k: usize) -> u64 {
        if k > d {
            return 0;
        }
        let q = self.q as u64;
        let mut num = 1u64;
        let mut den = 1u64;
        for i in 0..k {
            num *= q.pow((d - i) as u32) - 1;
            den *= q.pow((i + 1) as u32) - 1;
        }
        num / den
    }
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_all_tables() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let f = Fq::standard(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        let lhs = f.mul(a, f.add(b, c));
                        let rhs = f.add(f.mul(a, b), f.mul(a, c));
                        assert_eq!(lhs, rhs);
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn reducible_modulus_rejected() {
        let bad = FieldSpec { p: 2, e: 2, modulus: vec![1, 0, 1] };
        assert!(matches!(bad.validate(), Err(FfError::BadField(_))));
        let big = FieldSpec { p: 5, e: 2, modulus: vec![2, 0, 1] };
        assert!(big.validate().is_err());
        assert!(FieldSpec { p: 4, e: 1, modulus: vec![] }.validate().is_err());
    }

    #[test]
    fn subspace_counts_match_gaussian_binomials() {
        for q in [2, 3, 4] {
            let f = Fq::standard(q).unwrap();
            for d in 1..=4 {
                for k in 0..=d {
                    let subs = f.subspaces(d, k);
                    assert_eq!(subs.len() as u64, f.gaussian_binomial(d, k));
                    for s in &subs {
                        assert_eq!(f.rank(s), k);
                        assert_eq!(&f.rref_basis(s), s);
                    }
                }
            }
        }
    }
}
