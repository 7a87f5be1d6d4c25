use serde::{Deserialize, Serialize};

use crate::Fq;

/// Polynomial in t over F_q, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Poly {
    c: Vec<u8>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly { c: vec![1] }
    }

    pub fn constant(a: u8) -> Poly {
        Poly::from_coeffs(vec![a])
    }

    /// a * t^k
    pub fn monomial(a: u8, k: usize) -> Poly {
        if a == 0 {
            return Poly::zero();
        }
        let mut c = vec![0; k + 1];
        c[k] = a;
        Poly { c }
    }

    pub fn t() -> Poly {
        Poly::monomial(1, 1)
    }

    pub fn from_coeffs(mut c: Vec<u8>) -> Poly {
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly { c }
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree as a signed integer, with `-1` for zero.
    pub fn deg_i(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    pub fn lead(&self) -> u8 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn coeff(&self, k: usize) -> u8 {
        self.c.get(k).copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }

    pub fn add(&self, o: &Poly, f: &Fq) -> Poly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| f.add(self.coeff(i), o.coeff(i))).collect();
        Poly::from_coeffs(c)
    }

    pub fn sub(&self, o: &Poly, f: &Fq) -> Poly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| f.sub(self.coeff(i), o.coeff(i))).collect();
        Poly::from_coeffs(c)
    }

    pub fn neg(&self, f: &Fq) -> Poly {
        Poly { c: self.c.iter().map(|&a| f.neg(a)).collect() }
    }

    pub fn scale(&self, a: u8, f: &Fq) -> Poly {
        if a == 0 {
            return Poly::zero();
        }
        Poly { c: self.c.iter().map(|&x| f.mul(x, a)).collect() }
    }

    /// Multiply by t^k.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![0; k];
        c.extend_from_slice(&self.c);
        Poly { c }
    }

    pub fn mul(&self, o: &Poly, f: &Fq) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![0u8; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(c)
    }

    /// Euclidean division; panics if `d` is zero.
    pub fn divrem(&self, d: &Poly, f: &Fq) -> (Poly, Poly) {
        let dd = d.deg().expect("division by zero polynomial");
        let inv = f.inv(d.lead());
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut qc = vec![0u8; r.len() - dd];
        for k in (dd..r.len()).rev() {
            let a = r[k];
            if a == 0 {
                continue;
            }
            let m = f.mul(a, inv);
            qc[k - dd] = m;
            for (i, &b) in d.c.iter().enumerate() {
                let idx = k - dd + i;
                r[idx] = f.sub(r[idx], f.mul(m, b));
            }
        }
        r.truncate(dd);
        (Poly::from_coeffs(qc), Poly::from_coeffs(r))
    }

    pub fn rem(&self, d: &Poly, f: &Fq) -> Poly {
        self.divrem(d, f).1
    }

    /// Exact quotient; panics when the division leaves a remainder.
    pub fn div_exact(&self, d: &Poly, f: &Fq) -> Poly {
        let (q, r) = self.divrem(d, f);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self, f: &Fq) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(f.inv(self.lead()), f)
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(&self, o: &Poly, f: &Fq) -> Poly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn eval(&self, x: u8, f: &Fq) -> u8 {
        self.c.iter().rev().fold(0, |acc, &a| f.add(f.mul(acc, x), a))
    }

    /// All polynomials of degree <= `max_deg` (including zero), in a fixed order.
    pub fn all_up_to(max_deg: i64, f: &Fq) -> Vec<Poly> {
        if max_deg < 0 {
            return vec![Poly::zero()];
        }
        let n = max_deg as usize + 1;
        let q = f.q() as usize;
        let total = q.pow(n as u32);
        (0..total)
            .map(|mut idx| {
                let mut c = Vec::with_capacity(n);
                for _ in 0..n {
                    c.push((idx % q) as u8);
                    idx /= q;
                }
                Poly::from_coeffs(c)
            })
            .collect()
    }

    /// All monic polynomials of exact degree `deg`.
    pub fn monics_of_degree(deg: usize, f: &Fq) -> Vec<Poly> {
        Poly::all_up_to(deg as i64 - 1, f)
            .into_iter()
            .map(|p| p.add(&Poly::monomial(1, deg), f))
            .collect()
    }

    pub fn is_irreducible(&self, f: &Fq) -> bool {
        let Some(n) = self.deg() else { return false };
        if n == 0 {
            return false;
        }
        (1..=n / 2).all(|k| Poly::monics_of_degree(k, f).iter().all(|g| !self.rem(g, f).is_zero()))
    }

    pub fn to_string_t(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (k, &a) in self.c.iter().enumerate().rev() {
            if a == 0 {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{k}"),
            };
            terms.push(match (a, k) {
                (_, 0) => a.to_string(),
                (1, _) => mono,
                _ => format!("{a}{mono}"),
            });
        }
        terms.join("+")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_poly(q: u8, max_len: usize) -> impl Strategy<Value = Poly> {
        proptest::collection::vec(0..q, 0..max_len).prop_map(Poly::from_coeffs)
    }

    #[test]
    fn small_products() {
        let f = Fq::standard(2).unwrap();
        // (t+1)^2 = t^2 + 1 over F_2
        let a = Poly::from_coeffs(vec![1, 1]);
        assert_eq!(a.mul(&a, &f), Poly::from_coeffs(vec![1, 0, 1]));
        assert!(Poly::from_coeffs(vec![1, 1, 1]).is_irreducible(&f));
        assert!(!Poly::from_coeffs(vec![1, 0, 1]).is_irreducible(&f));
        assert_eq!(Poly::monics_of_degree(2, &f).len(), 4);
    }

    proptest! {
        #[test]
        fn divrem_reconstructs(a in arb_poly(3, 8), b in arb_poly(3, 5)) {
            let f = Fq::standard(3).unwrap();
            prop_assume!(!b.is_zero());
            let (q, r) = a.divrem(&b, &f);
            prop_assert_eq!(q.mul(&b, &f).add(&r, &f), a);
            prop_assert!(r.deg_i() < b.deg_i());
        }

        #[test]
        fn gcd_divides_both(a in arb_poly(4, 7), b in arb_poly(4, 7)) {
            let f = Fq::standard(4).unwrap();
            prop_assume!(!a.is_zero() || !b.is_zero());
            let g = a.gcd(&b, &f);
            prop_assert!(g.is_monic());
            prop_assert!(a.rem(&g, &f).is_zero());
            prop_assert!(b.rem(&g, &f).is_zero());
        }

        #[test]
        fn eval_is_ring_hom(a in arb_poly(3, 6), b in arb_poly(3, 6), x in 0u8..3) {
            let f = Fq::standard(3).unwrap();
            prop_assert_eq!(a.mul(&b, &f).eval(x, &f), f.mul(a.eval(x, &f), b.eval(x, &f)));
            prop_assert_eq!(a.add(&b, &f).eval(x, &f), f.add(a.eval(x, &f), b.eval(x, &f)));
        }
    }
}
