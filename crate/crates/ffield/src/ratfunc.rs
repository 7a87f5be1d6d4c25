use serde::{Deserialize, Serialize};

use crate::{Fq, Poly};

/// Element of F_q(t) in lowest terms with monic denominator; zero is 0/1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn zero() -> RatFunc {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> RatFunc {
        RatFunc::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn constant(a: u8) -> RatFunc {
        RatFunc::from_poly(Poly::constant(a))
    }

    /// t^k for any integer k; pi = 1/t is `t_pow(-1)`.
    pub fn t_pow(k: i64) -> RatFunc {
        if k >= 0 {
            RatFunc::from_poly(Poly::monomial(1, k as usize))
        } else {
            RatFunc { num: Poly::one(), den: Poly::monomial(1, (-k) as usize) }
        }
    }

    pub fn new(num: Poly, den: Poly, f: &Fq) -> RatFunc {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc::zero();
        }
        let g = num.gcd(&den, f);
        let (mut n, mut d) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g, f), den.div_exact(&g, f))
        };
        let l = d.lead();
        if l != 1 {
            let s = f.inv(l);
            n = n.scale(s, f);
            d = d.scale(s, f);
        }
        RatFunc { num: n, den: d }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    /// Valuation at infinity, deg(den) - deg(num); `i64::MAX` for zero.
    pub fn val(&self) -> i64 {
        if self.is_zero() {
            return i64::MAX;
        }
        self.den.deg_i() - self.num.deg_i()
    }

    pub fn add(&self, o: &RatFunc, f: &Fq) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFunc::new(self.num.add(&o.num, f), self.den.clone(), f);
        }
        let n = self.num.mul(&o.den, f).add(&o.num.mul(&self.den, f), f);
        RatFunc::new(n, self.den.mul(&o.den, f), f)
    }

    pub fn neg(&self, f: &Fq) -> RatFunc {
        RatFunc { num: self.num.neg(f), den: self.den.clone() }
    }

    pub fn sub(&self, o: &RatFunc, f: &Fq) -> RatFunc {
        self.add(&o.neg(f), f)
    }

    pub fn mul(&self, o: &RatFunc, f: &Fq) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc::from_poly(self.num.mul(&o.num, f));
        }
        RatFunc::new(self.num.mul(&o.num, f), self.den.mul(&o.den, f), f)
    }

    pub fn mul_poly(&self, p: &Poly, f: &Fq) -> RatFunc {
        self.mul(&RatFunc::from_poly(p.clone()), f)
    }

    pub fn scale(&self, a: u8, f: &Fq) -> RatFunc {
        if a == 0 {
            return RatFunc::zero();
        }
        RatFunc { num: self.num.scale(a, f), den: self.den.clone() }
    }

    pub fn inv(&self, f: &Fq) -> RatFunc {
        assert!(!self.is_zero(), "inverse of zero in F_q(t)");
        RatFunc::new(self.den.clone(), self.num.clone(), f)
    }

    pub fn div(&self, o: &RatFunc, f: &Fq) -> RatFunc {
        self.mul(&o.inv(f), f)
    }

    /// Residue at infinity of an element with nonnegative valuation.
    pub fn value_at_infinity(&self, f: &Fq) -> u8 {
        let v = self.val();
        assert!(v >= 0, "element is not integral at infinity");
        if v > 0 {
            0
        } else {
            f.div(self.num.lead(), self.den.lead())
        }
    }

    /// Coefficients of the expansion in pi = 1/t: returns `(v, s)` with
    /// `self = sum_k s[k] pi^(v+k) + O(pi^(v+len))`.
    pub fn pi_expansion(&self, len: usize, f: &Fq) -> (i64, Vec<u8>) {
        if self.is_zero() {
            return (0, vec![0; len]);
        }
        let v = self.val();
        let rn: Vec<u8> = self.num.coeffs().iter().rev().copied().collect();
        let rd: Vec<u8> = self.den.coeffs().iter().rev().copied().collect();
        let inv0 = f.inv(rd[0]);
        let mut s = Vec::with_capacity(len);
        for k in 0..len {
            let mut acc = rn.get(k).copied().unwrap_or(0);
            for j in 1..=k.min(rd.len() - 1) {
                acc = f.sub(acc, f.mul(rd[j], s[k - j]));
            }
            s.push(f.mul(acc, inv0));
        }
        (v, s)
    }

    /// The finite Laurent polynomial in pi made of the terms of exponent < a.
    /// `self` minus the result lies in pi^a O.
    pub fn truncate_below(&self, a: i64, f: &Fq) -> RatFunc {
        if self.is_zero() || self.val() >= a {
            return RatFunc::zero();
        }
        let v = self.val();
        let len = (a - v) as usize;
        let (_, s) = self.pi_expansion(len, f);
        // sum_k s_k t^{-(v+k)} = (sum_k s_k t^{top - v - k}) / t^{top}
        let top = (a - 1).max(0);
        let mut c = vec![0u8; (top - v + 1) as usize];
        for (k, &x) in s.iter().enumerate() {
            c[(top - v - k as i64) as usize] = x;
        }
        RatFunc::new(Poly::from_coeffs(c), Poly::monomial(1, top as usize), f)
    }

    pub fn to_string_t(&self) -> String {
        if self.den.is_one() {
            self.num.to_string_t()
        } else {
            format!("({})/({})", self.num.to_string_t(), self.den.to_string_t())
        }
    }
}
