//! Sparse elimination over F_p, used to pick independent symbols quickly and
//! to produce solutions that are then lifted to Q and checked exactly.

use std::collections::HashMap;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use homology::Q;

pub const M61: u64 = (1 << 61) - 1;

/// Further primes for the CRT lift, all just below 2^61.
pub(crate) const PRIMES: [u64; 4] = [M61, 2305843009213693921, 2305843009213693907, 2305843009213693669];

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    let x = a as u128 * b as u128;
    if p == M61 {
        let r = (x as u64 & M61) + (x >> 61) as u64;
        if r >= M61 {
            r - M61
        } else {
            r
        }
    } else {
        (x % p as u128) as u64
    }
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

pub fn reduce_q(x: &Q, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let m = |v: &BigInt| -> u64 { v.mod_floor(&pb).try_into().unwrap() };
    let den = m(x.denom());
    (den != 0).then(|| mulmod(m(x.numer()), inv(den, p), p))
}

/// Sorted `(index, value)` pairs with values in [1, p).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModVec(pub Vec<(u32, u64)>);

impl ModVec {
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn lead(&self) -> Option<(u32, u64)> {
        self.0.last().copied()
    }

    /// self - c·o
    fn sub_scaled(&self, c: u64, o: &ModVec, p: u64) -> ModVec {
        let mut out = Vec::with_capacity(self.0.len() + o.0.len());
        let (mut i, mut j) = (0, 0);
        let neg = |v: u64| if v == 0 { 0 } else { p - v };
        while i < self.0.len() || j < o.0.len() {
            let a = self.0.get(i);
            let b = o.0.get(j);
            match (a, b) {
                (Some(&(ia, va)), Some(&(ib, _))) if ia < ib => {
                    out.push((ia, va));
                    i += 1;
                }
                (Some(&(ia, va)), Some(&(ib, vb))) if ia == ib => {
                    let v = (va + neg(mulmod(c, vb, p))) % p;
                    if v != 0 {
                        out.push((ia, v));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(&(ia, va)), None) => {
                    out.push((ia, va));
                    i += 1;
                }
                (_, Some(&(ib, vb))) => {
                    let v = neg(mulmod(c, vb, p));
                    if v != 0 {
                        out.push((ib, v));
                    }
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        ModVec(out)
    }

    fn scale(&self, c: u64, p: u64) -> ModVec {
        ModVec(self.0.iter().map(|&(i, v)| (i, mulmod(v, c, p))).collect())
    }
}

/// Row echelon form keyed by leading (largest) index, optionally tracking
/// each row as a combination of the inserted vectors that were kept.
#[derive(Clone, Debug)]
pub struct ModEchelon {
    pub p: u64,
    rows: Vec<ModVec>,
    combos: Option<Vec<ModVec>>,
    pivot: HashMap<u32, usize>,
}

impl ModEchelon {
    pub fn new(p: u64, track: bool) -> ModEchelon {
        ModEchelon { p, rows: Vec::new(), combos: track.then(Vec::new), pivot: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v`; with tracking, also returns the combination of kept
    /// vectors that was subtracted.
    pub fn reduce(&self, mut v: ModVec) -> (ModVec, ModVec) {
        let mut used = ModVec::default();
        while let Some((lead, c)) = v.lead() {
            let Some(&r) = self.pivot.get(&lead) else { break };
            v = v.sub_scaled(c, &self.rows[r], self.p);
            if let Some(cs) = &self.combos {
                // used = Σ c_r combo_r, so that v = v_in - used
                used = used.sub_scaled(self.p - c, &cs[r], self.p);
            }
        }
        (v, used)
    }

    /// Inserts `v`; returns its slot among the kept vectors when independent.
    pub fn insert(&mut self, v: ModVec) -> Option<usize> {
        let (r, used) = self.reduce(v);
        let (lead, c) = r.lead()?;
        let ci = inv(c, self.p);
        let slot = self.rows.len();
        self.pivot.insert(lead, slot);
        self.rows.push(r.scale(ci, self.p));
        if let Some(cs) = &mut self.combos {
            // r = e_slot - used
            let mut combo = ModVec(vec![(slot as u32, 1)]);
            combo = combo.sub_scaled(1, &used, self.p);
            cs.push(combo.scale(ci, self.p));
        }
        Some(slot)
    }
}

/// Solves Σ x_j s_j = y for every column y over F_p. The vectors `s` must be
/// independent mod p; returns None for a column outside their span.
pub(crate) fn solve_mod(s: &[ModVec], ys: &[ModVec], p: u64) -> Result<Vec<Option<ModVec>>, usize> {
    let mut e = ModEchelon::new(p, true);
    for (j, v) in s.iter().enumerate() {
        if e.insert(v.clone()) != Some(j) {
            return Err(j);
        }
    }
    Ok(ys
        .iter()
        .map(|y| {
            let (r, used) = e.reduce(y.clone());
            r.is_zero().then_some(used)
        })
        .collect())
}

/// The fraction a/b with |a|, |b| <= sqrt(m/2) congruent to `u` mod m, if any.
pub fn rational_reconstruction(u: &BigInt, m: &BigInt) -> Option<Q> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let qt = &r0 / &r1;
        let r2 = &r0 - &qt * &r1;
        let t2 = &t0 - &qt * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    let (num, den) = if t1.sign() == Sign::Minus { (-r1, -t1) } else { (r1, t1) };
    Some(Q::new(num, den))
}

/// Chinese remaindering of residues `a` mod `m` and `b` mod `p`.
pub(crate) fn crt(a: &BigInt, m: &BigInt, b: u64, p: u64) -> BigInt {
    let pb = BigInt::from(p);
    let am: u64 = a.mod_floor(&pb).try_into().unwrap();
    let mm: u64 = m.mod_floor(&pb).try_into().unwrap();
    let k = mulmod((b + p - am) % p, inv(mm, p), p);
    a + m * BigInt::from(k)
}
