use ffield::{Fq, Poly, PolyMatrix};

use crate::QuotientError;

/// Largest residue ring A/f handled with multiplication tables.
pub const MAX_RING: usize = 1024;

/// A/f for monic f, elements coded as Σ c_k q^k over the coefficients of the
/// reduced representative. f = 1 gives the zero ring with the single code 0.
#[derive(Clone, Debug)]
pub struct ResidueRing {
    pub modulus: Poly,
    q: usize,
    m: usize,
    size: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
}

impl ResidueRing {
    pub fn new(modulus: &Poly, f: &Fq) -> Result<ResidueRing, QuotientError> {
        if modulus.is_zero() || !modulus.is_monic() {
            return Err(QuotientError::BadLevel(modulus.to_string_t()));
        }
        let q = f.q() as usize;
        let m = modulus.deg().unwrap();
        let size = q.checked_pow(m as u32).filter(|&s| s <= MAX_RING).ok_or(QuotientError::Ceiling(format!(
            "residue ring of size {q}^{m} exceeds {MAX_RING}"
        )))?;
        let mut r = ResidueRing { modulus: modulus.clone(), q, m, size, add: vec![], mul: vec![], neg: vec![] };
        let polys: Vec<Poly> = (0..size).map(|c| r.decode(c as u16)).collect();
        r.add = Vec::with_capacity(size * size);
        r.mul = Vec::with_capacity(size * size);
        for a in &polys {
            for b in &polys {
                r.add.push(r.encode(&a.add(b, f), f));
                r.mul.push(r.encode(&a.mul(b, f), f));
            }
        }
        r.neg = polys.iter().map(|a| r.encode(&a.neg(f), f)).collect();
        Ok(r)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// deg f; zero for full level.
    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn encode(&self, p: &Poly, f: &Fq) -> u16 {
        if self.m == 0 {
            return 0;
        }
        let r = p.rem(&self.modulus, f);
        (0..self.m).rev().fold(0usize, |acc, k| acc * self.q + r.coeff(k) as usize) as u16
    }

    pub fn decode(&self, c: u16) -> Poly {
        let mut c = c as usize;
        let mut coeffs = Vec::with_capacity(self.m);
        for _ in 0..self.m {
            coeffs.push((c % self.q) as u8);
            c /= self.q;
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn one(&self) -> u16 {
        u16::from(self.m > 0)
    }

    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.size + b as usize]
    }

    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.size + b as usize]
    }

    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg[b as usize])
    }

    /// The constant c in F_q, if `a` is one.
    pub fn as_constant(&self, a: u16) -> Option<u8> {
        if self.m == 0 {
            return Some(1);
        }
        ((a as usize) < self.q).then_some(a as u8)
    }

    /// Hex digits of the coefficients, lowest first.
    pub fn label(&self, a: u16) -> String {
        let mut c = a as usize;
        (0..self.m)
            .map(|_| {
                let d = c % self.q;
                c /= self.q;
                char::from_digit(d as u32, 16).unwrap()
            })
            .collect()
    }
}

/// A d×d matrix over A/f, row-major.
pub type LevelMatrix = Vec<u16>;

pub fn level_identity(d: usize, r: &ResidueRing) -> LevelMatrix {
    (0..d * d).map(|k| if k / d == k % d { r.one() } else { 0 }).collect()
}

pub fn level_mul(a: &[u16], b: &[u16], d: usize, r: &ResidueRing) -> LevelMatrix {
    let mut out = vec![0u16; d * d];
    for i in 0..d {
        for k in 0..d {
            let x = a[i * d + k];
            if x == 0 {
                continue;
            }
            for j in 0..d {
                let y = r.mul(x, b[k * d + j]);
                out[i * d + j] = r.add(out[i * d + j], y);
            }
        }
    }
    out
}

pub fn level_reduce(g: &PolyMatrix, r: &ResidueRing, f: &Fq) -> LevelMatrix {
    g.rows.iter().flat_map(|row| row.iter().map(|p| r.encode(p, f))).collect()
}

pub fn level_det(a: &[u16], d: usize, r: &ResidueRing) -> u16 {
    if d == 1 {
        return a[0];
    }
    // Laplace expansion along the first row; d <= 6
    let mut acc = 0u16;
    for j in 0..d {
        let minor: Vec<u16> = (1..d).flat_map(|i| (0..d).filter(move |&c| c != j).map(move |c| (i, c))).map(|(i, c)| a[i * d + c]).collect();
        let term = r.mul(a[j], level_det(&minor, d - 1, r));
        acc = if j % 2 == 0 { r.add(acc, term) } else { r.sub(acc, term) };
    }
    acc
}

/// Hex label of a level matrix: rows joined by '.'.
pub fn level_label(a: &[u16], d: usize, r: &ResidueRing) -> String {
    if r.degree() == 0 {
        return String::new();
    }
    (0..d)
        .map(|i| (0..d).map(|j| r.label(a[i * d + j])).collect::<Vec<_>>().join(":"))
        .collect::<Vec<_>>()
        .join(".")
}

/// G_I: matrices over A/f whose determinant is a nonzero constant.
pub fn level_group(d: usize, r: &ResidueRing, ceiling: usize) -> Result<Vec<LevelMatrix>, QuotientError> {
    let total = (r.size() as u128).checked_pow((d * d) as u32);
    if total.map_or(true, |t| t > ceiling as u128) {
        return Err(QuotientError::Ceiling(format!("enumerating {}^{} level matrices", r.size(), d * d)));
    }
    let total = total.unwrap() as usize;
    let mut out = Vec::new();
    let mut m = vec![0u16; d * d];
    for code in 0..total {
        let mut c = code;
        for x in m.iter_mut() {
            *x = (c % r.size()) as u16;
            c /= r.size();
        }
        if matches!(r.as_constant(level_det(&m, d, r)), Some(c) if c != 0) {
            out.push(m.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_and_group_sizes() {
        let f = Fq::standard(2).unwrap();
        let r = ResidueRing::new(&Poly::t(), &f).unwrap();
        assert_eq!(r.size(), 2);
        assert_eq!(level_group(2, &r, 1 << 20).unwrap().len(), 6);
        let full = ResidueRing::new(&Poly::one(), &f).unwrap();
        assert_eq!(level_group(3, &full, 1 << 20).unwrap().len(), 1);
        // t^2 + t + 1 over F_2: A/f = F_4, G_I = {det in F_2^x} = SL_2(F_4)
        let g = ResidueRing::new(&Poly::from_coeffs(vec![1, 1, 1]), &f).unwrap();
        assert_eq!(level_group(2, &g, 1 << 20).unwrap().len(), 60);
        // t^2 over F_2: dets must be the constant 1
        let h = ResidueRing::new(&Poly::from_coeffs(vec![0, 0, 1]), &f).unwrap();
        let a = h.encode(&Poly::t(), &f);
        assert_eq!(h.mul(a, a), 0);
        assert_eq!(level_group(2, &h, 1 << 20).unwrap().len(), 48);
    }
}
