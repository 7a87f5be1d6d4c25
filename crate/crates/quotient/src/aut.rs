use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Mutex;

use ffield::{Fq, Poly};

use crate::level::{level_identity, level_mul, LevelMatrix, ResidueRing};
use crate::QuotientError;

/// d×d matrix over F_q, row-major.
pub type FqMatrix = Vec<u8>;

pub fn fq_mul(a: &[u8], b: &[u8], d: usize, f: &Fq) -> FqMatrix {
    let mut out = vec![0u8; d * d];
    for i in 0..d {
        for k in 0..d {
            let x = a[i * d + k];
            if x == 0 {
                continue;
            }
            for j in 0..d {
                out[i * d + j] = f.add(out[i * d + j], f.mul(x, b[k * d + j]));
            }
        }
    }
    out
}

/// Row space of `rows` times `a`, in RREF.
pub fn act_subspace(rows: &[Vec<u8>], a: &[u8], d: usize, f: &Fq) -> Vec<Vec<u8>> {
    let moved: Vec<Vec<u8>> = rows
        .iter()
        .map(|r| (0..d).map(|j| (0..d).fold(0u8, |s, k| f.add(s, f.mul(r[k], a[k * d + j])))).collect())
        .collect();
    f.rref_basis(&moved)
}

/// The image of Aut(F) for split F of type n (descending) in
/// GL_d(F_q) × GL_d(A/f): an automorphism g, entry (i,j) of degree at most
/// n_j - n_i, goes to (coefficients of t^{n_j - n_i}, g mod f). The first
/// factor acts on the fiber at ∞, the second on level structures.
#[derive(Debug)]
pub struct EffectiveGroup {
    pub n: Vec<i64>,
    pub elements: Vec<(FqMatrix, LevelMatrix)>,
    /// Distinct level parts, with the index of each inverse.
    image: Vec<LevelMatrix>,
    inverse: Vec<usize>,
    /// Fiber parts over each level part.
    fibers: HashMap<LevelMatrix, Vec<FqMatrix>>,
    /// h -> (min of h·image, the b in image reaching it)
    cosets: Mutex<HashMap<LevelMatrix, (LevelMatrix, LevelMatrix)>>,
}

fn generators(n: &[i64], f: &Fq, r: &ResidueRing) -> Vec<(FqMatrix, LevelMatrix)> {
    let d = n.len();
    let id_a: FqMatrix = (0..d * d).map(|k| u8::from(k / d == k % d)).collect();
    let id_b = level_identity(d, r);
    let mut out = HashSet::new();
    for u in f.units() {
        for i in 0..d {
            let mut a = id_a.clone();
            a[i * d + i] = u;
            let mut b = id_b.clone();
            b[i * d + i] = r.encode(&Poly::constant(u), f);
            out.insert((a, b));
        }
    }
    for i in 0..d {
        for j in 0..d {
            if i == j || n[j] < n[i] {
                continue;
            }
            let top = (n[j] - n[i]) as usize;
            // degrees past deg f + top coefficient give nothing new
            let ks: Vec<usize> = (0..=top).filter(|&k| k == top || k <= r.degree()).collect();
            for &k in &ks {
                for c in f.units() {
                    let mut a = id_a.clone();
                    if k == top {
                        a[i * d + j] = c;
                    }
                    let mut b = id_b.clone();
                    b[i * d + j] = r.encode(&Poly::monomial(c, k), f);
                    out.insert((a, b));
                }
            }
        }
    }
    let mut v: Vec<_> = out.into_iter().collect();
    v.sort();
    v
}

impl EffectiveGroup {
    pub fn new(n: &[i64], f: &Fq, r: &ResidueRing, ceiling: usize) -> Result<EffectiveGroup, QuotientError> {
        let d = n.len();
        let gens = generators(n, f, r);
        let id: (FqMatrix, LevelMatrix) = ((0..d * d).map(|k| u8::from(k / d == k % d)).collect(), level_identity(d, r));
        let mut seen = HashSet::from([id.clone()]);
        let mut elements = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = (fq_mul(&x.0, &g.0, d, f), level_mul(&x.1, &g.1, d, r));
                if seen.insert(y.clone()) {
                    if seen.len() > ceiling {
                        return Err(QuotientError::AutGroupTooLarge { size: seen.len(), ceiling });
                    }
                    elements.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        elements.sort();
        let mut fibers: HashMap<LevelMatrix, Vec<FqMatrix>> = HashMap::new();
        for (a, b) in &elements {
            fibers.entry(b.clone()).or_default().push(a.clone());
        }
        let mut image: Vec<LevelMatrix> = fibers.keys().cloned().collect();
        image.sort();
        let index: HashMap<&LevelMatrix, usize> = image.iter().enumerate().map(|(k, b)| (b, k)).collect();
        let one = level_identity(d, r);
        let inverse = image
            .iter()
            .map(|b| {
                // the power just before b^k = 1
                let mut prev = one.clone();
                let mut x = b.clone();
                while x != one {
                    prev = x.clone();
                    x = level_mul(&x, b, d, r);
                }
                index[&prev]
            })
            .collect();
        Ok(EffectiveGroup { n: n.to_vec(), elements, image, inverse, fibers, cosets: Mutex::new(HashMap::new()) })
    }

    /// The least element of the coset h·image and some b with h·b equal to it.
    pub fn coset_min(&self, h: &[u16], r: &ResidueRing) -> (LevelMatrix, LevelMatrix) {
        if let Some(x) = self.cosets.lock().unwrap().get(h) {
            return x.clone();
        }
        let d = self.n.len();
        let orbit: Vec<LevelMatrix> = self.image.iter().map(|b| level_mul(h, b, d, r)).collect();
        let m = (0..orbit.len()).min_by(|&a, &b| orbit[a].cmp(&orbit[b])).unwrap();
        let mut table = self.cosets.lock().unwrap();
        // h·b reaches the minimum through b^{-1}·b_m
        for (k, x) in orbit.iter().enumerate() {
            let b = level_mul(&self.image[self.inverse[k]], &self.image[m], d, r);
            table.insert(x.clone(), (orbit[m].clone(), b));
        }
        table[h].clone()
    }

    /// Fiber parts of the elements with level part b.
    pub fn fiber(&self, b: &[u16]) -> &[FqMatrix] {
        self.fibers.get(b).map_or(&[], |v| &v[..])
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements whose fiber part fixes every subspace of the flag.
    pub fn flag_stabilizer(&self, flag: &[Vec<Vec<u8>>], f: &Fq) -> Vec<&(FqMatrix, LevelMatrix)> {
        let d = self.n.len();
        self.elements.iter().filter(|(a, _)| flag.iter().all(|w| act_subspace(w, a, d, f) == *w)).collect()
    }

    /// Number of distinct level parts.
    pub fn level_image_size(&self) -> usize {
        self.image.len()
    }

    /// Number of distinct fiber parts.
    pub fn fiber_image_size(&self) -> usize {
        self.elements.iter().map(|e| &e.0).collect::<HashSet<_>>().len()
    }
}

/// |GL_m(F_q)|
fn gl_order(m: u32, q: u128) -> u128 {
    (0..m).map(|i| q.pow(m) - q.pow(i)).product()
}

/// |Aut(F)| for F = ⊕ O(n_i): Levi blocks of equal n times a unipotent part of
/// dimension Σ_{n_j > n_i} (n_j - n_i + 1). None on overflow.
pub fn aut_order(n: &[i64], q: u32) -> Option<u128> {
    let q = q as u128;
    let mut order: u128 = 1;
    let mut k = 0;
    while k < n.len() {
        let m = n[k..].iter().take_while(|&&x| x == n[k]).count();
        order = order.checked_mul(gl_order(m as u32, q))?;
        k += m;
    }
    for &a in n {
        for &b in n {
            if b > a {
                order = order.checked_mul(q.checked_pow((b - a + 1) as u32)?)?;
            }
        }
    }
    Some(order)
}
