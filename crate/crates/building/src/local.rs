use std::collections::{BTreeMap, BTreeSet, VecDeque};

use ffield::{Fq, InfinityLattice, RatFunc};
use scomplex::{Complex, ComplexBuilder};

use crate::{vertex_canonical, BuildingError, VertexKey};

/// A chain L_0 ⊋ L_1 ⊋ ... ⊋ L_i ⊋ π L_0 with L_0 as the pointed vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildingSimplex {
    pub chain: Vec<InfinityLattice>,
    pub keys: Vec<VertexKey>,
    /// Lexicographic minimum of the joined keys over the i+1 rotations.
    pub key: String,
}

/// Unpointed key of a cyclically ordered vertex list.
pub fn chain_key(keys: &[VertexKey]) -> String {
    (0..keys.len())
        .map(|r| (0..keys.len()).map(|k| keys[(r + k) % keys.len()].0.as_str()).collect::<Vec<_>>().join("~"))
        .min()
        .unwrap_or_default()
}

/// Index of the rotation achieving `chain_key`.
pub fn chain_key_rotation(keys: &[VertexKey]) -> usize {
    let n = keys.len();
    (0..n)
        .min_by_key(|&r| (0..n).map(|k| keys[(r + k) % n].0.as_str()).collect::<Vec<_>>().join("~"))
        .unwrap_or(0)
}

impl BuildingSimplex {
    pub fn new(chain: Vec<InfinityLattice>, f: &Fq) -> Result<BuildingSimplex, BuildingError> {
        if chain.is_empty() {
            return Err(BuildingError::NotAChain);
        }
        let bottom = chain[0].scale_t(-1, f);
        let mut next = chain.iter().skip(1).chain(std::iter::once(&bottom));
        for l in &chain {
            let m = next.next().unwrap();
            if !m.is_sublattice_of(l, f) || m.same_lattice(l, f) {
                return Err(BuildingError::NotAChain);
            }
        }
        let keys: Vec<VertexKey> = chain.iter().map(|l| vertex_canonical(l, f)).collect();
        let distinct: BTreeSet<&VertexKey> = keys.iter().collect();
        if distinct.len() != keys.len() {
            return Err(BuildingError::NotAChain);
        }
        let key = chain_key(&keys);
        Ok(BuildingSimplex { chain, keys, key })
    }

    pub fn dim(&self) -> usize {
        self.chain.len() - 1
    }

    /// The same simplex pointed at the vertex chosen by `chain_key`.
    pub fn canonical_rotation(&self, f: &Fq) -> BuildingSimplex {
        let r = chain_key_rotation(&self.keys);
        let n = self.chain.len();
        // members before the new base move down by π
        let chain = (0..n)
            .map(|k| {
                let j = (r + k) % n;
                if j < r {
                    self.chain[j].scale_t(-1, f)
                } else {
                    self.chain[j].clone()
                }
            })
            .collect();
        let keys = (0..n).map(|k| self.keys[(r + k) % n].clone()).collect();
        BuildingSimplex { chain, keys, key: self.key.clone() }
    }
}

/// The lattice between L and πL whose image in L/πL is spanned by `w`
/// (an RREF basis in the coordinates of L's rows).
pub fn sublattice(l: &InfinityLattice, w: &[Vec<u8>], f: &Fq) -> InfinityLattice {
    let d = l.dim();
    let rows = l.rows();
    let mut out: Vec<Vec<RatFunc>> = Vec::with_capacity(d);
    let mut pivots = Vec::new();
    for v in w {
        let p = v.iter().position(|&x| x != 0).unwrap();
        pivots.push(p);
        let mut r = vec![RatFunc::zero(); d];
        for (k, &c) in v.iter().enumerate() {
            if c != 0 {
                for (e, x) in r.iter_mut().zip(&rows[k]) {
                    *e = e.add(&x.scale(c, f), f);
                }
            }
        }
        out.push(r);
    }
    let pi = RatFunc::t_pow(-1);
    for j in (0..d).filter(|j| !pivots.contains(j)) {
        out.push(rows[j].iter().map(|x| x.mul(&pi, f)).collect());
    }
    InfinityLattice::new(out, f).expect("sublattice of a nonsingular lattice")
}

/// All vertices adjacent to `v`, each with an edge witness (L, L') where
/// L ⊋ L' ⊋ πL. The count is the number of proper nonzero subspaces of F_q^d.
pub fn neighbors(v: &VertexKey, d: usize, f: &Fq) -> Result<Vec<(VertexKey, (InfinityLattice, InfinityLattice))>, BuildingError> {
    let l = v.to_lattice(d, f)?;
    let mut out = Vec::new();
    for k in 1..d {
        for w in f.subspaces(d, k) {
            let m = sublattice(&l, &w, f);
            out.push((vertex_canonical(&m, f), (l.clone(), m)));
        }
    }
    Ok(out)
}

fn contains_subspace(big: &[Vec<u8>], small: &[Vec<u8>], f: &Fq) -> bool {
    let rows: Vec<Vec<u8>> = big.iter().chain(small).cloned().collect();
    f.rank(&rows) == big.len()
}

/// Flags W_1 ⊋ W_2 ⊋ ... of proper nonzero subspaces of F_q^d (RREF bases),
/// starting with the empty flag.
pub fn star_flags(d: usize, f: &Fq) -> Vec<Vec<Vec<Vec<u8>>>> {
    let subs: Vec<Vec<Vec<u8>>> = (1..d).rev().flat_map(|k| f.subspaces(d, k)).collect();
    // below[a] lists the subspaces strictly inside subspace a
    let below: Vec<Vec<usize>> = (0..subs.len())
        .map(|a| {
            (0..subs.len())
                .filter(|&b| subs[b].len() < subs[a].len() && contains_subspace(&subs[a], &subs[b], f))
                .collect()
        })
        .collect();
    let mut out = vec![Vec::new()];
    let mut stack: Vec<Vec<usize>> = (0..subs.len()).map(|a| vec![a]).collect();
    while let Some(path) = stack.pop() {
        out.push(path.iter().map(|&a| subs[a].clone()).collect());
        for &b in &below[*path.last().unwrap()] {
            let mut p = path.clone();
            p.push(b);
            stack.push(p);
        }
    }
    out
}

/// All simplices having `v` as a vertex, each as the vertex keys of its chain
/// L_0 = v ⊋ L_1 ⊋ ... listed from the base.
pub fn star_chains(v: &VertexKey, d: usize, f: &Fq) -> Result<Vec<Vec<VertexKey>>, BuildingError> {
    let l = v.to_lattice(d, f)?;
    let mut keys: BTreeMap<Vec<Vec<u8>>, VertexKey> = BTreeMap::new();
    let mut out = Vec::new();
    for flag in star_flags(d, f) {
        let mut chain = vec![v.clone()];
        for w in flag {
            let k = keys.entry(w.clone()).or_insert_with(|| vertex_canonical(&sublattice(&l, &w, f), f));
            chain.push(k.clone());
        }
        out.push(chain);
    }
    Ok(out)
}

/// Adds a simplex given by its cyclically ordered vertex keys, with all faces.
pub fn add_chain(b: &mut ComplexBuilder, keys: &[VertexKey]) -> String {
    let key = chain_key(keys);
    if b.contains(&key) {
        return key;
    }
    if keys.len() == 1 {
        b.vertex(&key);
        return key;
    }
    let n = keys.len();
    let mut faces = Vec::new();
    for m in 1..(1usize << n) - 1 {
        let sub: Vec<VertexKey> = (0..n).filter(|p| m >> p & 1 == 1).map(|p| keys[p].clone()).collect();
        let fk = add_chain(b, &sub);
        faces.push((sub.into_iter().map(|k| k.0).collect(), fk));
    }
    b.simplex(&key, keys.iter().map(|k| k.0.clone()).collect(), faces);
    key
}

/// Union of the closed stars of the vertices at distance < `radius` from the center.
pub fn ball(center: &VertexKey, radius: usize, d: usize, f: &Fq) -> Result<Complex, BuildingError> {
    let mut dist: BTreeMap<VertexKey, usize> = BTreeMap::new();
    dist.insert(center.clone(), 0);
    let mut queue = VecDeque::from([center.clone()]);
    let mut b = ComplexBuilder::new();
    b.vertex(&center.0);
    while let Some(v) = queue.pop_front() {
        let dv = dist[&v];
        if dv + 1 > radius {
            continue;
        }
        for chain in star_chains(&v, d, f)? {
            add_chain(&mut b, &chain);
        }
        if dv + 2 <= radius {
            for (w, _) in neighbors(&v, d, f)? {
                if !dist.contains_key(&w) {
                    dist.insert(w.clone(), dv + 1);
                    queue.push_back(w);
                }
            }
        }
    }
    Ok(b.build()?)
}
