//! Sparse exact linear algebra over Q. Vectors are sorted `(index, value)`
//! lists without zeros; the leading entry of a vector is its largest index.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SVec(pub Vec<(usize, Q)>);

impl SVec {
    pub fn new() -> SVec {
        SVec(Vec::new())
    }

    pub fn unit(i: usize) -> SVec {
        SVec(vec![(i, Q::one())])
    }

    /// Builds from unsorted entries, summing duplicates and dropping zeros.
    pub fn from_entries(mut e: Vec<(usize, Q)>) -> SVec {
        e.sort_by_key(|x| x.0);
        let mut out: Vec<(usize, Q)> = Vec::with_capacity(e.len());
        for (i, v) in e {
            match out.last_mut() {
                Some((j, w)) if *j == i => *w += v,
                _ => out.push((i, v)),
            }
        }
        out.retain(|(_, v)| !v.is_zero());
        SVec(out)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn lead(&self) -> Option<usize> {
        self.0.last().map(|x| x.0)
    }

    pub fn get(&self, i: usize) -> Q {
        match self.0.binary_search_by_key(&i, |x| x.0) {
            Ok(k) => self.0[k].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    pub fn scale(&self, c: &Q) -> SVec {
        if c.is_zero() {
            return SVec::new();
        }
        SVec(self.0.iter().map(|(i, v)| (*i, v * c)).collect())
    }

    /// `self + c * o`.
    pub fn axpy(&self, c: &Q, o: &SVec) -> SVec {
        if c.is_zero() {
            return self.clone();
        }
        let (a, b) = (&self.0, &o.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut x, mut y) = (0, 0);
        while x < a.len() || y < b.len() {
            if y == b.len() || (x < a.len() && a[x].0 < b[y].0) {
                out.push(a[x].clone());
                x += 1;
            } else if x == a.len() || b[y].0 < a[x].0 {
                out.push((b[y].0, c * &b[y].1));
                y += 1;
            } else {
                let s = &a[x].1 + c * &b[y].1;
                if !s.is_zero() {
                    out.push((a[x].0, s));
                }
                x += 1;
                y += 1;
            }
        }
        SVec(out)
    }

    pub fn dot(&self, o: &SVec) -> Q {
        let mut s = Q::zero();
        let (mut x, mut y) = (0, 0);
        while x < self.0.len() && y < o.0.len() {
            match self.0[x].0.cmp(&o.0[y].0) {
                std::cmp::Ordering::Less => x += 1,
                std::cmp::Ordering::Greater => y += 1,
                std::cmp::Ordering::Equal => {
                    s += &self.0[x].1 * &o.0[y].1;
                    x += 1;
                    y += 1;
                }
            }
        }
        s
    }

    /// Keeps entries whose index passes `keep`, renumbered by `map`.
    pub fn restrict(&self, map: impl Fn(usize) -> Option<usize>) -> SVec {
        SVec::from_entries(self.0.iter().filter_map(|(i, v)| map(*i).map(|j| (j, v.clone()))).collect())
    }
}

/// Column-sparse matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: Vec<SVec>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, ncols: usize) -> SparseMatrix {
        SparseMatrix { rows, cols: vec![SVec::new(); ncols] }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t: Vec<Vec<(usize, Q)>> = vec![Vec::new(); self.rows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in &c.0 {
                t[*i].push((j, v.clone()));
            }
        }
        SparseMatrix { rows: self.cols.len(), cols: t.into_iter().map(SVec).collect() }
    }

    pub fn apply(&self, x: &SVec) -> SVec {
        let mut out = SVec::new();
        for (j, v) in &x.0 {
            out = out.axpy(v, &self.cols[*j]);
        }
        out
    }

    pub fn mul(&self, o: &SparseMatrix) -> SparseMatrix {
        SparseMatrix { rows: self.rows, cols: o.cols.iter().map(|c| self.apply(c)).collect() }
    }

    /// `row col num/den` lines, 0-based.
    pub fn to_triplets(&self) -> String {
        let mut s = format!("% {} {}\n", self.rows, self.cols.len());
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in &c.0 {
                s.push_str(&format!("{i} {j} {v}\n"));
            }
        }
        s
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new();
        self.cols.iter().filter(|c| e.insert((*c).clone()).is_some()).count()
    }
}

/// Vectors in echelon form with distinct leading indices, leading entry 1.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pub vecs: Vec<SVec>,
    pivot_of: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Echelon {
        Echelon::default()
    }

    pub fn len(&self) -> usize {
        self.vecs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vecs.is_empty()
    }

    pub fn pivot(&self, i: usize) -> Option<usize> {
        self.pivot_of.get(&i).copied()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.vecs.iter().map(|v| v.lead().unwrap()).collect()
    }

    /// Eliminates leading entries until the lead is not a pivot.
    pub fn reduce(&self, mut v: SVec) -> SVec {
        while let Some((p, a)) = v.0.last() {
            let Some(&k) = self.pivot_of.get(p) else { break };
            let c = -a.clone();
            v = v.axpy(&c, &self.vecs[k]);
        }
        v
    }

    /// Eliminates every entry sitting at a pivot position.
    pub fn full_reduce(&self, mut v: SVec) -> SVec {
        let mut cursor = usize::MAX;
        loop {
            let hit = v.0.iter().rev().find(|(i, _)| *i < cursor && self.pivot_of.contains_key(i)).cloned();
            let Some((p, a)) = hit else { break };
            v = v.axpy(&(-a), &self.vecs[self.pivot_of[&p]]);
            cursor = p;
        }
        v
    }

    /// Adds a vector if independent; returns its slot.
    pub fn insert(&mut self, v: SVec) -> Option<usize> {
        let v = self.reduce(v);
        let (p, a) = v.0.last()?.clone();
        let v = v.scale(&a.recip());
        self.vecs.push(v);
        self.pivot_of.insert(p, self.vecs.len() - 1);
        Some(self.vecs.len() - 1)
    }

    /// Reduced echelon form sorted by pivot, each vector zero at the other pivots.
    pub fn into_reduced(self) -> Echelon {
        let mut vecs = self.vecs;
        vecs.sort_by_key(|v| v.lead().unwrap());
        let mut out = Echelon::new();
        for v in vecs {
            let v = out.full_reduce(v);
            // earlier vectors lead below p, so they are already zero there
            let p = v.lead().unwrap();
            out.vecs.push(v);
            out.pivot_of.insert(p, out.vecs.len() - 1);
        }
        out
    }

    /// Coordinates of `v` in a reduced echelon basis, or `None` when outside the span.
    pub fn coordinates(&self, v: &SVec) -> Option<Vec<Q>> {
        let c: Vec<Q> = self.vecs.iter().map(|b| v.get(b.lead().unwrap())).collect();
        let mut r = v.clone();
        for (k, b) in self.vecs.iter().enumerate() {
            r = r.axpy(&(-c[k].clone()), b);
        }
        r.is_zero().then_some(c)
    }
}

/// Rank of a matrix and a kernel basis (as coefficient vectors over its columns).
pub fn rank_and_kernel(m: &SparseMatrix) -> (usize, Vec<SVec>) {
    let mut stored: Vec<(SVec, SVec)> = Vec::new();
    let mut pivot_of: HashMap<usize, usize> = HashMap::new();
    let mut kernel = Vec::new();
    for (j, col) in m.cols.iter().enumerate() {
        let mut v = col.clone();
        let mut t = SVec::unit(j);
        while let Some((p, a)) = v.0.last() {
            let Some(&k) = pivot_of.get(p) else { break };
            let c = -a.clone();
            v = v.axpy(&c, &stored[k].0);
            t = t.axpy(&c, &stored[k].1);
        }
        match v.0.last() {
            None => kernel.push(t),
            Some((p, a)) => {
                let inv = a.recip();
                pivot_of.insert(*p, stored.len());
                stored.push((v.scale(&inv), t.scale(&inv)));
            }
        }
    }
    (stored.len(), kernel)
}
