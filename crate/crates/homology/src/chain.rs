use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use scomplex::{orientation_face_sign, Complex, OrientedSimplexRef};
use serde_json::{json, Value};

use crate::linalg::{SVec, SparseMatrix, Q};
use crate::HomError;

/// A finite chain of degree `degree`, keyed by simplex index, coefficients
/// relative to the canonical orientation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OrientedChain {
    pub degree: usize,
    pub coeffs: BTreeMap<usize, Q>,
}

impl OrientedChain {
    pub fn zero(degree: usize) -> Self {
        OrientedChain { degree, coeffs: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, idx: usize) -> Q {
        self.coeffs.get(&idx).cloned().unwrap_or_else(Q::zero)
    }

    /// Adds `c` to the coefficient of an oriented simplex.
    pub fn add_oriented(&mut self, s: OrientedSimplexRef, c: &Q) {
        debug_assert_eq!(s.dim, self.degree);
        let c = if s.parity < 0 { -c.clone() } else { c.clone() };
        let e = self.coeffs.entry(s.index).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&s.index);
        }
    }

    pub fn add(&self, o: &OrientedChain) -> OrientedChain {
        let mut out = self.clone();
        for (k, v) in &o.coeffs {
            out.add_oriented(OrientedSimplexRef::canonical(self.degree, *k), v);
        }
        out
    }

    pub fn scale(&self, c: &Q) -> OrientedChain {
        if c.is_zero() {
            return OrientedChain::zero(self.degree);
        }
        OrientedChain { degree: self.degree, coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    /// Coordinates over an ordered cell list (`pos` maps simplex index to slot).
    pub fn to_svec(&self, pos: &dyn Fn(usize) -> Option<usize>) -> SVec {
        SVec::from_entries(self.coeffs.iter().filter_map(|(k, v)| pos(*k).map(|p| (p, v.clone()))).collect())
    }

    pub fn from_svec(degree: usize, v: &SVec, cells: &[usize]) -> OrientedChain {
        OrientedChain { degree, coeffs: v.0.iter().map(|(p, c)| (cells[*p], c.clone())).collect() }
    }

    pub fn max_abs(&self) -> Q {
        self.coeffs.values().map(|v| v.abs()).max().unwrap_or_else(Q::zero)
    }

    /// `[[key, numerator, denominator], ...]` in key order.
    pub fn to_json(&self, c: &Complex) -> Value {
        let mut rows: Vec<(String, String, String)> = self
            .coeffs
            .iter()
            .map(|(k, v)| (c.key(self.degree, *k).to_string(), v.numer().to_string(), v.denom().to_string()))
            .collect();
        rows.sort();
        Value::Array(rows.into_iter().map(|(k, n, d)| json!([k, n, d])).collect())
    }
}

/// Selected cells of a complex per degree, with a reverse lookup.
#[derive(Clone, Debug)]
pub struct Cells {
    pub cells: Vec<Vec<usize>>,
    pos: Vec<Vec<Option<usize>>>,
}

impl Cells {
    pub fn new(c: &Complex, member: impl Fn(usize, usize) -> bool) -> Cells {
        let top = c.dim().map_or(0, |d| d + 1);
        let mut cells = Vec::with_capacity(top);
        let mut pos = Vec::with_capacity(top);
        for i in 0..top {
            let sel: Vec<usize> = (0..c.count(i)).filter(|&k| member(i, k)).collect();
            let mut p = vec![None; c.count(i)];
            for (slot, &k) in sel.iter().enumerate() {
                p[k] = Some(slot);
            }
            cells.push(sel);
            pos.push(p);
        }
        Cells { cells, pos }
    }

    pub fn all(c: &Complex) -> Cells {
        Cells::new(c, |_, _| true)
    }

    pub fn count(&self, i: usize) -> usize {
        self.cells.get(i).map_or(0, |v| v.len())
    }

    pub fn slot(&self, i: usize, idx: usize) -> Option<usize> {
        self.pos.get(i).and_then(|p| p.get(idx).copied().flatten())
    }

    pub fn chain_to_svec(&self, z: &OrientedChain) -> SVec {
        z.to_svec(&|k| self.slot(z.degree, k))
    }

    pub fn svec_to_chain(&self, i: usize, v: &SVec) -> OrientedChain {
        if i >= self.cells.len() {
            return OrientedChain::zero(i);
        }
        OrientedChain::from_svec(i, v, &self.cells[i])
    }
}

/// Boundary of one canonically oriented simplex, as full-complex indices.
pub fn simplex_boundary(c: &Complex, i: usize, idx: usize) -> OrientedChain {
    let mut out = OrientedChain::zero(i - 1);
    let nu = OrientedSimplexRef::canonical(i, idx);
    for &v in &c.simplex(i, idx).vertices {
        let f = orientation_face_sign(c, nu, v).expect("vertex of its own simplex");
        out.add_oriented(f, &Q::from_integer(1.into()));
    }
    out
}

/// Matrix of ∂_i on the selected cells; faces outside the selection are dropped.
pub fn boundary_matrix(c: &Complex, cells: &Cells, i: usize) -> SparseMatrix {
    if i == 0 {
        return SparseMatrix::zero(0, cells.count(0));
    }
    let cols = cells
        .cells
        .get(i)
        .map_or(Vec::new(), |v| v.iter().map(|&k| cells.chain_to_svec(&simplex_boundary(c, i, k))).collect());
    SparseMatrix { rows: cells.count(i - 1), cols }
}

/// ∂ of a chain on the full complex.
pub fn boundary(c: &Complex, z: &OrientedChain) -> Result<OrientedChain, HomError> {
    if z.degree == 0 {
        return Ok(OrientedChain::zero(0));
    }
    let mut out = OrientedChain::zero(z.degree - 1);
    for (k, v) in &z.coeffs {
        if *k >= c.count(z.degree) {
            return Err(HomError::UnknownSimplex(*k));
        }
        out = out.add(&simplex_boundary(c, z.degree, *k).scale(v));
    }
    Ok(out)
}
