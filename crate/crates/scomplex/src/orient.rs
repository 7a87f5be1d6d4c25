use crate::{Complex, ScError};

/// An orientation of a simplex: `parity` is +1 for the class of the ascending
/// vertex-key ordering and -1 for the other class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrientedSimplexRef {
    pub dim: usize,
    pub index: usize,
    pub parity: i8,
}

impl OrientedSimplexRef {
    pub fn canonical(dim: usize, index: usize) -> Self {
        OrientedSimplexRef { dim, index, parity: 1 }
    }

    pub fn flip(self) -> Self {
        OrientedSimplexRef { parity: -self.parity, ..self }
    }
}

/// Sign of the permutation sorting `xs` (entries pairwise distinct).
pub fn permutation_parity<T: Ord>(xs: &[T]) -> i8 {
    let mut inv = 0usize;
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            if xs[i] > xs[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The orientation class of a simplex given by an ordering of its vertices.
pub fn orientation_of_ordering(
    c: &Complex,
    dim: usize,
    index: usize,
    ordering: &[usize],
) -> Result<OrientedSimplexRef, ScError> {
    let s = c.simplex(dim, index);
    let mut sorted = ordering.to_vec();
    sorted.sort_unstable();
    if sorted != s.vertices {
        return Err(ScError::NotASubset(s.key.clone()));
    }
    Ok(OrientedSimplexRef { dim, index, parity: permutation_parity(ordering) })
}

/// A representative ordering of the orientation class `nu`.
pub fn lift(c: &Complex, nu: OrientedSimplexRef) -> Vec<usize> {
    let mut l = c.simplex(nu.dim, nu.index).vertices.clone();
    if nu.parity < 0 {
        l.swap(0, 1);
    }
    l
}

/// `s_v(nu)`: pick a lift of `nu`, drop `v`, weight by `(-1)^p` where `p` is the
/// 1-based position of `v` in the lift, and read off the class on the face.
pub fn orientation_face_sign(c: &Complex, nu: OrientedSimplexRef, v: usize) -> Result<OrientedSimplexRef, ScError> {
    if nu.dim == 0 {
        return Err(ScError::ZeroDimensional);
    }
    let s = c.simplex(nu.dim, nu.index);
    let l = lift(c, nu);
    let p = l
        .iter()
        .position(|&w| w == v)
        .ok_or_else(|| ScError::VertexNotInSimplex(c.vertex_key(v).to_string(), s.key.clone()))?;
    let rest: Vec<usize> = l.iter().copied().filter(|&w| w != v).collect();
    let pos = s.vertices.iter().position(|&w| w == v).unwrap();
    let face = c.drop_position(nu.dim, nu.index, pos);
    let sign = if (p + 1) % 2 == 0 { 1 } else { -1 };
    Ok(OrientedSimplexRef { dim: nu.dim - 1, index: face, parity: sign * permutation_parity(&rest) })
}
