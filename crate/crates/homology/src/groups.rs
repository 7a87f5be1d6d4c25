use num_traits::Zero;
use scomplex::{Complex, ExhaustedComplex};

use crate::chain::{boundary_matrix, Cells, OrientedChain};
use crate::linalg::{rank_and_kernel, Echelon, SVec, SparseMatrix, Q};
use crate::HomError;

/// Stabilization window length on the α grid.
pub const STABLE_WINDOW: usize = 3;

/// Homology (or cohomology) in one degree, with a basis in reduced echelon
/// form over the cell order and the data needed to take coordinates.
#[derive(Clone, Debug)]
pub struct HomologyResult {
    pub degree: usize,
    pub dimension: usize,
    pub basis: Vec<OrientedChain>,
    /// Rank of the differential leaving this degree.
    pub rank_out: usize,
    /// Rank of the differential arriving in this degree.
    pub rank_in: usize,
    pub cells: usize,
    bdry: Echelon,
    reps: Echelon,
    slots: Cells,
}

impl HomologyResult {
    fn from_matrices(degree: usize, cells: Cells, out: &SparseMatrix, inn: &SparseMatrix, n: usize) -> Self {
        let (rank_out, kernel) = rank_and_kernel(out);
        let mut bdry = Echelon::new();
        for c in &inn.cols {
            bdry.insert(c.clone());
        }
        let rank_in = bdry.len();
        let bdry = bdry.into_reduced();
        let mut reps = Echelon::new();
        for z in kernel {
            reps.insert(bdry.full_reduce(z));
        }
        let reps = reps.into_reduced();
        let basis = reps.vecs.iter().map(|v| cells.svec_to_chain(degree, v)).collect();
        HomologyResult { degree, dimension: reps.len(), basis, rank_out, rank_in, cells: n, bdry, reps, slots: cells }
    }

    /// Coordinates of the class of a cycle in `basis`; `None` if `z` is not a cycle
    /// of this complex (support outside the cells, or nonzero differential).
    pub fn coordinates(&self, z: &OrientedChain) -> Option<Vec<Q>> {
        if z.degree != self.degree || z.coeffs.keys().any(|&k| self.slots.slot(self.degree, k).is_none()) {
            return None;
        }
        let v = self.slots.chain_to_svec(z);
        self.reps.coordinates(&self.bdry.full_reduce(v))
    }

    /// Whether a cycle is a boundary.
    pub fn is_trivial(&self, z: &OrientedChain) -> bool {
        self.coordinates(z).is_some_and(|c| c.iter().all(|x| x.is_zero()))
    }

    pub fn cell_list(&self) -> &[usize] {
        self.slots.cells.get(self.degree).map_or(&[], |v| v.as_slice())
    }
}

pub fn homology_on(c: &Complex, cells: Cells, i: usize) -> HomologyResult {
    let out = boundary_matrix(c, &cells, i);
    let inn = boundary_matrix(c, &cells, i + 1);
    let n = cells.count(i);
    let inn = if i + 1 > c.dim().unwrap_or(0) { SparseMatrix::zero(n, 0) } else { inn };
    HomologyResult::from_matrices(i, cells, &out, &inn, n)
}

pub fn cohomology_on(c: &Complex, cells: Cells, i: usize) -> HomologyResult {
    let n = cells.count(i);
    let out = if i + 1 > c.dim().unwrap_or(0) {
        SparseMatrix::zero(0, n)
    } else {
        boundary_matrix(c, &cells, i + 1).transpose()
    };
    let inn = if i == 0 { SparseMatrix::zero(n, 0) } else { boundary_matrix(c, &cells, i).transpose() };
    HomologyResult::from_matrices(i, cells, &out, &inn, n)
}

pub fn homology(c: &Complex, i: usize) -> HomologyResult {
    homology_on(c, Cells::all(c), i)
}

/// Homology of the pair (C, A) where `in_a` marks the simplices of the subcomplex A.
pub fn relative_homology(c: &Complex, in_a: impl Fn(usize, usize) -> bool, i: usize) -> HomologyResult {
    homology_on(c, Cells::new(c, |d, k| !in_a(d, k)), i)
}

pub fn cohomology(c: &Complex, i: usize) -> HomologyResult {
    cohomology_on(c, Cells::all(c), i)
}

pub fn relative_cohomology(c: &Complex, in_a: impl Fn(usize, usize) -> bool, i: usize) -> HomologyResult {
    cohomology_on(c, Cells::new(c, |d, k| !in_a(d, k)), i)
}

pub fn core_cells(e: &ExhaustedComplex, alpha: i64) -> Cells {
    Cells::new(&e.complex, |d, k| e.in_core(d, k, alpha))
}

/// Core simplices all of whose faces are in the core: a finite subcomplex.
pub fn closed_core_cells(e: &ExhaustedComplex, alpha: i64) -> Cells {
    let c = &e.complex;
    Cells::new(c, |d, k| {
        let s = c.simplex(d, k);
        (1..=s.full_mask()).all(|m| e.in_core(m.count_ones() as usize - 1, s.faces[m], alpha))
    })
}

/// Per-α data for an inverse (homology) or direct (cohomology) system over the grid.
#[derive(Clone, Debug)]
pub struct LimitResult {
    pub degree: usize,
    pub grid: Vec<i64>,
    pub dims: Vec<usize>,
    /// `transition_ranks[k]` is the rank of the map between grid points k and k+1.
    pub transition_ranks: Vec<usize>,
    pub stabilized: bool,
    /// The stable rank of the transitions, when stabilized.
    pub dimension: Option<usize>,
    /// Per-α groups; the last one carries the stabilized basis.
    pub levels: Vec<HomologyResult>,
}

pub type BMResult = LimitResult;

impl LimitResult {
    pub fn top(&self) -> &HomologyResult {
        self.levels.last().expect("nonempty grid")
    }
}

fn grid_upto(e: &ExhaustedComplex, alpha_max: i64) -> Result<Vec<i64>, HomError> {
    if alpha_max > e.alpha_max() {
        return Err(HomError::CoreUnavailable(alpha_max));
    }
    let g: Vec<i64> = e.grid.iter().copied().filter(|&a| a <= alpha_max).collect();
    if g.is_empty() {
        return Err(HomError::CoreUnavailable(alpha_max));
    }
    Ok(g)
}

fn frontier_empty(e: &ExhaustedComplex, lo: i64) -> bool {
    e.theta.iter().all(|t| t.iter().all(|&x| x < lo))
}

fn stabilization(e: &ExhaustedComplex, grid: &[i64], dims: &[usize], ranks: &[usize], stable_from: i64) -> Option<usize> {
    if frontier_empty(e, grid[0]) {
        return Some(*dims.last().unwrap());
    }
    if grid.len() < STABLE_WINDOW {
        return None;
    }
    let w = grid.len() - STABLE_WINDOW;
    if grid[w] <= stable_from {
        return None;
    }
    let d = &dims[w..];
    let r = &ranks[w..];
    (d.iter().all(|&x| x == d[0]) && r.iter().all(|&x| x == r[0])).then(|| r[0])
}

fn rank_of(coords: impl Iterator<Item = Vec<Q>>) -> usize {
    let mut e = Echelon::new();
    coords
        .filter(|c| e.insert(SVec::from_entries(c.iter().cloned().enumerate().collect())).is_some())
        .count()
}

/// Borel-Moore homology as the inverse limit of H_i(X, X^(α)) over the grid.
pub fn bm_homology(e: &ExhaustedComplex, i: usize, alpha_max: i64, stable_from: i64) -> Result<BMResult, HomError> {
    let grid = grid_upto(e, alpha_max)?;
    let levels: Vec<HomologyResult> = grid.iter().map(|&a| homology_on(&e.complex, core_cells(e, a), i)).collect();
    let dims: Vec<usize> = levels.iter().map(|h| h.dimension).collect();
    let mut ranks = Vec::new();
    for k in 0..grid.len().saturating_sub(1) {
        let (lo, hi) = (&levels[k], &levels[k + 1]);
        let coords = hi.basis.iter().map(|z| {
            let r = restrict(z, |idx| e.in_core(i, idx, grid[k]));
            lo.coordinates(&r).expect("restriction of a relative cycle is a relative cycle")
        });
        ranks.push(rank_of(coords));
    }
    let dimension = stabilization(e, &grid, &dims, &ranks, stable_from);
    Ok(LimitResult { degree: i, grid, dims, transition_ranks: ranks, stabilized: dimension.is_some(), dimension, levels })
}

/// Compact-support cohomology as the direct limit of H^i(X, X^(α)) over the grid.
pub fn compact_support_cohomology(
    e: &ExhaustedComplex,
    i: usize,
    alpha_max: i64,
    stable_from: i64,
) -> Result<LimitResult, HomError> {
    let grid = grid_upto(e, alpha_max)?;
    let levels: Vec<HomologyResult> = grid.iter().map(|&a| cohomology_on(&e.complex, core_cells(e, a), i)).collect();
    let dims: Vec<usize> = levels.iter().map(|h| h.dimension).collect();
    let mut ranks = Vec::new();
    for k in 0..grid.len().saturating_sub(1) {
        let (lo, hi) = (&levels[k], &levels[k + 1]);
        // extension by zero is the identity on keys
        let coords = lo.basis.iter().map(|z| hi.coordinates(z).expect("extension by zero of a relative cocycle"));
        ranks.push(rank_of(coords));
    }
    let dimension = stabilization(e, &grid, &dims, &ranks, stable_from);
    Ok(LimitResult { degree: i, grid, dims, transition_ranks: ranks, stabilized: dimension.is_some(), dimension, levels })
}

pub fn restrict(z: &OrientedChain, keep: impl Fn(usize) -> bool) -> OrientedChain {
    OrientedChain { degree: z.degree, coeffs: z.coeffs.iter().filter(|(k, _)| keep(**k)).map(|(k, v)| (*k, v.clone())).collect() }
}

/// The class of a finitely supported cycle in H_i(X, X^(α)) for every grid
/// point α at or above `alpha`, as coordinates in each level's basis.
pub fn canonical_map(bm: &BMResult, e: &ExhaustedComplex, z: &OrientedChain, alpha: i64) -> Result<Vec<(i64, Vec<Q>)>, HomError> {
    if z.coeffs.keys().any(|&k| !e.in_core(z.degree, k, alpha)) {
        return Err(HomError::SupportExceedsCore(alpha));
    }
    let mut out = Vec::new();
    for (a, h) in bm.grid.iter().zip(&bm.levels) {
        if *a < alpha {
            continue;
        }
        out.push((*a, h.coordinates(z).ok_or(HomError::NotACycle)?));
    }
    Ok(out)
}
