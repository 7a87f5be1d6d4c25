//! Exact cellular homology over Q for generalized simplicial complexes, with
//! relative, Borel-Moore and compact-support variants over an exhaustion.

pub mod chain;
pub mod groups;
pub mod linalg;
pub mod maps;

pub use chain::{boundary, boundary_matrix, simplex_boundary, Cells, OrientedChain};
pub use groups::{
    bm_homology, canonical_map, closed_core_cells, cohomology, cohomology_on, compact_support_cohomology, core_cells,
    homology, homology_on, relative_cohomology, relative_homology, restrict, BMResult, HomologyResult, LimitResult,
    STABLE_WINDOW,
};
pub use linalg::{q, rank_and_kernel, Echelon, SVec, SparseMatrix, Q};
pub use maps::{act, average, image_parity, pullback_ramified, pushforward, SignedAction};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum HomError {
    #[error("no core available at alpha = {0}")]
    CoreUnavailable(i64),
    #[error("chain support leaves core({0})")]
    SupportExceedsCore(i64),
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("fiber over simplex {0} exceeds the ceiling")]
    NonFiniteFiber(usize),
    #[error("missing ramification indices in degree {0}")]
    MissingRamificationData(usize),
    #[error("unknown simplex index {0}")]
    UnknownSimplex(usize),
    #[error("the limit did not stabilize on the grid")]
    NotStabilized,
}
