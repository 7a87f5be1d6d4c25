//! Generalized simplicial complexes: simplices are identified by keys, so two
//! simplices may share a vertex set. Orientations are stored relative to the
//! ascending vertex-key order.

mod complex;
mod exhaust;
mod map;
mod orient;
mod validate;

pub use complex::{key_is_valid, strict_key, Complex, ComplexBuilder, SimplexRecord};
pub use exhaust::ExhaustedComplex;
pub use map::{check_finite_map, check_simplicial_map, FiberReport, SimplicialMap};
pub use orient::{lift, orientation_face_sign, orientation_of_ordering, permutation_parity, OrientedSimplexRef};
pub use validate::{check_anticommutation, validate_complex, Violation, ViolationKind};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ScError {
    #[error("vertex subset is not contained in {0}")]
    NotASubset(String),
    #[error("vertex {0} is not a vertex of {1}")]
    VertexNotInSimplex(String, String),
    #[error("unknown simplex {0}")]
    UnknownSimplex(String),
    #[error("face sign needs a simplex of dimension at least 1")]
    ZeroDimensional,
    #[error("simplex {0} lacks a face entry")]
    MissingFace(String),
    #[error("malformed record for {0}")]
    BadRecord(String),
    #[error("key {0:?} contains a separator or is empty")]
    BadKey(String),
    #[error("line {0}: cannot parse {1:?}")]
    Parse(usize, String),
}
