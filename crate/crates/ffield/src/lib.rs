//! Exact arithmetic over F_q, F_q[t], F_q(t) and lattices over F_q[[1/t]].

mod error;
mod field;
mod lattice;
mod matrix;
mod poly;
mod ratfunc;

pub use error::FfError;
pub use field::{FieldSpec, Fq};
pub use lattice::{InfinityLattice, Splitting, DEFAULT_SERIES_CEILING};
pub use matrix::{is_weak_popov, weak_popov, PolyMatrix, WeakPopov, MAX_DIM};
pub use poly::Poly;
pub use ratfunc::RatFunc;
