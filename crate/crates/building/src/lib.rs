//! The Bruhat-Tits building of PGL_d over F_q((1/t)): vertex keys, local
//! structure, apartments and their fundamental chains.

mod apartment;
mod local;
mod vertex;

pub use apartment::{
    apartment_orientation, apartment_simplex, fundamental_chain, parse_point, point_lattice, small_lift,
    step_permutation, window_top_simplices, ApartmentOrientation, ApartmentPoint, ApartmentWindow,
};
pub use local::{
    add_chain, ball, chain_key, chain_key_rotation, neighbors, star_chains, star_flags, sublattice, BuildingSimplex,
};
pub use vertex::{hermite_form, vertex_canonical, VertexKey};

#[derive(Debug, thiserror::Error)]
pub enum BuildingError {
    #[error(transparent)]
    Field(#[from] ffield::FfError),
    #[error(transparent)]
    Complex(#[from] scomplex::ScError),
    #[error("point set has no small lift")]
    NotSmall,
    #[error("basis is singular")]
    SingularBasis,
    #[error("expected a top simplex, got {0} points")]
    WrongDimension(usize),
    #[error("lattices do not form a chain")]
    NotAChain,
    #[error("malformed vertex key {0}")]
    BadKey(String),
    #[error("apartment map is not injective on the window")]
    NotInjective,
}
