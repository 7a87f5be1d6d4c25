//! Arithmetic quotients of the building by GL_d(F_q[t]) and its principal
//! congruence subgroups, through split bundles on P^1 with level structure.

mod aut;
mod build;
mod canon;
mod hn;
mod level;
mod levelmap;

pub use aut::{act_subspace, aut_order, fq_mul, EffectiveGroup, FqMatrix};
pub use build::{quotient_complex, simplex_level, types_up_to, vertex_levels, Quotient, QuotientSimplex, QuotientVertex};
pub use canon::{
    flag_label, type_label, CanonSimplex, Canonicalizer, Pointed, QuotientParams, DEFAULT_AUT_CEILING,
    DEFAULT_ENUM_CEILING,
};
pub use hn::{delta_p, hn_flag, hn_polygon, rank_over_ratfunc, same_span, vertex_level, BundleClass, HnFlag, HnPolygon};
pub use level::{
    level_det, level_group, level_identity, level_label, level_mul, level_reduce, LevelMatrix, ResidueRing, MAX_RING,
};
pub use levelmap::{level_action, level_map, LevelMap};

#[derive(Debug, thiserror::Error)]
pub enum QuotientError {
    #[error(transparent)]
    Field(#[from] ffield::FfError),
    #[error(transparent)]
    Complex(#[from] scomplex::ScError),
    #[error(transparent)]
    Building(#[from] building::BuildingError),
    #[error("invalid level polynomial {0}")]
    BadLevel(String),
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("not a lattice chain")]
    BadChain,
    #[error("automorphism group has more than {ceiling} elements (reached {size})")]
    AutGroupTooLarge { size: usize, ceiling: usize },
    #[error("enumeration ceiling exceeded: {0}")]
    Ceiling(String),
    #[error("index {0} is not in the support of the polygon")]
    NotInSupport(usize),
    #[error("level {0} does not divide level {1}")]
    LevelsIncompatible(String, String),
    #[error("{0}")]
    Internal(String),
}

impl QuotientError {
    /// Ceiling errors as opposed to computational ones.
    pub fn is_ceiling(&self) -> bool {
        matches!(
            self,
            QuotientError::AutGroupTooLarge { .. }
                | QuotientError::Ceiling(_)
                | QuotientError::Field(ffield::FfError::PrecisionExceeded { .. })
        )
    }
}
