//! Modular symbols: images of apartment classes in the Borel-Moore homology of
//! a level quotient, the span test against the image of ordinary homology,
//! and the automorphic table of a relative class.

mod export;
mod modp;
mod span;
mod symbol;

pub use export::{automorphic_csv, automorphic_export, seminorm_exponent, ExportRow, SeminormExponent};
pub use modp::{rational_reconstruction, ModEchelon, ModVec, M61};
pub use span::{
    generators_of_degree, homology_image, span_test, Generator, GeneratorPolicy, ImageMatrix, SpanCertificate,
    SpanStatus,
};
pub use symbol::{basis_degree, modular_symbol, CollarCertificate, ModularSymbol, SymbolOptions, SymbolPlan};

#[derive(Debug, thiserror::Error)]
pub enum ModsymError {
    #[error(transparent)]
    Quotient(#[from] quotient::QuotientError),
    #[error(transparent)]
    Homology(#[from] homology::HomError),
    #[error(transparent)]
    Field(#[from] ffield::FfError),
    #[error("basis is singular")]
    SingularBasis,
    #[error("bad shape: {0}")]
    Shape(String),
    #[error("alpha = {0} is outside the assembled window")]
    AlphaOutOfRange(i64),
    #[error("collar check failed at radius {radius}: shell reaches theta {min_theta}, need {required}")]
    CollarCheckFailed { radius: i64, min_theta: i64, required: i64 },
    #[error("symbol at alpha = {0} is not a relative cycle")]
    NotRelativeCycle(i64),
    #[error("the Borel-Moore limit has not stabilized at alpha = {0}")]
    NotStabilized(i64),
    #[error("more than {0} generators requested")]
    GeneratorCeiling(usize),
    #[error("bad simplex point: {0}")]
    BadSimplexPoint(String),
    #[error("{0}")]
    Internal(String),
}

impl ModsymError {
    pub fn is_ceiling(&self) -> bool {
        match self {
            ModsymError::Quotient(e) => e.is_ceiling(),
            ModsymError::CollarCheckFailed { .. } | ModsymError::GeneratorCeiling(_) => true,
            _ => false,
        }
    }
}

impl From<building::BuildingError> for ModsymError {
    fn from(e: building::BuildingError) -> Self {
        match e {
            building::BuildingError::SingularBasis => ModsymError::SingularBasis,
            building::BuildingError::Field(f) => ModsymError::Field(f),
            other => ModsymError::Internal(other.to_string()),
        }
    }
}
