//! Batch entry point: configuration, the four commands, reports, and the
//! acceptance suite.

pub mod acceptance;
mod commands;
mod config;
pub mod parse;
mod report;

pub use commands::{cmd_homology, cmd_modsym, cmd_quotient, cmd_verify, run, Command, Outcome};
pub use config::{Format, RunConfig, DIMENSION_BUDGET};
pub use report::{Report, VERSION};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration: {0}")]
    Config(String),
    #[error("io: {0}")]
    Io(String),
    #[error(transparent)]
    Quotient(#[from] quotient::QuotientError),
    #[error(transparent)]
    Homology(#[from] homology::HomError),
    #[error(transparent)]
    Modsym(#[from] modsym::ModsymError),
    #[error("{what} not stabilized up to alpha_max = {alpha_max}")]
    NotStabilized { what: String, alpha_max: i64 },
    #[error("check failed: {0}")]
    Check(String),
}

impl CliError {
    /// 3 for ceilings, 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        let ceiling = match self {
            CliError::Quotient(e) => e.is_ceiling(),
            CliError::Modsym(e) => e.is_ceiling(),
            _ => false,
        };
        if ceiling {
            3
        } else {
            2
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::Io(_) => "io",
            CliError::NotStabilized { .. } => "not_stabilized",
            CliError::Check(_) => "check_failed",
            _ if self.exit_code() == 3 => "ceiling",
            _ => "computation",
        }
    }
}
