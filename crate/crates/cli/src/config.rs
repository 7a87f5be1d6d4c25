use std::path::{Path, PathBuf};

use ffield::{FieldSpec, Fq};
use quotient::{QuotientParams, DEFAULT_AUT_CEILING, DEFAULT_ENUM_CEILING};
use serde::{Deserialize, Serialize};

use crate::parse::parse_poly;
use crate::CliError;

/// Upper bound on d·log2(q); beyond it the local enumerations explode.
pub const DIMENSION_BUDGET: f64 = 16.0;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub q: u32,
    pub d: usize,
    /// Monic level polynomial in t, e.g. "t^2+t+1"; "1" is full level.
    pub level: String,
    pub alpha_max: i64,
    pub d_gen: u32,
    pub aut_ceiling: usize,
    pub enum_ceiling: usize,
    pub series_ceiling: i64,
    pub generator_ceiling: usize,
    pub out_dir: Option<PathBuf>,
    pub format: Format,
    /// `homology` on a finite complex in text form instead of a quotient.
    pub complex_file: Option<PathBuf>,
    pub basis_file: Option<PathBuf>,
    /// Run the span test in `modsym`.
    pub span: bool,
    /// Criteria for `verify`; all of them when absent.
    pub criteria: Option<Vec<usize>>,
    pub golden_dir: Option<PathBuf>,
    /// Add wall-clock timing to reports, which makes them non-reproducible.
    pub timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            q: 2,
            d: 2,
            level: "1".into(),
            alpha_max: 5,
            d_gen: 2,
            aut_ceiling: DEFAULT_AUT_CEILING,
            enum_ceiling: DEFAULT_ENUM_CEILING,
            series_ceiling: ffield::DEFAULT_SERIES_CEILING,
            generator_ceiling: 20_000_000,
            out_dir: None,
            format: Format::Json,
            complex_file: None,
            basis_file: None,
            span: true,
            criteria: None,
            golden_dir: None,
            timing: false,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<RunConfig, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn field(&self) -> Result<Fq, CliError> {
        let spec = FieldSpec::standard(self.q).map_err(|e| CliError::Config(e.to_string()))?;
        Fq::new(spec).map_err(|e| CliError::Config(e.to_string()))
    }

    /// Coefficients of the level polynomial, lowest first.
    pub fn level_coeffs(&self) -> Result<Vec<u32>, CliError> {
        let f = self.field()?;
        let p = parse_poly(&self.level, &f).map_err(|e| CliError::Config(format!("level: {e}")))?;
        if p.is_zero() || !p.is_monic() {
            return Err(CliError::Config(format!("level {:?} must be a nonzero monic polynomial", self.level)));
        }
        Ok(p.coeffs().iter().map(|&c| c as u32).collect())
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.field()?;
        if self.d < 1 || self.d > ffield::MAX_DIM {
            return Err(CliError::Config(format!("d = {} outside 1..={}", self.d, ffield::MAX_DIM)));
        }
        if self.d as f64 * (self.q as f64).log2() > DIMENSION_BUDGET {
            return Err(CliError::Config(format!("d log2 q exceeds the budget {DIMENSION_BUDGET}")));
        }
        if self.alpha_max < 1 {
            return Err(CliError::Config("alpha_max must be positive".into()));
        }
        if self.aut_ceiling == 0 || self.enum_ceiling == 0 || self.series_ceiling <= 0 || self.generator_ceiling == 0 {
            return Err(CliError::Config("ceilings must be positive".into()));
        }
        self.level_coeffs()?;
        Ok(())
    }

    /// Quotient parameters truncated at `alpha_max`.
    pub fn params(&self, alpha_max: i64) -> Result<QuotientParams, CliError> {
        self.validate()?;
        let p = QuotientParams {
            field: FieldSpec::standard(self.q).map_err(|e| CliError::Config(e.to_string()))?,
            d: self.d,
            level: self.level_coeffs()?,
            alpha_max,
            aut_ceiling: self.aut_ceiling,
            enum_ceiling: self.enum_ceiling,
            series_ceiling: self.series_ceiling,
        };
        p.validate().map_err(|e| CliError::Config(e.to_string()))?;
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate_and_bad_input_is_rejected() {
        let c = RunConfig::default();
        c.validate().unwrap();
        assert_eq!(c.params(5).unwrap().level, vec![1]);
        for bad in [
            RunConfig { level: "2t+1".into(), q: 3, ..c.clone() },
            RunConfig { level: "0".into(), ..c.clone() },
            RunConfig { level: "t^".into(), ..c.clone() },
            RunConfig { q: 6, ..c.clone() },
            RunConfig { d: 5, q: 16, ..c.clone() },
            RunConfig { enum_ceiling: 0, ..c.clone() },
        ] {
            assert!(matches!(bad.validate(), Err(CliError::Config(_))), "{bad:?}");
        }
        // too large a level degree surfaces from the quotient parameters
        let big = RunConfig { level: "t^4".into(), ..c.clone() };
        assert!(matches!(big.params(5), Err(CliError::Config(_))));
        let parsed: RunConfig = serde_json::from_str(r#"{"q": 3, "level": "t^2+1"}"#).unwrap();
        assert_eq!(parsed.level_coeffs().unwrap(), vec![1, 0, 1]);
        assert!(serde_json::from_str::<RunConfig>(r#"{"bogus": 1}"#).is_err());
    }
}
