use std::path::Path;

use anyhow::{bail, Context, Result};
use num_complex::Complex64;
use qplane::scalars::{declare_indeterminates, Assignment, DEFAULT_TOLERANCE};
use qplane::search::Mode;
use serde::{Deserialize, Serialize};

/// Defaults shared by all subcommands, read from the file named by
/// `QPLANE_CONFIG` (or `--config`). Command-line flags take precedence.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct JobConfig {
    pub mode: Mode,
    /// Real value of `q` for numeric mode.
    pub q: f64,
    pub tolerance: f64,
    pub indeterminates: Vec<String>,
    #[serde(rename = "N")]
    pub degree_bound: i64,
    #[serde(rename = "B")]
    pub box_bound: i64,
    pub seed: u64,
}

impl Default for JobConfig {
    fn default() -> Self {
        JobConfig {
            mode: Mode::Exact,
            q: 1.4,
            tolerance: DEFAULT_TOLERANCE,
            indeterminates: Vec::new(),
            degree_bound: qplane::verifier::DEFAULT_DEGREE_BOUND,
            box_bound: 3,
            seed: 0,
        }
    }
}

impl JobConfig {
    pub fn load(path: Option<&Path>) -> Result<JobConfig> {
        let cfg = match path {
            None => JobConfig::default(),
            Some(p) => {
                let text = std::fs::read_to_string(p).with_context(|| format!("reading config {}", p.display()))?;
                serde_json::from_str(&text).with_context(|| format!("parsing config {}", p.display()))?
            }
        };
        cfg.validate()?;
        declare_indeterminates(&cfg.indeterminates)?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.degree_bound < 1 {
            bail!("N must be at least 1, got {}", self.degree_bound);
        }
        if self.box_bound < 1 {
            bail!("B must be at least 1, got {}", self.box_bound);
        }
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            bail!("tolerance must be positive");
        }
        if self.mode == Mode::Numeric {
            Assignment::new(Complex64::new(self.q, 0.0)).context("numeric q")?;
        }
        Ok(())
    }
}
