//! Run configuration shared by the library front ends.

use thiserror::Error;

use crate::stretch::{SolverKind, StretchConfig, WeightMode};

/// Environment variable overriding [`RunConfig::seed`].
pub const SEED_ENV: &str = "PSEUDOTRI_SEED";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("{SEED_ENV}={0:?} is not an unsigned integer")]
    BadSeed(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightChoice {
    Unit,
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Tutte,
    Henneberg,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    pub weights: WeightChoice,
    pub tolerance: f64,
    pub method: Method,
    pub exact: bool,
    /// Largest graph for the exponential subset checks.
    pub n_limit: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { seed: 0, weights: WeightChoice::Unit, tolerance: 1e-10, method: Method::Tutte, exact: false, n_limit: 16 }
    }
}

impl RunConfig {
    pub fn validate(self) -> Result<Self, ConfigError> {
        if self.tolerance > 0.0 {
            Ok(self)
        } else {
            Err(ConfigError::BadTolerance(self.tolerance))
        }
    }

    /// Apply the seed override from the environment, if set.
    pub fn with_env(self) -> Result<Self, ConfigError> {
        self.with_seed_override(std::env::var(SEED_ENV).ok().as_deref())
    }

    pub fn with_seed_override(mut self, value: Option<&str>) -> Result<Self, ConfigError> {
        if let Some(v) = value {
            self.seed = v.trim().parse().map_err(|_| ConfigError::BadSeed(v.to_string()))?;
        }
        Ok(self)
    }

    pub fn stretch_config(&self) -> StretchConfig {
        StretchConfig {
            weights: match self.weights {
                WeightChoice::Unit => WeightMode::Unit,
                WeightChoice::Random => WeightMode::Random { seed: self.seed },
            },
            solver: if self.exact { SolverKind::Exact } else { SolverKind::Float },
            tolerance: self.tolerance,
            ..StretchConfig::default()
        }
    }
}
