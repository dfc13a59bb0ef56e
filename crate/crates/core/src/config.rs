//! Run configuration read from a TOML file. Command-line flags take
//! precedence over the file, and the file over built-in defaults.

use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub q: Option<usize>,
    pub tau: Option<String>,
    pub interval: Option<String>,
    pub seed: Option<u64>,
    pub format: Option<String>,
    pub tol: Option<f64>,
    pub samples: Option<u64>,
    pub threads: Option<usize>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io { path: path.display().to_string(), source: e })?;
        Self::parse(&text).map_err(|e| match e {
            Error::InvalidArgument(m) => Error::InvalidArgument(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| Error::InvalidArgument(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        if let Some(q) = self.q {
            if q < 3 {
                return Err(Error::InvalidQ(q));
            }
        }
        if let Some(t) = self.tol {
            if !(t > 0.0) {
                return Err(Error::InvalidArgument("config: tol must be positive".into()));
            }
        }
        Ok(())
    }
}
