//! Run configuration: flags, optional flat key=value file, defaults.
//! Flags win over file values. No randomness anywhere, so a `Config`
//! determines every output byte.

use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

use crate::roots::Tolerances;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Config {
    pub lambda_max: u64,
    pub line_tol: f64,
    pub root_residual_tol: f64,
    pub pairing_tol: f64,
    pub delta: f64,
    pub output_dir: PathBuf,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            lambda_max: 400,
            line_tol: crate::roots::LINE_TOL,
            root_residual_tol: crate::roots::ROOT_RESIDUAL_TOL,
            pairing_tol: crate::roots::PAIRING_TOL,
            delta: 0.5,
            output_dir: PathBuf::from("out"),
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("cannot read config file {path}: {message}")]
    Io { path: String, message: String },
    #[error("config line {line}: expected key=value, got '{text}'")]
    Malformed { line: usize, text: String },
    #[error("config line {line}: unknown key '{key}'")]
    UnknownKey { line: usize, key: String },
    #[error("config line {line}: invalid value for {key}: '{value}'")]
    InvalidValue {
        line: usize,
        key: String,
        value: String,
    },
    #[error("invalid configuration: {0}")]
    Invalid(String),
}

/// Optional per-flag overrides layered on top of file values and defaults.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub lambda_max: Option<u64>,
    pub line_tol: Option<f64>,
    pub root_residual_tol: Option<f64>,
    pub pairing_tol: Option<f64>,
    pub delta: Option<f64>,
    pub output_dir: Option<PathBuf>,
}

impl Config {
    /// Parse a flat key=value file ('#' comments and blank lines ignored;
    /// values may be double-quoted).
    pub fn from_file(path: &Path) -> Result<Config, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        let mut config = Config::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let Some((key, value)) = trimmed.split_once('=') else {
                return Err(ConfigError::Malformed {
                    line,
                    text: trimmed.to_string(),
                });
            };
            let key = key.trim();
            let value = value.trim().trim_matches('"');
            let bad = |k: &str, v: &str| ConfigError::InvalidValue {
                line,
                key: k.to_string(),
                value: v.to_string(),
            };
            match key {
                "lambda_max" => {
                    config.lambda_max = value.parse().map_err(|_| bad(key, value))?;
                }
                "line_tol" => config.line_tol = value.parse().map_err(|_| bad(key, value))?,
                "root_residual_tol" => {
                    config.root_residual_tol = value.parse().map_err(|_| bad(key, value))?;
                }
                "pairing_tol" => {
                    config.pairing_tol = value.parse().map_err(|_| bad(key, value))?;
                }
                "delta" => config.delta = value.parse().map_err(|_| bad(key, value))?,
                "output_dir" => config.output_dir = PathBuf::from(value),
                other => {
                    return Err(ConfigError::UnknownKey {
                        line,
                        key: other.to_string(),
                    })
                }
            }
        }
        Ok(config)
    }

    pub fn apply(mut self, overrides: &Overrides) -> Config {
        if let Some(v) = overrides.lambda_max {
            self.lambda_max = v;
        }
        if let Some(v) = overrides.line_tol {
            self.line_tol = v;
        }
        if let Some(v) = overrides.root_residual_tol {
            self.root_residual_tol = v;
        }
        if let Some(v) = overrides.pairing_tol {
            self.pairing_tol = v;
        }
        if let Some(v) = overrides.delta {
            self.delta = v;
        }
        if let Some(v) = &overrides.output_dir {
            self.output_dir = v.clone();
        }
        self
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.line_tol > 0.0 && self.root_residual_tol > 0.0 && self.pairing_tol > 0.0) {
            return Err(ConfigError::Invalid("tolerances must be positive".into()));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(ConfigError::Invalid(format!(
                "delta must lie in (0, 1), got {}",
                self.delta
            )));
        }
        Ok(())
    }

    pub fn tolerances(&self) -> Tolerances {
        Tolerances {
            line_tol: self.line_tol,
            root_residual_tol: self.root_residual_tol,
            pairing_tol: self.pairing_tol,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_temp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    #[test]
    fn parses_flat_key_values() {
        let f = write_temp(
            "# comment\nlambda_max = 120\ndelta=0.25\noutput_dir = \"reports\"\n\nline_tol = 1e-5\n",
        );
        let c = Config::from_file(f.path()).unwrap();
        assert_eq!(c.lambda_max, 120);
        assert_eq!(c.delta, 0.25);
        assert_eq!(c.output_dir, PathBuf::from("reports"));
        assert_eq!(c.line_tol, 1e-5);
        // untouched keys keep defaults
        assert_eq!(c.pairing_tol, 1e-9);
    }

    #[test]
    fn flags_win_over_file() {
        let f = write_temp("lambda_max = 120\n");
        let c = Config::from_file(f.path()).unwrap().apply(&Overrides {
            lambda_max: Some(80),
            ..Default::default()
        });
        assert_eq!(c.lambda_max, 80);
    }

    #[test]
    fn rejects_unknown_and_malformed() {
        let f = write_temp("lambda_midge = 3\n");
        assert!(matches!(
            Config::from_file(f.path()),
            Err(ConfigError::UnknownKey { .. })
        ));
        let f = write_temp("lambda_max\n");
        assert!(matches!(
            Config::from_file(f.path()),
            Err(ConfigError::Malformed { .. })
        ));
        let f = write_temp("delta = much\n");
        assert!(matches!(
            Config::from_file(f.path()),
            Err(ConfigError::InvalidValue { .. })
        ));
    }

    #[test]
    fn validation() {
        let mut c = Config::default();
        assert!(c.validate().is_ok());
        c.delta = 1.0;
        assert!(c.validate().is_err());
        c.delta = 0.5;
        c.line_tol = 0.0;
        assert!(c.validate().is_err());
    }
}
