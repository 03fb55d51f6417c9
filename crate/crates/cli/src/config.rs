//! Run configuration: built-in defaults, then an optional JSON file, then flags.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Json,
    Csv,
    Pretty,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CliConfig {
    pub q: f64,
    /// Pass threshold on relative residuals in `verify`; transforms also
    /// truncate their output windows at `min(tol, 1e-12)`.
    pub tol: f64,
    /// Most lattice points any bilateral sum or transform output may use.
    pub max_window: usize,
    pub output_format: OutputFormat,
}

impl Default for CliConfig {
    fn default() -> Self {
        CliConfig {
            q: 0.5,
            tol: 1e-8,
            max_window: 400,
            output_format: OutputFormat::Pretty,
        }
    }
}

/// Flag values that override the file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub q: Option<f64>,
    pub tol: Option<f64>,
    pub max_window: Option<usize>,
    pub output_format: Option<OutputFormat>,
}

impl CliConfig {
    pub fn load(path: Option<&Path>, flags: &Overrides) -> Result<Self, CliError> {
        let mut cfg = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?;
                serde_json::from_str(&text)
                    .map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?
            }
            None => CliConfig::default(),
        };
        if let Some(q) = flags.q {
            cfg.q = q;
        }
        if let Some(t) = flags.tol {
            cfg.tol = t;
        }
        if let Some(m) = flags.max_window {
            cfg.max_window = m;
        }
        if let Some(f) = flags.output_format {
            cfg.output_format = f;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        if !(self.q > 0.0 && self.q < 1.0) {
            return Err(CliError::Config(format!(
                "q must lie in (0, 1), got {}",
                self.q
            )));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(CliError::Config(format!(
                "tol must be positive, got {}",
                self.tol
            )));
        }
        if self.max_window < 16 {
            return Err(CliError::Config(format!(
                "max_window must be at least 16, got {}",
                self.max_window
            )));
        }
        Ok(())
    }

    pub fn base(&self) -> qhankel::QBase {
        qhankel::QBase::new(self.q).expect("validated")
    }

    /// Window for bilateral sums in identity checks.
    pub fn sum_window(&self) -> qhankel::Window {
        qhankel::Window::Auto {
            tol: 1e-14,
            max_points: self.max_window,
        }
    }

    pub fn transform_window(&self) -> qhankel::Window {
        qhankel::Window::Auto {
            tol: self.tol.min(1e-12),
            max_points: self.max_window,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let dir = std::env::temp_dir().join(format!("qhankel-cfg-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("cfg.json");
        std::fs::write(&path, r#"{"q": 0.3, "tol": 1e-6}"#).unwrap();
        let cfg = CliConfig::load(
            Some(&path),
            &Overrides {
                tol: Some(1e-9),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!((cfg.q, cfg.tol, cfg.max_window), (0.3, 1e-9, 400));
        std::fs::write(&path, r#"{"q": 0.3, "colour": 1}"#).unwrap();
        assert!(CliConfig::load(Some(&path), &Overrides::default()).is_err());
        assert!(CliConfig::load(
            None,
            &Overrides {
                max_window: Some(8),
                ..Default::default()
            }
        )
        .is_err());
        assert!(CliConfig::load(
            None,
            &Overrides {
                q: Some(1.0),
                ..Default::default()
            }
        )
        .is_err());
        std::fs::remove_dir_all(dir).unwrap();
    }
}
