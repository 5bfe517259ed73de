//! Campaign configuration, read from TOML and overridable from the command line.

use std::path::PathBuf;

use bethe_core::diagrams::{random_skew_shape, SkewShape};
use bethe_core::dvf::{Preset, RootSystemConfig};
use bethe_core::qarith::{parse_rat, QParameter};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use thiserror::Error;

use crate::checks::Check;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Parse(#[from] toml::de::Error),
    #[error("field `{field}`: {message}")]
    Invalid { field: &'static str, message: String },
}

fn invalid(field: &'static str, message: impl Into<String>) -> ConfigError {
    ConfigError::Invalid { field, message: message.into() }
}

/// Shapes to run shape-indexed checks on: an explicit list plus `random`
/// seeded draws inside a `max_cols × max_rows` box.
#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct ShapeSpec {
    pub list: Vec<String>,
    pub random: usize,
    pub max_cols: usize,
    pub max_rows: usize,
}

impl Default for ShapeSpec {
    fn default() -> Self {
        ShapeSpec { list: Vec::new(), random: 5, max_cols: 3, max_rows: 3 }
    }
}

/// The file format; see `docs/config.md`.
#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct CampaignConfig {
    pub preset: String,
    pub r: i32,
    pub s: i32,
    pub q: String,
    pub n_sites: usize,
    /// Root counts per color; empty means one root of every color.
    pub sector: Vec<usize>,
    pub seed: u64,
    pub shapes: ShapeSpec,
    pub checks: Vec<String>,
    /// Tolerance for floating-point checks.
    pub tol: f64,
    /// Largest `a`, `m` (or series index) visited by grid checks.
    pub grid_max: usize,
    /// Skip the Bethe-equation enforcement in the pole audit.
    pub corrupt_root: bool,
    pub out: Option<PathBuf>,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            preset: Preset::DistinguishedCovariant.name().to_string(),
            r: 1,
            s: 0,
            q: "3/2".to_string(),
            n_sites: 1,
            sector: Vec::new(),
            seed: 1,
            shapes: ShapeSpec::default(),
            checks: Vec::new(),
            tol: 1e-8,
            grid_max: 4,
            corrupt_root: false,
            out: None,
        }
    }
}

impl CampaignConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        Ok(toml::from_str(text)?)
    }

    pub fn load(path: &std::path::Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.to_path_buf(), source })?;
        Self::from_toml(&text)
    }

    pub fn validate(&self) -> Result<Campaign, ConfigError> {
        let preset: Preset = self.preset.parse().map_err(|e: bethe_core::dvf::DvfError| invalid("preset", e.to_string()))?;
        let root_cfg = RootSystemConfig::new(preset, self.r, self.s).map_err(|e| invalid("r/s", e.to_string()))?;
        let q_val = parse_rat(&self.q).ok_or_else(|| invalid("q", format!("{:?} is not a rational", self.q)))?;
        let q = QParameter::new(q_val).map_err(|e| invalid("q", e.to_string()))?;
        if !(self.tol > 0.0) {
            return Err(invalid("tol", "must be positive"));
        }
        let colors = root_cfg.colors();
        let sector = if self.sector.is_empty() { vec![1; colors] } else { self.sector.clone() };
        if sector.len() != colors {
            return Err(invalid("sector", format!("needs {colors} entries, got {}", sector.len())));
        }
        let mut shapes = Vec::new();
        for s in &self.shapes.list {
            let sh: SkewShape = s.parse().map_err(|e| invalid("shapes.list", format!("{s:?}: {e}")))?;
            if sh.is_empty() {
                return Err(invalid("shapes.list", format!("{s:?} has no cells")));
            }
            shapes.push(sh);
        }
        if self.shapes.random > 0 {
            if self.shapes.max_cols == 0 || self.shapes.max_rows == 0 {
                return Err(invalid("shapes", "max_cols and max_rows must be positive"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
            for _ in 0..self.shapes.random {
                shapes.push(random_skew_shape(&mut rng, self.shapes.max_cols, self.shapes.max_rows));
            }
        }
        let checks = self
            .checks
            .iter()
            .map(|c| c.parse::<Check>().map_err(|m| invalid("checks", m)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Campaign {
            preset,
            root_cfg,
            q,
            n_sites: self.n_sites,
            sector,
            seed: self.seed,
            shapes,
            checks,
            tol: self.tol,
            grid_max: self.grid_max,
            corrupt_root: self.corrupt_root,
        })
    }
}

/// A validated configuration.
#[derive(Clone, Debug)]
pub struct Campaign {
    pub preset: Preset,
    pub root_cfg: RootSystemConfig,
    pub q: QParameter,
    pub n_sites: usize,
    pub sector: Vec<usize>,
    pub seed: u64,
    pub shapes: Vec<SkewShape>,
    pub checks: Vec<Check>,
    pub tol: f64,
    pub grid_max: usize,
    pub corrupt_root: bool,
}

impl Campaign {
    pub fn r(&self) -> i32 {
        self.root_cfg.r
    }

    pub fn s(&self) -> i32 {
        self.root_cfg.s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        let c = CampaignConfig::default().validate().unwrap();
        assert_eq!(c.sector, vec![1, 1]);
        assert_eq!(c.shapes.len(), 5);
    }

    #[test]
    fn unknown_field_is_reported_with_its_line() {
        let err = CampaignConfig::from_toml("r = 1\nbogus = 2\n").unwrap_err().to_string();
        assert!(err.contains("bogus") && err.contains("line 2"), "{err}");
    }

    #[test]
    fn bad_values_name_their_field() {
        let cfg = CampaignConfig::from_toml("q = \"1\"").unwrap();
        assert!(matches!(cfg.validate(), Err(ConfigError::Invalid { field: "q", .. })));
        let cfg = CampaignConfig::from_toml("checks = [\"nope\"]").unwrap();
        assert!(matches!(cfg.validate(), Err(ConfigError::Invalid { field: "checks", .. })));
        let cfg = CampaignConfig::from_toml("sector = [1]").unwrap();
        assert!(matches!(cfg.validate(), Err(ConfigError::Invalid { field: "sector", .. })));
        let cfg = CampaignConfig::from_toml("tol = 0.0").unwrap();
        assert!(matches!(cfg.validate(), Err(ConfigError::Invalid { field: "tol", .. })));
    }

    #[test]
    fn shapes_parse() {
        let cfg = CampaignConfig::from_toml("[shapes]\nlist = [\"3,2/1\", \"2,2\"]\nrandom = 0").unwrap();
        let c = cfg.validate().unwrap();
        assert_eq!(c.shapes.len(), 2);
        assert_eq!(c.shapes[0].to_string(), "(3,2)/(1)");
    }
}
