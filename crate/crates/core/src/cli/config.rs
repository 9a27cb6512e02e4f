//! JSON configuration file. Every field is optional; command-line flags win
//! over the file and the file wins over built-in defaults.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub out: Option<PathBuf>,
    pub format: Option<String>,
    #[serde(default)]
    pub expand: ExpandConfig,
    #[serde(default)]
    pub compare: CompareConfig,
    #[serde(default)]
    pub solve: SolveFileConfig,
    #[serde(default)]
    pub spectrum: SpectrumConfig,
    #[serde(default)]
    pub verify: VerifyConfig,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpandConfig {
    pub target: Option<String>,
    pub iterate: Option<usize>,
    pub order: Option<usize>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompareConfig {
    pub iterate: Option<usize>,
    pub order: Option<usize>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveFileConfig {
    pub potential: Option<String>,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
    pub energy: Option<f64>,
    pub iterates: Option<usize>,
    pub z_min: Option<f64>,
    pub z_max: Option<f64>,
    pub grid_points: Option<usize>,
    pub imag_shift: Option<f64>,
    pub ode_rel_tol: Option<f64>,
    pub quadrature_order: Option<usize>,
    pub all_iterates: Option<bool>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumConfig {
    pub potential: Option<String>,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
    pub levels: Option<u32>,
    pub methods: Option<Vec<String>>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyConfig {
    pub suite: Option<String>,
    pub fixtures: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::usage(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::usage(format!("config {}: {e}", path.display())))
    }
}
