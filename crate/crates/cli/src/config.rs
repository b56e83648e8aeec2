//! Optional TOML configuration. The path comes from `BOTT_CONFIG`; flags on
//! the command line win over values in the file.

use std::path::Path;

use serde::Deserialize;

use crate::CliError;

pub const CONFIG_ENV: &str = "BOTT_CONFIG";

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Largest stage accepted by orbit and root enumeration.
    pub stage_bound: usize,
    /// Entry bound for `scan`.
    pub scan_bound: i64,
    /// Interior grid size for the integrability check.
    pub grid: u32,
    /// Bracket width for CSC-family roots.
    pub tolerance: String,
    /// Step for `csc-family` sweeps.
    pub sweep: String,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            stage_bound: bott_core::tower::DEFAULT_STAGE_BOUND,
            scan_bound: 5,
            grid: bott_core::almostkahler::DEFAULT_GRID,
            tolerance: "1e-12".into(),
            sweep: "0.01".into(),
        }
    }
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Parse(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Parse(format!("config {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    /// Reads the file named by `BOTT_CONFIG`, or the defaults when unset.
    pub fn from_env() -> Result<Self, CliError> {
        match std::env::var_os(CONFIG_ENV) {
            Some(p) if !p.is_empty() => Self::load(Path::new(&p)),
            _ => Ok(Config::default()),
        }
    }
}
