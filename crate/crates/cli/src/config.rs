//! Flat key-value configuration files.
//!
//! Format: one `key = value` pair per line, `#` comments, blank lines
//! ignored.  Documented keys: `mass_kg`, `charge_C`, `radius_m`, `n`,
//! `flux_Wb`, `omega_rad_s`, `solenoid_radius_m`, `turns_per_m`, `current_A`.

use std::collections::BTreeMap;
use std::path::Path;

use ringfloquet::model::{DriveConfig, RingConfig};

use crate::CliError;

/// Parsed physical configuration plus the raw pairs for the run manifest.
pub struct PhysicalConfig {
    pub ring: RingConfig,
    pub drive: DriveConfig,
    pub raw: BTreeMap<String, String>,
}

pub fn load(path: &Path) -> Result<PhysicalConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
    let mut raw = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::usage(format!(
                "{}:{}: expected `key = value`, got `{line}`",
                path.display(),
                lineno + 1
            ))
        })?;
        raw.insert(key.trim().to_string(), value.trim().to_string());
    }

    let get = |key: &str| -> Result<f64, CliError> {
        raw.get(key)
            .ok_or_else(|| CliError::usage(format!("config is missing `{key}`")))?
            .parse::<f64>()
            .map_err(|e| CliError::usage(format!("config key `{key}`: {e}")))
    };
    let get_or = |key: &str, default: f64| -> Result<f64, CliError> {
        match raw.get(key) {
            None => Ok(default),
            Some(v) => v
                .parse::<f64>()
                .map_err(|e| CliError::usage(format!("config key `{key}`: {e}"))),
        }
    };

    let n: i64 = raw
        .get("n")
        .ok_or_else(|| CliError::usage("config is missing `n`"))?
        .parse()
        .map_err(|e| CliError::usage(format!("config key `n`: {e}")))?;

    let ring = RingConfig::new(get("mass_kg")?, get("charge_C")?, get("radius_m")?, n)
        .map_err(CliError::from_core)?;
    let drive = DriveConfig::with_windings(
        get("flux_Wb")?,
        get("omega_rad_s")?,
        get("solenoid_radius_m")?,
        get_or("turns_per_m", 0.0)?,
        get_or("current_A", 0.0)?,
    )
    .map_err(CliError::from_core)?;
    Ok(PhysicalConfig { ring, drive, raw })
}
