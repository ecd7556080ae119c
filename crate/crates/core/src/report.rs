//! Report emission: atomic file writes, configuration hashing, and the
//! CSV/JSON output schemas shared by the CLI subcommands.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::experiments::{CensusRow, CENSUS_CSV_HEADER};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Short hex digest of a canonically serialized configuration.
pub fn config_hash<T: Serialize>(config: &T) -> Result<String> {
    let bytes = serde_json::to_vec(config).map_err(|e| {
        crate::error::Error::Invariant(format!("config serialization failed: {e}"))
    })?;
    let digest = Sha256::digest(&bytes);
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    Ok(hex[..16].to_string())
}

/// Report header identifying the producing run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Meta {
    pub version: String,
    pub seed: u64,
    pub config_hash: String,
}

impl Meta {
    pub fn new<T: Serialize>(seed: u64, config: &T) -> Result<Self> {
        Ok(Meta {
            version: VERSION.to_string(),
            seed,
            config_hash: config_hash(config)?,
        })
    }
}

/// Fitted power law for one count series.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FitSummary {
    pub series: String,
    pub slope: f64,
    pub residual: f64,
}

/// Top-level census report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CensusReport {
    pub meta: Meta,
    pub rows: Vec<CensusRow>,
    pub fits: Vec<FitSummary>,
}

/// Write via a sibling temp file then rename, so readers never observe a
/// partial file.
pub fn atomic_write(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let stem = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| "out".into());
    let tmp = dir.join(format!(".{stem}.tmp.{}", std::process::id()));
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn census_csv(rows: &[CensusRow]) -> String {
    let mut out = String::from(CENSUS_CSV_HEADER);
    for r in rows {
        out.push_str(&r.csv_line());
    }
    out
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value)
        .map_err(|e| crate::error::Error::Invariant(format!("JSON serialization failed: {e}")))
}
