//! Operation-count table over a `(I, N, R)` grid, written as CSV with exact
//! decimal integers (the direct-contraction counts overflow machine words).

use std::path::Path;

use serde::{Deserialize, Serialize};
use ttcp_core::complexity::{speedup_ratio, tcp_ops_uniform, ttcp_ops, ttd_ops};

use crate::{CliError, CliResult};

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct OpsRow {
    #[serde(rename = "I")]
    pub i: usize,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "R")]
    pub r: usize,
    pub tcp_ops: String,
    pub ttcp_ops: String,
    pub ttd_ops: String,
    pub speedup: String,
}

#[derive(Clone, Debug)]
pub struct OpsTableConfig {
    pub dims: Vec<usize>,
    pub orders: Vec<usize>,
    pub ranks: Vec<usize>,
}

/// Evaluates the four count models on the full grid and writes one CSV row
/// per `(I, N, R)` point.
pub fn run_ops_table(cfg: &OpsTableConfig, out: &Path) -> CliResult<Vec<OpsRow>> {
    if cfg.dims.is_empty() || cfg.orders.is_empty() || cfg.ranks.is_empty() {
        return Err(CliError::Usage("dimension, order and rank grids must be non-empty".into()));
    }
    if cfg.dims.iter().chain(&cfg.orders).chain(&cfg.ranks).any(|&v| v == 0) {
        return Err(CliError::Usage("grid values must be positive".into()));
    }

    let mut rows = Vec::new();
    for &i in &cfg.dims {
        for &n in &cfg.orders {
            for &r in &cfg.ranks {
                rows.push(OpsRow {
                    i,
                    n,
                    r,
                    tcp_ops: tcp_ops_uniform(i, n).to_string(),
                    ttcp_ops: ttcp_ops(i, r, r).to_string(),
                    ttd_ops: ttd_ops(i, n, r).to_string(),
                    speedup: speedup_ratio(i, n, r).to_string(),
                });
            }
        }
    }

    let mut writer = csv::Writer::from_path(out)
        .map_err(|e| CliError::Data(format!("{}: {e}", out.display())))?;
    for row in &rows {
        writer.serialize(row)?;
    }
    writer.flush().map_err(CliError::from)?;
    Ok(rows)
}

/// Reads an ops-table CSV back into rows.
pub fn read_csv(path: &Path) -> CliResult<Vec<OpsRow>> {
    let mut reader = csv::Reader::from_path(path)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    let mut rows = Vec::new();
    for row in reader.deserialize() {
        rows.push(row?);
    }
    Ok(rows)
}
