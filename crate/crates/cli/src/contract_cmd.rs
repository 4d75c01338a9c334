//! File-based contraction: read two `TT1` tensors, contract them with either
//! method, and write the dense result as `TT1`. The train method also writes
//! the merged train as `TTD1` next to the output.

use std::path::{Path, PathBuf};

use ttcp_core::io::{read_tensor, write_tensor, write_train};
use ttcp_core::{tcp, ttcp, ContractionSpec};

use crate::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContractMethod {
    Tcp,
    Ttcp,
}

#[derive(Clone, Debug)]
pub struct ContractConfig {
    pub x_path: PathBuf,
    pub y_path: PathBuf,
    pub n: usize,
    pub m: usize,
    pub epsilon: f64,
    pub method: ContractMethod,
    pub out: PathBuf,
}

/// Sibling path carrying the merged train: the output path with a `ttd1`
/// extension.
pub fn train_path(out: &Path) -> PathBuf {
    out.with_extension("ttd1")
}

pub fn run_contract(cfg: &ContractConfig) -> CliResult<()> {
    let x = read_tensor(&cfg.x_path)?;
    let y = read_tensor(&cfg.y_path)?;
    match cfg.method {
        ContractMethod::Tcp => {
            let z = tcp(&x, &y, cfg.n, cfg.m)?;
            write_tensor(&cfg.out, &z)?;
        }
        ContractMethod::Ttcp => {
            let result = ttcp(&x, &y, ContractionSpec::new(cfg.n, cfg.m), cfg.epsilon)?;
            let z = result.to_dense()?;
            write_tensor(&cfg.out, &z)?;
            match result.merged_train() {
                Some(train) => write_train(train_path(&cfg.out), train)?,
                None => log::warn!(
                    "no train to write: an operand of order < 2 used the direct fallback"
                ),
            }
        }
    }
    Ok(())
}

impl std::str::FromStr for ContractMethod {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tcp" => Ok(ContractMethod::Tcp),
            "ttcp" => Ok(ContractMethod::Ttcp),
            other => Err(CliError::Usage(format!("unknown method {other:?}; use tcp or ttcp"))),
        }
    }
}
