//! Contraction benchmark: times the direct summation against the
//! train-based pipeline on zero-mean unit-variance Gaussian tensors.
//!
//! Cases are the order-3/4/5 shapes `20x20x20`, `20x20x20x5` and
//! `20x20x20x5x4`, contracted along the first mode of each operand. Every
//! timed region excludes file I/O and random generation; the train timing
//! covers permutation, both decompositions and the train fusion, with the
//! decomposition span also reported separately. The loop is strictly
//! single-threaded so the two methods compete on equal terms.

use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use ttcp_core::{tcp, tt_svd, ttcp_from_tt, ContractionSpec, Shape, Tensor64};

use crate::{CliError, CliResult};

/// Which route produced a record.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Tcp,
    Ttcp,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Tcp => "tcp",
            Method::Ttcp => "ttcp",
        }
    }
}

/// One timed trial.
#[derive(Clone, Debug)]
pub struct BenchmarkRecord {
    pub case_label: String,
    pub x_shape: Vec<usize>,
    pub y_shape: Vec<usize>,
    pub method: Method,
    pub epsilon: f64,
    pub trial: u32,
    pub wall_time_seconds: f64,
    pub ttcp_decomposition_seconds: f64,
    pub max_rel_error_vs_oracle: f64,
}

/// CSV row layout; also used by tests to read the file back.
#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct CsvRow {
    pub case: String,
    pub order: usize,
    pub method: String,
    pub epsilon: f64,
    pub trial: String,
    pub wall_time_s: f64,
    pub ttd_time_s: f64,
    pub rel_err: f64,
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub orders: Vec<u32>,
    pub seed: u64,
    pub epsilon: f64,
    pub trials: u32,
}

/// Shape of the benchmark case for one tensor order.
pub fn case_shape(order: u32) -> CliResult<Vec<usize>> {
    match order {
        3 => Ok(vec![20, 20, 20]),
        4 => Ok(vec![20, 20, 20, 5]),
        5 => Ok(vec![20, 20, 20, 5, 4]),
        other => Err(CliError::Usage(format!(
            "order {other} has no benchmark case; choose from 3,4,5"
        ))),
    }
}

fn case_label(dims: &[usize]) -> String {
    dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("x")
}

fn median(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.total_cmp(b));
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

fn rel_frobenius_err(got: &Tensor64, want: &Tensor64) -> f64 {
    let diff: f64 = got
        .data()
        .iter()
        .zip(want.data())
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt();
    diff / want.frobenius_norm()
}

/// Runs the benchmark and writes the CSV to `out`. Returns the trial
/// records (summary rows appear only in the file).
pub fn run_bench(cfg: &BenchConfig, out: &Path) -> CliResult<Vec<BenchmarkRecord>> {
    if cfg.orders.is_empty() {
        return Err(CliError::Usage("no benchmark orders selected".into()));
    }
    if cfg.trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    for &order in &cfg.orders {
        case_shape(order)?;
    }
    if cfg.epsilon < 0.0 {
        return Err(CliError::Usage("epsilon must be non-negative".into()));
    }

    let mut records = Vec::new();
    for &order in &cfg.orders {
        let dims = case_shape(order)?;
        let label = case_label(&dims);
        let shape = Shape::new(dims.clone()).map_err(CliError::from)?;
        // Operand seeds derive from the base seed so every (order, operand)
        // pair draws an independent, reproducible stream.
        let x = Tensor64::random_gaussian(shape.clone(), cfg.seed.wrapping_add(2 * order as u64));
        let y = Tensor64::random_gaussian(shape, cfg.seed.wrapping_add(2 * order as u64 + 1));
        let spec = ContractionSpec::new(1, 1);

        let mut oracle: Option<Tensor64> = None;
        for trial in 1..=cfg.trials {
            drop(oracle.take()); // free the previous result before re-timing
            let t0 = Instant::now();
            let z = tcp(&x, &y, 1, 1).map_err(CliError::from)?;
            let wall = t0.elapsed().as_secs_f64();
            oracle = Some(z);
            records.push(BenchmarkRecord {
                case_label: label.clone(),
                x_shape: dims.clone(),
                y_shape: dims.clone(),
                method: Method::Tcp,
                epsilon: cfg.epsilon,
                trial,
                wall_time_seconds: wall,
                ttcp_decomposition_seconds: 0.0,
                max_rel_error_vs_oracle: 0.0,
            });
        }
        let oracle = oracle.expect("at least one trial ran");

        let identity_perm: Vec<usize> = (1..=dims.len()).collect();
        let mut fused = None;
        for trial in 1..=cfg.trials {
            drop(fused.take());
            let t0 = Instant::now();
            // Contraction along mode 1: the front permutation is the
            // identity, but the copy is still performed and timed.
            let x_rho = x.permute(&identity_perm).map_err(CliError::from)?;
            let y_rho = y.permute(&identity_perm).map_err(CliError::from)?;
            let td = Instant::now();
            let tx = tt_svd(&x_rho, cfg.epsilon).map_err(CliError::from)?;
            let ty = tt_svd(&y_rho, cfg.epsilon).map_err(CliError::from)?;
            let ttd_time = td.elapsed().as_secs_f64();
            let result = ttcp_from_tt(&tx, &ty, spec).map_err(CliError::from)?;
            let wall = t0.elapsed().as_secs_f64();
            fused = Some(result);
            records.push(BenchmarkRecord {
                case_label: label.clone(),
                x_shape: dims.clone(),
                y_shape: dims.clone(),
                method: Method::Ttcp,
                epsilon: cfg.epsilon,
                trial,
                wall_time_seconds: wall,
                ttcp_decomposition_seconds: ttd_time,
                max_rel_error_vs_oracle: 0.0,
            });
        }

        // Error column, computed once outside every timed region; trials are
        // deterministic so the maximum over trials is this single value.
        let dense = fused
            .expect("at least one trial ran")
            .to_dense()
            .map_err(CliError::from)?;
        let err = rel_frobenius_err(&dense, &oracle);
        let ttcp_rows = records.len() - cfg.trials as usize;
        for record in &mut records[ttcp_rows..] {
            record.max_rel_error_vs_oracle = err;
        }
    }

    write_csv(out, &records)?;
    Ok(records)
}

fn write_csv(out: &Path, records: &[BenchmarkRecord]) -> CliResult<()> {
    let mut writer = csv::Writer::from_path(out)
        .map_err(|e| CliError::Data(format!("{}: {e}", out.display())))?;
    let mut cases: Vec<String> = Vec::new();
    for r in records {
        if !cases.contains(&r.case_label) {
            cases.push(r.case_label.clone());
        }
        writer.serialize(CsvRow {
            case: r.case_label.clone(),
            order: r.x_shape.len(),
            method: r.method.as_str().to_string(),
            epsilon: r.epsilon,
            trial: r.trial.to_string(),
            wall_time_s: r.wall_time_seconds,
            ttd_time_s: r.ttcp_decomposition_seconds,
            rel_err: r.max_rel_error_vs_oracle,
        })?;
    }
    for case in &cases {
        for method in [Method::Tcp, Method::Ttcp] {
            let subset: Vec<&BenchmarkRecord> = records
                .iter()
                .filter(|r| &r.case_label == case && r.method == method)
                .collect();
            if subset.is_empty() {
                continue;
            }
            let walls: Vec<f64> = subset.iter().map(|r| r.wall_time_seconds).collect();
            let ttds: Vec<f64> = subset.iter().map(|r| r.ttcp_decomposition_seconds).collect();
            writer.serialize(CsvRow {
                case: case.clone(),
                order: subset[0].x_shape.len(),
                method: method.as_str().to_string(),
                epsilon: subset[0].epsilon,
                trial: "median".to_string(),
                wall_time_s: median(&walls),
                ttd_time_s: median(&ttds),
                rel_err: subset[0].max_rel_error_vs_oracle,
            })?;
        }
    }
    writer.flush().map_err(CliError::from)?;
    Ok(())
}

/// Reads a benchmark CSV back into rows (trial and summary rows alike).
pub fn read_csv(path: &Path) -> CliResult<Vec<CsvRow>> {
    let mut reader = csv::Reader::from_path(path)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    let mut rows = Vec::new();
    for row in reader.deserialize() {
        rows.push(row?);
    }
    Ok(rows)
}
