use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ttcp_cli::bench::{run_bench, BenchConfig};
use ttcp_cli::contract_cmd::{run_contract, ContractConfig, ContractMethod};
use ttcp_cli::ops_table::{run_ops_table, OpsTableConfig};
use ttcp_cli::CliResult;

/// Dense tensor contraction with a tensor-train fast path.
#[derive(Parser)]
#[command(name = "ttcp", version, about, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Time the direct contraction against the train-based contraction on
    /// Gaussian tensors of orders 3-5 and write one CSV row per trial plus
    /// a median summary row per case and method.
    Bench {
        /// Tensor orders to benchmark (subset of 3,4,5).
        #[arg(long, value_delimiter = ',', default_value = "3,4,5")]
        orders: Vec<u32>,
        /// Base seed for the Gaussian operands.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Decomposition accuracy used by the train method.
        #[arg(long, default_value_t = 1e-10)]
        eps: f64,
        /// Timed repetitions per case and method.
        #[arg(long, default_value_t = 5)]
        trials: u32,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Write the exact operation-count table over an (I, N, R) grid:
    /// direct contraction, train kernel, decomposition overhead and the
    /// integer speedup ratio.
    OpsTable {
        /// Uniform mode dimensions I.
        #[arg(long, value_delimiter = ',', default_value = "10,100,1000")]
        dims: Vec<usize>,
        /// Tensor orders N.
        #[arg(long, value_delimiter = ',', default_value = "3,4,5")]
        orders: Vec<usize>,
        /// Train ranks R.
        #[arg(long, value_delimiter = ',', default_value = "2,5")]
        ranks: Vec<usize>,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Contract two TT1 tensor files along one mode pair and write the
    /// dense result as TT1; the ttcp method also writes the merged train
    /// as TTD1 beside the output.
    Contract {
        /// Left operand (TT1 file).
        #[arg(long)]
        x: PathBuf,
        /// Right operand (TT1 file).
        #[arg(long)]
        y: PathBuf,
        /// Contracted mode of x (1-based).
        #[arg(short, long)]
        n: usize,
        /// Contracted mode of y (1-based).
        #[arg(short, long)]
        m: usize,
        /// Decomposition accuracy for the ttcp method.
        #[arg(long, default_value_t = 0.0)]
        eps: f64,
        /// Contraction route.
        #[arg(long, value_enum, default_value_t = MethodArg::Ttcp)]
        method: MethodArg,
        /// Output TT1 path.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Tcp,
    Ttcp,
}

fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Bench { orders, seed, eps, trials, out } => {
            let cfg = BenchConfig { orders, seed, epsilon: eps, trials };
            run_bench(&cfg, &out)?;
            Ok(())
        }
        Command::OpsTable { dims, orders, ranks, out } => {
            let cfg = OpsTableConfig { dims, orders, ranks };
            run_ops_table(&cfg, &out)?;
            Ok(())
        }
        Command::Contract { x, y, n, m, eps, method, out } => {
            let cfg = ContractConfig {
                x_path: x,
                y_path: y,
                n,
                m,
                epsilon: eps,
                method: match method {
                    MethodArg::Tcp => ContractMethod::Tcp,
                    MethodArg::Ttcp => ContractMethod::Ttcp,
                },
                out,
            };
            run_contract(&cfg)
        }
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
