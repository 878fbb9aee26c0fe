mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{
    BaselineArgs, ClusterArgs, DistmatArgs, GenArgs, HydraArgs, PoolArgs, ReportArgs, TransferArgs,
};

/// Maximum independent set workbench: QAOA simulation with parameter
/// transfer and a partition-based hybrid solver.
#[derive(Parser)]
#[command(name = "hydra-mis", version)]
struct Cli {
    /// TOML file with one table per subcommand; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads for pool building, distance matrices and waves.
    #[arg(long, global = true, env = "HYDRA_MIS_WORKERS")]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate graph files.
    Gen(GenArgs),
    /// Build a training pool of optimized QAOA parameters.
    Pool(PoolArgs),
    /// Pairwise transferability over a pool.
    Distmat(DistmatArgs),
    /// Hierarchical clustering of a distance matrix.
    Cluster(ClusterArgs),
    /// Solve a graph with transferred parameters, or sweep sizes and densities.
    Transfer(TransferArgs),
    /// Run the hybrid partitioned solver.
    Hydra(HydraArgs),
    /// Classical baseline (local search, plus exact when small).
    Baseline(BaselineArgs),
    /// Tabulate run cardinalities against the baseline.
    Report(ReportArgs),
}

/// A problem with how the tool was invoked rather than with its inputs.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<UsageError>() {
            return 1;
        }
        if let Some(e) = cause.downcast_ref::<hydra_mis::Error>() {
            return match e.kind() {
                hydra_mis::ErrorKind::Data => 2,
                hydra_mis::ErrorKind::Invariant => 3,
            };
        }
    }
    2
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let table = cli.config.as_deref().map(config::load).transpose()?;
    let workers = match cli.workers {
        Some(w) => Some(w),
        None => table
            .as_ref()
            .map(config::top_level_workers)
            .transpose()?
            .flatten(),
    };
    if let Some(w) = workers {
        if w == 0 {
            anyhow::bail!(UsageError("--workers must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()?;
    }
    let t = table.as_ref();
    match cli.command {
        Command::Gen(a) => commands::gen(config::merge(a, t, "gen")?),
        Command::Pool(a) => commands::pool(config::merge(a, t, "pool")?),
        Command::Distmat(a) => commands::distmat(config::merge(a, t, "distmat")?),
        Command::Cluster(a) => commands::cluster(config::merge(a, t, "cluster")?),
        Command::Transfer(a) => commands::transfer(config::merge(a, t, "transfer")?),
        Command::Hydra(a) => commands::hydra(config::merge(a, t, "hydra")?),
        Command::Baseline(a) => commands::baseline(config::merge(a, t, "baseline")?),
        Command::Report(a) => commands::report(config::merge(a, t, "report")?),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
