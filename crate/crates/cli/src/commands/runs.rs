use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::Args;
use hydra_mis::hydra::{solve_mis, BackendSettings, HydraConfig, SubSolver, TransferAssets};
use hydra_mis::qaoa::{DEFAULT_QUBIT_CAP, HARD_QUBIT_CAP};
use hydra_mis::solvers::{
    exact_mis_capped, ils_mis, BackendKind, ConnectivityClass, SolverBackend, DEFAULT_EXACT_CAP,
};
use hydra_mis::transfer::{ClusterModel, PredictionFile};
use hydra_mis::Solution;
use serde::{Deserialize, Serialize};

use super::{load, print_json, read_json, read_pool_file, write_file, write_json};
use crate::UsageError;

const DEFAULT_ILS_ITERATIONS: usize = 1000;

#[derive(Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct HydraArgs {
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Largest subproblem; several values run one solve each.
    #[arg(long, value_delimiter = ',')]
    cutoff: Vec<usize>,
    /// Refinement rounds after the initial solve.
    #[arg(long)]
    iters: Option<usize>,
    /// Rounds without improvement before stopping; 0 never stops early.
    #[arg(long)]
    patience: Option<usize>,
    /// Allowed partition imbalance.
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Backends: exact, greedy, local-search, qaoa, qaoa-dense, qaoa-sparse.
    #[arg(long, value_delimiter = ',')]
    roster: Vec<String>,
    /// Density at or above which a subproblem counts as dense.
    #[arg(long)]
    tau: Option<f64>,
    /// Capacity of the QAOA backends.
    #[arg(long)]
    max_qubits: Option<usize>,
    #[arg(long)]
    shots: Option<usize>,
    /// Iterations of the local-search backend.
    #[arg(long)]
    ils_iterations: Option<usize>,
    /// Pool and cluster model enabling parameter transfer for QAOA backends.
    #[arg(long, requires = "cluster")]
    pool: Option<PathBuf>,
    #[arg(long, requires = "pool")]
    cluster: Option<PathBuf>,
    #[arg(long, requires = "pool")]
    predictions: Option<PathBuf>,
    /// Process every part one after another instead of in waves.
    #[arg(long)]
    sequential: bool,
    /// Run directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn roster(
    names: &[String],
    max_qubits: usize,
    transfer: bool,
) -> anyhow::Result<Vec<SolverBackend>> {
    let qaoa_kind = if transfer {
        BackendKind::QaoaTransfer
    } else {
        BackendKind::QaoaFixed
    };
    names
        .iter()
        .map(|name| {
            let quantum = |class| {
                Ok(SolverBackend::new(
                    name.clone(),
                    qaoa_kind,
                    max_qubits,
                    class,
                )?)
            };
            match name.as_str() {
                "exact" => Ok(SolverBackend::exact()),
                "greedy" => Ok(SolverBackend::greedy()),
                "local-search" => Ok(SolverBackend::local_search()),
                "qaoa" => quantum(ConnectivityClass::Unlimited),
                "qaoa-dense" => quantum(ConnectivityClass::DenseCapable),
                "qaoa-sparse" => quantum(ConnectivityClass::SparseOnly),
                other => Err(UsageError(format!("unknown backend {other:?}")).into()),
            }
        })
        .collect()
}

#[derive(Serialize, Deserialize)]
struct RunSummary {
    graph_id: String,
    n: usize,
    m: usize,
    cutoff: usize,
    seed: u64,
    cardinality: usize,
    best_iteration: usize,
    rounds: usize,
    concurrency_metric: usize,
    stopped_early: bool,
}

pub fn hydra(a: HydraArgs) -> anyhow::Result<()> {
    let graph_path = a
        .graph
        .ok_or_else(|| UsageError("--graph is required".into()))?;
    let g = load(&graph_path)?;
    let max_qubits = a.max_qubits.unwrap_or(DEFAULT_QUBIT_CAP);
    if max_qubits > HARD_QUBIT_CAP {
        anyhow::bail!(UsageError(format!(
            "--max-qubits may not exceed {HARD_QUBIT_CAP}"
        )));
    }
    let transfer = match (&a.pool, &a.cluster) {
        (Some(pool), Some(cluster)) => Some(Arc::new(TransferAssets {
            pool: read_pool_file(pool)?,
            model: read_json::<ClusterModel>(cluster)?,
            overrides: a
                .predictions
                .as_deref()
                .map(PredictionFile::load)
                .transpose()?,
        })),
        _ => None,
    };
    let names = if a.roster.is_empty() {
        vec!["exact".to_owned()]
    } else {
        a.roster
    };
    let defaults = BackendSettings::default();
    let settings = BackendSettings {
        ils_iterations: a.ils_iterations.unwrap_or(defaults.ils_iterations),
        shots: a.shots.unwrap_or(defaults.shots),
        transfer: transfer.clone(),
        ..defaults
    };
    let solver = SubSolver::resource_aware(
        roster(&names, max_qubits, transfer.is_some())?,
        a.tau.unwrap_or(0.5),
        settings,
    )?;
    let cutoffs = if a.cutoff.is_empty() {
        vec![25]
    } else {
        a.cutoff
    };
    let out = a.out.unwrap_or_else(|| PathBuf::from("hydra-run"));
    let base = HydraConfig::default();
    for &cutoff in &cutoffs {
        let config = HydraConfig {
            n_iterations: a.iters.unwrap_or(base.n_iterations),
            cutoff,
            patience: match a.patience {
                Some(0) => None,
                Some(p) => Some(p),
                None => base.patience,
            },
            epsilon: a.epsilon.unwrap_or(base.epsilon),
            concurrent: !a.sequential,
            solver: solver.clone(),
            seed: a.seed.unwrap_or(0),
        };
        let (s, trace) = solve_mis(&g, &config)?;
        let dir = if cutoffs.len() == 1 {
            out.clone()
        } else {
            out.join(format!("cutoff-{cutoff}"))
        };
        let summary = RunSummary {
            graph_id: g.id().to_owned(),
            n: g.n(),
            m: g.m(),
            cutoff,
            seed: config.seed,
            cardinality: s.cardinality(),
            best_iteration: trace.best_iteration,
            rounds: trace.records.len(),
            concurrency_metric: trace.concurrency_metric,
            stopped_early: trace.stopped_early,
        };
        write_json(&dir.join("solution.json"), &s)?;
        write_json(&dir.join("trace.json"), &trace)?;
        write_json(&dir.join("summary.json"), &summary)?;
        write_file(&dir.join("iterations.csv"), |w| Ok(trace.write_csv(w)?))?;
        print_json(&summary)?;
    }
    Ok(())
}

#[derive(Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct BaselineArgs {
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Local-search iterations.
    #[arg(long)]
    iterations: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Run the exact solver on graphs up to this size.
    #[arg(long)]
    exact_cap: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct BaselineReport {
    graph_id: String,
    n: usize,
    m: usize,
    ils_cardinality: usize,
    exact_cardinality: Option<usize>,
    ils: Solution,
}

fn run_baseline(
    g: &hydra_mis::Graph,
    iterations: usize,
    seed: u64,
    exact_cap: usize,
) -> anyhow::Result<BaselineReport> {
    let ils = ils_mis(g, iterations, seed);
    let exact = if g.n() <= exact_cap.min(hydra_mis::solvers::HARD_EXACT_CAP) {
        Some(exact_mis_capped(g, exact_cap)?.cardinality())
    } else {
        None
    };
    Ok(BaselineReport {
        graph_id: g.id().to_owned(),
        n: g.n(),
        m: g.m(),
        ils_cardinality: ils.cardinality(),
        exact_cardinality: exact,
        ils,
    })
}

pub fn baseline(a: BaselineArgs) -> anyhow::Result<()> {
    let graph_path = a
        .graph
        .ok_or_else(|| UsageError("--graph is required".into()))?;
    let g = load(&graph_path)?;
    let report = run_baseline(
        &g,
        a.iterations.unwrap_or(DEFAULT_ILS_ITERATIONS),
        a.seed.unwrap_or(0),
        a.exact_cap.unwrap_or(DEFAULT_EXACT_CAP),
    )?;
    print_json(&report)
}

#[derive(Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct ReportArgs {
    /// Run directories written by `hydra` (multi-cutoff parents included).
    runs: Vec<PathBuf>,
    /// Output of `baseline` to normalize against.
    #[arg(long, conflicts_with = "graph")]
    baseline: Option<PathBuf>,
    /// Compute the baseline for this graph instead.
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long)]
    iterations: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// CSV output; stdout by default.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn run_dirs(root: &Path) -> anyhow::Result<Vec<PathBuf>> {
    if root.join("summary.json").is_file() {
        return Ok(vec![root.to_owned()]);
    }
    let mut dirs: Vec<PathBuf> = std::fs::read_dir(root)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.join("summary.json").is_file())
        .collect();
    dirs.sort();
    if dirs.is_empty() {
        anyhow::bail!(hydra_mis::Error::InvalidArgument(format!(
            "{} holds no run summaries",
            root.display()
        )));
    }
    Ok(dirs)
}

pub fn report(a: ReportArgs) -> anyhow::Result<()> {
    if a.runs.is_empty() {
        anyhow::bail!(UsageError("give at least one run directory".into()));
    }
    let baseline: BaselineReport = match (&a.baseline, &a.graph) {
        (Some(path), _) => read_json(path)?,
        (None, Some(graph)) => run_baseline(
            &load(graph)?,
            a.iterations.unwrap_or(DEFAULT_ILS_ITERATIONS),
            a.seed.unwrap_or(0),
            0,
        )?,
        (None, None) => anyhow::bail!(UsageError("give --baseline or --graph".into())),
    };
    let mut rows = csv::Writer::from_writer(Vec::new());
    rows.write_record([
        "run",
        "graph_id",
        "cutoff",
        "cardinality",
        "baseline",
        "ratio",
    ])?;
    for root in &a.runs {
        for dir in run_dirs(root)? {
            let s: RunSummary = read_json(&dir.join("summary.json"))?;
            if s.graph_id != baseline.graph_id {
                anyhow::bail!(hydra_mis::Error::InvalidArgument(format!(
                    "run {} is for graph {} but the baseline is for {}",
                    dir.display(),
                    s.graph_id,
                    baseline.graph_id
                )));
            }
            let name = dir
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default();
            let ratio = if baseline.ils_cardinality == 0 {
                1.0
            } else {
                s.cardinality as f64 / baseline.ils_cardinality as f64
            };
            rows.write_record([
                name,
                s.graph_id.clone(),
                s.cutoff.to_string(),
                s.cardinality.to_string(),
                baseline.ils_cardinality.to_string(),
                format!("{ratio:.6}"),
            ])?;
        }
    }
    let bytes = rows.into_inner()?;
    match &a.out {
        Some(path) => write_file(path, |w| Ok(std::io::Write::write_all(w, &bytes)?)),
        None => {
            print!("{}", String::from_utf8(bytes)?);
            Ok(())
        }
    }
}
