use std::path::PathBuf;

use anyhow::Context;
use clap::Args;
use hydra_mis::graph::generate_er;
use hydra_mis::qaoa::{OptimizerConfig, DEFAULT_PENALTY, DEFAULT_QUBIT_CAP, HARD_QUBIT_CAP};
use hydra_mis::rng::derive_seed;
use hydra_mis::solvers::{exact_mis_capped, DEFAULT_EXACT_CAP};
use hydra_mis::transfer::{
    build_pool, cluster_pool, distance_matrix, optimize_and_sample, transfer_solve, write_pool,
    ClusterModel, DistanceMatrix, PoolConfig, PredictionFile, TransferOptions, TransferProvenance,
    DEFAULT_CLUSTERS, DEFAULT_SHOTS, DEFAULT_TOP,
};
use hydra_mis::{Graph, Solution};
use serde::{Deserialize, Serialize};

use super::{load, print_json, read_json, read_pool_file, write_file, write_json};
use crate::UsageError;

#[derive(Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct PoolArgs {
    #[arg(long)]
    count: Option<usize>,
    /// Graph sizes, cycled through.
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<usize>,
    #[arg(long)]
    density_min: Option<f64>,
    #[arg(long)]
    density_max: Option<f64>,
    #[arg(long)]
    params_per_graph: Option<usize>,
    #[arg(long)]
    layers: Option<usize>,
    #[arg(long)]
    grid_resolution: Option<usize>,
    #[arg(long)]
    penalty: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output JSON-lines file.
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn pool(a: PoolArgs) -> anyhow::Result<()> {
    let d = PoolConfig::default();
    let config = PoolConfig {
        count: a.count.unwrap_or(d.count),
        sizes: if a.sizes.is_empty() { d.sizes } else { a.sizes },
        density_range: (
            a.density_min.unwrap_or(d.density_range.0),
            a.density_max.unwrap_or(d.density_range.1),
        ),
        params_per_graph: a.params_per_graph.unwrap_or(d.params_per_graph),
        layers: a.layers.unwrap_or(d.layers),
        grid_resolution: a.grid_resolution.unwrap_or(d.grid_resolution),
        penalty: a.penalty.unwrap_or(d.penalty),
        seed: a.seed.unwrap_or(d.seed),
    };
    let entries = build_pool(&config)?;
    let out = a.out.unwrap_or_else(|| PathBuf::from("pool.jsonl"));
    write_file(&out, |w| Ok(write_pool(&entries, w)?))?;
    print_json(&serde_json::json!({ "entries": entries.len(), "out": out }))
}

#[derive(Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct DistmatArgs {
    #[arg(long)]
    pool: Option<PathBuf>,
    /// Parameter sets per donor tried on each target.
    #[arg(long)]
    top: Option<usize>,
    #[arg(long)]
    shots: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn distmat(a: DistmatArgs) -> anyhow::Result<()> {
    let pool_path = a
        .pool
        .ok_or_else(|| UsageError("--pool is required".into()))?;
    let pool = read_pool_file(&pool_path)?;
    let dm = distance_matrix(
        &pool,
        a.top.unwrap_or(DEFAULT_TOP),
        a.shots.unwrap_or(DEFAULT_SHOTS),
        a.seed.unwrap_or(0),
    )?;
    let out = a.out.unwrap_or_else(|| PathBuf::from("distmat.json"));
    write_json(&out, &dm)?;
    let n = dm.len();
    let off: Vec<f64> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| dm.transferability(i, j))
        .collect();
    let mean = off.iter().sum::<f64>() / off.len().max(1) as f64;
    print_json(&serde_json::json!({ "graphs": n, "mean_transferability": mean, "out": out }))
}

#[derive(Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct ClusterArgs {
    #[arg(long)]
    distmat: Option<PathBuf>,
    /// Pool providing the embeddings for centroids.
    #[arg(long)]
    pool: Option<PathBuf>,
    /// Number of clusters.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a copy of the pool with cluster labels filled in.
    #[arg(long)]
    annotate_pool: Option<PathBuf>,
}

pub fn cluster(a: ClusterArgs) -> anyhow::Result<()> {
    let dm_path = a
        .distmat
        .ok_or_else(|| UsageError("--distmat is required".into()))?;
    let pool_path = a
        .pool
        .ok_or_else(|| UsageError("--pool is required".into()))?;
    let dm: DistanceMatrix = read_json(&dm_path)?;
    let mut pool = read_pool_file(&pool_path)?;
    let model = cluster_pool(&dm, &pool, a.k.unwrap_or(DEFAULT_CLUSTERS))?;
    let out = a.out.unwrap_or_else(|| PathBuf::from("cluster.json"));
    write_json(&out, &model)?;
    if let Some(path) = a.annotate_pool {
        for e in &mut pool {
            e.cluster_label = model.label(&e.graph_id);
        }
        write_file(&path, |w| Ok(write_pool(&pool, w)?))?;
    }
    let mut sizes = vec![0usize; model.k];
    model.labels.values().for_each(|&l| sizes[l] += 1);
    print_json(&serde_json::json!({ "K": model.k, "cluster_sizes": sizes, "out": out }))
}

#[derive(Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct TransferArgs {
    /// Graph to solve (omit with --sweep).
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long)]
    pool: Option<PathBuf>,
    #[arg(long)]
    cluster: Option<PathBuf>,
    /// External cluster predictions that override the embedding classifier.
    #[arg(long)]
    predictions: Option<PathBuf>,
    /// Donor graphs per solve.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    shots: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    max_qubits: Option<usize>,
    #[arg(long)]
    penalty: Option<f64>,
    /// Largest graph for which the exact optimum is computed.
    #[arg(long)]
    exact_cap: Option<usize>,
    /// Write the solution JSON here as well.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Sweep random graphs over sizes and densities, writing CSV.
    #[arg(long)]
    sweep: bool,
    #[arg(long, value_delimiter = ',')]
    sweep_sizes: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    sweep_densities: Vec<f64>,
    /// Graphs per (size, density) cell.
    #[arg(long)]
    sweep_count: Option<usize>,
    /// Also optimize each sweep graph from scratch for comparison.
    #[arg(long)]
    compare_scratch: bool,
}

#[derive(Serialize)]
struct TransferReport<'a> {
    graph_id: &'a str,
    n: usize,
    m: usize,
    cardinality: usize,
    optimum: Option<usize>,
    ratio: Option<f64>,
    solution: &'a Solution,
    provenance: &'a TransferProvenance,
}

fn optimum(g: &Graph, cap: usize) -> anyhow::Result<Option<usize>> {
    if g.n() > cap {
        return Ok(None);
    }
    Ok(Some(exact_mis_capped(g, cap)?.cardinality()))
}

fn ratio(size: usize, optimum: Option<usize>) -> Option<f64> {
    optimum.map(|o| if o == 0 { 1.0 } else { size as f64 / o as f64 })
}

pub fn transfer(a: TransferArgs) -> anyhow::Result<()> {
    let pool_path = a
        .pool
        .clone()
        .ok_or_else(|| UsageError("--pool is required".into()))?;
    let cluster_path = a
        .cluster
        .clone()
        .ok_or_else(|| UsageError("--cluster is required".into()))?;
    let pool = read_pool_file(&pool_path)?;
    let model: ClusterModel = read_json(&cluster_path)?;
    let overrides = a
        .predictions
        .as_deref()
        .map(PredictionFile::load)
        .transpose()
        .context("loading predictions")?;
    if let Some(p) = &overrides {
        p.validate(Some(model.k))?;
    }
    let max_qubits = a.max_qubits.unwrap_or(DEFAULT_QUBIT_CAP);
    if max_qubits > HARD_QUBIT_CAP {
        anyhow::bail!(UsageError(format!(
            "--max-qubits may not exceed {HARD_QUBIT_CAP}"
        )));
    }
    let options = TransferOptions {
        k_nearest: a.k.unwrap_or(3),
        shots: a.shots.unwrap_or(DEFAULT_SHOTS),
        penalty: a.penalty.unwrap_or(DEFAULT_PENALTY),
        qubit_cap: max_qubits,
    };
    let seed = a.seed.unwrap_or(0);
    let exact_cap = a.exact_cap.unwrap_or(DEFAULT_EXACT_CAP);

    if a.sweep {
        return sweep(
            &a,
            &pool,
            &model,
            overrides.as_ref(),
            &options,
            seed,
            exact_cap,
        );
    }
    let graph_path = a
        .graph
        .ok_or_else(|| UsageError("--graph is required unless --sweep is given".into()))?;
    let g = load(&graph_path)?;
    let (s, provenance) = transfer_solve(&g, &pool, &model, &options, seed, overrides.as_ref())?;
    let optimum = optimum(&g, exact_cap)?;
    if let Some(out) = &a.out {
        write_json(out, &s)?;
    }
    print_json(&TransferReport {
        graph_id: g.id(),
        n: g.n(),
        m: g.m(),
        cardinality: s.cardinality(),
        optimum,
        ratio: ratio(s.cardinality(), optimum),
        solution: &s,
        provenance: &provenance,
    })
}

fn sweep(
    a: &TransferArgs,
    pool: &[hydra_mis::transfer::PoolEntry],
    model: &ClusterModel,
    overrides: Option<&PredictionFile>,
    options: &TransferOptions,
    seed: u64,
    exact_cap: usize,
) -> anyhow::Result<()> {
    let sizes = if a.sweep_sizes.is_empty() {
        (12..=options.qubit_cap).step_by(2).collect()
    } else {
        a.sweep_sizes.clone()
    };
    if let Some(&n) = sizes.iter().find(|&&n| n > options.qubit_cap) {
        anyhow::bail!(UsageError(format!(
            "sweep size {n} exceeds --max-qubits {}",
            options.qubit_cap
        )));
    }
    let densities = if a.sweep_densities.is_empty() {
        vec![0.2, 0.5, 0.7]
    } else {
        a.sweep_densities.clone()
    };
    let count = a.sweep_count.unwrap_or(3);
    let mut rows = csv::Writer::from_writer(Vec::new());
    rows.write_record([
        "n",
        "density",
        "index",
        "graph_id",
        "optimum",
        "transfer",
        "transfer_ratio",
        "scratch",
        "scratch_ratio",
    ])?;
    for &n in &sizes {
        for (di, &p) in densities.iter().enumerate() {
            for i in 0..count {
                let cell_seed = derive_seed(seed, &[n as u64, di as u64, i as u64]);
                let g = generate_er(n, p, cell_seed)?;
                let opt = optimum(&g, exact_cap)?;
                let (s, _) = transfer_solve(&g, pool, model, options, cell_seed, overrides)?;
                let scratch = if a.compare_scratch {
                    let optimizer = OptimizerConfig::default();
                    Some(
                        optimize_and_sample(
                            &g,
                            &optimizer,
                            options.shots,
                            options.penalty,
                            cell_seed,
                        )?
                        .cardinality(),
                    )
                } else {
                    None
                };
                let fmt = |x: Option<f64>| x.map(|v| format!("{v:.6}")).unwrap_or_default();
                let opt_s = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
                rows.write_record([
                    n.to_string(),
                    p.to_string(),
                    i.to_string(),
                    g.id().to_owned(),
                    opt_s(opt),
                    s.cardinality().to_string(),
                    fmt(ratio(s.cardinality(), opt)),
                    opt_s(scratch),
                    fmt(scratch.and_then(|c| ratio(c, opt))),
                ])?;
            }
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
