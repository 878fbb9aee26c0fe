use std::path::PathBuf;

use clap::Args;
use hydra_mis::graph::{cycle, generate_er, grid, path, save_graph, GraphFormat};
use serde::{Deserialize, Serialize};

use crate::UsageError;

#[derive(Args, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct GenArgs {
    /// Vertices per Erdos-Renyi graph.
    #[arg(long)]
    n: Option<usize>,
    /// Edge probability.
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Number of Erdos-Renyi graphs.
    #[arg(long)]
    count: Option<usize>,
    /// A ROWSxCOLS grid instead of random graphs.
    #[arg(long, conflicts_with_all = ["path", "cycle", "n", "p"])]
    grid: Option<String>,
    /// A path on this many vertices.
    #[arg(long, conflicts_with_all = ["cycle", "n", "p"])]
    path: Option<usize>,
    /// A cycle on this many vertices.
    #[arg(long, conflicts_with_all = ["n", "p"])]
    cycle: Option<usize>,
    /// mtx, col or el.
    #[arg(long)]
    format: Option<String>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn gen(a: GenArgs) -> anyhow::Result<()> {
    let format: GraphFormat = a.format.as_deref().unwrap_or("mtx").parse()?;
    let dir = a.out.unwrap_or_else(|| PathBuf::from("graphs"));
    std::fs::create_dir_all(&dir)?;
    let ext = format.extension();
    let mut graphs = Vec::new();
    if let Some(spec) = &a.grid {
        let (r, c) = spec
            .split_once('x')
            .and_then(|(r, c)| Some((r.parse().ok()?, c.parse().ok()?)))
            .ok_or_else(|| UsageError(format!("--grid expects ROWSxCOLS, got {spec:?}")))?;
        graphs.push((format!("grid-{r}x{c}.{ext}"), grid(r, c)));
    } else if let Some(n) = a.path {
        graphs.push((format!("path-{n}.{ext}"), path(n)));
    } else if let Some(n) = a.cycle {
        if n < 3 {
            anyhow::bail!(UsageError("--cycle needs at least 3 vertices".into()));
        }
        graphs.push((format!("cycle-{n}.{ext}"), cycle(n)));
    } else {
        let (Some(n), Some(p)) = (a.n, a.p) else {
            anyhow::bail!(UsageError(
                "give --n and --p, or one of --grid, --path, --cycle".into()
            ));
        };
        let seed = a.seed.unwrap_or(0);
        for i in 0..a.count.unwrap_or(1) {
            let g = generate_er(n, p, hydra_mis::rng::derive_seed(seed, &[i as u64]))?;
            graphs.push((format!("er-n{n}-p{p}-s{seed}-{i}.{ext}"), g));
        }
    }
    for (name, g) in graphs {
        let path = dir.join(name);
        save_graph(&g, &path, format)?;
        println!("{}", path.display());
    }
    Ok(())
}
