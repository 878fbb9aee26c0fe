mod gen;
mod pipeline;
mod runs;

pub use gen::{gen, GenArgs};
pub use pipeline::{
    cluster, distmat, pool, transfer, ClusterArgs, DistmatArgs, PoolArgs, TransferArgs,
};
pub use runs::{baseline, hydra, report, BaselineArgs, HydraArgs, ReportArgs};

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use anyhow::Context;
use hydra_mis::graph::{load_graph, GraphFormat};
use hydra_mis::transfer::{read_pool, PoolEntry};
use hydra_mis::Graph;
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::UsageError;

fn load(path: &Path) -> anyhow::Result<Graph> {
    let format = GraphFormat::from_path(path).ok_or_else(|| {
        UsageError(format!(
            "cannot tell the format of {} from its extension (use .mtx, .col or .el)",
            path.display()
        ))
    })?;
    Ok(load_graph(path, format)?.0)
}

fn read_json<T: DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    serde_json::from_reader(BufReader::new(file))
        .with_context(|| format!("parsing {}", path.display()))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> anyhow::Result<()> {
    write_file(path, |out| {
        serde_json::to_writer_pretty(&mut *out, value)?;
        out.write_all(b"\n")?;
        Ok(())
    })
}

fn write_file(
    path: &Path,
    body: impl FnOnce(&mut BufWriter<File>) -> anyhow::Result<()>,
) -> anyhow::Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut out = BufWriter::new(file);
    body(&mut out)?;
    out.flush()
        .with_context(|| format!("writing {}", path.display()))
}

fn read_pool_file(path: &Path) -> anyhow::Result<Vec<PoolEntry>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    read_pool(BufReader::new(file)).with_context(|| format!("reading pool {}", path.display()))
}

fn print_json<T: Serialize>(value: &T) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string(value)?);
    Ok(())
}
