use std::collections::HashSet;
use std::io::{BufRead, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::embed::{embed, EMBED_DIM, WL_ITERATIONS};
use crate::error::{Error, Result};
use crate::graph::{generate_er, Graph};
use crate::qaoa::{build_qubo, optimize_circuit, OptimizedParams, OptimizerConfig, QaoaCircuit};
use crate::rng::derive_seed;
use crate::solvers::exact_mis;

const TAG_GRAPH: u64 = 1;
const TAG_OPTIMIZE: u64 = 2;

/// One training graph with its optimized parameter sets.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PoolEntry {
    pub graph_id: String,
    pub graph: Graph,
    pub embedding: Vec<f64>,
    pub optimum: usize,
    /// Ascending by expectation.
    pub params: Vec<OptimizedParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cluster_label: Option<usize>,
}

impl PoolEntry {
    pub fn validate(&self) -> Result<()> {
        let bad = |reason: &str| {
            Err(Error::Invariant(format!(
                "pool entry {}: {reason}",
                self.graph_id
            )))
        };
        if self.params.is_empty() {
            return bad("no parameter sets");
        }
        if self
            .params
            .windows(2)
            .any(|w| w[0].expectation > w[1].expectation)
        {
            return bad("parameter sets not sorted by expectation");
        }
        if self.embedding.len() != EMBED_DIM {
            return bad("embedding has the wrong dimension");
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PoolConfig {
    pub count: usize,
    /// Graph sizes, cycled through by index.
    pub sizes: Vec<usize>,
    pub density_range: (f64, f64),
    pub params_per_graph: usize,
    pub layers: usize,
    pub grid_resolution: usize,
    pub penalty: f64,
    pub seed: u64,
}

impl Default for PoolConfig {
    fn default() -> Self {
        PoolConfig {
            count: 50,
            sizes: vec![12, 14],
            density_range: (0.1, 0.9),
            params_per_graph: 20,
            layers: 2,
            grid_resolution: 8,
            penalty: crate::qaoa::DEFAULT_PENALTY,
            seed: 0,
        }
    }
}

impl PoolConfig {
    /// Edge probability of the `i`-th graph: evenly spaced over the range.
    pub fn density(&self, i: usize) -> f64 {
        let (lo, hi) = self.density_range;
        if self.count < 2 {
            lo
        } else {
            lo + (hi - lo) * i as f64 / (self.count - 1) as f64
        }
    }
}

/// Generates, optimizes and embeds `config.count` ER graphs. Graph ids are
/// unique within the pool: a generated duplicate is redrawn.
pub fn build_pool(config: &PoolConfig) -> Result<Vec<PoolEntry>> {
    if config.count < 2 {
        return Err(Error::InvalidArgument(
            "a pool needs at least two graphs".into(),
        ));
    }
    if config.params_per_graph == 0 {
        return Err(Error::InvalidArgument(
            "params_per_graph must be positive".into(),
        ));
    }
    if config.sizes.is_empty() {
        return Err(Error::InvalidArgument("no graph sizes given".into()));
    }
    let (lo, hi) = config.density_range;
    if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) || lo > hi {
        return Err(Error::InvalidArgument(format!(
            "bad density range [{lo}, {hi}]"
        )));
    }
    let mut seen = HashSet::new();
    let mut graphs = Vec::with_capacity(config.count);
    for i in 0..config.count {
        let n = config.sizes[i % config.sizes.len()];
        let p = config.density(i);
        let mut attempt = 0u64;
        let g = loop {
            let g = generate_er(
                n,
                p,
                derive_seed(config.seed, &[TAG_GRAPH, i as u64, attempt]),
            )?;
            if seen.insert(g.id().to_owned()) {
                break g;
            }
            attempt += 1;
            if attempt > 1000 {
                return Err(Error::InvalidArgument(format!(
                    "cannot draw {} distinct graphs with n={n}, p={p}",
                    config.count
                )));
            }
        };
        graphs.push(g);
    }
    graphs
        .into_par_iter()
        .enumerate()
        .map(|(i, g)| {
            let q = build_qubo(&g, config.penalty)?;
            let circuit = QaoaCircuit::new(&q, crate::qaoa::DEFAULT_QUBIT_CAP)?;
            let params = optimize_circuit(
                &circuit,
                &OptimizerConfig {
                    layers: config.layers,
                    grid_resolution: config.grid_resolution,
                    restarts: config.params_per_graph,
                    seed: derive_seed(config.seed, &[TAG_OPTIMIZE, i as u64]),
                    ..OptimizerConfig::default()
                },
            )?;
            Ok(PoolEntry {
                graph_id: g.id().to_owned(),
                embedding: embed(&g, EMBED_DIM, WL_ITERATIONS)?,
                optimum: exact_mis(&g)?.cardinality(),
                params,
                cluster_label: None,
                graph: g,
            })
        })
        .collect()
}

/// Writes one JSON object per line.
pub fn write_pool(entries: &[PoolEntry], mut out: impl Write) -> Result<()> {
    for e in entries {
        serde_json::to_writer(&mut out, e)?;
        out.write_all(b"\n").map_err(|e| Error::io("<pool>", e))?;
    }
    Ok(())
}

pub fn read_pool(reader: impl BufRead) -> Result<Vec<PoolEntry>> {
    let mut entries = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io("<pool>", e))?;
        if line.trim().is_empty() {
            continue;
        }
        let entry: PoolEntry = serde_json::from_str(&line).map_err(|e| Error::Parse {
            path: "<pool>".into(),
            line: i + 1,
            message: e.to_string(),
        })?;
        entry.validate()?;
        entries.push(entry);
    }
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny(seed: u64) -> PoolConfig {
        PoolConfig {
            count: 4,
            sizes: vec![6, 7],
            params_per_graph: 3,
            grid_resolution: 4,
            seed,
            ..PoolConfig::default()
        }
    }

    #[test]
    fn shape_and_round_trip() {
        let pool = build_pool(&tiny(1)).unwrap();
        assert_eq!(pool.len(), 4);
        for (i, e) in pool.iter().enumerate() {
            assert_eq!(e.graph.n(), [6, 7][i % 2]);
            assert_eq!(e.params.len(), 3);
            e.validate().unwrap();
        }
        let mut buf = Vec::new();
        write_pool(&pool, &mut buf).unwrap();
        assert_eq!(read_pool(&buf[..]).unwrap(), pool);
        let mut again = Vec::new();
        write_pool(&build_pool(&tiny(1)).unwrap(), &mut again).unwrap();
        assert_eq!(buf, again);
    }

    #[test]
    fn densities() {
        let c = PoolConfig {
            count: 5,
            ..PoolConfig::default()
        };
        for (i, want) in [0.1, 0.3, 0.5, 0.7, 0.9].into_iter().enumerate() {
            assert!((c.density(i) - want).abs() < 1e-12);
        }
        let flat = PoolConfig {
            density_range: (0.5, 0.5),
            ..c
        };
        assert!((0..5).all(|i| flat.density(i) == 0.5));
    }
}
