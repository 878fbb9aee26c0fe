use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::pool::PoolEntry;
use crate::error::{Error, Result};
use crate::qaoa::{best_feasible, build_qubo, QaoaCircuit, DEFAULT_PENALTY, DEFAULT_QUBIT_CAP};
use crate::rng::derive_seed;

pub const DEFAULT_TOP: usize = 5;
pub const DEFAULT_SHOTS: usize = 5000;

/// Best approximation ratio reached on `target`'s circuit by any of the
/// `top` lowest-expectation parameter sets of `source`.
pub fn transfer_ratio(
    source: &PoolEntry,
    target: &PoolEntry,
    top: usize,
    shots: usize,
    seed: u64,
) -> Result<f64> {
    if top == 0 || top > source.params.len() {
        return Err(Error::InvalidArgument(format!(
            "top={top} but {} has {} parameter sets",
            source.graph_id,
            source.params.len()
        )));
    }
    if target.optimum == 0 {
        return Ok(1.0);
    }
    let q = build_qubo(&target.graph, DEFAULT_PENALTY)?;
    let circuit = QaoaCircuit::new(&q, DEFAULT_QUBIT_CAP)?;
    let mut best = 0usize;
    for (t, rec) in source.params[..top].iter().enumerate() {
        let samples = circuit.sample(&rec.params, shots, derive_seed(seed, &[t as u64]));
        let (s, _) = best_feasible(&target.graph, &samples)?;
        best = best.max(s.cardinality());
    }
    Ok(best as f64 / target.optimum as f64)
}

/// Pairwise transferability `t` over a pool; the clustering distance is
/// `1 - t`. Serialized as `{ids, t}` with `t` row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistanceMatrix {
    pub ids: Vec<String>,
    pub t: Vec<f64>,
}

impl DistanceMatrix {
    pub fn from_transferability(ids: Vec<String>, t: Vec<f64>) -> Result<Self> {
        let dm = DistanceMatrix { ids, t };
        dm.validate()?;
        Ok(dm)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.ids.len();
        if self.t.len() != n * n {
            return Err(Error::NonSquare {
                rows: n,
                cols: self.t.len().checked_div(n).unwrap_or(self.t.len()),
            });
        }
        for i in 0..n {
            for j in 0..n {
                let v = self.t[i * n + j];
                if !(0.0..=1.0).contains(&v) {
                    return Err(Error::Invariant(format!(
                        "t[{i}][{j}] = {v} outside [0, 1]"
                    )));
                }
                if v != self.t[j * n + i] {
                    return Err(Error::Invariant(format!(
                        "t is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn transferability(&self, i: usize, j: usize) -> f64 {
        self.t[i * self.len() + j]
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        1.0 - self.transferability(i, j)
    }
}

/// `t_ij = (ratio(i -> j) + ratio(j -> i)) / 2`, evaluated once per
/// unordered pair (diagonal included) and mirrored.
pub fn distance_matrix(
    pool: &[PoolEntry],
    top: usize,
    shots: usize,
    seed: u64,
) -> Result<DistanceMatrix> {
    if pool.len() < 2 {
        return Err(Error::InvalidArgument(
            "distance matrix needs at least two graphs".into(),
        ));
    }
    let n = pool.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let values: Vec<f64> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (a, b) = (&pool[i], &pool[j]);
            let fwd = transfer_ratio(
                a,
                b,
                top,
                shots,
                derive_seed(seed, &[i as u64, j as u64, 0]),
            )?;
            let back = transfer_ratio(
                b,
                a,
                top,
                shots,
                derive_seed(seed, &[i as u64, j as u64, 1]),
            )?;
            Ok((fwd + back) / 2.0)
        })
        .collect::<Result<_>>()?;
    let mut t = vec![0.0; n * n];
    for (&(i, j), v) in pairs.iter().zip(values) {
        t[i * n + j] = v;
        t[j * n + i] = v;
    }
    DistanceMatrix::from_transferability(pool.iter().map(|e| e.graph_id.clone()).collect(), t)
}
