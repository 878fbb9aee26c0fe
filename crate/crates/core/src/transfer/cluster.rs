use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::distance::DistanceMatrix;
use super::pool::PoolEntry;
use crate::error::{Error, Result};

/// One agglomeration step. Leaves are `0..n`; the cluster formed by merge
/// `i` gets id `n + i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Merge {
    pub a: usize,
    pub b: usize,
    pub distance: f64,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClusterModel {
    #[serde(rename = "K")]
    pub k: usize,
    pub labels: BTreeMap<String, usize>,
    pub centroids: Vec<Vec<f64>>,
    /// The full merge tree, not only the merges above the cut.
    pub merges: Vec<Merge>,
}

impl ClusterModel {
    pub fn label(&self, graph_id: &str) -> Option<usize> {
        self.labels.get(graph_id).copied()
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 || self.centroids.len() != self.k {
            return Err(Error::Invariant(format!(
                "cluster model has K={} but {} centroids",
                self.k,
                self.centroids.len()
            )));
        }
        let dim = self.centroids[0].len();
        if let Some(c) = self.centroids.iter().find(|c| c.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: c.len(),
            });
        }
        if let Some((id, &l)) = self.labels.iter().find(|(_, &l)| l >= self.k) {
            return Err(Error::Invariant(format!(
                "graph {id} has label {l} >= K={}",
                self.k
            )));
        }
        Ok(())
    }
}

/// Average-linkage agglomerative clustering on `1 - t`, cut to exactly `k`
/// clusters. Labels are numbered by first appearance along `dm.ids`;
/// `embeddings[i]` belongs to `dm.ids[i]` and feeds the centroids. Ties in
/// merge distance go to the lowest pair of cluster ids.
pub fn hierarchical_cluster(
    dm: &DistanceMatrix,
    embeddings: &[Vec<f64>],
    k: usize,
) -> Result<ClusterModel> {
    dm.validate()?;
    let n = dm.len();
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!("K={k} must lie in 1..={n}")));
    }
    if embeddings.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: embeddings.len(),
        });
    }
    // Active clusters: (cluster id, members). Distances between active
    // clusters are kept in `dist`, indexed by slot.
    let mut slots: Vec<Option<(usize, Vec<usize>)>> = (0..n).map(|i| Some((i, vec![i]))).collect();
    let mut dist: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| dm.distance(i, j)).collect())
        .collect();
    let mut merges = Vec::with_capacity(n.saturating_sub(1));
    let mut assignment: Option<Vec<usize>> = (k == n).then(|| (0..n).collect());
    for step in 0..n.saturating_sub(1) {
        let mut best: Option<(f64, usize, usize, usize, usize)> = None;
        for x in 0..n {
            let Some((idx, _)) = &slots[x] else { continue };
            for y in x + 1..n {
                let Some((idy, _)) = &slots[y] else { continue };
                let (lo, hi) = ((*idx).min(*idy), (*idx).max(*idy));
                let d = dist[x][y];
                let better = match best {
                    None => true,
                    Some((bd, blo, bhi, _, _)) => d < bd || (d == bd && (lo, hi) < (blo, bhi)),
                };
                if better {
                    best = Some((d, lo, hi, x, y));
                }
            }
        }
        let (d, lo, hi, x, y) = best.expect("at least two active clusters");
        let (_, mut members) = slots[x].take().expect("active");
        let (_, other) = slots[y].take().expect("active");
        let (sx, sy) = (members.len() as f64, other.len() as f64);
        for z in 0..n {
            if z != x && slots[z].is_some() {
                let merged = (sx * dist[x][z] + sy * dist[y][z]) / (sx + sy);
                dist[x][z] = merged;
                dist[z][x] = merged;
            }
        }
        members.extend(other);
        members.sort_unstable();
        merges.push(Merge {
            a: lo,
            b: hi,
            distance: d,
            size: members.len(),
        });
        slots[x] = Some((n + step, members));
        if slots.iter().flatten().count() == k {
            let mut a = vec![0; n];
            for (c, (_, ms)) in slots.iter().flatten().enumerate() {
                for &m in ms {
                    a[m] = c;
                }
            }
            assignment = Some(a);
        }
    }
    let raw = assignment.expect("k lies in 1..=n");
    // Renumber by first appearance.
    let mut renumber: Vec<Option<usize>> = vec![None; n];
    let mut next = 0;
    let labels: Vec<usize> = raw
        .iter()
        .map(|&c| {
            *renumber[c].get_or_insert_with(|| {
                next += 1;
                next - 1
            })
        })
        .collect();
    let dim = embeddings.first().map_or(0, Vec::len);
    let mut centroids = vec![vec![0.0; dim]; k];
    let mut counts = vec![0usize; k];
    for (i, &l) in labels.iter().enumerate() {
        if embeddings[i].len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: embeddings[i].len(),
            });
        }
        counts[l] += 1;
        for (c, e) in centroids[l].iter_mut().zip(&embeddings[i]) {
            *c += e;
        }
    }
    for (c, &cnt) in centroids.iter_mut().zip(&counts) {
        c.iter_mut().for_each(|x| *x /= cnt as f64);
    }
    Ok(ClusterModel {
        k,
        labels: dm.ids.iter().cloned().zip(labels).collect(),
        centroids,
        merges,
    })
}

/// Clusters a pool using the embeddings stored in its entries.
pub fn cluster_pool(dm: &DistanceMatrix, pool: &[PoolEntry], k: usize) -> Result<ClusterModel> {
    let by_id: BTreeMap<&str, &PoolEntry> = pool.iter().map(|e| (e.graph_id.as_str(), e)).collect();
    let embeddings = dm
        .ids
        .iter()
        .map(|id| {
            by_id
                .get(id.as_str())
                .map(|e| e.embedding.clone())
                .ok_or_else(|| {
                    Error::InvalidArgument(format!("graph {id} is in the matrix but not the pool"))
                })
        })
        .collect::<Result<Vec<_>>>()?;
    hierarchical_cluster(dm, &embeddings, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blobs() -> DistanceMatrix {
        // 0, 2, 4 in one blob and 1, 3 in the other.
        let blob = [0, 1, 0, 1, 0];
        let n = blob.len();
        let mut t = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                t[i * n + j] = if blob[i] == blob[j] {
                    1.0 - 0.01 * (i + j) as f64 / 10.0
                } else {
                    0.02
                };
            }
        }
        DistanceMatrix::from_transferability((0..n).map(|i| format!("g{i}")).collect(), t).unwrap()
    }

    fn embeddings(n: usize) -> Vec<Vec<f64>> {
        (0..n).map(|i| vec![i as f64, 1.0]).collect()
    }

    #[test]
    fn splits_blobs() {
        let m = hierarchical_cluster(&blobs(), &embeddings(5), 2).unwrap();
        let labels: Vec<usize> = (0..5).map(|i| m.label(&format!("g{i}")).unwrap()).collect();
        assert_eq!(labels, vec![0, 1, 0, 1, 0]);
        assert_eq!(m.centroids, vec![vec![2.0, 1.0], vec![2.0, 1.0]]);
        assert_eq!(m.merges.len(), 4);
        assert!(m.merges.windows(2).all(|w| w[0].distance <= w[1].distance));
        m.validate().unwrap();
    }

    #[test]
    fn extremes() {
        let all = hierarchical_cluster(&blobs(), &embeddings(5), 5).unwrap();
        assert_eq!(
            (0..5)
                .map(|i| all.label(&format!("g{i}")).unwrap())
                .collect::<Vec<_>>(),
            vec![0, 1, 2, 3, 4]
        );
        let one = hierarchical_cluster(&blobs(), &embeddings(5), 1).unwrap();
        assert!(one.labels.values().all(|&l| l == 0));
        assert!(hierarchical_cluster(&blobs(), &embeddings(5), 6).is_err());
    }

    #[test]
    fn json_keys() {
        let m = hierarchical_cluster(&blobs(), &embeddings(5), 2).unwrap();
        let v: serde_json::Value = serde_json::to_value(&m).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, vec!["K", "centroids", "labels", "merges"]);
        assert_eq!(serde_json::from_value::<ClusterModel>(v).unwrap(), m);
    }
}
