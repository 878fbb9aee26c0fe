use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::cluster::ClusterModel;
use super::embed::{embed, euclidean, WL_ITERATIONS};
use super::pool::PoolEntry;
use crate::error::{Error, Result};
use crate::graph::{Graph, Solution};
use crate::qaoa::{
    best_feasible, build_qubo, optimize_circuit, OptimizerConfig, QaoaCircuit, DEFAULT_PENALTY,
    DEFAULT_QUBIT_CAP,
};
use crate::rng::derive_seed;

const PROBABILITY_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub label: usize,
    pub probabilities: Vec<f64>,
}

/// Externally supplied cluster predictions keyed by graph id:
/// `{"<graph_id>": {"label": 2, "probabilities": [...]}, ...}`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PredictionFile {
    pub predictions: BTreeMap<String, Prediction>,
}

impl PredictionFile {
    /// Parses and checks every record; see [`PredictionFile::validate`].
    pub fn parse(json: &str) -> Result<Self> {
        let file: PredictionFile = serde_json::from_str(json)?;
        file.validate(None)?;
        Ok(file)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    /// Probabilities must be finite, non-negative and sum to 1 within 1e-6,
    /// and `label` must be an argmax. With `k` given, every distribution
    /// must have length `k`.
    pub fn validate(&self, k: Option<usize>) -> Result<()> {
        for (id, p) in &self.predictions {
            let fail = |reason: String| {
                Err(Error::InvalidPrediction {
                    graph_id: id.clone(),
                    reason,
                })
            };
            if p.probabilities.is_empty() {
                return fail("empty distribution".into());
            }
            if let Some(k) = k {
                if p.probabilities.len() != k {
                    return fail(format!("{} probabilities for K={k}", p.probabilities.len()));
                }
            }
            if p.probabilities.iter().any(|x| !x.is_finite() || *x < 0.0) {
                return fail("probabilities must be finite and non-negative".into());
            }
            let sum: f64 = p.probabilities.iter().sum();
            if (sum - 1.0).abs() > PROBABILITY_TOLERANCE {
                return fail(format!("probabilities sum to {sum}"));
            }
            let max = p
                .probabilities
                .iter()
                .copied()
                .fold(f64::NEG_INFINITY, f64::max);
            match p.probabilities.get(p.label) {
                Some(&x) if x == max => {}
                Some(_) => return fail(format!("label {} is not the most probable", p.label)),
                None => return fail(format!("label {} out of range", p.label)),
            }
        }
        Ok(())
    }

    pub fn get(&self, graph_id: &str) -> Option<&Prediction> {
        self.predictions.get(graph_id)
    }
}

/// Where a predicted cluster label came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LabelSource {
    Override,
    NearestCentroid,
}

/// Cluster of `g`: the override's label if it lists `g`, otherwise the
/// centroid nearest to `g`'s embedding (lowest id on ties).
pub fn predict_cluster(
    g: &Graph,
    model: &ClusterModel,
    overrides: Option<&PredictionFile>,
) -> Result<usize> {
    predict_cluster_with_source(g, model, overrides).map(|(c, _)| c)
}

pub fn predict_cluster_with_source(
    g: &Graph,
    model: &ClusterModel,
    overrides: Option<&PredictionFile>,
) -> Result<(usize, LabelSource)> {
    model.validate()?;
    if let Some(p) = overrides.and_then(|f| f.get(g.id())) {
        if p.label >= model.k {
            return Err(Error::InvalidPrediction {
                graph_id: g.id().to_owned(),
                reason: format!("label {} but the model has K={}", p.label, model.k),
            });
        }
        return Ok((p.label, LabelSource::Override));
    }
    let e = embed(g, model.centroids[0].len(), WL_ITERATIONS)?;
    Ok((nearest_centroid(&e, model)?, LabelSource::NearestCentroid))
}

pub fn nearest_centroid(embedding: &[f64], model: &ClusterModel) -> Result<usize> {
    let mut best = (f64::INFINITY, 0);
    for (c, centroid) in model.centroids.iter().enumerate() {
        if centroid.len() != embedding.len() {
            return Err(Error::DimensionMismatch {
                expected: centroid.len(),
                got: embedding.len(),
            });
        }
        let d = euclidean(embedding, centroid);
        if d < best.0 {
            best = (d, c);
        }
    }
    Ok(best.1)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransferOptions {
    pub k_nearest: usize,
    pub shots: usize,
    pub penalty: f64,
    pub qubit_cap: usize,
}

impl Default for TransferOptions {
    fn default() -> Self {
        TransferOptions {
            k_nearest: 3,
            shots: super::DEFAULT_SHOTS,
            penalty: DEFAULT_PENALTY,
            qubit_cap: DEFAULT_QUBIT_CAP,
        }
    }
}

/// Which donors a transferred solution came from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransferProvenance {
    pub graph_id: String,
    pub cluster: usize,
    pub label_source: LabelSource,
    pub donors: Vec<String>,
    /// Index into `donors` of the donor whose parameters produced the result.
    pub best_donor: Option<usize>,
    /// How many donors short of `k_nearest` the selection fell.
    pub shortfall: usize,
    /// The predicted cluster had no pool members, so donors were drawn
    /// from the whole pool.
    pub whole_pool_fallback: bool,
}

/// Solves MIS on `g` by sampling its circuit with the best parameter set
/// of each of the `k_nearest` pool graphs (by embedding distance) in `g`'s
/// predicted cluster, keeping the largest feasible sample.
pub fn transfer_solve(
    g: &Graph,
    pool: &[PoolEntry],
    model: &ClusterModel,
    options: &TransferOptions,
    seed: u64,
    overrides: Option<&PredictionFile>,
) -> Result<(Solution, TransferProvenance)> {
    if pool.is_empty() {
        return Err(Error::InvalidArgument(
            "transfer needs a non-empty pool".into(),
        ));
    }
    let (cluster, label_source) = predict_cluster_with_source(g, model, overrides)?;
    let embedding = embed(g, pool[0].embedding.len(), WL_ITERATIONS)?;
    let in_cluster: Vec<usize> = (0..pool.len())
        .filter(|&i| model.label(&pool[i].graph_id).or(pool[i].cluster_label) == Some(cluster))
        .collect();
    let whole_pool_fallback = in_cluster.is_empty();
    let mut candidates: Vec<(f64, usize)> = if whole_pool_fallback {
        (0..pool.len()).collect::<Vec<_>>()
    } else {
        in_cluster
    }
    .into_iter()
    .map(|i| {
        if pool[i].embedding.len() != embedding.len() {
            return Err(Error::DimensionMismatch {
                expected: embedding.len(),
                got: pool[i].embedding.len(),
            });
        }
        Ok((euclidean(&embedding, &pool[i].embedding), i))
    })
    .collect::<Result<_>>()?;
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    candidates.truncate(options.k_nearest);
    let donors: Vec<&PoolEntry> = candidates.iter().map(|&(_, i)| &pool[i]).collect();

    let mut provenance = TransferProvenance {
        graph_id: g.id().to_owned(),
        cluster,
        label_source,
        donors: donors.iter().map(|d| d.graph_id.clone()).collect(),
        best_donor: None,
        shortfall: options.k_nearest - donors.len(),
        whole_pool_fallback,
    };
    let mut best = Solution::empty(g.n());
    if g.n() == 0 {
        return Ok((best, provenance));
    }
    let circuit = QaoaCircuit::new(&build_qubo(g, options.penalty)?, options.qubit_cap)?;
    for (d, donor) in donors.iter().enumerate() {
        let params = &donor
            .params
            .first()
            .ok_or_else(|| Error::Invariant("donor without parameters".into()))?
            .params;
        let samples = circuit.sample(params, options.shots, derive_seed(seed, &[d as u64]));
        let (s, _) = best_feasible(g, &samples)?;
        if provenance.best_donor.is_none() || s.cardinality() > best.cardinality() {
            best = s;
            provenance.best_donor = Some(d);
        }
    }
    Ok((best, provenance))
}

/// Baseline for transfer: optimize `g`'s own circuit, then sample its best
/// parameter set.
pub fn optimize_and_sample(
    g: &Graph,
    optimizer: &OptimizerConfig,
    shots: usize,
    penalty: f64,
    seed: u64,
) -> Result<Solution> {
    if g.n() == 0 {
        return Ok(Solution::empty(0));
    }
    let circuit = QaoaCircuit::new(&build_qubo(g, penalty)?, DEFAULT_QUBIT_CAP)?;
    let records = optimize_circuit(
        &circuit,
        &OptimizerConfig {
            seed: derive_seed(seed, &[0]),
            ..optimizer.clone()
        },
    )?;
    let samples = circuit.sample(&records[0].params, shots, derive_seed(seed, &[1]));
    best_feasible(g, &samples).map(|(s, _)| s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn file(label: usize, probabilities: Vec<f64>) -> String {
        serde_json::json!({ "abc": { "label": label, "probabilities": probabilities } }).to_string()
    }

    #[test]
    fn prediction_file_validation() {
        let ok = PredictionFile::parse(&file(1, vec![0.2, 0.5, 0.3])).unwrap();
        assert_eq!(ok.get("abc").unwrap().label, 1);
        ok.validate(Some(3)).unwrap();
        assert!(ok.validate(Some(4)).is_err());
        for (label, p) in [
            (0, vec![0.2, 0.5, 0.3]),
            (1, vec![0.2, 0.5, 0.31]),
            (3, vec![0.2, 0.5, 0.3]),
            (0, vec![]),
            (0, vec![1.5, -0.5]),
        ] {
            assert!(
                matches!(
                    PredictionFile::parse(&file(label, p.clone())),
                    Err(Error::InvalidPrediction { .. })
                ),
                "{label} {p:?}"
            );
        }
        let round = serde_json::to_string(&ok).unwrap();
        assert_eq!(PredictionFile::parse(&round).unwrap(), ok);
    }

    #[test]
    fn nearest_centroid_ties_to_lowest() {
        let model = ClusterModel {
            k: 3,
            labels: BTreeMap::new(),
            centroids: vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 0.0]],
            merges: vec![],
        };
        assert_eq!(nearest_centroid(&[0.9, 0.1], &model).unwrap(), 0);
        assert_eq!(nearest_centroid(&[0.1, 0.9], &model).unwrap(), 1);
        assert!(nearest_centroid(&[0.1], &model).is_err());
    }
}
