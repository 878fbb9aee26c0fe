//! Parameter transfer: a pool of training graphs with optimized QAOA
//! angles, pairwise transferability, hierarchical clustering, a
//! Weisfeiler-Lehman embedding, and cluster-guided donor selection for new
//! graphs.
//!
//! Cluster prediction normally uses the nearest centroid in embedding
//! space. A [`PredictionFile`] produced by an external classifier takes
//! precedence for every graph id it lists.

mod cluster;
mod distance;
mod embed;
mod pool;
mod predict;

pub use cluster::{cluster_pool, hierarchical_cluster, ClusterModel, Merge};
pub use distance::{distance_matrix, transfer_ratio, DistanceMatrix, DEFAULT_SHOTS, DEFAULT_TOP};
pub use embed::{embed, EMBED_DIM, WL_ITERATIONS};
pub use pool::{build_pool, read_pool, write_pool, PoolConfig, PoolEntry};
pub use predict::{
    nearest_centroid, optimize_and_sample, predict_cluster, predict_cluster_with_source,
    transfer_solve, LabelSource, Prediction, PredictionFile, TransferOptions, TransferProvenance,
};

pub const DEFAULT_CLUSTERS: usize = 5;
