use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const EMBED_DIM: usize = 64;
pub const WL_ITERATIONS: usize = 3;

fn hash_words(words: impl IntoIterator<Item = u64>) -> u64 {
    let mut h = Sha256::new();
    for w in words {
        h.update(w.to_le_bytes());
    }
    let digest = h.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("digest is 32 bytes"))
}

/// Weisfeiler-Lehman subtree features hashed into `dim` buckets and
/// L2-normalized. Labels start from vertex degrees; every (round, label)
/// occurrence, round 0 included, adds one to its bucket.
pub fn embed(g: &Graph, dim: usize, wl_iterations: usize) -> Result<Vec<f64>> {
    if dim < 8 {
        return Err(Error::InvalidArgument(format!(
            "embedding dimension {dim} is below 8"
        )));
    }
    let mut v = vec![0.0; dim];
    if g.n() == 0 {
        v[0] = 1.0;
        return Ok(v);
    }
    let mut labels: Vec<u64> = (0..g.n()).map(|u| g.degree(u) as u64).collect();
    for round in 0..=wl_iterations {
        if round > 0 {
            labels = (0..g.n())
                .map(|u| {
                    let mut around: Vec<u64> = g.neighbors(u).iter().map(|&w| labels[w]).collect();
                    around.sort_unstable();
                    hash_words(std::iter::once(labels[u]).chain(around))
                })
                .collect();
        }
        for &l in &labels {
            v[(hash_words([round as u64, l]) % dim as u64) as usize] += 1.0;
        }
    }
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter_mut().for_each(|x| *x /= norm);
    Ok(v)
}

pub(crate) fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).powi(2))
        .sum::<f64>()
        .sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, empty, generate_er};

    fn cosine(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }

    #[test]
    fn basics() {
        let a = embed(&complete(4), 64, 3).unwrap();
        let b = embed(&empty(4), 64, 3).unwrap();
        assert!(cosine(&a, &b) < 0.5);
        let g = generate_er(12, 0.4, 1).unwrap();
        let e = embed(&g, 64, 3).unwrap();
        assert!((cosine(&e, &e) - 1.0).abs() < 1e-9);
        assert!(embed(&g, 4, 3).is_err());
    }

    #[test]
    fn relabeling_invariant() {
        let g = generate_er(10, 0.3, 7).unwrap();
        let perm = [3, 7, 0, 9, 1, 5, 2, 8, 6, 4];
        let h = Graph::from_edges(10, g.edges().iter().map(|&(u, v)| (perm[u], perm[v]))).unwrap();
        assert_eq!(embed(&g, 64, 3).unwrap(), embed(&h, 64, 3).unwrap());
    }
}
