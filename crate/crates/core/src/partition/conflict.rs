use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::Partition;
use crate::graph::Graph;

/// Which parts of a partition share at least one host edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionConflictGraph {
    pub parts: usize,
    /// Pairs `(i, j)` with `i < j`, sorted.
    pub edges: Vec<(usize, usize)>,
}

impl PartitionConflictGraph {
    pub fn neighbors(&self, part: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter_map(move |&(i, j)| {
            if i == part {
                Some(j)
            } else if j == part {
                Some(i)
            } else {
                None
            }
        })
    }

    pub fn degree(&self, part: usize) -> usize {
        self.neighbors(part).count()
    }
}

pub fn conflict_graph(g: &Graph, p: &Partition) -> PartitionConflictGraph {
    let mut edges = BTreeSet::new();
    for &(u, v) in g.edges() {
        let (a, b) = (p.assignment[u], p.assignment[v]);
        if a != b {
            edges.insert((a.min(b), a.max(b)));
        }
    }
    PartitionConflictGraph {
        parts: p.k,
        edges: edges.into_iter().collect(),
    }
}

/// Groups of pairwise cross-edge-free parts, processed one group at a time.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Waves {
    pub waves: Vec<Vec<usize>>,
    /// Largest wave size.
    pub concurrency: usize,
}

/// Greedy coloring in descending-degree order (ties by part id); each color
/// class becomes one wave.
pub fn concurrency_waves(cg: &PartitionConflictGraph) -> Waves {
    let mut adjacency = vec![Vec::new(); cg.parts];
    for &(i, j) in &cg.edges {
        adjacency[i].push(j);
        adjacency[j].push(i);
    }
    let mut order: Vec<usize> = (0..cg.parts).collect();
    order.sort_by_key(|&p| (std::cmp::Reverse(adjacency[p].len()), p));
    let mut color = vec![usize::MAX; cg.parts];
    let mut waves: Vec<Vec<usize>> = Vec::new();
    for p in order {
        let used: BTreeSet<usize> = adjacency[p].iter().map(|&q| color[q]).collect();
        let c = (0..).find(|c| !used.contains(c)).unwrap();
        color[p] = c;
        if c == waves.len() {
            waves.push(Vec::new());
        }
        waves[c].push(p);
    }
    for wave in &mut waves {
        wave.sort_unstable();
    }
    let concurrency = waves.iter().map(Vec::len).max().unwrap_or(0);
    Waves { waves, concurrency }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::path;

    fn cg(parts: usize, edges: &[(usize, usize)]) -> PartitionConflictGraph {
        PartitionConflictGraph {
            parts,
            edges: edges.to_vec(),
        }
    }

    #[test]
    fn conflict_graph_examples() {
        let g = path(10);
        let halves = Partition::from_assignment(2, 0, (0..10).map(|v| v / 5).collect()).unwrap();
        assert_eq!(conflict_graph(&g, &halves).edges, vec![(0, 1)]);

        let tri = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let split = Partition::from_assignment(2, 0, vec![0, 0, 0, 1, 1, 1]).unwrap();
        assert!(conflict_graph(&tri, &split).edges.is_empty());

        let one = Partition::from_assignment(1, 0, vec![0; 10]).unwrap();
        assert!(conflict_graph(&g, &one).edges.is_empty());
    }

    #[test]
    fn waves_examples() {
        let w = concurrency_waves(&cg(5, &[]));
        assert_eq!(w.waves, vec![vec![0, 1, 2, 3, 4]]);
        assert_eq!(w.concurrency, 5);

        let w = concurrency_waves(&cg(3, &[(0, 1), (0, 2), (1, 2)]));
        assert_eq!(w.waves.len(), 3);
        assert_eq!(w.concurrency, 1);

        let w = concurrency_waves(&cg(3, &[(0, 1), (1, 2)]));
        let mut sets = w.waves.clone();
        sets.sort();
        assert_eq!(sets, vec![vec![0, 2], vec![1]]);
        assert_eq!(w.concurrency, 2);
    }
}
