//! Undirected simple graphs, independent-set solutions and structural
//! statistics.

mod generate;
mod io;

pub use generate::{complete, cycle, empty, generate_er, grid, path, petersen, star};
pub use io::{load_graph, parse_graph, save_graph, write_graph, GraphFormat, LoadSummary};

use std::collections::VecDeque;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Immutable undirected simple graph on the dense vertex range `0..n`.
///
/// Adjacency is stored in CSR form with sorted neighbor lists. The `id` is a
/// SHA-256 digest of the canonical edge list, so two graphs with identical
/// edges share an id regardless of how they were built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    neighbors: Vec<usize>,
    id: String,
}

/// Counts of entries dropped while building a graph from raw input.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildSummary {
    pub self_loops: usize,
    pub duplicates: usize,
}

impl Graph {
    /// Builds a graph, silently dropping self-loops and duplicate edges.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::build(n, edges).map(|(g, _)| g)
    }

    /// Like [`Graph::from_edges`] but also reports what was dropped.
    pub fn build(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<(Self, BuildSummary)> {
        let mut summary = BuildSummary::default();
        let mut canon = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                summary.self_loops += 1;
                continue;
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        let before = canon.len();
        canon.dedup();
        summary.duplicates = before - canon.len();

        let mut degree = vec![0usize; n];
        for &(u, v) in &canon {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut neighbors = vec![0usize; 2 * canon.len()];
        for &(u, v) in &canon {
            neighbors[fill[u]] = v;
            fill[u] += 1;
            neighbors[fill[v]] = u;
            fill[v] += 1;
        }
        for v in 0..n {
            neighbors[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        let id = canonical_id(n, &canon);
        Ok((
            Graph {
                n,
                edges: canon,
                offsets,
                neighbors,
                id,
            },
            summary,
        ))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edge list, each pair `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    /// `2m / (n (n - 1))`, zero for graphs with fewer than two vertices.
    pub fn density(&self) -> f64 {
        if self.n < 2 {
            0.0
        } else {
            2.0 * self.m() as f64 / (self.n as f64 * (self.n - 1) as f64)
        }
    }

    /// Component id per vertex, numbered in order of smallest member.
    pub fn component_labels(&self) -> (usize, Vec<usize>) {
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &w in self.neighbors(u) {
                    if label[w] == usize::MAX {
                        label[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (count, label)
    }

    pub fn stats(&self) -> GraphStats {
        stats(self)
    }
}

fn canonical_id(n: usize, edges: &[(usize, usize)]) -> String {
    let mut text = format!("{n};");
    for (i, (u, v)) in edges.iter().enumerate() {
        if i > 0 {
            text.push(',');
        }
        let _ = write!(text, "{u}-{v}");
    }
    let digest = Sha256::digest(text.as_bytes());
    digest.iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        GraphRepr {
            n: self.n,
            edges: self.edges.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = GraphRepr::deserialize(deserializer)?;
        Graph::from_edges(repr.n, repr.edges).map_err(serde::de::Error::custom)
    }
}

/// Degree and connectivity summary of a graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    pub avg_degree: f64,
    pub degree_stddev: f64,
    pub density: f64,
    pub connected_components: usize,
}

pub fn stats(g: &Graph) -> GraphStats {
    let n = g.n();
    let degrees: Vec<f64> = (0..n).map(|v| g.degree(v) as f64).collect();
    let avg = if n == 0 {
        0.0
    } else {
        2.0 * g.m() as f64 / n as f64
    };
    let var = if n == 0 {
        0.0
    } else {
        degrees.iter().map(|d| (d - avg).powi(2)).sum::<f64>() / n as f64
    };
    GraphStats {
        n,
        m: g.m(),
        max_degree: (0..n).map(|v| g.degree(v)).max().unwrap_or(0),
        avg_degree: avg,
        degree_stddev: var.sqrt(),
        density: g.density(),
        connected_components: g.component_labels().0,
    }
}

/// An independent-set candidate: a bitset over the vertex range.
///
/// Nothing about the type enforces independence; use [`is_independent`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Solution {
    members: FixedBitSet,
}

impl Solution {
    pub fn empty(n: usize) -> Self {
        Solution {
            members: FixedBitSet::with_capacity(n),
        }
    }

    pub fn from_members(n: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = Self::empty(n);
        for v in members {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            s.members.insert(v);
        }
        Ok(s)
    }

    /// Decodes a basis-state index where bit `i` selects vertex `i`.
    pub fn from_bits(n: usize, bits: u64) -> Self {
        let mut s = Self::empty(n);
        for v in 0..n {
            if bits >> v & 1 == 1 {
                s.members.insert(v);
            }
        }
        s
    }

    pub fn n(&self) -> usize {
        self.members.len()
    }

    pub fn cardinality(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.contains(v)
    }

    pub fn insert(&mut self, v: usize) {
        self.members.insert(v);
    }

    pub fn remove(&mut self, v: usize) {
        self.members.set(v, false);
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.ones()
    }

    pub fn members(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

#[derive(Serialize, Deserialize)]
struct SolutionRepr {
    n: usize,
    cardinality: usize,
    members: Vec<usize>,
}

impl Serialize for Solution {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SolutionRepr {
            n: self.n(),
            cardinality: self.cardinality(),
            members: self.members(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Solution {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = SolutionRepr::deserialize(deserializer)?;
        Solution::from_members(repr.n, repr.members).map_err(serde::de::Error::custom)
    }
}

/// True iff no edge of `g` has both endpoints in `s`.
pub fn is_independent(g: &Graph, s: &Solution) -> bool {
    s.n() == g.n()
        && g.edges()
            .iter()
            .all(|&(u, v)| !(s.contains(u) && s.contains(v)))
}

/// A subgraph together with its vertex correspondence to the host graph.
#[derive(Clone, Debug)]
pub struct Subgraph {
    pub graph: Graph,
    /// `to_host[local] = host`, strictly ascending.
    pub to_host: Vec<usize>,
}

impl Subgraph {
    pub fn to_local(&self, host: usize) -> Option<usize> {
        self.to_host.binary_search(&host).ok()
    }

    /// Maps a solution on the subgraph back onto the host vertex range.
    pub fn lift(&self, local: &Solution, host_n: usize) -> Solution {
        let mut s = Solution::empty(host_n);
        for v in local.iter() {
            s.insert(self.to_host[v]);
        }
        s
    }
}

/// Subgraph induced by `vertices`, renumbered `0..len` in ascending order.
pub fn induced_subgraph(g: &Graph, vertices: impl IntoIterator<Item = usize>) -> Subgraph {
    let mut to_host: Vec<usize> = vertices.into_iter().filter(|&v| v < g.n()).collect();
    to_host.sort_unstable();
    to_host.dedup();
    let mut local = vec![usize::MAX; g.n()];
    for (i, &v) in to_host.iter().enumerate() {
        local[v] = i;
    }
    let mut edges = Vec::new();
    for (i, &v) in to_host.iter().enumerate() {
        for &w in g.neighbors(v) {
            let j = local[w];
            if j != usize::MAX && i < j {
                edges.push((i, j));
            }
        }
    }
    let graph = Graph::from_edges(to_host.len(), edges).expect("local ids are in range");
    Subgraph { graph, to_host }
}
