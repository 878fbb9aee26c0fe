//! Balanced, contiguous k-way partitioning with per-call randomization.
//!
//! Each call draws random integer edge weights in `[1, 100]` from its seed,
//! grows parts one at a time from peripheral seeds, always absorbing the
//! frontier vertex that lowers the weighted cut the most. Leftover and
//! fragmented pieces are then re-attached, oversized parts push boundary
//! vertices toward neighbors with room, and a final pass moves boundary
//! vertices across light cuts. No step may break the invariants below; an
//! attempt that ends in violation is discarded and retried with a derived
//! seed.
//!
//! Invariants of every returned [`Partition`]:
//! - parts are non-empty, disjoint and cover `0..n`;
//! - no part exceeds the size cap (`floor(ceil(n/k) * (1 + eps))`, further
//!   clipped by [`PartitionOptions::max_part_size`]);
//! - within each connected component of the host, each part's vertices in
//!   that component induce a connected subgraph.

mod conflict;

pub use conflict::{concurrency_waves, conflict_graph, PartitionConflictGraph, Waves};

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::Rng as _;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{derive_seed, rng_from, splitmix64, Rng};

const UNASSIGNED: usize = usize::MAX;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partition {
    pub k: usize,
    pub seed: u64,
    pub assignment: Vec<usize>,
    #[serde(skip)]
    parts: Vec<Vec<usize>>,
}

impl Partition {
    /// Builds a partition from an assignment vector, validating part ids.
    pub fn from_assignment(k: usize, seed: u64, assignment: Vec<usize>) -> Result<Self> {
        let mut parts = vec![Vec::new(); k];
        for (v, &p) in assignment.iter().enumerate() {
            if p >= k {
                return Err(Error::InvalidArgument(format!(
                    "vertex {v} assigned to part {p} but k = {k}"
                )));
            }
            parts[p].push(v);
        }
        Ok(Partition {
            k,
            seed,
            assignment,
            parts,
        })
    }

    /// Vertex lists per part, each ascending.
    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn max_part_size(&self) -> usize {
        self.parts.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Checks cover, non-emptiness, size cap and per-component contiguity.
    pub fn validate(&self, g: &Graph, cap: usize) -> std::result::Result<(), String> {
        if self.assignment.len() != g.n() {
            return Err(format!(
                "assignment covers {} vertices, graph has {}",
                self.assignment.len(),
                g.n()
            ));
        }
        for (i, part) in self.parts.iter().enumerate() {
            if part.is_empty() {
                return Err(format!("part {i} is empty"));
            }
            if part.len() > cap {
                return Err(format!("part {i} has {} vertices, cap {cap}", part.len()));
            }
        }
        let (_, comp) = g.component_labels();
        if let Some(i) = fragmented_part(g, &self.assignment, &comp, self.k) {
            return Err(format!("part {i} is not contiguous"));
        }
        Ok(())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            k: usize,
            seed: u64,
            assignment: Vec<usize>,
        }
        let r = Repr::deserialize(deserializer)?;
        Partition::from_assignment(r.k, r.seed, r.assignment).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PartitionOptions {
    /// Allowed imbalance over a perfectly even split.
    pub epsilon: f64,
    /// Hard cap on part size on top of the balance cap.
    pub max_part_size: Option<usize>,
    /// Randomized attempts per value of k.
    pub attempts: usize,
    /// How many times k may be incremented when no attempt succeeds.
    pub max_k_increments: usize,
    pub refine_passes: usize,
}

impl Default for PartitionOptions {
    fn default() -> Self {
        PartitionOptions {
            epsilon: 0.1,
            max_part_size: None,
            attempts: 12,
            max_k_increments: 3,
            refine_passes: 4,
        }
    }
}

impl PartitionOptions {
    pub fn with_epsilon(epsilon: f64) -> Self {
        PartitionOptions {
            epsilon,
            ..Self::default()
        }
    }

    /// Size cap for `k` parts over `n` vertices.
    pub fn cap(&self, n: usize, k: usize) -> usize {
        let even = n.div_ceil(k);
        let balanced = (even as f64 * (1.0 + self.epsilon) + 1e-9).floor() as usize;
        let cap = balanced.max(even);
        self.max_part_size.map_or(cap, |m| cap.min(m))
    }
}

/// Partitions `g` into `k` balanced contiguous parts with default options.
pub fn partition(g: &Graph, k: usize, epsilon: f64, seed: u64) -> Result<Partition> {
    partition_with(g, k, &PartitionOptions::with_epsilon(epsilon), seed)
}

/// Partitions `g` into `k` parts, incrementing `k` up to
/// `opts.max_k_increments` times when no contiguous balanced split is found.
/// The returned [`Partition::k`] is the value that succeeded.
pub fn partition_with(
    g: &Graph,
    k: usize,
    opts: &PartitionOptions,
    seed: u64,
) -> Result<Partition> {
    let n = g.n();
    if k == 0 || k > n {
        return Err(Error::InfeasibleBalance { n, k });
    }
    let (_, comp) = g.component_labels();
    let k_to = (k + opts.max_k_increments).min(n);
    for kk in k..=k_to {
        let cap = opts.cap(n, kk);
        if cap * kk < n {
            continue;
        }
        for attempt in 0..opts.attempts.max(1) {
            let attempt_seed = derive_seed(seed, &[kk as u64, attempt as u64]);
            let mut state = Grower::new(g, &comp, kk, cap, attempt_seed);
            if let Some(assignment) = state.run(opts.refine_passes) {
                return Partition::from_assignment(kk, seed, assignment);
            }
        }
    }
    Err(Error::ContiguityUnattainable { k_from: k, k_to })
}

/// Smallest `k >= ceil(n / cutoff)` for which a partition with every part at
/// most `cutoff` vertices is found.
pub fn choose_k(g: &Graph, cutoff: usize, opts: &PartitionOptions, seed: u64) -> Result<usize> {
    let n = g.n();
    if cutoff == 0 {
        return Err(Error::InvalidArgument("cutoff must be at least 1".into()));
    }
    if n == 0 {
        return Ok(1);
    }
    let single = PartitionOptions {
        max_part_size: Some(cutoff),
        max_k_increments: 0,
        ..opts.clone()
    };
    for k in n.div_ceil(cutoff)..=n {
        if partition_with(g, k, &single, seed).is_ok() {
            return Ok(k);
        }
    }
    // k = n always succeeds with singleton parts, so this is unreachable for n > 0.
    Err(Error::ContiguityUnattainable {
        k_from: n.div_ceil(cutoff),
        k_to: n,
    })
}

/// Returns the first part whose vertices within some host component are
/// not connected.
fn fragmented_part(g: &Graph, assignment: &[usize], comp: &[usize], k: usize) -> Option<usize> {
    let n = g.n();
    let mut seen = vec![false; n];
    // (part, component) pairs already visited by a BFS.
    let mut claimed = std::collections::HashSet::new();
    let mut queue = VecDeque::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let p = assignment[s];
        if p >= k {
            return Some(p);
        }
        if !claimed.insert((p, comp[s])) {
            return Some(p);
        }
        seen[s] = true;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if !seen[w] && assignment[w] == p {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    None
}

/// Randomized edge weight in `[1, 100]`, symmetric in its endpoints.
#[inline]
fn edge_weight(seed: u64, u: usize, v: usize) -> i64 {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    1 + (splitmix64(seed ^ ((a as u64) << 32 | b as u64)) % 100) as i64
}

struct Grower<'a> {
    g: &'a Graph,
    comp: &'a [usize],
    k: usize,
    cap: usize,
    seed: u64,
    rng: Rng,
    part: Vec<usize>,
    sizes: Vec<usize>,
}

impl<'a> Grower<'a> {
    fn new(g: &'a Graph, comp: &'a [usize], k: usize, cap: usize, seed: u64) -> Self {
        Grower {
            g,
            comp,
            k,
            cap,
            seed,
            rng: rng_from(seed),
            part: vec![UNASSIGNED; g.n()],
            sizes: vec![0; k],
        }
    }

    fn w(&self, u: usize, v: usize) -> i64 {
        edge_weight(self.seed, u, v)
    }

    fn tiebreak(&self, v: usize) -> u64 {
        splitmix64(self.seed.rotate_left(17) ^ v as u64)
    }

    fn run(&mut self, refine_passes: usize) -> Option<Vec<usize>> {
        self.grow_all();
        self.attach_leftovers();
        self.defragment();
        if self.sizes.contains(&0) {
            return None;
        }
        if !self.balance() {
            return None;
        }
        for _ in 0..refine_passes {
            if !self.refine_pass() {
                break;
            }
        }
        let assignment = std::mem::take(&mut self.part);
        let ok = self.sizes.iter().all(|&s| s >= 1 && s <= self.cap)
            && fragmented_part(self.g, &assignment, self.comp, self.k).is_none();
        ok.then_some(assignment)
    }

    fn assign(&mut self, v: usize, p: usize) {
        let old = self.part[v];
        if old != UNASSIGNED {
            self.sizes[old] -= 1;
        }
        self.part[v] = p;
        self.sizes[p] += 1;
    }

    fn unassigned_degree(&self, v: usize) -> usize {
        self.g
            .neighbors(v)
            .iter()
            .filter(|&&w| self.part[w] == UNASSIGNED)
            .count()
    }

    /// A vertex far from a random start within its component.
    fn peripheral_seed(&mut self, candidates: &[usize]) -> usize {
        let start = candidates[self.rng.random_range(0..candidates.len())];
        let mut dist = vec![usize::MAX; 0];
        dist.resize(self.g.n(), usize::MAX);
        dist[start] = 0;
        let mut queue = VecDeque::from([start]);
        let mut best = start;
        while let Some(u) = queue.pop_front() {
            let key = (dist[u], self.tiebreak(u));
            if key > (dist[best], self.tiebreak(best)) {
                best = u;
            }
            for &w in self.g.neighbors(u) {
                if self.part[w] == UNASSIGNED && dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        best
    }

    /// Seed for the next growth region: an unassigned vertex bordering the
    /// assigned region with the fewest unassigned neighbors, else a
    /// peripheral vertex of an untouched component.
    fn pick_seed(&mut self, banned_components: &[usize]) -> Option<usize> {
        let n = self.g.n();
        let mut best: Option<(usize, u64, usize)> = None;
        for v in 0..n {
            if self.part[v] != UNASSIGNED || banned_components.contains(&self.comp[v]) {
                continue;
            }
            let borders = self
                .g
                .neighbors(v)
                .iter()
                .any(|&w| self.part[w] != UNASSIGNED);
            if !borders {
                continue;
            }
            let key = (self.unassigned_degree(v), self.tiebreak(v), v);
            if best.is_none_or(|b| key < b) {
                best = Some(key);
            }
        }
        if let Some((_, _, v)) = best {
            return Some(v);
        }
        let free: Vec<usize> = (0..n)
            .filter(|&v| self.part[v] == UNASSIGNED && !banned_components.contains(&self.comp[v]))
            .collect();
        if free.is_empty() {
            None
        } else {
            Some(self.peripheral_seed(&free))
        }
    }

    fn grow_all(&mut self) {
        let n = self.g.n();
        let base = n / self.k;
        let extra = n % self.k;
        // Weight from each vertex to still-unassigned neighbors.
        let mut free_weight: Vec<i64> = (0..n)
            .map(|v| self.g.neighbors(v).iter().map(|&w| self.w(v, w)).sum())
            .collect();
        let mut internal = vec![0i64; n];
        let mut assigned = 0;
        for p in 0..self.k {
            let target = if p + 1 == self.k {
                n - assigned
            } else {
                base + usize::from(p < extra)
            };
            let mut touched: Vec<usize> = Vec::new();
            let mut frontier: Vec<usize> = Vec::new();
            let mut in_frontier = vec![false; 0];
            in_frontier.resize(n, false);
            while self.sizes[p] < target {
                let next = if frontier.is_empty() {
                    match self.pick_seed(&touched) {
                        Some(v) => {
                            touched.push(self.comp[v]);
                            v
                        }
                        None => break,
                    }
                } else {
                    // Highest cut reduction first, randomized ties.
                    let (idx, _) = frontier
                        .iter()
                        .enumerate()
                        .map(|(i, &v)| (i, (internal[v] - free_weight[v], self.tiebreak(v))))
                        .max_by_key(|&(_, key)| key)
                        .unwrap();
                    frontier.swap_remove(idx)
                };
                in_frontier[next] = false;
                self.assign(next, p);
                assigned += 1;
                for i in 0..self.g.degree(next) {
                    let w = self.g.neighbors(next)[i];
                    let wt = self.w(next, w);
                    free_weight[w] -= wt;
                    if self.part[w] == UNASSIGNED {
                        internal[w] += wt;
                        if !in_frontier[w] {
                            in_frontier[w] = true;
                            frontier.push(w);
                        }
                    }
                }
            }
            for v in frontier {
                internal[v] = 0;
            }
            // Internal weights of vertices that left the frontier by assignment
            // are never read again.
        }
    }

    /// Connected pieces of the unassigned region, each attached to the
    /// smallest adjacent part (or the smallest part overall if isolated).
    fn attach_leftovers(&mut self) {
        let n = self.g.n();
        let mut seen = vec![false; n];
        for s in 0..n {
            if self.part[s] != UNASSIGNED || seen[s] {
                continue;
            }
            let piece = self.collect_piece(s, UNASSIGNED, &mut seen);
            let target = self
                .adjacent_parts(&piece, UNASSIGNED)
                .into_iter()
                .min_by_key(|&q| (self.sizes[q], q))
                .unwrap_or_else(|| (0..self.k).min_by_key(|&q| (self.sizes[q], q)).unwrap());
            for v in piece {
                self.assign(v, target);
            }
        }
    }

    fn collect_piece(&self, s: usize, label: usize, seen: &mut [bool]) -> Vec<usize> {
        let mut piece = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < piece.len() {
            let u = piece[i];
            i += 1;
            for &w in self.g.neighbors(u) {
                if !seen[w] && self.part[w] == label {
                    seen[w] = true;
                    piece.push(w);
                }
            }
        }
        piece
    }

    fn adjacent_parts(&self, piece: &[usize], own: usize) -> Vec<usize> {
        let mut parts: Vec<usize> = piece
            .iter()
            .flat_map(|&v| self.g.neighbors(v).iter().map(|&w| self.part[w]))
            .filter(|&q| q != own && q != UNASSIGNED)
            .collect();
        parts.sort_unstable();
        parts.dedup();
        parts
    }

    /// Keeps the largest piece of each (part, component) pair and hands the
    /// other pieces to their smallest neighboring part.
    fn defragment(&mut self) {
        loop {
            let n = self.g.n();
            let mut seen = vec![false; n];
            let mut pieces: Vec<(usize, usize, Vec<usize>)> = Vec::new();
            for s in 0..n {
                if !seen[s] {
                    let p = self.part[s];
                    let piece = self.collect_piece(s, p, &mut seen);
                    pieces.push((p, self.comp[s], piece));
                }
            }
            pieces.sort_by_key(|a| (a.0, a.1, std::cmp::Reverse(a.2.len())));
            let mut moved = false;
            for i in 1..pieces.len() {
                if pieces[i].0 == pieces[i - 1].0 && pieces[i].1 == pieces[i - 1].1 {
                    let (p, _, ref piece) = pieces[i];
                    let target = self
                        .adjacent_parts(piece, p)
                        .into_iter()
                        .min_by_key(|&q| (self.sizes[q], q));
                    if let Some(q) = target {
                        for &v in piece {
                            self.assign(v, q);
                        }
                        moved = true;
                    }
                }
            }
            if !moved {
                break;
            }
        }
    }

    /// True if `v` can leave its part without disconnecting the part's
    /// piece in `v`'s component.
    fn removable(&self, v: usize) -> bool {
        let p = self.part[v];
        if self.sizes[p] <= 1 {
            return false;
        }
        let inside: Vec<usize> = self
            .g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| self.part[w] == p)
            .collect();
        if inside.len() <= 1 {
            return true;
        }
        // BFS from one inside neighbor, avoiding v, must reach the others.
        let mut seen = std::collections::HashSet::from([v, inside[0]]);
        let mut queue = VecDeque::from([inside[0]]);
        let mut remaining = inside.len() - 1;
        while let Some(u) = queue.pop_front() {
            for &w in self.g.neighbors(u) {
                if self.part[w] == p && seen.insert(w) {
                    if inside.contains(&w) {
                        remaining -= 1;
                        if remaining == 0 {
                            return true;
                        }
                    }
                    queue.push_back(w);
                }
            }
        }
        false
    }

    /// Best single boundary move from part `p` into part `q`, if any.
    fn best_move(&self, p: usize, q: usize) -> Option<usize> {
        let mut best: Option<((i64, u64), usize)> = None;
        for v in 0..self.g.n() {
            if self.part[v] != p {
                continue;
            }
            let mut to_q = 0;
            let mut to_p = 0;
            for &w in self.g.neighbors(v) {
                if self.part[w] == q {
                    to_q += self.w(v, w);
                } else if self.part[w] == p {
                    to_p += self.w(v, w);
                }
            }
            if to_q == 0 {
                continue;
            }
            let key = (to_q - to_p, self.tiebreak(v));
            if best.is_none_or(|(b, _)| key > b) && self.removable(v) {
                best = Some((key, v));
            }
        }
        best.map(|(_, v)| v)
    }

    fn part_neighbors(&self, p: usize) -> Vec<usize> {
        let members: Vec<usize> = (0..self.g.n()).filter(|&v| self.part[v] == p).collect();
        self.adjacent_parts(&members, p)
    }

    /// Pushes vertices out of oversized parts along chains of adjacent
    /// parts ending in one with room.
    fn balance(&mut self) -> bool {
        let budget = 4 * self.g.n() + 16;
        for _ in 0..budget {
            let Some(over) = (0..self.k).find(|&p| self.sizes[p] > self.cap) else {
                return true;
            };
            // BFS over the part adjacency graph from `over` to a part with room.
            let mut prev = vec![UNASSIGNED; self.k];
            prev[over] = over;
            let mut queue = VecDeque::from([over]);
            let mut sink = None;
            'bfs: while let Some(p) = queue.pop_front() {
                let mut nbrs = self.part_neighbors(p);
                nbrs.shuffle(&mut self.rng);
                for q in nbrs {
                    if prev[q] == UNASSIGNED {
                        prev[q] = p;
                        if self.sizes[q] < self.cap {
                            sink = Some(q);
                            break 'bfs;
                        }
                        queue.push_back(q);
                    }
                }
            }
            let Some(sink) = sink else {
                return false;
            };
            // Execute moves from the sink backwards so every step has room.
            let mut q = sink;
            let mut progressed = false;
            while q != over {
                let p = prev[q];
                match self.best_move(p, q) {
                    Some(v) => {
                        self.assign(v, q);
                        progressed = true;
                    }
                    None => break,
                }
                q = p;
            }
            if !progressed {
                return false;
            }
        }
        self.sizes.iter().all(|&s| s <= self.cap)
    }

    /// One sweep of positive-gain boundary moves. Returns whether any
    /// vertex moved.
    fn refine_pass(&mut self) -> bool {
        let mut order: Vec<usize> = (0..self.g.n()).collect();
        order.shuffle(&mut self.rng);
        let mut moved = false;
        for v in order {
            let p = self.part[v];
            let mut gains: Vec<(usize, i64)> = Vec::new();
            let mut to_p = 0;
            for &w in self.g.neighbors(v) {
                let q = self.part[w];
                let wt = self.w(v, w);
                if q == p {
                    to_p += wt;
                } else if let Some(e) = gains.iter_mut().find(|e| e.0 == q) {
                    e.1 += wt;
                } else {
                    gains.push((q, wt));
                }
            }
            let best = gains
                .into_iter()
                .filter(|&(q, to_q)| to_q > to_p && self.sizes[q] < self.cap)
                .max_by_key(|&(q, to_q)| (to_q, std::cmp::Reverse(q)));
            if let Some((q, _)) = best {
                if self.removable(v) {
                    self.assign(v, q);
                    moved = true;
                }
            }
        }
        moved
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, empty, generate_er, grid, path, star};

    #[test]
    fn path_bisection_gives_two_runs() {
        let g = path(10);
        for seed in 0..20 {
            let p = partition(&g, 2, 0.0, seed).unwrap();
            assert_eq!(p.k, 2);
            let mut parts = p.parts().to_vec();
            parts.sort();
            assert_eq!(parts, vec![(0..5).collect::<Vec<_>>(), (5..10).collect()]);
        }
    }

    #[test]
    fn grid_four_way_is_valid() {
        let g = grid(4, 4);
        let opts = PartitionOptions::with_epsilon(0.1);
        for seed in 0..20 {
            let p = partition_with(&g, 4, &opts, seed).unwrap();
            assert_eq!(p.k, 4, "seed {seed}");
            assert!(p.parts().iter().all(|q| q.len() == 4));
            p.validate(&g, opts.cap(16, 4)).unwrap();
        }
    }

    #[test]
    fn single_part_is_everything() {
        let g = generate_er(20, 0.2, 1).unwrap();
        let p = partition(&g, 1, 0.1, 9).unwrap();
        assert_eq!(p.parts(), &[(0..20).collect::<Vec<_>>()]);
    }

    #[test]
    fn infeasible_k() {
        assert!(matches!(
            partition(&path(3), 4, 0.1, 0),
            Err(Error::InfeasibleBalance { n: 3, k: 4 })
        ));
        assert!(partition(&path(3), 0, 0.1, 0).is_err());
    }

    #[test]
    fn star_forces_more_parts() {
        // A connected split of a 5-star into parts of at most 2 needs 4 parts.
        let g = star(4);
        let opts = PartitionOptions::with_epsilon(0.1);
        let p = partition_with(&g, 2, &opts, 3).unwrap();
        assert_eq!(p.k, 4);
        p.validate(&g, opts.cap(5, 4)).unwrap();

        let strict = PartitionOptions {
            max_k_increments: 0,
            ..opts
        };
        assert!(matches!(
            partition_with(&g, 2, &strict, 3),
            Err(Error::ContiguityUnattainable { .. })
        ));
    }

    #[test]
    fn disconnected_hosts() {
        let g = empty(30);
        let p = partition(&g, 2, 0.1, 5).unwrap();
        assert_eq!(p.k, 2);
        assert!(p.max_part_size() <= 16);
        let two_triangles =
            Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let p = partition(&two_triangles, 2, 0.0, 1).unwrap();
        let mut parts = p.parts().to_vec();
        parts.sort();
        assert_eq!(parts, vec![vec![0, 1, 2], vec![3, 4, 5]]);
    }

    #[test]
    fn choose_k_examples() {
        let opts = PartitionOptions::default();
        let g100 = grid(10, 10);
        assert_eq!(choose_k(&g100, 25, &opts, 1).unwrap(), 4);
        assert_eq!(choose_k(&path(25), 25, &opts, 1).unwrap(), 1);
        assert!(choose_k(&path(26), 25, &opts, 1).unwrap() >= 2);
        assert_eq!(choose_k(&complete(5), 1, &opts, 1).unwrap(), 5);
    }

    #[test]
    fn json_shape() {
        let p = Partition::from_assignment(2, 7, vec![0, 0, 1]).unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"k":2,"seed":7,"assignment":[0,0,1]}"#);
        let back: Partition = serde_json::from_str(&json).unwrap();
        assert_eq!(back.parts(), &[vec![0, 1], vec![2]]);
        assert!(
            serde_json::from_str::<Partition>(r#"{"k":1,"seed":0,"assignment":[0,3]}"#).is_err()
        );
    }
}
