use rand::Rng as _;

use super::greedy_mis;
use crate::graph::{Graph, Solution};
use crate::rng::rng_from;

pub const DEFAULT_ILS_ITERATIONS: usize = 1000;

/// Iterated local search from the greedy solution: (1,2)-swaps to a local
/// optimum, then a random forced insertion, repeated `iterations` times.
/// Returns the best set seen.
pub fn ils_mis(g: &Graph, iterations: usize, seed: u64) -> Solution {
    if g.n() == 0 {
        return Solution::empty(0);
    }
    let mut rng = rng_from(seed);
    let mut cur = State::new(g, &greedy_mis(g));
    cur.local_search();
    let mut best = cur.members.clone();
    let mut best_size = cur.size;
    for _ in 0..iterations {
        if cur.size == g.n() {
            break;
        }
        let saved = cur.clone();
        let v = loop {
            let v = rng.random_range(0..g.n());
            if !cur.members[v] {
                break v;
            }
        };
        cur.force_insert(v);
        cur.local_search();
        if cur.size > best_size {
            best_size = cur.size;
            best = cur.members.clone();
        }
        if cur.size < saved.size {
            // Worse solutions survive with probability 1 / (1 + d * d_best).
            let d = (saved.size - cur.size) as f64;
            let d_best = (best_size - cur.size) as f64;
            if !rng.random_bool(1.0 / (1.0 + d * d_best)) {
                cur = saved;
            }
        }
    }
    let mut s = Solution::empty(g.n());
    for (v, &m) in best.iter().enumerate() {
        if m {
            s.insert(v);
        }
    }
    s
}

#[derive(Clone)]
struct State<'g> {
    g: &'g Graph,
    members: Vec<bool>,
    /// Number of neighbors currently in the set.
    tight: Vec<usize>,
    size: usize,
}

impl<'g> State<'g> {
    fn new(g: &'g Graph, s: &Solution) -> Self {
        let mut st = State {
            g,
            members: vec![false; g.n()],
            tight: vec![0; g.n()],
            size: 0,
        };
        for v in s.iter() {
            st.insert(v);
        }
        st
    }

    fn insert(&mut self, v: usize) {
        self.members[v] = true;
        self.size += 1;
        for &u in self.g.neighbors(v) {
            self.tight[u] += 1;
        }
    }

    fn remove(&mut self, v: usize) {
        self.members[v] = false;
        self.size -= 1;
        for &u in self.g.neighbors(v) {
            self.tight[u] -= 1;
        }
    }

    fn fill_free(&mut self) {
        for v in 0..self.g.n() {
            if !self.members[v] && self.tight[v] == 0 {
                self.insert(v);
            }
        }
    }

    fn force_insert(&mut self, v: usize) {
        for i in 0..self.g.neighbors(v).len() {
            let u = self.g.neighbors(v)[i];
            if self.members[u] {
                self.remove(u);
            }
        }
        self.insert(v);
    }

    /// Applies (1,2)-swaps until none exists.
    fn local_search(&mut self) {
        self.fill_free();
        'outer: loop {
            for x in 0..self.g.n() {
                if !self.members[x] {
                    continue;
                }
                let cands: Vec<usize> = self
                    .g
                    .neighbors(x)
                    .iter()
                    .copied()
                    .filter(|&u| self.tight[u] == 1)
                    .collect();
                for (i, &a) in cands.iter().enumerate() {
                    for &b in &cands[i + 1..] {
                        if !self.g.has_edge(a, b) {
                            self.remove(x);
                            self.insert(a);
                            self.insert(b);
                            self.fill_free();
                            continue 'outer;
                        }
                    }
                }
            }
            break;
        }
    }
}
