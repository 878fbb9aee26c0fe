use crate::error::{Error, Result};
use crate::graph::{Graph, Solution};

pub const DEFAULT_EXACT_CAP: usize = 60;
/// Vertex sets are `u64` masks.
pub const HARD_EXACT_CAP: usize = 64;

pub fn exact_mis(g: &Graph) -> Result<Solution> {
    exact_mis_capped(g, DEFAULT_EXACT_CAP)
}

/// Branch-and-bound on a maximum-degree vertex, pruning with
/// `|current| + |candidates| <= |best|`.
pub fn exact_mis_capped(g: &Graph, cap: usize) -> Result<Solution> {
    let cap = cap.min(HARD_EXACT_CAP);
    if g.n() > cap {
        return Err(Error::SizeCapExceeded { n: g.n(), cap });
    }
    let adj: Vec<u64> = (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u))
        .collect();
    let all = if g.n() == 64 {
        u64::MAX
    } else {
        (1u64 << g.n()) - 1
    };
    let mut search = Search {
        adj: &adj,
        best: 0,
        best_size: 0,
    };
    search.branch(all, 0, 0);
    Ok(Solution::from_bits(g.n(), search.best))
}

struct Search<'a> {
    adj: &'a [u64],
    best: u64,
    best_size: u32,
}

impl Search<'_> {
    fn branch(&mut self, mut cand: u64, mut set: u64, mut size: u32) {
        // A vertex with at most one candidate neighbor belongs to some
        // maximum independent set of what remains, so take it outright.
        loop {
            let mut forced = None;
            let mut rest = cand;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if (self.adj[v] & cand).count_ones() <= 1 {
                    forced = Some(v);
                    break;
                }
            }
            match forced {
                Some(v) => {
                    set |= 1 << v;
                    size += 1;
                    cand &= !(self.adj[v] | 1 << v);
                }
                None => break,
            }
        }
        if cand == 0 {
            if size > self.best_size {
                self.best = set;
                self.best_size = size;
            }
            return;
        }
        if size + cand.count_ones() <= self.best_size {
            return;
        }
        let mut pivot = 0;
        let mut pivot_deg = 0;
        let mut rest = cand;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let d = (self.adj[v] & cand).count_ones();
            if d > pivot_deg {
                pivot = v;
                pivot_deg = d;
            }
        }
        self.branch(
            cand & !(self.adj[pivot] | 1 << pivot),
            set | 1 << pivot,
            size + 1,
        );
        self.branch(cand & !(1 << pivot), set, size);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, empty, generate_er, grid, path, petersen, star};
    use crate::is_independent;

    fn brute(g: &Graph) -> usize {
        (0u64..1 << g.n())
            .filter(|&b| {
                g.edges()
                    .iter()
                    .all(|&(u, v)| b >> u & 1 == 0 || b >> v & 1 == 0)
            })
            .map(|b| b.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn small_families() {
        assert_eq!(exact_mis(&path(5)).unwrap().cardinality(), 3);
        assert_eq!(exact_mis(&complete(3)).unwrap().cardinality(), 1);
        assert_eq!(
            exact_mis(&petersen()).unwrap().cardinality(),
            brute(&petersen())
        );
        assert_eq!(exact_mis(&cycle(9)).unwrap().cardinality(), 4);
        assert_eq!(exact_mis(&star(7)).unwrap().cardinality(), 7);
        assert_eq!(exact_mis(&empty(0)).unwrap().cardinality(), 0);
        assert_eq!(exact_mis(&grid(6, 6)).unwrap().cardinality(), 18);
    }

    #[test]
    fn matches_enumeration() {
        for seed in 0..40 {
            let g = generate_er(13, 0.1 + 0.02 * seed as f64, seed).unwrap();
            let s = exact_mis(&g).unwrap();
            assert!(is_independent(&g, &s));
            assert_eq!(s.cardinality(), brute(&g), "seed {seed}");
        }
    }

    #[test]
    fn cap() {
        assert!(matches!(
            exact_mis(&empty(61)),
            Err(Error::SizeCapExceeded { n: 61, cap: 60 })
        ));
        assert_eq!(exact_mis_capped(&empty(64), 100).unwrap().cardinality(), 64);
        assert!(exact_mis_capped(&empty(65), 100).is_err());
    }
}
