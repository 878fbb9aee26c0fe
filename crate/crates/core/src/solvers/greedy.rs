use std::collections::BTreeSet;

use crate::graph::{Graph, Solution};

/// Repeatedly takes a minimum-degree vertex of the remaining graph (lowest
/// id on ties) and deletes its closed neighborhood.
pub fn greedy_mis(g: &Graph) -> Solution {
    let n = g.n();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut queue: BTreeSet<(usize, usize)> = (0..n).map(|v| (degree[v], v)).collect();
    let mut s = Solution::empty(n);
    while let Some((_, v)) = queue.pop_first() {
        s.insert(v);
        alive[v] = false;
        for &u in g.neighbors(v) {
            if !alive[u] {
                continue;
            }
            alive[u] = false;
            queue.remove(&(degree[u], u));
            for &w in g.neighbors(u) {
                if alive[w] {
                    queue.remove(&(degree[w], w));
                    degree[w] -= 1;
                    queue.insert((degree[w], w));
                }
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, empty, star};
    use crate::is_independent;

    #[test]
    fn examples() {
        let s = greedy_mis(&star(4));
        assert_eq!(s.members(), vec![1, 2, 3, 4]);
        assert_eq!(greedy_mis(&empty(5)).cardinality(), 5);
        let c5 = cycle(5);
        let s = greedy_mis(&c5);
        assert_eq!(s.members(), vec![0, 2]);
        assert!(is_independent(&c5, &s));
    }
}
