use crate::graph::{Graph, Solution};

/// Resolves conflicts in a possibly dependent set. The endpoints of edges
/// inside `s` form the conflict graph `H`; its vertices are visited by
/// increasing degree in the initial `H` (lower id first on ties), and each
/// one that still has a neighbor in `H` is dropped from both `s` and `H`.
/// Members of `s` outside `H` are kept.
pub fn repair_mis_sol(g: &Graph, s: &Solution) -> Solution {
    let n = g.n();
    let mut h_degree = vec![0usize; n];
    for &(u, v) in g.edges() {
        if s.contains(u) && s.contains(v) {
            h_degree[u] += 1;
            h_degree[v] += 1;
        }
    }
    let mut order: Vec<usize> = (0..n).filter(|&v| h_degree[v] > 0).collect();
    order.sort_by_key(|&v| (h_degree[v], v));
    let mut out = s.clone();
    for v in order {
        if g.neighbors(v).iter().any(|&u| out.contains(u)) {
            out.remove(v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, path};

    #[test]
    fn traces() {
        let p3 = path(3);
        let all = Solution::from_members(3, [0, 1, 2]).unwrap();
        assert_eq!(repair_mis_sol(&p3, &all).members(), vec![1]);
        let k2 = complete(2);
        assert_eq!(
            repair_mis_sol(&k2, &Solution::from_members(2, [0, 1]).unwrap()).members(),
            vec![1]
        );
        let ind = Solution::from_members(3, [0, 2]).unwrap();
        assert_eq!(repair_mis_sol(&p3, &ind), ind);
    }
}
