use rand::Rng as _;

use super::Graph;
use crate::error::{Error, Result};
use crate::rng::rng_from;

/// Erdős–Rényi `G(n, p)`: each unordered pair is kept independently with
/// probability `p`, pairs visited in lexicographic order.
pub fn generate_er(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    let mut rng = rng_from(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

pub fn empty(n: usize) -> Graph {
    Graph::from_edges(n, []).unwrap()
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    if n > 2 {
        edges.push((n - 1, 0));
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
}

/// Star with center 0 and `leaves` leaves.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap()
}

/// `rows x cols` grid, vertex `r * cols + c`.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                edges.push((v, v + 1));
            }
            if r + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    Graph::from_edges(rows * cols, edges).unwrap()
}

/// Outer 5-cycle 0..5, inner pentagram 5..10, spokes `i -- i + 5`.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, i + 5));
    }
    Graph::from_edges(10, edges).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn er_extremes() {
        assert_eq!(generate_er(4, 0.0, 3).unwrap().m(), 0);
        assert_eq!(generate_er(4, 1.0, 3).unwrap().m(), 6);
    }

    #[test]
    fn er_is_deterministic() {
        let a = generate_er(12, 0.5, 7).unwrap();
        let b = generate_er(12, 0.5, 7).unwrap();
        assert_eq!(a.edges(), b.edges());
        assert_eq!(a.id(), b.id());
        assert_ne!(a.id(), generate_er(12, 0.5, 8).unwrap().id());
    }

    #[test]
    fn er_rejects_bad_probability() {
        assert!(matches!(
            generate_er(3, 1.5, 0),
            Err(Error::InvalidProbability(_))
        ));
        assert!(generate_er(3, -0.1, 0).is_err());
    }

    #[test]
    fn named_graphs() {
        assert_eq!(petersen().m(), 15);
        assert!((0..10).all(|v| petersen().degree(v) == 3));
        assert_eq!(grid(4, 4).m(), 24);
        assert_eq!(cycle(5).m(), 5);
        assert_eq!(star(4).degree(0), 4);
    }
}
