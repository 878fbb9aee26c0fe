use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// `Q(x) = sum_i h_i x_i + sum_{i<j} J_ij x_i x_j` over binary `x`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuboModel {
    pub n: usize,
    pub linear: Vec<f64>,
    /// `((i, j), J_ij)` with `i < j`, sorted by key.
    pub quadratic: Vec<((usize, usize), f64)>,
    /// Edge penalty used to build an MIS model; 0 for hand-built models.
    pub penalty: f64,
}

impl QuboModel {
    pub fn evaluate(&self, x: &[bool]) -> f64 {
        let lin: f64 = self
            .linear
            .iter()
            .zip(x)
            .filter(|(_, &xi)| xi)
            .map(|(h, _)| h)
            .sum();
        let quad: f64 = self
            .quadratic
            .iter()
            .filter(|((i, j), _)| x[*i] && x[*j])
            .map(|(_, w)| w)
            .sum();
        lin + quad
    }

    /// Energy of the basis state whose bit `i` is `x_i`.
    pub fn evaluate_bits(&self, bits: u64) -> f64 {
        let x: Vec<bool> = (0..self.n).map(|i| bits >> i & 1 == 1).collect();
        self.evaluate(&x)
    }
}

/// MIS penalty model: `-sum x_i + J sum_{(i,j) in E} x_i x_j`. Its minimizers
/// are exactly the maximum independent sets whenever `J > 1`.
pub fn build_qubo(g: &Graph, penalty: f64) -> Result<QuboModel> {
    if penalty.is_nan() || penalty <= 1.0 || penalty.is_infinite() {
        return Err(Error::PenaltyTooSmall(penalty));
    }
    Ok(QuboModel {
        n: g.n(),
        linear: vec![-1.0; g.n()],
        quadratic: g.edges().iter().map(|&e| (e, penalty)).collect(),
        penalty,
    })
}

/// The cost Hamiltonian's diagonal: `energies[b] = Q(bits of b)`.
///
/// Distinct energy values are interned into `levels` so a phase layer costs
/// one complex exponential per level instead of one per amplitude.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalCost {
    pub energies: Vec<f64>,
    levels: Vec<f64>,
    level_of: Vec<u32>,
}

impl DiagonalCost {
    pub fn new(q: &QuboModel, qubit_cap: usize) -> Result<Self> {
        if q.n > qubit_cap || q.n > super::HARD_QUBIT_CAP {
            return Err(Error::QubitCapExceeded {
                n: q.n,
                cap: qubit_cap.min(super::HARD_QUBIT_CAP),
            });
        }
        let mut couplings: Vec<Vec<(usize, f64)>> = vec![Vec::new(); q.n];
        for &((i, j), w) in &q.quadratic {
            couplings[i.max(j)].push((i.min(j), w));
        }
        // energies[b] extends energies[b without its top bit] by that bit's
        // linear term and its couplings to lower set bits.
        let dim = 1usize << q.n;
        let mut energies = vec![0.0; dim];
        for b in 1..dim {
            let top = usize::BITS as usize - 1 - b.leading_zeros() as usize;
            let rest = b & !(1 << top);
            let mut e = energies[rest] + q.linear[top];
            for &(j, w) in &couplings[top] {
                if rest >> j & 1 == 1 {
                    e += w;
                }
            }
            energies[b] = e;
        }
        let mut levels: Vec<f64> = energies.clone();
        levels.sort_by(f64::total_cmp);
        levels.dedup();
        let level_of = energies
            .iter()
            .map(|e| levels.binary_search_by(|l| l.total_cmp(e)).unwrap() as u32)
            .collect();
        Ok(DiagonalCost {
            energies,
            levels,
            level_of,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.energies.len().trailing_zeros() as usize
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub(crate) fn level_of(&self) -> &[u32] {
        &self.level_of
    }

    pub fn mean(&self) -> f64 {
        self.energies.iter().sum::<f64>() / self.energies.len() as f64
    }

    pub fn min(&self) -> f64 {
        self.levels[0]
    }
}

pub fn diagonal_cost(q: &QuboModel) -> Result<DiagonalCost> {
    DiagonalCost::new(q, super::DEFAULT_QUBIT_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, empty};

    /// Independent enumeration of all assignments.
    fn brute_min(q: &QuboModel) -> (f64, Vec<u64>) {
        let mut best = f64::INFINITY;
        let mut arg = Vec::new();
        for b in 0..1u64 << q.n {
            let e = q.evaluate_bits(b);
            if e < best - 1e-12 {
                best = e;
                arg = vec![b];
            } else if (e - best).abs() <= 1e-12 {
                arg.push(b);
            }
        }
        (best, arg)
    }

    #[test]
    fn k2_model() {
        let q = build_qubo(&complete(2), 2.0).unwrap();
        assert_eq!(q.linear, vec![-1.0, -1.0]);
        assert_eq!(q.quadratic, vec![((0, 1), 2.0)]);
        assert_eq!(q.evaluate(&[true, false]), -1.0);
        assert_eq!(q.evaluate(&[true, true]), 0.0);
        assert_eq!(
            diagonal_cost(&q).unwrap().energies,
            vec![0.0, -1.0, -1.0, 0.0]
        );
    }

    #[test]
    fn empty_graph_optimum_is_all_ones() {
        let q = build_qubo(&empty(3), 2.0).unwrap();
        let (best, arg) = brute_min(&q);
        assert_eq!(best, -3.0);
        assert_eq!(arg, vec![0b111]);
    }

    #[test]
    fn triangle_minimizers_are_singletons() {
        let q = build_qubo(&complete(3), 2.0).unwrap();
        let (best, arg) = brute_min(&q);
        assert_eq!(best, -1.0);
        assert_eq!(arg, vec![0b001, 0b010, 0b100]);
        let cost = diagonal_cost(&q).unwrap();
        assert_eq!(cost.energies[0b111], 3.0);
        assert_eq!(cost.energies[0], 0.0);
    }

    #[test]
    fn penalty_must_exceed_one() {
        assert!(matches!(
            build_qubo(&complete(2), 1.0),
            Err(Error::PenaltyTooSmall(_))
        ));
        assert!(build_qubo(&complete(2), f64::NAN).is_err());
    }

    #[test]
    fn diagonal_matches_direct_evaluation() {
        let g = crate::graph::generate_er(9, 0.4, 3).unwrap();
        let q = build_qubo(&g, 1.5).unwrap();
        let cost = diagonal_cost(&q).unwrap();
        for b in 0..1u64 << 9 {
            assert_eq!(cost.energies[b as usize], q.evaluate_bits(b));
        }
        assert_eq!(cost.n_qubits(), 9);
    }

    #[test]
    fn qubit_cap_enforced() {
        let q = build_qubo(&empty(6), 2.0).unwrap();
        assert!(matches!(
            DiagonalCost::new(&q, 5),
            Err(Error::QubitCapExceeded { n: 6, cap: 5 })
        ));
    }
}
