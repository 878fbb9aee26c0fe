use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::qubo::{DiagonalCost, QuboModel};
use crate::error::{Error, Result};

/// Angles of a `p`-layer circuit, radians.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QaoaParams {
    pub p: usize,
    pub gammas: Vec<f64>,
    pub betas: Vec<f64>,
}

impl QaoaParams {
    pub fn new(gammas: Vec<f64>, betas: Vec<f64>) -> Result<Self> {
        if gammas.is_empty() || gammas.len() != betas.len() {
            return Err(Error::InvalidArgument(format!(
                "need equal, non-zero numbers of gammas and betas (got {} and {})",
                gammas.len(),
                betas.len()
            )));
        }
        Ok(QaoaParams {
            p: gammas.len(),
            gammas,
            betas,
        })
    }

    pub fn zeros(p: usize) -> Self {
        QaoaParams {
            p,
            gammas: vec![0.0; p],
            betas: vec![0.0; p],
        }
    }

    /// `[g_1, b_1, g_2, b_2, ...]`, the layout the optimizer works in.
    pub fn to_flat(&self) -> Vec<f64> {
        self.gammas
            .iter()
            .zip(&self.betas)
            .flat_map(|(&g, &b)| [g, b])
            .collect()
    }

    pub fn from_flat(x: &[f64]) -> Self {
        let gammas = x.iter().step_by(2).copied().collect::<Vec<_>>();
        let betas = x.iter().skip(1).step_by(2).copied().collect();
        QaoaParams {
            p: gammas.len(),
            gammas,
            betas,
        }
    }
}

/// `2^n` amplitudes; bit `i` of the index is `x_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Statevector {
    pub amplitudes: Vec<Complex64>,
}

impl Statevector {
    /// `|+>^n`.
    pub fn uniform(n: usize) -> Self {
        let dim = 1usize << n;
        let a = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        Statevector {
            amplitudes: vec![a; dim],
        }
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Multiplies each amplitude by `exp(-i gamma E_b)`.
    pub fn apply_phase(&mut self, cost: &DiagonalCost, gamma: f64) {
        let phases: Vec<Complex64> = cost
            .levels()
            .iter()
            .map(|&e| Complex64::from_polar(1.0, -gamma * e))
            .collect();
        for (a, &l) in self.amplitudes.iter_mut().zip(cost.level_of()) {
            *a *= phases[l as usize];
        }
    }

    /// Applies `exp(-i beta X)` to every qubit: the 2x2 kernel
    /// `[[cos b, -i sin b], [-i sin b, cos b]]` on each amplitude pair.
    pub fn apply_mixer(&mut self, beta: f64) {
        let (s, c) = beta.sin_cos();
        let dim = self.amplitudes.len();
        let mut stride = 1;
        while stride < dim {
            for block in (0..dim).step_by(2 * stride) {
                let (lo, hi) = self.amplitudes[block..block + 2 * stride].split_at_mut(stride);
                for (a0, a1) in lo.iter_mut().zip(hi.iter_mut()) {
                    let (x, y) = (*a0, *a1);
                    // -i s z = (s z.im, -s z.re)
                    *a0 = Complex64::new(c * x.re + s * y.im, c * x.im - s * y.re);
                    *a1 = Complex64::new(s * x.im + c * y.re, -s * x.re + c * y.im);
                }
            }
            stride <<= 1;
        }
    }

    pub fn expectation(&self, cost: &DiagonalCost) -> f64 {
        self.amplitudes
            .iter()
            .zip(&cost.energies)
            .map(|(a, e)| a.norm_sqr() * e)
            .sum()
    }
}

/// A QUBO prepared for repeated simulation.
#[derive(Clone, Debug)]
pub struct QaoaCircuit {
    cost: DiagonalCost,
}

impl QaoaCircuit {
    pub fn new(q: &QuboModel, qubit_cap: usize) -> Result<Self> {
        Ok(QaoaCircuit {
            cost: DiagonalCost::new(q, qubit_cap)?,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.cost.n_qubits()
    }

    pub fn cost(&self) -> &DiagonalCost {
        &self.cost
    }

    pub fn evolve(&self, params: &QaoaParams) -> Statevector {
        let mut psi = Statevector::uniform(self.n_qubits());
        for (&gamma, &beta) in params.gammas.iter().zip(&params.betas) {
            psi.apply_phase(&self.cost, gamma);
            psi.apply_mixer(beta);
        }
        psi
    }

    pub fn expectation(&self, params: &QaoaParams) -> f64 {
        self.evolve(params).expectation(&self.cost)
    }
}

pub fn evolve(q: &QuboModel, params: &QaoaParams) -> Result<Statevector> {
    Ok(QaoaCircuit::new(q, super::DEFAULT_QUBIT_CAP)?.evolve(params))
}

pub fn expectation(q: &QuboModel, params: &QaoaParams) -> Result<f64> {
    Ok(QaoaCircuit::new(q, super::DEFAULT_QUBIT_CAP)?.expectation(params))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, empty};
    use crate::qaoa::build_qubo;

    #[test]
    fn zero_angles_leave_uniform_state() {
        let q = build_qubo(&complete(3), 2.0).unwrap();
        let psi = evolve(&q, &QaoaParams::zeros(1)).unwrap();
        assert_eq!(psi, Statevector::uniform(3));
    }

    #[test]
    fn half_pi_mixer_rotates_plus_to_minus_i_plus() {
        // Single qubit with zero energies: the phase layer is the identity.
        let q = QuboModel {
            n: 1,
            linear: vec![0.0],
            quadratic: vec![],
            penalty: 0.0,
        };
        let params = QaoaParams::new(vec![0.7], vec![std::f64::consts::FRAC_PI_2]).unwrap();
        let psi = evolve(&q, &params).unwrap();
        let expected = Complex64::new(0.0, -std::f64::consts::FRAC_1_SQRT_2);
        for a in &psi.amplitudes {
            assert!((a - expected).norm() < 1e-15);
        }
    }

    #[test]
    fn uniform_expectation_values() {
        let tri = build_qubo(&complete(3), 2.0).unwrap();
        // Energies 0, -1, -1, -1, 0, 0, 0, 3 average to 0.
        assert!(expectation(&tri, &QaoaParams::zeros(1)).unwrap().abs() < 1e-15);
        let single = build_qubo(&empty(1), 2.0).unwrap();
        assert!((expectation(&single, &QaoaParams::zeros(2)).unwrap() + 0.5).abs() < 1e-15);
        // The mixer alone keeps the uniform distribution.
        let mixer_only = QaoaParams::new(vec![0.0, 0.0], vec![0.3, 1.1]).unwrap();
        let e = expectation(&tri, &mixer_only).unwrap();
        assert!(e.abs() < 1e-12);
    }

    #[test]
    fn evolution_stays_normalized() {
        let g = crate::graph::generate_er(10, 0.3, 11).unwrap();
        let q = build_qubo(&g, 2.0).unwrap();
        let params = QaoaParams::new(vec![0.4, 1.3, 2.2], vec![0.9, 0.2, 0.5]).unwrap();
        let psi = evolve(&q, &params).unwrap();
        assert!((psi.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn params_validation_and_flat_layout() {
        assert!(QaoaParams::new(vec![0.1], vec![]).is_err());
        assert!(QaoaParams::new(vec![], vec![]).is_err());
        let p = QaoaParams::new(vec![1.0, 2.0], vec![3.0, 4.0]).unwrap();
        assert_eq!(p.to_flat(), vec![1.0, 3.0, 2.0, 4.0]);
        assert_eq!(QaoaParams::from_flat(&p.to_flat()), p);
    }
}
