//! Grid-seeded, layer-by-layer angle optimization.
//!
//! Layer one is scanned on a `res x res` grid over `gamma in [0, 2pi)`,
//! `beta in [0, pi)`; the best grid points (jittered by the seed) start
//! independent simplex refinements. Each further layer is appended at half
//! the previous layer's angles and the whole schedule is refined again.

use rand::Rng as _;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

use super::circuit::{QaoaCircuit, QaoaParams};
use super::nelder_mead::NelderMead;
use super::QuboModel;
use crate::error::{Error, Result};
use crate::rng::rng_from;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizedParams {
    #[serde(flatten)]
    pub params: QaoaParams,
    pub expectation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub layers: usize,
    pub grid_resolution: usize,
    pub restarts: usize,
    pub tolerance: f64,
    /// Simplex evaluation budget per restart is this times the layer count.
    pub evals_per_layer: usize,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            layers: super::DEFAULT_LAYERS,
            grid_resolution: 8,
            restarts: 5,
            tolerance: 1e-4,
            evals_per_layer: 200,
            seed: 0,
        }
    }
}

pub fn optimize(
    q: &QuboModel,
    p: usize,
    grid_resolution: usize,
    restarts: usize,
    seed: u64,
) -> Result<Vec<OptimizedParams>> {
    let circuit = QaoaCircuit::new(q, super::DEFAULT_QUBIT_CAP)?;
    optimize_circuit(
        &circuit,
        &OptimizerConfig {
            layers: p,
            grid_resolution,
            restarts,
            seed,
            ..OptimizerConfig::default()
        },
    )
}

/// Returns `config.restarts` refined schedules sorted by ascending
/// expectation.
pub fn optimize_circuit(
    circuit: &QaoaCircuit,
    config: &OptimizerConfig,
) -> Result<Vec<OptimizedParams>> {
    if config.layers == 0 {
        return Err(Error::InvalidArgument("need at least one layer".into()));
    }
    if config.grid_resolution == 0 {
        return Err(Error::InvalidArgument(
            "grid resolution must be positive".into(),
        ));
    }
    let res = config.grid_resolution;
    let (gamma_cell, beta_cell) = (TAU / res as f64, PI / res as f64);
    let eval = |x: &[f64]| circuit.expectation(&QaoaParams::from_flat(x));

    let mut grid: Vec<(f64, usize, [f64; 2])> = Vec::with_capacity(res * res);
    for a in 0..res {
        for b in 0..res {
            let x = [a as f64 * gamma_cell, b as f64 * beta_cell];
            grid.push((eval(&x), grid.len(), x));
        }
    }
    grid.sort_by(|l, r| l.0.total_cmp(&r.0).then(l.1.cmp(&r.1)));

    let mut rng = rng_from(config.seed);
    let mut starts: Vec<Vec<f64>> = grid
        .iter()
        .take(config.restarts)
        .map(|&(_, _, [g, b])| {
            vec![
                g + gamma_cell * rng.random_range(-0.25..0.25),
                b + beta_cell * rng.random_range(-0.25..0.25),
            ]
        })
        .collect();
    while starts.len() < config.restarts {
        starts.push(vec![rng.random_range(0.0..TAU), rng.random_range(0.0..PI)]);
    }

    let integral = circuit.cost().levels().iter().all(|e| e.fract() == 0.0);
    let mut records: Vec<(f64, Vec<f64>)> = Vec::with_capacity(starts.len());
    for start in starts {
        let mut x = start;
        let mut value = f64::NAN;
        for layer in 1..=config.layers {
            if layer > 1 {
                let (g, b) = (x[x.len() - 2], x[x.len() - 1]);
                x.extend([g / 2.0, b / 2.0]);
            }
            let steps: Vec<f64> = (0..2 * layer)
                .map(|i| {
                    if i % 2 == 0 {
                        gamma_cell / 2.0
                    } else {
                        beta_cell / 2.0
                    }
                })
                .collect();
            let nm = NelderMead {
                tolerance: config.tolerance,
                max_evals: config.evals_per_layer * layer,
            };
            let m = nm.minimize(eval, &x, &steps);
            x = m.x;
            value = m.value;
        }
        canonicalize(&mut x, integral);
        records.push((value, x));
    }
    records.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(records
        .into_iter()
        .map(|(expectation, x)| OptimizedParams {
            params: QaoaParams::from_flat(&x),
            expectation,
        })
        .collect())
}

/// Folds angles into their search windows where that is an exact symmetry:
/// `beta` has period `pi` up to a global phase, `gamma` has period `2pi`
/// when every energy is an integer.
fn canonicalize(x: &mut [f64], integral_energies: bool) {
    for (i, v) in x.iter_mut().enumerate() {
        if i % 2 == 1 {
            *v = v.rem_euclid(PI);
        } else if integral_energies {
            *v = v.rem_euclid(TAU);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{empty, generate_er};
    use crate::qaoa::build_qubo;

    #[test]
    fn empty_pair_converges_near_optimum() {
        let q = build_qubo(&empty(2), 2.0).unwrap();
        let best = optimize(&q, 1, 8, 3, 1).unwrap();
        assert!(best[0].expectation <= -1.8, "{}", best[0].expectation);
    }

    #[test]
    fn returns_sorted_records_deterministically() {
        let g = generate_er(6, 0.4, 2).unwrap();
        let q = build_qubo(&g, 2.0).unwrap();
        let a = optimize(&q, 2, 6, 5, 17).unwrap();
        assert_eq!(a.len(), 5);
        assert!(a.windows(2).all(|w| w[0].expectation <= w[1].expectation));
        assert!(a.iter().all(|r| r.params.p == 2));
        assert_eq!(a, optimize(&q, 2, 6, 5, 17).unwrap());
    }

    #[test]
    fn refined_value_matches_reported_params() {
        let g = generate_er(5, 0.5, 4).unwrap();
        let q = build_qubo(&g, 2.0).unwrap();
        let circuit = QaoaCircuit::new(&q, 20).unwrap();
        for r in optimize(&q, 2, 4, 3, 0).unwrap() {
            // Canonicalization only applies exact symmetries.
            assert!((circuit.expectation(&r.params) - r.expectation).abs() < 1e-9);
            assert!(r.params.betas.iter().all(|b| (0.0..PI).contains(b)));
        }
    }

    #[test]
    fn more_restarts_than_grid_points() {
        let q = build_qubo(&empty(2), 2.0).unwrap();
        assert_eq!(optimize(&q, 1, 2, 7, 3).unwrap().len(), 7);
    }

    #[test]
    fn json_shape() {
        let r = OptimizedParams {
            params: QaoaParams::new(vec![0.5], vec![0.25]).unwrap(),
            expectation: -1.5,
        };
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"p":1,"gammas":[0.5],"betas":[0.25],"expectation":-1.5}"#
        );
    }
}
