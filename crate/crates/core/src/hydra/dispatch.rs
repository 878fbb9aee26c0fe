use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Solution};
use crate::qaoa::{
    best_feasible, build_qubo, QaoaCircuit, QaoaParams, DEFAULT_PENALTY, DEFAULT_QUBIT_CAP,
};
use crate::rng::derive_seed;
use crate::solvers::{
    exact_mis_capped, greedy_mis, ils_mis, BackendKind, ConnectivityClass, SolverBackend,
};
use crate::transfer::{transfer_solve, ClusterModel, PoolEntry, PredictionFile, TransferOptions};

/// Routes subproblems satisfying every bound to `backend`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DispatchRule {
    pub backend: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_vertices: Option<usize>,
    /// Inclusive.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_density: Option<f64>,
    /// Exclusive.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_density: Option<f64>,
}

impl DispatchRule {
    fn matches(&self, n: usize, density: f64) -> bool {
        self.max_vertices.is_none_or(|m| n <= m)
            && self.min_density.is_none_or(|d| density >= d)
            && self.max_density.is_none_or(|d| density < d)
    }
}

/// Ordered rules; the first one matching a subproblem's size and density
/// picks its backend.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DispatchPolicy {
    pub density_threshold: f64,
    pub rules: Vec<DispatchRule>,
}

impl DispatchPolicy {
    /// Size-and-density routing over `roster`:
    /// 1. dense subproblems (density >= `tau`) to a dense-capable quantum
    ///    backend that fits them;
    /// 2. sparse ones to a sparse-only quantum backend that fits;
    /// 3. anything else that fits a quantum backend to it;
    /// 4. the rest to classical backends in roster order.
    pub fn resource_aware(roster: &[SolverBackend], tau: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&tau) {
            return Err(Error::InvalidArgument(format!(
                "density threshold {tau} outside [0, 1]"
            )));
        }
        let quantum = |class: ConnectivityClass| {
            roster
                .iter()
                .filter(move |b| b.is_quantum() && b.connectivity_class == class)
        };
        let rule = |b: &SolverBackend, min: Option<f64>, max: Option<f64>| DispatchRule {
            backend: b.name.clone(),
            max_vertices: (b.max_vertices != usize::MAX).then_some(b.max_vertices),
            min_density: min,
            max_density: max,
        };
        let mut rules = Vec::new();
        rules.extend(quantum(ConnectivityClass::DenseCapable).map(|b| rule(b, Some(tau), None)));
        rules.extend(quantum(ConnectivityClass::SparseOnly).map(|b| rule(b, None, Some(tau))));
        rules.extend(quantum(ConnectivityClass::Unlimited).map(|b| rule(b, None, None)));
        rules.extend(quantum(ConnectivityClass::DenseCapable).map(|b| rule(b, None, None)));
        rules.extend(
            roster
                .iter()
                .filter(|b| !b.is_quantum())
                .map(|b| rule(b, None, None)),
        );
        Ok(DispatchPolicy {
            density_threshold: tau,
            rules,
        })
    }
}

/// Backend for a subproblem under `policy`.
pub fn dispatch<'r>(
    subgraph: &Graph,
    policy: &DispatchPolicy,
    roster: &'r [SolverBackend],
) -> Result<&'r SolverBackend> {
    let density = subgraph.density();
    let name = policy
        .rules
        .iter()
        .find(|r| r.matches(subgraph.n(), density))
        .map(|r| r.backend.as_str())
        .ok_or(Error::NoBackend {
            n: subgraph.n(),
            density,
        })?;
    roster.iter().find(|b| b.name == name).ok_or_else(|| {
        Error::InvalidArgument(format!("dispatch rule names unknown backend {name:?}"))
    })
}

/// Pool, clusters and optional external predictions used by the
/// `qaoa-transfer` backend.
#[derive(Clone, Debug)]
pub struct TransferAssets {
    pub pool: Vec<PoolEntry>,
    pub model: ClusterModel,
    pub overrides: Option<PredictionFile>,
}

/// Knobs shared by every backend invocation.
#[derive(Clone, Debug)]
pub struct BackendSettings {
    pub ils_iterations: usize,
    pub shots: usize,
    pub penalty: f64,
    pub k_nearest: usize,
    /// Angles for `qaoa-fixed`, and for `qaoa-transfer` without assets.
    pub fixed_params: QaoaParams,
    pub transfer: Option<Arc<TransferAssets>>,
}

impl Default for BackendSettings {
    fn default() -> Self {
        BackendSettings {
            ils_iterations: 200,
            shots: crate::transfer::DEFAULT_SHOTS,
            penalty: DEFAULT_PENALTY,
            k_nearest: 3,
            fixed_params: default_fixed_params(),
            transfer: None,
        }
    }
}

pub fn default_fixed_params() -> QaoaParams {
    QaoaParams::new(vec![0.5, 1.0], vec![0.4, 0.2]).expect("two layers")
}

/// Roster, routing and backend settings: everything needed to solve one
/// subproblem.
#[derive(Clone, Debug)]
pub struct SubSolver {
    pub roster: Vec<SolverBackend>,
    pub policy: DispatchPolicy,
    pub settings: BackendSettings,
}

impl SubSolver {
    pub fn new(
        roster: Vec<SolverBackend>,
        policy: DispatchPolicy,
        settings: BackendSettings,
    ) -> Result<Self> {
        if roster.is_empty() {
            return Err(Error::InvalidArgument("solver roster is empty".into()));
        }
        if let Some(r) = policy
            .rules
            .iter()
            .find(|r| !roster.iter().any(|b| b.name == r.backend))
        {
            return Err(Error::InvalidArgument(format!(
                "dispatch rule names unknown backend {:?}",
                r.backend
            )));
        }
        Ok(SubSolver {
            roster,
            policy,
            settings,
        })
    }

    /// Roster with resource-aware routing at threshold `tau`.
    pub fn resource_aware(
        roster: Vec<SolverBackend>,
        tau: f64,
        settings: BackendSettings,
    ) -> Result<Self> {
        let policy = DispatchPolicy::resource_aware(&roster, tau)?;
        Self::new(roster, policy, settings)
    }

    pub fn exact() -> Self {
        Self::resource_aware(
            vec![SolverBackend::exact()],
            0.5,
            BackendSettings::default(),
        )
        .expect("valid roster")
    }

    pub fn dispatch(&self, g: &Graph) -> Result<&SolverBackend> {
        dispatch(g, &self.policy, &self.roster)
    }

    /// Solves `g` with its dispatched backend; returns the backend name too.
    pub fn solve(&self, g: &Graph, seed: u64) -> Result<(Solution, &str)> {
        let backend = self.dispatch(g)?;
        let s = self.solve_with(g, backend, seed)?;
        Ok((s, &backend.name))
    }

    pub fn solve_with(&self, g: &Graph, backend: &SolverBackend, seed: u64) -> Result<Solution> {
        if g.n() == 0 {
            return Ok(Solution::empty(0));
        }
        let st = &self.settings;
        match backend.kind {
            BackendKind::Exact => exact_mis_capped(g, backend.max_vertices),
            BackendKind::Greedy => Ok(greedy_mis(g)),
            BackendKind::LocalSearch => Ok(ils_mis(g, st.ils_iterations, seed)),
            BackendKind::QaoaTransfer if st.transfer.is_some() => {
                let assets = st.transfer.as_ref().expect("checked");
                let options = TransferOptions {
                    k_nearest: st.k_nearest,
                    shots: st.shots,
                    penalty: st.penalty,
                    qubit_cap: backend.max_vertices.min(DEFAULT_QUBIT_CAP),
                };
                transfer_solve(
                    g,
                    &assets.pool,
                    &assets.model,
                    &options,
                    seed,
                    assets.overrides.as_ref(),
                )
                .map(|(s, _)| s)
            }
            BackendKind::QaoaTransfer | BackendKind::QaoaFixed => {
                let circuit = QaoaCircuit::new(
                    &build_qubo(g, st.penalty)?,
                    backend.max_vertices.min(DEFAULT_QUBIT_CAP),
                )?;
                let samples = circuit.sample(&st.fixed_params, st.shots, derive_seed(seed, &[0]));
                best_feasible(g, &samples).map(|(s, _)| s)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, empty, generate_er, path};

    fn roster() -> Vec<SolverBackend> {
        vec![
            SolverBackend::new(
                "ion",
                BackendKind::QaoaFixed,
                20,
                ConnectivityClass::DenseCapable,
            )
            .unwrap(),
            SolverBackend::new(
                "sc",
                BackendKind::QaoaFixed,
                20,
                ConnectivityClass::SparseOnly,
            )
            .unwrap(),
            SolverBackend::local_search(),
        ]
    }

    #[test]
    fn routing() {
        let r = roster();
        let p = DispatchPolicy::resource_aware(&r, 0.5).unwrap();
        let dense = generate_er(10, 0.8, 1).unwrap();
        assert!(dense.density() >= 0.5);
        assert_eq!(dispatch(&dense, &p, &r).unwrap().name, "ion");
        let sparse = path(10);
        assert!(sparse.density() < 0.5);
        assert_eq!(dispatch(&sparse, &p, &r).unwrap().name, "sc");
        assert_eq!(dispatch(&path(200), &p, &r).unwrap().name, "local-search");
    }

    #[test]
    fn sparse_falls_back_to_dense_capable() {
        let r = vec![roster().remove(0), SolverBackend::greedy()];
        let p = DispatchPolicy::resource_aware(&r, 0.5).unwrap();
        assert_eq!(dispatch(&path(10), &p, &r).unwrap().name, "ion");
        assert_eq!(dispatch(&complete(30), &p, &r).unwrap().name, "greedy");
    }

    #[test]
    fn misconfigured() {
        let r = vec![SolverBackend::exact()];
        let p = DispatchPolicy::resource_aware(&r, 0.5).unwrap();
        assert!(matches!(
            dispatch(&empty(61), &p, &r),
            Err(Error::NoBackend { n: 61, .. })
        ));
        let bad = DispatchPolicy {
            density_threshold: 0.5,
            rules: vec![DispatchRule {
                backend: "nope".into(),
                max_vertices: None,
                min_density: None,
                max_density: None,
            }],
        };
        assert!(SubSolver::new(r, bad, BackendSettings::default()).is_err());
    }

    #[test]
    fn every_backend_returns_independent_sets() {
        let g = generate_er(12, 0.3, 4).unwrap();
        let mut r = roster();
        r.push(SolverBackend::exact());
        r.push(SolverBackend::greedy());
        r.push(
            SolverBackend::new(
                "qt",
                BackendKind::QaoaTransfer,
                20,
                ConnectivityClass::Unlimited,
            )
            .unwrap(),
        );
        let sub = SubSolver::resource_aware(r.clone(), 0.5, BackendSettings::default()).unwrap();
        for b in &r {
            let s = sub.solve_with(&g, b, 3).unwrap();
            assert!(crate::is_independent(&g, &s), "{}", b.name);
        }
    }
}
