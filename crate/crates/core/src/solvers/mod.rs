//! Classical MIS solvers: an exact branch-and-bound oracle, the min-degree
//! greedy heuristic, and an iterated local search used as the baseline.

mod exact;
mod greedy;
mod ils;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{is_independent, Graph, Solution};

pub use exact::{exact_mis, exact_mis_capped, DEFAULT_EXACT_CAP, HARD_EXACT_CAP};
pub use greedy::greedy_mis;
pub use ils::{ils_mis, DEFAULT_ILS_ITERATIONS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BackendKind {
    Exact,
    Greedy,
    LocalSearch,
    QaoaTransfer,
    QaoaFixed,
}

impl BackendKind {
    pub fn is_quantum(self) -> bool {
        matches!(self, BackendKind::QaoaTransfer | BackendKind::QaoaFixed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConnectivityClass {
    DenseCapable,
    SparseOnly,
    Unlimited,
}

/// A named subproblem solver together with the largest instance it accepts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverBackend {
    pub name: String,
    pub kind: BackendKind,
    pub max_vertices: usize,
    pub connectivity_class: ConnectivityClass,
}

impl SolverBackend {
    pub fn new(
        name: impl Into<String>,
        kind: BackendKind,
        max_vertices: usize,
        connectivity_class: ConnectivityClass,
    ) -> Result<Self> {
        if max_vertices == 0 {
            return Err(Error::InvalidArgument(
                "backend max_vertices must be at least 1".into(),
            ));
        }
        Ok(SolverBackend {
            name: name.into(),
            kind,
            max_vertices,
            connectivity_class,
        })
    }

    pub fn exact() -> Self {
        SolverBackend {
            name: "exact".into(),
            kind: BackendKind::Exact,
            max_vertices: DEFAULT_EXACT_CAP,
            connectivity_class: ConnectivityClass::Unlimited,
        }
    }

    pub fn greedy() -> Self {
        SolverBackend {
            name: "greedy".into(),
            kind: BackendKind::Greedy,
            max_vertices: usize::MAX,
            connectivity_class: ConnectivityClass::Unlimited,
        }
    }

    pub fn local_search() -> Self {
        SolverBackend {
            name: "local-search".into(),
            kind: BackendKind::LocalSearch,
            max_vertices: usize::MAX,
            connectivity_class: ConnectivityClass::Unlimited,
        }
    }

    pub fn is_quantum(&self) -> bool {
        self.kind.is_quantum()
    }
}

/// `|s| / optimum`. Rejects dependent sets and a zero optimum.
pub fn approximation_ratio(g: &Graph, s: &Solution, optimum: usize) -> Result<f64> {
    if !is_independent(g, s) {
        return Err(Error::InfeasibleSolution);
    }
    if optimum == 0 {
        return Err(Error::InvalidArgument("optimum must be at least 1".into()));
    }
    Ok(s.cardinality() as f64 / optimum as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{path, petersen};

    #[test]
    fn ratios() {
        let g = petersen();
        let s = Solution::from_members(10, [0, 2, 8]).unwrap();
        assert!(is_independent(&g, &s));
        assert_eq!(approximation_ratio(&g, &s, 4).unwrap(), 0.75);
        assert_eq!(
            approximation_ratio(&g, &Solution::empty(10), 4).unwrap(),
            0.0
        );
        let opt = exact_mis(&g).unwrap();
        assert_eq!(approximation_ratio(&g, &opt, 4).unwrap(), 1.0);
        let bad = Solution::from_members(3, [0, 1]).unwrap();
        assert!(matches!(
            approximation_ratio(&path(3), &bad, 2),
            Err(Error::InfeasibleSolution)
        ));
    }

    #[test]
    fn backend_json() {
        let b = SolverBackend::new(
            "ion",
            BackendKind::QaoaTransfer,
            20,
            ConnectivityClass::DenseCapable,
        )
        .unwrap();
        let json = serde_json::to_string(&b).unwrap();
        assert_eq!(
            json,
            r#"{"name":"ion","kind":"qaoa-transfer","max_vertices":20,"connectivity_class":"dense-capable"}"#
        );
        assert!(
            SolverBackend::new("x", BackendKind::Exact, 0, ConnectivityClass::Unlimited).is_err()
        );
    }
}
