//! Maximum independent set workbench: QAOA statevector simulation with
//! parameter transfer, classical solvers, and a partition-based hybrid
//! solver for graphs far beyond simulator size.
//!
//! ```
//! use hydra_mis::graph::grid;
//! use hydra_mis::hydra::{solve_mis, HydraConfig};
//!
//! let g = grid(10, 10);
//! let (s, trace) = solve_mis(&g, &HydraConfig { cutoff: 20, ..HydraConfig::default() }).unwrap();
//! assert!(hydra_mis::is_independent(&g, &s));
//! assert_eq!(trace.best_solution, s);
//! ```

pub mod error;
pub mod graph;
pub mod hydra;
pub mod partition;
pub mod qaoa;
pub mod rng;
pub mod solvers;
pub mod transfer;

pub use error::{Error, ErrorKind, Result};
pub use graph::{induced_subgraph, is_independent, Graph, GraphStats, Solution, Subgraph};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/qaoa.md")]
    mod qaoa {}
    #[doc = include_str!("../../../book/src/solvers.md")]
    mod solvers {}
    #[doc = include_str!("../../../book/src/partitioning.md")]
    mod partitioning {}
    #[doc = include_str!("../../../book/src/transfer.md")]
    mod transfer {}
    #[doc = include_str!("../../../book/src/hydra.md")]
    mod hydra {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
