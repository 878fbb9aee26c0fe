//! MIS as a QUBO, exact statevector simulation of QAOA circuits, angle
//! optimization and shot sampling.
//!
//! The cost Hamiltonian is diagonal in the computational basis, so the
//! simulator never builds an operator: it tabulates the `2^n` energies once
//! per circuit, applies each phase layer as an element-wise multiply, and
//! applies the transverse-field mixer as `n` butterfly passes of a 2x2
//! rotation.

mod circuit;
mod nelder_mead;
mod optimize;
mod qubo;
mod sampling;

pub use circuit::{evolve, expectation, QaoaCircuit, QaoaParams, Statevector};
pub use nelder_mead::{Minimum, NelderMead};
pub use optimize::{optimize, optimize_circuit, OptimizedParams, OptimizerConfig};
pub use qubo::{build_qubo, diagonal_cost, DiagonalCost, QuboModel};
pub use sampling::{
    best_feasible, bitstring, parse_bitstring, sample, sample_statevector, FeasibleSummary,
    SampleSet,
};

pub const DEFAULT_PENALTY: f64 = 2.0;
pub const DEFAULT_LAYERS: usize = 2;
pub const DEFAULT_QUBIT_CAP: usize = 20;
/// No circuit above this many qubits is ever simulated.
pub const HARD_QUBIT_CAP: usize = 25;
