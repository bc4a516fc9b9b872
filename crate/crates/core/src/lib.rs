//! Lower bounds on the number of QAOA rounds needed to reach a target
//! approximation ratio, together with every ingredient those bounds consume:
//! objective statistics, commutator spectral norms between the cost and mixing
//! Hamiltonians, and spectral radii of the hypercube subgraphs that show up for
//! transverse-field search.
//!
//! Every closed form is paired with a numeric route so the two can be checked
//! against each other, and a small exact statevector simulator lets the bounds
//! be certified against actual QAOA runs.
//!
//! Module map:
//!
//! - [`pauli`]: bit-mask Pauli algebra, dense operators, spectral norms.
//! - [`problems`]: Max-Cut, k-local Z costs, search sets, feasible sets and
//!   objective statistics.
//! - [`mixers`]: Grover and transverse-field mixers and their commutator norms.
//! - [`spectra`]: star and hypercube-layer spectral radii.
//! - [`bounds`]: the round-count lower bounds.
//! - [`sim`]: the statevector simulator and angle search.
//! - [`certify`]: the end-to-end invariant harness.
//! - [`cli`]: the batch front door behind the `qaoa-bounds` binary.

pub mod bounds;
pub mod certify;
pub mod cli;
pub mod error;
pub mod mixers;
pub mod pauli;
pub mod problems;
pub mod sim;
pub mod spectra;
pub mod tolerance;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Size limits shared by every module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Limits {
    /// Largest qubit count for which operators are densified and eigensolved.
    pub dense_qubits: usize,
    /// Largest qubit count for full-space enumeration of cost spectra.
    pub enumeration_qubits: usize,
    /// Largest constrained feasible set that is enumerated.
    pub enumeration_states: usize,
    /// Largest qubit count the statevector simulator accepts.
    pub sim_qubits: usize,
    /// Largest qubit count for angle optimization.
    pub optimizer_qubits: usize,
    /// Largest round count for angle optimization.
    pub optimizer_rounds: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            dense_qubits: 10,
            enumeration_qubits: 20,
            enumeration_states: 1 << 20,
            sim_qubits: 20,
            optimizer_qubits: 14,
            optimizer_rounds: 6,
        }
    }
}
