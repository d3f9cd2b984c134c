// Copyright 2026 nhqsim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Simulation of driven, dissipative, weakly coupled non-Hermitian qubits.
//!
//! Each qubit is an effective two-level system `{|f⟩, |e⟩}` whose upper level
//! decays at rate `γ` into an environment level outside the model. A coherent
//! drive `Ω` and a detuning `Δ` act on each qubit and an exchange coupling
//! `J_jk` links pairs. The crate
//!
//! * builds the `2^n × 2^n` Hamiltonian ([`hamiltonian`]),
//! * decomposes it and finds exceptional points ([`spectral`]),
//! * evolves states under the normalized non-unitary dynamics ([`dynamics`]),
//! * measures bipartite and tripartite entanglement ([`entanglement`]),
//! * runs parameter scans and reproducible scenarios ([`experiments`]).
//!
//! Units: `ħ = 1`, times in µs, rates and energies in rad/µs. Qubit `0` is the
//! most significant bit of a basis index and `|f⟩ ↦ 0`, `|e⟩ ↦ 1`.

// Range checks are written `!(x <= tol)` on purpose so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod dynamics;
pub mod entanglement;
pub mod error;
pub mod experiments;
pub mod hamiltonian;
pub mod linalg;
pub mod spectral;
pub mod table;

pub use error::{Error, Result};
pub use hamiltonian::{build_hamiltonian, CouplingConvention, QubitParams, SystemConfig};
pub use linalg::{ComplexMatrix, ComplexVector, C64};
