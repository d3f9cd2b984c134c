// Copyright 2026 nhqsim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Normalized non-unitary evolution `ψ(t) = e^{−iHt}ψ₀ / ‖e^{−iHt}ψ₀‖`.
//!
//! The default path is the matrix exponential, which stays valid at
//! exceptional points where an eigenbasis does not exist. The biorthogonal
//! modal expansion is available as a cross-check for well-conditioned
//! Hamiltonians. Reported phases carry the raw propagator phase; no global
//! gauge is fixed.

mod expm;
mod propagate;
mod state;

pub use expm::matrix_exponential;
pub use propagate::{
    dicke_basis, modal_propagate, phase_aligned_distance, propagate, propagate_series, Propagator,
    Trajectory,
};
pub use state::{
    amplitudes_and_phases, basis_label, initial_state, AmplitudePhase, BasisOrdering, InitialState,
    QuantumState,
};
