// Copyright 2026 nhqsim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Reduced density matrices and entanglement measures of pure states.
//!
//! Entropies are in nats. Qubit indices are 0-based. The Bloch vector puts
//! `|f⟩` at the north pole (`z = ρ_ff − ρ_ee`).

mod concurrence;
mod density;
mod report;

pub use concurrence::{bipartition_concurrence, concurrence, pair_concurrence, three_tangle};
pub use density::{
    bloch_vector, entanglement_entropy, partial_trace, purity, qubit_eigenvalues,
    von_neumann_entropy, DensityMatrix, NEGATIVE_TOL,
};
pub use report::{
    ghz_class_fidelity, ghz_fidelity, report, reports_table, EntanglementReport, Target,
};
