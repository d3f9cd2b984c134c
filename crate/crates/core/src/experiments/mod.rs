// Copyright 2026 nhqsim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Parameter sweeps, optimum search, time traces and reproducible scenarios.
//!
//! Grid cells are evaluated in parallel and always assembled by index, so
//! every output is independent of the thread count.

mod grid;
mod map;
mod scenarios;
mod traces;

pub use grid::{linspace, logspace, stepped, SweepGrid};
pub use map::{
    entanglement_map, find_optimal, EntanglementMap, MapCell, Objective, Optimum, SearchBox,
    SearchOptions,
};
pub use scenarios::{
    point_report, reproduce_scenario, EntryKind, Manifest, ManifestEntry, ScenarioOutcome, GAMMA,
    J_OPT, OMEGA_3Q, SCENARIOS,
};
pub use traces::{
    amplitude_traces, bloch_trajectory, entanglement_traces, fidelity_traces,
    four_qubit_entropy_traces, BlochTrajectory, EntropyRun, EntropyTraces, FidelityTraces,
    FOUR_QUBIT_HORIZON, FOUR_QUBIT_RUNS,
};
